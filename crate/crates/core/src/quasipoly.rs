//! Quasi-polynomials in gcd form: finite sums of
//! `coeff · Π_j gcd(e_j, q) · q^power` with every `e_j` dividing a declared
//! period `ñ`.
//!
//! Constituents depend on the residue `r` only through `gcd(ñ, r)`, so a
//! quasi-polynomial is fully described by one polynomial per divisor of `ñ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::numtheory::{divisors, euler_phi, lcm_all, mobius};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuasiPolyError {
    #[error("divisor {divisor} does not divide the declared period {period}")]
    PeriodMismatch { divisor: BigInt, period: BigInt },
    #[error("period must be positive, got {0}")]
    BadPeriod(BigInt),
    #[error("malformed quasi-polynomial JSON: {0}")]
    Json(String),
}

type TermKey = (Vec<BigInt>, u32);

#[derive(Clone)]
pub struct GcdQuasiPolynomial {
    terms: BTreeMap<TermKey, BigRational>,
    period: BigInt,
}

/// One summand `coeff · Π gcd(divisors, q) · q^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiTerm {
    pub coeff: BigRational,
    pub divisors: Vec<BigInt>,
    pub power: u32,
}

impl GcdQuasiPolynomial {
    pub fn zero() -> Self {
        GcdQuasiPolynomial { terms: BTreeMap::new(), period: BigInt::one() }
    }

    /// `coeff · Π gcd(e_j, q) · q^power`, declared period lcm(e_j).
    ///
    /// Panics if a divisor is not positive.
    pub fn quasimonomial(divisors: &[BigInt], power: u32, coeff: BigRational) -> Self {
        assert!(divisors.iter().all(BigInt::is_positive), "divisors must be positive");
        let mut key: Vec<BigInt> = divisors.iter().filter(|e| !e.is_one()).cloned().collect();
        key.sort();
        let period = lcm_all(&key);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((key, power), coeff);
        }
        GcdQuasiPolynomial { terms, period }
    }

    /// Polynomial `Σ coeffs[k] q^k` (period 1).
    pub fn from_polynomial(p: &Polynomial) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| ((Vec::new(), k as u32), c.clone()))
            .collect();
        GcdQuasiPolynomial { terms, period: BigInt::one() }
    }

    /// Re-declares the period; every divisor must divide `period`.
    pub fn with_period(mut self, period: BigInt) -> Result<Self, QuasiPolyError> {
        if !period.is_positive() {
            return Err(QuasiPolyError::BadPeriod(period));
        }
        for (divs, _) in self.terms.keys() {
            if let Some(e) = divs.iter().find(|e| !(&period % *e).is_zero()) {
                return Err(QuasiPolyError::PeriodMismatch { divisor: e.clone(), period });
            }
        }
        self.period = period;
        Ok(self)
    }

    pub fn period(&self) -> &BigInt {
        &self.period
    }

    pub fn terms(&self) -> Vec<QuasiTerm> {
        self.terms
            .iter()
            .map(|((divisors, power), coeff)| QuasiTerm { coeff: coeff.clone(), divisors: divisors.clone(), power: *power })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.constituents().iter().all(|(_, p)| p.is_zero())
    }

    /// Largest power with a nonzero term.
    pub fn max_power(&self) -> Option<u32> {
        self.terms.keys().map(|(_, p)| *p).max()
    }

    pub fn add(&self, other: &GcdQuasiPolynomial) -> GcdQuasiPolynomial {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        GcdQuasiPolynomial { terms, period: self.period.lcm(&other.period) }
    }

    pub fn scale(&self, c: &BigRational) -> GcdQuasiPolynomial {
        if c.is_zero() {
            return GcdQuasiPolynomial { terms: BTreeMap::new(), period: self.period.clone() };
        }
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        GcdQuasiPolynomial { terms, period: self.period.clone() }
    }

    pub fn neg(&self) -> GcdQuasiPolynomial {
        self.scale(&-BigRational::one())
    }

    /// The quasi-polynomial q ↦ Q(−q).
    pub fn reflect(&self) -> GcdQuasiPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), if k.1 % 2 == 1 { -v } else { v.clone() }))
            .collect();
        GcdQuasiPolynomial { terms, period: self.period.clone() }
    }

    /// Direct gcd-form evaluation, valid for every integer with the
    /// convention gcd(e, 0) = e.
    pub fn evaluate(&self, q: &BigInt) -> BigRational {
        let qr = BigRational::from_integer(q.clone());
        self.terms.iter().fold(BigRational::zero(), |acc, ((divs, power), c)| {
            let g = divs.iter().fold(BigInt::one(), |acc, e| acc * e.gcd(q));
            acc + c * BigRational::from_integer(g) * num_traits::pow(qr.clone(), *power as usize)
        })
    }

    pub fn evaluate_i64(&self, q: i64) -> BigRational {
        self.evaluate(&BigInt::from(q))
    }

    /// Evaluation through the constituent of the residue class of `q`.
    pub fn evaluate_by_constituent(&self, q: &BigInt) -> BigRational {
        self.constituent(q).eval_int(q)
    }

    fn residue(&self, r: &BigInt) -> BigInt {
        let m = r.mod_floor(&self.period);
        if m.is_zero() { self.period.clone() } else { m }
    }

    /// The polynomial agreeing with `self` on all q ≡ r (mod ñ).
    pub fn constituent(&self, r: &BigInt) -> Polynomial {
        let r = self.residue(r);
        let mut coeffs: Vec<BigRational> = Vec::new();
        for ((divs, power), c) in &self.terms {
            let g = divs.iter().fold(BigInt::one(), |acc, e| acc * e.gcd(&r));
            let p = *power as usize;
            if coeffs.len() <= p {
                coeffs.resize(p + 1, BigRational::zero());
            }
            coeffs[p] += c * BigRational::from_integer(g);
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// One constituent per divisor d of ñ (the constituent for gcd(ñ, q) = d).
    pub fn constituents(&self) -> Vec<(BigInt, Polynomial)> {
        divisors(&self.period).into_iter().map(|d| {
            let p = self.constituent(&d);
            (d, p)
        }).collect()
    }

    /// Every pair of residues in 1..=ñ with equal gcd against ñ has the same
    /// constituent.
    pub fn has_gcd_property(&self) -> bool {
        let mut seen: BTreeMap<BigInt, Polynomial> = BTreeMap::new();
        let mut r = BigInt::one();
        while r <= self.period {
            let g = r.gcd(&self.period);
            let p = self.constituent(&r);
            match seen.get(&g) {
                Some(prev) if *prev != p => return false,
                Some(_) => {}
                None => {
                    seen.insert(g, p);
                }
            }
            r += 1;
        }
        true
    }

    /// Smallest n | ñ such that constituents depend only on r mod n.
    pub fn minimal_period(&self) -> BigInt {
        let cache: BTreeMap<BigInt, Polynomial> = self.constituents().into_iter().collect();
        let lookup = |r: &BigInt| &cache[&r.gcd(&self.period)];
        for n in divisors(&self.period) {
            let mut ok = true;
            let mut r = BigInt::one();
            while ok && r <= self.period {
                let base: BigInt = (&r - BigInt::one()).mod_floor(&n) + BigInt::one();
                ok = lookup(&r) == lookup(&base);
                r += 1;
            }
            if ok {
                return n;
            }
        }
        self.period.clone()
    }

    /// Functional equality on ℤ, decided by comparing constituents over the
    /// common period.
    pub fn equals(&self, other: &GcdQuasiPolynomial) -> bool {
        if self.terms == other.terms {
            return true;
        }
        let n = self.period.lcm(&other.period);
        divisors(&n).iter().all(|d| self.constituent(d) == other.constituent(d))
    }

    /// Inverse of [`constituents`](Self::constituents): rebuilds a gcd-form
    /// quasi-polynomial with period `period` from one polynomial per divisor.
    pub fn from_constituents(period: &BigInt, constituents: &[(BigInt, Polynomial)]) -> Result<Self, QuasiPolyError> {
        if !period.is_positive() {
            return Err(QuasiPolyError::BadPeriod(period.clone()));
        }
        let ds = divisors(period);
        let mut f: BTreeMap<BigInt, Polynomial> = BTreeMap::new();
        for (d, p) in constituents {
            if !d.is_positive() || !(period % d).is_zero() {
                return Err(QuasiPolyError::PeriodMismatch { divisor: d.clone(), period: period.clone() });
            }
            if f.insert(d.clone(), p.clone()).is_some() {
                return Err(QuasiPolyError::Json(format!("constituent {d} given twice")));
            }
        }
        if f.len() != ds.len() {
            return Err(QuasiPolyError::Json(format!("expected {} constituents, got {}", ds.len(), f.len())));
        }

        // F(d) = Σ_e c_e gcd(e, d) and gcd(e, d) = Σ_{g | e, g | d} φ(g), so
        // h = μ * F satisfies h(g) = φ(g) Σ_{g | e} c_e.
        let mut upper: BTreeMap<BigInt, Polynomial> = BTreeMap::new();
        for g in &ds {
            let mut h = Polynomial::zero();
            for d in ds.iter().filter(|d| (g % *d).is_zero()) {
                let mu = mobius(&(g / d));
                if mu != 0 {
                    h = h.add(&f[d].scale(&BigRational::from_integer(mu.into())));
                }
            }
            let phi = BigRational::from_integer(euler_phi(g));
            upper.insert(g.clone(), h.scale(&(BigRational::one() / phi)));
        }
        let mut out = GcdQuasiPolynomial::zero();
        for e in &ds {
            let mut c = Polynomial::zero();
            for g in ds.iter().filter(|g| (*g % e).is_zero()) {
                let mu = mobius(&(g / e));
                if mu != 0 {
                    c = c.add(&upper[g].scale(&BigRational::from_integer(mu.into())));
                }
            }
            for (k, coeff) in c.coeffs().iter().enumerate() {
                out = out.add(&GcdQuasiPolynomial::quasimonomial(std::slice::from_ref(e), k as u32, coeff.clone()));
            }
        }
        out.with_period(period.clone())
    }

    /// `{"period": ñ, "constituents": {"d": ["num/den", …] low → high}}`
    pub fn to_json(&self) -> Value {
        let mut cons = Map::new();
        for (d, p) in self.constituents() {
            let coeffs = p.coeffs().iter().map(|c| Value::String(c.to_string())).collect();
            cons.insert(d.to_string(), Value::Array(coeffs));
        }
        let mut obj = Map::new();
        obj.insert("period".into(), integer_value(&self.period));
        obj.insert("constituents".into(), Value::Object(cons));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self, QuasiPolyError> {
        let err = |m: &str| QuasiPolyError::Json(m.to_string());
        let period = match value.get("period") {
            Some(Value::Number(n)) => BigInt::from(n.as_u64().ok_or_else(|| err("period is not a positive integer"))?),
            Some(Value::String(s)) => s.parse().map_err(|_| err("period string is not an integer"))?,
            _ => return Err(err("missing period")),
        };
        let cons = value.get("constituents").and_then(Value::as_object).ok_or_else(|| err("missing constituents"))?;
        let mut list = Vec::with_capacity(cons.len());
        for (d, coeffs) in cons {
            let d: BigInt = d.parse().map_err(|_| err("constituent key is not an integer"))?;
            let coeffs = coeffs.as_array().ok_or_else(|| err("constituent is not an array"))?;
            let parsed = coeffs
                .iter()
                .map(|c| parse_rational(c).ok_or_else(|| err("coefficient is not a rational")))
                .collect::<Result<Vec<_>, _>>()?;
            list.push((d, Polynomial::from_coeffs(parsed)));
        }
        GcdQuasiPolynomial::from_constituents(&period, &list)
    }
}

pub(crate) fn integer_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn parse_rational(v: &Value) -> Option<BigRational> {
    match v {
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())),
        Value::String(s) => match s.split_once('/') {
            Some((a, b)) => {
                let num: BigInt = a.trim().parse().ok()?;
                let den: BigInt = b.trim().parse().ok()?;
                (!den.is_zero()).then(|| BigRational::new(num, den))
            }
            None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
        },
        _ => None,
    }
}

/// Free-function constructor matching [`GcdQuasiPolynomial::quasimonomial`].
pub fn make_quasimonomial(divisors: &[BigInt], power: u32, coeff: BigRational) -> GcdQuasiPolynomial {
    GcdQuasiPolynomial::quasimonomial(divisors, power, coeff)
}

impl PartialEq for GcdQuasiPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for GcdQuasiPolynomial {}

impl fmt::Debug for GcdQuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GcdQuasiPolynomial(period {}: {self})", self.period)
    }
}

impl fmt::Display for GcdQuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((divs, power), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for e in divs {
                write!(f, "·gcd({e},q)")?;
            }
            match power {
                0 => {}
                1 => write!(f, "·q")?,
                p => write!(f, "·q^{p}")?,
            }
        }
        Ok(())
    }
}

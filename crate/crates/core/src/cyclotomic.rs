//! Exact arithmetic in the cyclotomic field ℚ(ζ_m).
//!
//! Values are stored as rational coefficient vectors over the power basis
//! 1, ζ, …, ζ^{φ(m)-1}, i.e. as remainders modulo the m-th cyclotomic
//! polynomial. That representation is unique, so structural equality is
//! field equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// ℚ(ζ_m) together with the cyclotomic polynomial Φ_m used for reduction.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u64,
    /// Monic Φ_m, coefficients low → high.
    phi: Vec<BigInt>,
}

/// Integer coefficients of Φ_m (low → high).
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Quotient of integer polynomials where the divisor is monic and divides exactly.
fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Arc<Self> {
        Arc::new(CyclotomicField { conductor, phi: cyclotomic_polynomial(conductor) })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// φ(m), the dimension over ℚ.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduces Σ c_k ζ^k (any number of coefficients) to canonical form.
    fn reduce(&self, raw: Vec<BigRational>) -> Vec<BigRational> {
        let m = self.conductor as usize;
        let mut v = vec![BigRational::zero(); m];
        for (k, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                v[k % m] += c;
            }
        }
        let deg = self.degree();
        for top in (deg..m).rev() {
            let c = std::mem::take(&mut v[top]);
            if c.is_zero() {
                continue;
            }
            for (i, p) in self.phi.iter().enumerate().take(deg) {
                v[top - deg + i] -= &c * BigRational::from_integer(p.clone());
            }
        }
        v.truncate(deg);
        v
    }

    fn element(self: &Arc<Self>, raw: Vec<BigRational>) -> Cyclotomic {
        Cyclotomic { coeffs: self.reduce(raw), field: Arc::clone(self) }
    }

    pub fn zero(self: &Arc<Self>) -> Cyclotomic {
        Cyclotomic { coeffs: vec![BigRational::zero(); self.degree()], field: Arc::clone(self) }
    }

    pub fn one(self: &Arc<Self>) -> Cyclotomic {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> Cyclotomic {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = q;
        Cyclotomic { coeffs, field: Arc::clone(self) }
    }

    pub fn from_integer(self: &Arc<Self>, n: i64) -> Cyclotomic {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    /// ζ_m^k for any integer k.
    pub fn zeta_power(self: &Arc<Self>, k: i64) -> Cyclotomic {
        let m = self.conductor as i64;
        let k = k.rem_euclid(m) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        self.element(raw)
    }

    /// Σ coeffs[k] · ζ^k, with no restriction on the number of coefficients.
    pub fn from_power_coefficients(self: &Arc<Self>, coeffs: Vec<BigRational>) -> Cyclotomic {
        self.element(coeffs)
    }
}

#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    /// Canonical coefficients over 1, ζ, …, ζ^{φ(m)-1}.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients over ζ^0, …, ζ^{m-1}, zero-padded from the canonical form.
    pub fn power_coefficients(&self) -> Vec<BigRational> {
        let mut v = self.coeffs.clone();
        v.resize(self.field.conductor as usize, BigRational::zero());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    fn substitute(&self, a: i64) -> Cyclotomic {
        let m = self.field.conductor as i64;
        let mut raw = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = (a * k as i64).rem_euclid(m) as usize;
            raw[idx] += c;
        }
        self.field.element(raw)
    }

    /// Complex conjugate: ζ^k ↦ ζ^{-k}.
    pub fn conj(&self) -> Cyclotomic {
        self.substitute(-1)
    }

    /// Galois automorphism ζ ↦ ζ^a; `None` unless gcd(a, m) = 1.
    pub fn galois(&self, a: i64) -> Option<Cyclotomic> {
        (a.gcd(&(self.field.conductor as i64)) == 1).then(|| self.substitute(a))
    }

    /// Fixed by every ζ ↦ ζ^a with gcd(a, m) = 1.
    pub fn is_galois_invariant(&self) -> bool {
        let m = self.field.conductor as i64;
        (1..=m).filter(|a| a.gcd(&m) == 1).all(|a| self.substitute(a) == *self)
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numerical value with ζ_m = exp(2πi/m).
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.field.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = ratio_to_f64(c);
            let t = 2.0 * std::f64::consts::PI * k as f64 / m;
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    fn assert_same_field(&self, other: &Cyclotomic) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "cyclotomic values from different fields"
        );
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (conductor, canonical coefficients). Not a field order.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.conductor, &self.coeffs).cmp(&(other.field.conductor, &other.coeffs))
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { field: Arc::clone(&self.field), coeffs }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Cyclotomic { field: Arc::clone(&self.field), coeffs }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(rhs);
        let n = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        self.field.element(raw)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes e.g. `-1 - ζ6 + 1/2·ζ6^2`; rational values print as plain rationals.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.field.conductor;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zeta = match k {
                0 => String::new(),
                1 => format!("ζ{m}"),
                _ => format!("ζ{m}^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{zeta}")?;
            } else {
                write!(f, "{mag}·{zeta}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

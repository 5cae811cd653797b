//! Fixed-point quasi-monomials, multiplicity quasi-polynomials, the
//! equivariant quasi-polynomial F(q) = χ_{L/qL}, the reciprocity character
//! and the structural checks on all of them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::character::{CharacterError, CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::group::FiniteMatrixGroup;
use crate::linalg::{smith_normal_form, LinalgError};
use crate::numtheory::lcm_all;
use crate::poly::Polynomial;
use crate::quasipoly::{GcdQuasiPolynomial, QuasiPolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivariantError {
    #[error("coefficient of {key} in m(χ_{index}) is not rational: {value}")]
    NonRationalCoefficient { index: usize, key: String, value: String },
    #[error("m(χ_{index}; {q}) = {value} is not a nonnegative integer")]
    NonIntegralMultiplicity { index: usize, q: i64, value: String },
    #[error("det R = {det} but (-1)^rank(R - I) = {sign} for element {element}")]
    DeterminantMismatch { element: usize, det: String, sign: i32 },
    #[error("reciprocity class function is not an irreducible character: {0}")]
    NotACharacter(String),
    #[error("character {0} is not linear")]
    NotLinearCharacter(usize),
    #[error("class {class}: identity-class rank condition violated (rank {rank})")]
    Unfaithful { class: usize, rank: usize },
    #[error("table has {table} rows but the group has {classes} classes")]
    TableMismatch { table: usize, classes: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    QuasiPoly(#[from] QuasiPolyError),
}

/// Rank and elementary divisors of R_γ − I for one class representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDivisors {
    pub rank: usize,
    /// All r elementary divisors including leading ones, e_1 | … | e_r.
    #[serde(serialize_with = "serialize_bigints")]
    pub divisors: Vec<BigInt>,
}

impl ClassDivisors {
    /// Divisors other than 1, as displayed.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|e| !e.is_one()).cloned().collect()
    }

    pub fn largest(&self) -> BigInt {
        self.divisors.last().cloned().unwrap_or_else(BigInt::one)
    }
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for e in v {
        seq.serialize_element(&crate::quasipoly::integer_value(e))?;
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDivisorData {
    dim: usize,
    classes: Vec<ClassDivisors>,
}

impl ClassDivisorData {
    pub fn new(dim: usize, classes: Vec<ClassDivisors>) -> Self {
        ClassDivisorData { dim, classes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[ClassDivisors] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &ClassDivisors {
        &self.classes[c]
    }

    pub fn classes_mut(&mut self) -> &mut Vec<ClassDivisors> {
        &mut self.classes
    }
}

/// Elementary divisors of R_γ − I for every class representative.
pub fn class_divisor_data(group: &FiniteMatrixGroup) -> Result<ClassDivisorData, EquivariantError> {
    let mut classes = Vec::with_capacity(group.class_count());
    for (ci, class) in group.classes().iter().enumerate() {
        let a = group.element(class.representative).minus_identity()?;
        let snf = smith_normal_form(&a)?;
        if (snf.rank == 0) != (ci == 0) {
            return Err(EquivariantError::Unfaithful { class: ci, rank: snf.rank });
        }
        classes.push(ClassDivisors { rank: snf.rank, divisors: snf.divisors });
    }
    Ok(ClassDivisorData { dim: group.dim(), classes })
}

/// ñ = lcm of the largest elementary divisor over all classes.
pub fn tilde_n(data: &ClassDivisorData) -> BigInt {
    let largest: Vec<BigInt> = data.classes.iter().map(ClassDivisors::largest).collect();
    lcm_all(&largest)
}

/// k_c(q) = Π_j gcd(e_{c,j}, q) · q^{ℓ − r(c)}, the number of points of
/// (ℤ/qℤ)^ℓ fixed by the class representative.
pub fn fixed_point_qp(data: &ClassDivisorData, class: usize) -> GcdQuasiPolynomial {
    let c = &data.classes[class];
    GcdQuasiPolynomial::quasimonomial(&c.divisors, (data.dim - c.rank) as u32, BigRational::one())
}

/// (1/|G|) Σ_γ (Π_j e_{γ,j}) t^{ℓ − r(γ)}, the constituent at residue ñ.
pub fn top_constituent(group: &FiniteMatrixGroup, data: &ClassDivisorData) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (ci, c) in data.classes.iter().enumerate() {
        let prod = c.divisors.iter().fold(BigInt::one(), |a, e| a * e);
        let coeff = BigRational::new(prod * group.classes()[ci].size(), group.order().into());
        acc = acc.add(&Polynomial::monomial(coeff, data.dim - c.rank));
    }
    acc
}

/// m(χ_i; q) = (1/|G|) Σ_c |c| χ_i(c) k_c(q), with exactness and
/// integrality asserted.
pub fn multiplicity_qp(
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
    data: &ClassDivisorData,
    index: usize,
) -> Result<GcdQuasiPolynomial, EquivariantError> {
    let q = multiplicity_unchecked(group, table, data, index)?;
    let period = q.period().clone();
    // A degree-ℓ polynomial that is integral on ℓ+1 consecutive points of a
    // progression is integral on the whole progression.
    let span = (period * BigInt::from(data.dim + 1)).to_i64().unwrap_or(i64::MAX);
    for t in 1..=span {
        let v = q.evaluate_i64(t);
        if !v.is_integer() || v.is_negative() {
            return Err(EquivariantError::NonIntegralMultiplicity { index, q: t, value: v.to_string() });
        }
    }
    Ok(q)
}

fn multiplicity_unchecked(
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
    data: &ClassDivisorData,
    index: usize,
) -> Result<GcdQuasiPolynomial, EquivariantError> {
    if table.len() != group.class_count() {
        return Err(EquivariantError::TableMismatch { table: table.len(), classes: group.class_count() });
    }
    let row = table.rows().get(index).ok_or(CharacterError::RowIndex(index))?;
    // Group classes with identical fixed-point data; each group's character
    // sum is Galois-stable and therefore rational.
    let mut grouped: BTreeMap<(Vec<BigInt>, usize), Cyclotomic> = BTreeMap::new();
    for (ci, c) in data.classes.iter().enumerate() {
        let key = (c.nontrivial(), data.dim - c.rank);
        let weight = BigRational::from_integer(group.classes()[ci].size().into());
        let term = row.value(ci).scale(&weight);
        let slot = grouped.entry(key).or_insert_with(|| table.field().zero());
        *slot = &*slot + &term;
    }
    let inv_order = BigRational::new(BigInt::one(), group.order().into());
    let mut out = GcdQuasiPolynomial::zero();
    for ((divs, power), value) in grouped {
        let coeff = value.to_rational().ok_or_else(|| EquivariantError::NonRationalCoefficient {
            index,
            key: format!("gcd{divs:?}·q^{power}"),
            value: value.to_string(),
        })?;
        out = out.add(&GcdQuasiPolynomial::quasimonomial(&divs, power as u32, coeff * &inv_order));
    }
    Ok(out.with_period(tilde_n(data))?)
}

/// F(q) written in the basis of irreducible characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantQuasiPolynomial {
    components: Vec<GcdQuasiPolynomial>,
    period: BigInt,
}

impl EquivariantQuasiPolynomial {
    pub fn new(components: Vec<GcdQuasiPolynomial>, period: BigInt) -> Self {
        EquivariantQuasiPolynomial { components, period }
    }

    pub fn components(&self) -> &[GcdQuasiPolynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &GcdQuasiPolynomial {
        &self.components[i]
    }

    pub fn period(&self) -> &BigInt {
        &self.period
    }

    /// Multiplicities (m(χ_1; q), …, m(χ_k; q)).
    pub fn evaluate(&self, q: &BigInt) -> Vec<BigRational> {
        self.components.iter().map(|c| c.evaluate(q)).collect()
    }

    /// (−1)^ℓ · λ · F(−q) for a permutation `twist` with χ_j ⊗ λ = χ_{twist[j]}.
    pub fn twisted_reflection(&self, twist: &[usize], dim: usize) -> EquivariantQuasiPolynomial {
        let sign = if dim % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let mut components = vec![GcdQuasiPolynomial::zero(); self.components.len()];
        for (j, comp) in self.components.iter().enumerate() {
            // coefficient of χ_j in F(-q) moves to χ_j ⊗ λ
            components[twist[j]] = comp.reflect().scale(&sign);
        }
        EquivariantQuasiPolynomial { components, period: self.period.clone() }
    }
}

pub fn equivariant_qp(
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
    data: &ClassDivisorData,
) -> Result<EquivariantQuasiPolynomial, EquivariantError> {
    let components = (0..table.len())
        .map(|i| multiplicity_qp(group, table, data, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EquivariantQuasiPolynomial { components, period: tilde_n(data) })
}

/// δ_ρ(c) = (−1)^{r(c)}, checked against det R_γ on every element and
/// located in the table.
pub fn reciprocity_character(
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
    data: &ClassDivisorData,
) -> Result<(ClassFunction, usize), EquivariantError> {
    let field = table.field();
    let signs: Vec<i32> = data.classes.iter().map(|c| if c.rank % 2 == 0 { 1 } else { -1 }).collect();
    for element in 0..group.order() {
        let det = group.element(element).determinant()?;
        let sign = signs[group.class_of(element)];
        if det != BigInt::from(sign) {
            return Err(EquivariantError::DeterminantMismatch { element, det: det.to_string(), sign });
        }
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            let ab = group.mul(a, b);
            if signs[group.class_of(ab)] != signs[group.class_of(a)] * signs[group.class_of(b)] {
                return Err(EquivariantError::NotACharacter(format!("not multiplicative on ({a}, {b})")));
            }
        }
    }
    let delta = ClassFunction::new(signs.iter().map(|&s| field.from_integer(s as i64)).collect());
    let index = table
        .position(&delta)
        .ok_or_else(|| EquivariantError::NotACharacter("no matching row in the character table".into()))?;
    Ok((delta, index))
}

/// m(λ; q), which counts orbits of L/qL whose isotropy group lies in ker λ.
pub fn orbit_count_qp(
    table: &CharacterTable,
    f: &EquivariantQuasiPolynomial,
    lambda: usize,
) -> Result<GcdQuasiPolynomial, EquivariantError> {
    if !table.is_linear(lambda) {
        return Err(EquivariantError::NotLinearCharacter(lambda));
    }
    Ok(f.component(lambda).clone())
}

/// One verification outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    /// "pass" or "fail".
    pub status: String,
    pub statement: String,
    pub method: String,
    #[serde(skip)]
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(check: &str, statement: &str, method: &str, failures: Vec<String>) -> Self {
        Verdict {
            check: check.into(),
            status: if failures.is_empty() { "pass" } else { "fail" }.into(),
            statement: statement.into(),
            method: method.into(),
            passed: failures.is_empty(),
            detail: if failures.is_empty() { "ok".into() } else { failures.join("; ") },
        }
    }
}

/// Reciprocity checks, done on constituents symbolically.
pub fn check_reciprocity(
    table: &CharacterTable,
    f: &EquivariantQuasiPolynomial,
    twist: &[usize],
    dim: usize,
) -> Vec<Verdict> {
    let sign = if dim % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let mut verdicts = Vec::with_capacity(table.len() + 2);
    for i in 0..table.len() {
        let j = twist[i];
        let lhs = f.component(j);
        let rhs = f.component(i);
        let mut failures = Vec::new();
        for (d, p) in lhs.constituents() {
            let reflected = rhs.constituent(&d).reflect().scale(&sign);
            if p != reflected {
                failures.push(format!("gcd = {d}: {} vs {}", p.render("q"), reflected.render("q")));
            }
        }
        verdicts.push(Verdict::new(
            &format!("reciprocity[{i}]"),
            &format!("m(χ_{i} ⊗ δ; q) = (-1)^ℓ m(χ_{i}; -q) with χ_{i} ⊗ δ = χ_{j}"),
            "constituent-wise polynomial identity under t ↦ -t",
            failures,
        ));
    }

    let twisted = f.twisted_reflection(twist, dim);
    let failures: Vec<String> = (0..table.len())
        .filter(|&j| !twisted.component(j).equals(f.component(j)))
        .map(|j| format!("component {j} differs"))
        .collect();
    verdicts.push(Verdict::new(
        "reciprocity-ring",
        "F(q) = (-1)^ℓ δ F(-q) in the representation ring",
        "term-level reflection, twisted by δ, compared componentwise",
        failures,
    ));

    let twice = twisted.twisted_reflection(twist, dim);
    let failures: Vec<String> = (0..table.len())
        .filter(|&j| !twice.component(j).equals(f.component(j)))
        .map(|j| format!("component {j} not restored"))
        .collect();
    verdicts.push(Verdict::new(
        "twist-involution",
        "applying the δ-twisted reflection twice returns F",
        "symbolic composition",
        failures,
    ));
    verdicts
}

/// Everything the pipeline derives from a group and its character table.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub group: FiniteMatrixGroup,
    pub table: CharacterTable,
    pub data: ClassDivisorData,
    pub period: BigInt,
    pub reciprocity: ClassFunction,
    pub reciprocity_index: usize,
    /// twist[i] = index of χ_i ⊗ δ.
    pub twist: Vec<usize>,
    pub multiplicities: EquivariantQuasiPolynomial,
}

impl Analysis {
    pub fn new(group: FiniteMatrixGroup, table: CharacterTable) -> Result<Self, EquivariantError> {
        let data = class_divisor_data(&group)?;
        let period = tilde_n(&data);
        let (reciprocity, reciprocity_index) = reciprocity_character(&group, &table, &data)?;
        let twist = (0..table.len())
            .map(|i| table.tensor_identify(i, &reciprocity))
            .collect::<Result<Vec<_>, _>>()?;
        let multiplicities = equivariant_qp(&group, &table, &data)?;
        Ok(Analysis { group, table, data, period, reciprocity, reciprocity_index, twist, multiplicities })
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn multiplicity(&self, i: usize) -> &GcdQuasiPolynomial {
        self.multiplicities.component(i)
    }

    pub fn trivial_multiplicity(&self) -> &GcdQuasiPolynomial {
        self.multiplicity(self.table.trivial_index())
    }

    /// Orbit-count quasi-polynomials for every degree-1 character.
    pub fn orbit_counts(&self) -> Vec<(usize, GcdQuasiPolynomial)> {
        (0..self.table.len())
            .filter(|&i| self.table.is_linear(i))
            .map(|i| (i, orbit_count_qp(&self.table, &self.multiplicities, i).expect("linear")))
            .collect()
    }

    pub fn reciprocity_verdicts(&self) -> Vec<Verdict> {
        check_reciprocity(&self.table, &self.multiplicities, &self.twist, self.dim())
    }

    /// Dimension identity, integrality, gcd-property, leading terms, periods
    /// and reciprocity.
    pub fn structural_verdicts(&self, q_max: i64) -> Vec<Verdict> {
        let ell = self.dim();
        let order = BigInt::from(self.group.order());
        let degrees = self.table.degrees();
        let range = format!("exact evaluation for q in 1..={q_max}");
        let mut out = Vec::new();

        let mut weighted = GcdQuasiPolynomial::zero();
        for (i, d) in degrees.iter().enumerate() {
            weighted = weighted.add(&self.multiplicity(i).scale(&BigRational::from_integer((*d).into())));
        }
        let q_ell = GcdQuasiPolynomial::quasimonomial(&[], ell as u32, BigRational::one());
        let mut failures = Vec::new();
        if !weighted.equals(&q_ell) {
            failures.push("Σ χ_i(1) m(χ_i; q) differs from q^ℓ symbolically".to_string());
        }
        for q in 1..=q_max {
            let qb = BigInt::from(q);
            if weighted.evaluate(&qb) != BigRational::from_integer(num_traits::pow(qb.clone(), ell)) {
                failures.push(format!("q = {q}"));
                break;
            }
        }
        out.push(Verdict::new(
            "dimension-identity",
            "Σ_i χ_i(1) m(χ_i; q) = q^ℓ",
            &format!("symbolic constituent comparison; {range}"),
            failures,
        ));

        let mut failures = Vec::new();
        'outer: for q in 1..=q_max {
            for (i, comp) in self.multiplicities.components().iter().enumerate() {
                let v = comp.evaluate_i64(q);
                if !v.is_integer() || v.is_negative() {
                    failures.push(format!("m(χ_{i}; {q}) = {v}"));
                    break 'outer;
                }
            }
        }
        out.push(Verdict::new("integrality", "m(χ_i; q) is a nonnegative integer for q ≥ 1", &range, failures));

        let failures = self
            .multiplicities
            .components()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.has_gcd_property())
            .map(|(i, _)| format!("χ_{i}"))
            .collect();
        out.push(Verdict::new(
            "gcd-property",
            "constituents for residues r1, r2 with gcd(ñ, r1) = gcd(ñ, r2) coincide",
            "pairwise polynomial comparison over residues 1..=ñ",
            failures,
        ));

        let mut failures = Vec::new();
        for (i, comp) in self.multiplicities.components().iter().enumerate() {
            let expected = BigRational::new(degrees[i].into(), order.clone());
            for (d, p) in comp.constituents() {
                if p.degree() != Some(ell) || p.leading_coefficient() != expected {
                    failures.push(format!("χ_{i} at gcd = {d}: {}", p.render("q")));
                }
            }
        }
        out.push(Verdict::new(
            "leading-term",
            "every constituent of m(χ_i; ·) has degree ℓ and leading coefficient χ_i(1)/|G|",
            "inspection of every constituent",
            failures,
        ));

        let trivial_period = self.trivial_multiplicity().minimal_period();
        let failures = if trivial_period == self.period {
            Vec::new()
        } else {
            vec![format!("minimal period {trivial_period}, ñ = {}", self.period)]
        };
        out.push(Verdict::new(
            "minimum-period",
            "the minimal period of m(𝟏; ·) equals ñ",
            "smallest divisor n of ñ with constituents depending only on r mod n",
            failures,
        ));

        let failures = self
            .multiplicities
            .components()
            .iter()
            .enumerate()
            .filter(|(_, c)| !(&self.period % c.minimal_period()).is_zero())
            .map(|(i, _)| format!("χ_{i}"))
            .collect();
        out.push(Verdict::new(
            "period-divides",
            "the minimal period of every m(χ_i; ·) divides ñ",
            "smallest divisor n of ñ with constituents depending only on r mod n",
            failures,
        ));

        let top = top_constituent(&self.group, &self.data);
        let actual = self.trivial_multiplicity().constituent(&self.period);
        let failures = if top == actual {
            Vec::new()
        } else {
            vec![format!("{} vs {}", actual.render("t"), top.render("t"))]
        };
        out.push(Verdict::new(
            "top-constituent",
            "the constituent of m(𝟏; ·) at r = ñ is (1/|G|) Σ_γ (Π_j e_{γ,j}) t^{ℓ - r(γ)}",
            "direct polynomial comparison",
            failures,
        ));

        out.push(Verdict::new(
            "determinant-sign",
            "det R_γ = (-1)^rank(R_γ - I) for every element, and δ is a linear character",
            "checked on every element and every pair of elements",
            Vec::new(),
        ));

        out.extend(self.reciprocity_verdicts());
        out
    }
}

/// Default verification bound max(24, 4ñ).
pub fn default_q_max(period: &BigInt) -> i64 {
    (period * 4i64).to_i64().unwrap_or(i64::MAX).max(24)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dixon::dixon_character_table;
    use crate::group::{generate_group, DEFAULT_MAX_ORDER};
    use crate::linalg::IntMatrix;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn analysis(dim: usize, gens: &[IntMatrix]) -> Analysis {
        let g = generate_group(dim, gens, DEFAULT_MAX_ORDER).unwrap();
        let t = dixon_character_table(&g).unwrap();
        Analysis::new(g, t).unwrap()
    }

    fn c6_z2() -> Analysis {
        analysis(2, &[mat(&[vec![0, 1], vec![-1, 1]])])
    }

    fn s3_a2() -> Analysis {
        analysis(2, &[mat(&[vec![-1, 1], vec![0, 1]]), mat(&[vec![0, -1], vec![1, -1]])])
    }

    fn c6_z3() -> Analysis {
        analysis(3, &[mat(&[vec![-1, -1, 0], vec![1, 0, 0], vec![0, 0, -1]])])
    }

    fn divisors_by_power(a: &Analysis) -> Vec<(usize, Vec<BigInt>)> {
        let sigma = a.group.generator_indices()[0];
        (0..a.group.element_order(sigma))
            .map(|i| {
                let c = a.data.class(a.group.class_of(a.group.pow(sigma, i)));
                (c.rank, c.divisors.clone())
            })
            .collect()
    }

    #[test]
    fn divisor_data_hexagonal_plane() {
        let a = c6_z2();
        let got = divisors_by_power(&a);
        let expected = [vec![], vec![1, 1], vec![1, 3], vec![2, 2], vec![1, 3], vec![1, 1]];
        for (i, (rank, divs)) in got.iter().enumerate() {
            assert_eq!(*rank, expected[i].len(), "σ^{i}");
            assert_eq!(divs, &expected[i].iter().map(|&e| b(e)).collect::<Vec<_>>(), "σ^{i}");
        }
        assert_eq!(tilde_n(&a.data), b(6));
    }

    #[test]
    fn divisor_data_c6_on_z3() {
        let a = c6_z3();
        let got = divisors_by_power(&a);
        assert_eq!(got[1], (3, vec![b(1), b(1), b(6)]));
        assert_eq!(got[2], (2, vec![b(1), b(3)]));
        assert_eq!(got[3], (1, vec![b(2)]));
        assert_eq!(got[0], (0, vec![]));
    }

    #[test]
    fn tilde_n_values() {
        assert_eq!(tilde_n(&s3_a2().data), b(3));
        let trivial = analysis(2, &[]);
        assert_eq!(tilde_n(&trivial.data), b(1));
    }

    #[test]
    fn fixed_point_quasimonomials() {
        let a = c6_z2();
        assert_eq!(fixed_point_qp(&a.data, 0), GcdQuasiPolynomial::quasimonomial(&[], 2, BigRational::one()));
        let sigma = a.group.generator_indices()[0];
        let c2 = a.group.class_of(a.group.pow(sigma, 2));
        assert_eq!(fixed_point_qp(&a.data, c2).evaluate_i64(3), BigRational::from_integer(b(3)));
        let z3 = c6_z3();
        let s = z3.group.generator_indices()[0];
        let c3 = z3.group.class_of(z3.group.pow(s, 3));
        assert_eq!(
            fixed_point_qp(&z3.data, c3),
            GcdQuasiPolynomial::quasimonomial(&[b(2)], 2, BigRational::one())
        );
    }

    #[test]
    fn sign_character_multiplicity() {
        let a = s3_a2();
        let m = a.multiplicity(1);
        assert_eq!(m.constituent(&b(1)), Polynomial::from_ints_over(&[2, -3, 1], 6));
        assert_eq!(m.constituent(&b(3)), Polynomial::from_ints_over(&[6, -3, 1], 6));
    }

    #[test]
    fn trivial_group_is_plain_power() {
        let a = analysis(2, &[]);
        assert_eq!(a.multiplicity(0), &GcdQuasiPolynomial::quasimonomial(&[], 2, BigRational::one()));
        assert_eq!(a.period, b(1));
    }

    #[test]
    fn reciprocity_characters() {
        let a = c6_z2();
        assert_eq!(a.reciprocity_index, a.table.trivial_index());
        let s = s3_a2();
        assert_eq!(s.reciprocity_index, 1);
        let z3 = c6_z3();
        let sigma = z3.group.generator_indices()[0];
        let k = z3.table.field();
        assert_eq!(z3.reciprocity.value(z3.group.class_of(sigma)), &k.zeta_power(3));
    }

    #[test]
    fn all_structural_checks_pass() {
        for a in [c6_z2(), s3_a2(), c6_z3(), analysis(2, &[])] {
            for v in a.structural_verdicts(default_q_max(&a.period)) {
                assert!(v.passed, "{}: {}", v.check, v.detail);
            }
        }
    }

    #[test]
    fn orbit_counts_require_linear_character() {
        let a = s3_a2();
        assert!(matches!(orbit_count_qp(&a.table, &a.multiplicities, 2), Err(EquivariantError::NotLinearCharacter(2))));
        let m = orbit_count_qp(&a.table, &a.multiplicities, 1).unwrap();
        assert_eq!(m.evaluate_i64(4), BigRational::one());
        assert_eq!(a.orbit_counts().len(), 2);
    }

    #[test]
    fn corrupted_divisors_break_integrality() {
        let a = c6_z2();
        let mut data = a.data.clone();
        let sigma = a.group.generator_indices()[0];
        let c3 = a.group.class_of(a.group.pow(sigma, 3));
        data.classes_mut()[c3].divisors = vec![b(1), b(2)];
        assert!(matches!(
            multiplicity_qp(&a.group, &a.table, &data, 0),
            Err(EquivariantError::NonIntegralMultiplicity { .. })
        ));
    }

    #[test]
    fn default_range() {
        assert_eq!(default_q_max(&b(3)), 24);
        assert_eq!(default_q_max(&b(30)), 120);
    }
}

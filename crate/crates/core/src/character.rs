//! Class functions, character tables and the operations on them that the
//! multiplicity computations need.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclotomic, CyclotomicField};
use crate::group::FiniteMatrixGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("class functions live on different groups ({left} vs {right} classes)")]
    GroupMismatch { left: usize, right: usize },
    #[error("no prime p ≡ 1 mod {exponent} found below {bound}")]
    PrimeSearchFailed { exponent: usize, bound: u64 },
    #[error("character table validation failed: {0}")]
    ValidationFailed(String),
    #[error("pointwise product of row {row} with the given character matches no row")]
    NoMatch { row: usize },
    #[error("class function is not a degree-1 character")]
    NotLinear,
    #[error("element set {0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),
    #[error("row index {0} out of range")]
    RowIndex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableSource {
    Dixon,
    User,
}

/// One cyclotomic value per conjugacy class, in the group's class order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassFunction {
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        ClassFunction { values }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn constant(field: &Arc<CyclotomicField>, classes: usize, value: i64) -> Self {
        ClassFunction { values: vec![field.from_integer(value); classes] }
    }

    pub fn pointwise_product(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        self.check_len(other)?;
        Ok(ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        self.check_len(other)?;
        Ok(ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, q: &BigRational) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    fn check_len(&self, other: &ClassFunction) -> Result<(), CharacterError> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(CharacterError::GroupMismatch { left: self.len(), right: other.len() })
        }
    }
}

/// (φ, ψ) = (1/|G|) Σ_γ φ(γ)·conj(ψ(γ)), summed classwise.
pub fn inner_product(
    group: &FiniteMatrixGroup,
    phi: &ClassFunction,
    psi: &ClassFunction,
) -> Result<Cyclotomic, CharacterError> {
    phi.check_len(psi)?;
    if phi.len() != group.class_count() {
        return Err(CharacterError::GroupMismatch { left: phi.len(), right: group.class_count() });
    }
    let field = Arc::clone(phi.values[0].field());
    let mut acc = field.zero();
    for (c, class) in group.classes().iter().enumerate() {
        let term = &phi.values[c] * &psi.values[c].conj();
        acc = &acc + &term.scale(&BigRational::from_integer(class.size().into()));
    }
    Ok(acc.scale(&BigRational::new(BigInt::one(), group.order().into())))
}

/// |G| on the identity class, 0 elsewhere.
pub fn regular_character(group: &FiniteMatrixGroup, field: &Arc<CyclotomicField>) -> ClassFunction {
    let mut values = vec![field.zero(); group.class_count()];
    values[0] = field.from_integer(group.order() as i64);
    ClassFunction { values }
}

/// Ind_H^G 𝟏, evaluated at each class representative γ as
/// #{η : η⁻¹γη ∈ H} / |H|.
pub fn induce_trivial(
    group: &FiniteMatrixGroup,
    field: &Arc<CyclotomicField>,
    subgroup: &[usize],
) -> Result<ClassFunction, CharacterError> {
    if !group.is_subgroup(subgroup) {
        return Err(CharacterError::NotASubgroup(subgroup.to_vec()));
    }
    let mut member = vec![false; group.order()];
    for &h in subgroup {
        member[h] = true;
    }
    let h_order = BigInt::from(subgroup.iter().filter(|&&h| member[h]).count());
    let values = group
        .classes()
        .iter()
        .map(|class| {
            let g = class.representative;
            let hits = (0..group.order()).filter(|&eta| member[group.conjugate(group.inv(eta), g)]).count();
            field.from_rational(BigRational::new(hits.into(), h_order.clone()))
        })
        .collect();
    Ok(ClassFunction { values })
}

/// (Res_H χ, 𝟏)_H computed by averaging χ directly over the elements of H.
pub fn restricted_trivial_multiplicity(
    group: &FiniteMatrixGroup,
    chi: &ClassFunction,
    subgroup: &[usize],
) -> Result<Cyclotomic, CharacterError> {
    if !group.is_subgroup(subgroup) {
        return Err(CharacterError::NotASubgroup(subgroup.to_vec()));
    }
    let field = Arc::clone(chi.values[0].field());
    let mut acc = field.zero();
    for &h in subgroup {
        acc = &acc + chi.value(group.class_of(h));
    }
    Ok(acc.scale(&BigRational::new(BigInt::one(), subgroup.len().into())))
}

/// The irreducible characters of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    field: Arc<CyclotomicField>,
    rows: Vec<ClassFunction>,
    degrees: Vec<u64>,
    trivial: usize,
    source: TableSource,
}

impl CharacterTable {
    /// Validates `rows` against `group` and fixes the row order.
    pub fn from_rows(
        group: &FiniteMatrixGroup,
        field: Arc<CyclotomicField>,
        mut rows: Vec<ClassFunction>,
        source: TableSource,
    ) -> Result<Self, CharacterError> {
        let k = group.class_count();
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(CharacterError::ValidationFailed(format!(
                "squareness: expected {k} rows of {k} values, got {} rows",
                rows.len()
            )));
        }
        let ones = ClassFunction::constant(&field, k, 1);
        let mut degrees = Vec::with_capacity(k);
        for (i, row) in rows.iter().enumerate() {
            let d = row
                .degree()
                .to_integer()
                .filter(BigInt::is_positive)
                .and_then(|d| d.to_u64())
                .ok_or_else(|| CharacterError::ValidationFailed(format!("degree: row {i} has χ(1) = {}", row.degree())))?;
            degrees.push(d);
        }
        // Sort by (degree, trivial first, values).
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| (degrees[a], rows[a] != ones, &rows[a]).cmp(&(degrees[b], rows[b] != ones, &rows[b])));
        degrees = order.iter().map(|&i| degrees[i]).collect();
        let mut slots: Vec<Option<ClassFunction>> = rows.drain(..).map(Some).collect();
        rows = order.iter().map(|&i| slots[i].take().expect("permutation")).collect();

        let trivial = rows
            .iter()
            .position(|r| *r == ones)
            .ok_or_else(|| CharacterError::ValidationFailed("trivial character missing".into()))?;
        let table = CharacterTable { field, rows, degrees, trivial, source };
        table.validate(group)?;
        Ok(table)
    }

    fn validate(&self, group: &FiniteMatrixGroup) -> Result<(), CharacterError> {
        let k = self.rows.len();
        let sum_sq: u128 = self.degrees.iter().map(|&d| (d as u128) * (d as u128)).sum();
        if sum_sq != group.order() as u128 {
            return Err(CharacterError::ValidationFailed(format!(
                "degrees: Σ χ(1)² = {sum_sq} but |G| = {}",
                group.order()
            )));
        }
        for i in 0..k {
            for j in i..k {
                let ip = inner_product(group, &self.rows[i], &self.rows[j])?;
                let expected = if i == j { self.field.one() } else { self.field.zero() };
                if ip != expected {
                    return Err(CharacterError::ValidationFailed(format!(
                        "orthogonality: (χ_{i}, χ_{j}) = {ip}"
                    )));
                }
            }
        }
        // Column orthogonality: Σ_i χ_i(a)·conj(χ_i(b)) = δ_ab |G|/|C_a|.
        let sizes = group.class_sizes();
        for a in 0..k {
            for b in a..k {
                let mut acc = self.field.zero();
                for row in &self.rows {
                    acc = &acc + &(row.value(a) * &row.value(b).conj());
                }
                let expected = if a == b {
                    self.field.from_integer((group.order() / sizes[a]) as i64)
                } else {
                    self.field.zero()
                };
                if acc != expected {
                    return Err(CharacterError::ValidationFailed(format!(
                        "column orthogonality fails for classes {a}, {b}: {acc}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    pub fn position(&self, f: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r == f)
    }

    pub fn is_linear(&self, i: usize) -> bool {
        self.degrees.get(i) == Some(&1)
    }

    /// Index of the row equal to χ_i ⊗ λ for a degree-1 character λ.
    pub fn tensor_identify(&self, i: usize, lambda: &ClassFunction) -> Result<usize, CharacterError> {
        if !lambda.degree().to_integer().is_some_and(|d| d.is_one()) {
            return Err(CharacterError::NotLinear);
        }
        let row = self.rows.get(i).ok_or(CharacterError::RowIndex(i))?;
        let product = row.pointwise_product(lambda)?;
        self.position(&product).ok_or(CharacterError::NoMatch { row: i })
    }

    /// Serializable form following the documented table schema.
    pub fn to_raw(&self, group: &FiniteMatrixGroup) -> RawCharacterTable {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.values()
                    .iter()
                    .map(|v| v.power_coefficients().iter().map(rational_pair).collect())
                    .collect()
            })
            .collect();
        RawCharacterTable {
            conductor: self.field.conductor(),
            classes: group.classes().iter().map(|c| c.representative).collect(),
            rows,
        }
    }
}

fn rational_pair(q: &BigRational) -> (i64, i64) {
    (q.numer().to_i64().expect("character coefficient fits in i64"), q.denom().to_i64().expect("denominator fits in i64"))
}

/// `{"conductor": m, "classes": [representative element indices],
///   "rows": [[[num, den] per ζ_m-power] per class] per character]}`
///
/// The conductor must divide the group exponent. Columns may come in any
/// order; each entry of `classes` names one element of the column's class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCharacterTable {
    pub conductor: u64,
    pub classes: Vec<usize>,
    pub rows: Vec<Vec<Vec<(i64, i64)>>>,
}

/// Builds and validates a table from user-supplied values.
pub fn ingest_character_table(group: &FiniteMatrixGroup, raw: &RawCharacterTable) -> Result<CharacterTable, CharacterError> {
    let k = group.class_count();
    let exponent = group.exponent() as u64;
    if raw.conductor == 0 || exponent % raw.conductor != 0 {
        return Err(CharacterError::ValidationFailed(format!(
            "conductor {} does not divide the group exponent {exponent}",
            raw.conductor
        )));
    }
    if raw.classes.len() != k || raw.rows.len() != k {
        return Err(CharacterError::ValidationFailed(format!(
            "squareness: group has {k} classes, table has {} columns and {} rows",
            raw.classes.len(),
            raw.rows.len()
        )));
    }
    let mut column_of_class = vec![usize::MAX; k];
    for (col, &elem) in raw.classes.iter().enumerate() {
        if elem >= group.order() {
            return Err(CharacterError::ValidationFailed(format!("class column {col} names element {elem}")));
        }
        let c = group.class_of(elem);
        if column_of_class[c] != usize::MAX {
            return Err(CharacterError::ValidationFailed(format!("two columns name class {c}")));
        }
        column_of_class[c] = col;
    }

    let field = CyclotomicField::new(exponent);
    let stretch = (exponent / raw.conductor) as usize;
    let mut rows = Vec::with_capacity(k);
    for (i, raw_row) in raw.rows.iter().enumerate() {
        if raw_row.len() != k {
            return Err(CharacterError::ValidationFailed(format!("squareness: row {i} has {} values", raw_row.len())));
        }
        let mut values = Vec::with_capacity(k);
        for &col in &column_of_class {
            let entry = &raw_row[col];
            let mut coeffs = vec![BigRational::zero(); exponent as usize];
            for (p, &(num, den)) in entry.iter().enumerate() {
                if den == 0 {
                    return Err(CharacterError::ValidationFailed(format!("row {i}: zero denominator")));
                }
                coeffs[(p * stretch) % exponent as usize] += BigRational::new(num.into(), den.into());
            }
            values.push(field.from_power_coefficients(coeffs));
        }
        rows.push(ClassFunction::new(values));
    }
    CharacterTable::from_rows(group, field, rows, TableSource::User)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, DEFAULT_MAX_ORDER};
    use crate::linalg::IntMatrix;

    fn s3() -> FiniteMatrixGroup {
        let tau = IntMatrix::from_rows(&[vec![-1, 1], vec![0, 1]]).unwrap();
        let sigma = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]).unwrap();
        generate_group(2, &[tau, sigma], DEFAULT_MAX_ORDER).unwrap()
    }

    fn c6() -> FiniteMatrixGroup {
        generate_group(2, &[IntMatrix::from_rows(&[vec![0, 1], vec![-1, 1]]).unwrap()], DEFAULT_MAX_ORDER).unwrap()
    }

    fn int_entry(n: i64) -> Vec<(i64, i64)> {
        vec![(n, 1)]
    }

    fn s3_raw() -> RawCharacterTable {
        // Columns: id, τ, σ.
        RawCharacterTable {
            conductor: 1,
            classes: vec![0, 1, 2],
            rows: vec![
                vec![int_entry(1), int_entry(1), int_entry(1)],
                vec![int_entry(1), int_entry(-1), int_entry(1)],
                vec![int_entry(2), int_entry(0), int_entry(-1)],
            ],
        }
    }

    /// χ^j(σ^i) = ζ_6^{ij}, columns listed by element index of σ^i.
    pub(crate) fn c6_raw(group: &FiniteMatrixGroup) -> RawCharacterTable {
        let sigma = group.generator_indices()[0];
        let classes: Vec<usize> = (0..6).map(|i| group.pow(sigma, i)).collect();
        let rows = (0..6)
            .map(|j| {
                (0..6)
                    .map(|i| {
                        let mut v = vec![(0, 1); 6];
                        v[(i * j) % 6] = (1, 1);
                        v
                    })
                    .collect()
            })
            .collect();
        RawCharacterTable { conductor: 6, classes, rows }
    }

    #[test]
    fn inner_products_basic() {
        let g = c6();
        let t = ingest_character_table(&g, &c6_raw(&g)).unwrap();
        let one = t.row(t.trivial_index());
        assert_eq!(inner_product(&g, one, one).unwrap(), t.field().one());
        let reg = regular_character(&g, t.field());
        assert_eq!(inner_product(&g, &reg, one).unwrap(), t.field().one());
        for i in 0..6 {
            for j in 0..6 {
                let ip = inner_product(&g, t.row(i), t.row(j)).unwrap();
                assert_eq!(ip.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn regular_character_values() {
        let g = s3();
        let t = ingest_character_table(&g, &s3_raw()).unwrap();
        let reg = regular_character(&g, t.field());
        assert_eq!(reg.value(0), &t.field().from_integer(6));
        assert!(reg.value(1).is_zero() && reg.value(2).is_zero());
        let mut sum = ClassFunction::constant(t.field(), 3, 0);
        for (i, row) in t.rows().iter().enumerate() {
            sum = sum.add(&row.scale(&BigRational::from_integer(t.degrees()[i].into()))).unwrap();
        }
        assert_eq!(sum, reg);
    }

    #[test]
    fn degrees_and_trivial_row() {
        let g = s3();
        let t = ingest_character_table(&g, &s3_raw()).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(t.trivial_index(), 0);
        assert_eq!(t.source(), TableSource::User);
    }

    #[test]
    fn ingest_rejects_duplicate_row() {
        let g = s3();
        let mut raw = s3_raw();
        raw.rows[1] = raw.rows[0].clone();
        let err = ingest_character_table(&g, &raw).unwrap_err();
        assert!(matches!(err, CharacterError::ValidationFailed(ref m) if m.contains("orthogonality") || m.contains("degrees")), "{err}");
    }

    #[test]
    fn ingest_rejects_wrong_row_count() {
        let g = s3();
        let mut raw = s3_raw();
        raw.rows.pop();
        let err = ingest_character_table(&g, &raw).unwrap_err();
        assert!(matches!(err, CharacterError::ValidationFailed(ref m) if m.contains("squareness")));
    }

    #[test]
    fn ingest_column_permutation() {
        let g = s3();
        let mut raw = s3_raw();
        raw.classes = vec![2, 0, 1];
        for row in &mut raw.rows {
            row.rotate_right(1);
        }
        assert_eq!(ingest_character_table(&g, &raw).unwrap(), ingest_character_table(&g, &s3_raw()).unwrap());
    }

    #[test]
    fn tensor_identification() {
        let g = s3();
        let t = ingest_character_table(&g, &s3_raw()).unwrap();
        let sign = t.row(1).clone();
        assert_eq!(t.tensor_identify(0, &sign).unwrap(), 1);
        assert_eq!(t.tensor_identify(2, &sign).unwrap(), 2);
        let one = t.row(0).clone();
        for i in 0..3 {
            assert_eq!(t.tensor_identify(i, &one).unwrap(), i);
        }
        assert_eq!(t.tensor_identify(0, t.row(2)).unwrap_err(), CharacterError::NotLinear);
    }

    #[test]
    fn induction_from_subgroups() {
        let g = s3();
        let t = ingest_character_table(&g, &s3_raw()).unwrap();
        let f = t.field();
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(induce_trivial(&g, f, &all).unwrap(), ClassFunction::constant(f, 3, 1));
        assert_eq!(induce_trivial(&g, f, &[0]).unwrap(), regular_character(&g, f));
        let h = g.subgroup_generated(&[1]);
        let ind = induce_trivial(&g, f, &h).unwrap();
        let expected = ClassFunction::new(vec![f.from_integer(3), f.from_integer(1), f.from_integer(0)]);
        assert_eq!(ind, expected);
        assert!(matches!(induce_trivial(&g, f, &[0, 1, 2]), Err(CharacterError::NotASubgroup(_))));
    }

    #[test]
    fn raw_table_round_trip() {
        let g = c6();
        let t = ingest_character_table(&g, &c6_raw(&g)).unwrap();
        assert_eq!(ingest_character_table(&g, &t.to_raw(&g)).unwrap(), t);
    }
}

//! Brute-force enumeration of (ℤ/qℤ)^ℓ under the group action, used as an
//! independent check of the symbolic pipeline.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::character::CharacterTable;
use crate::equivariant::{fixed_point_qp, Analysis, Verdict};
use crate::group::FiniteMatrixGroup;

pub const DEFAULT_POINT_CAP: u64 = 2_000_000;

/// Cap on q^ℓ, overridable through `EQUICHAR_MAX_POINTS`.
pub fn point_cap() -> u64 {
    std::env::var("EQUICHAR_MAX_POINTS").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_POINT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("q^ℓ = {q}^{dim} exceeds the enumeration cap {cap}")]
    EnumerationCapExceeded { q: u64, dim: usize, cap: u64 },
    #[error("modulus must be positive, got {0}")]
    InvalidModulus(u64),
    #[error("character {0} is not linear")]
    NotLinear(usize),
    #[error("brute-force multiplicity of χ_{index} at q = {q} is {value}, not an integer")]
    NonIntegral { index: usize, q: u64, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: u64,
    pub size: u64,
    /// Element indices fixing the representative.
    pub isotropy: Vec<usize>,
}

/// Complete orbit decomposition of (ℤ/qℤ)^ℓ at one q.
#[derive(Debug, Clone)]
pub struct ActionData {
    pub q: u64,
    pub dim: usize,
    pub orbits: Vec<Orbit>,
    /// Fixed points of each class representative, in class order.
    pub class_fixed: Vec<u64>,
}

struct ReducedAction {
    q: u64,
    dim: usize,
    mats: Vec<Vec<u64>>,
}

impl ReducedAction {
    fn new(group: &FiniteMatrixGroup, q: u64) -> Self {
        let qb = BigInt::from(q);
        let mats = group
            .elements()
            .iter()
            .map(|m| m.entries().iter().map(|a| a.mod_floor(&qb).to_u64().expect("reduced")).collect())
            .collect();
        ReducedAction { q, dim: group.dim(), mats }
    }

    fn decode(&self, mut x: u64, out: &mut [u64]) {
        for slot in out.iter_mut() {
            *slot = x % self.q;
            x /= self.q;
        }
    }

    fn apply(&self, element: usize, x: &[u64]) -> u64 {
        let m = &self.mats[element];
        let mut index = 0u64;
        for i in (0..self.dim).rev() {
            let mut acc = 0u128;
            for (j, xj) in x.iter().enumerate() {
                acc += m[i * self.dim + j] as u128 * *xj as u128;
            }
            index = index * self.q + (acc % self.q as u128) as u64;
        }
        index
    }
}

/// Enumerates L/qL, splitting it into orbits and counting fixed points of
/// every class representative.
pub fn enumerate_action(group: &FiniteMatrixGroup, q: u64, cap: u64) -> Result<ActionData, OracleError> {
    if q == 0 {
        return Err(OracleError::InvalidModulus(q));
    }
    let dim = group.dim();
    let total = (0..dim)
        .try_fold(1u64, |acc, _| acc.checked_mul(q))
        .filter(|&t| t <= cap)
        .ok_or(OracleError::EnumerationCapExceeded { q, dim, cap })?;
    let action = ReducedAction::new(group, q);
    let mut buf = vec![0u64; dim];

    let mut visited = vec![false; total as usize];
    let mut orbits = Vec::new();
    let mut queue = Vec::new();
    for start in 0..total {
        if visited[start as usize] {
            continue;
        }
        visited[start as usize] = true;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            action.decode(queue[head], &mut buf);
            head += 1;
            for &g in group.generator_indices() {
                let y = action.apply(g, &buf);
                if !visited[y as usize] {
                    visited[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        action.decode(start, &mut buf);
        let isotropy = (0..group.order()).filter(|&g| action.apply(g, &buf) == start).collect();
        orbits.push(Orbit { representative: start, size: queue.len() as u64, isotropy });
    }

    let class_fixed = group
        .classes()
        .iter()
        .map(|c| {
            (0..total)
                .filter(|&x| {
                    action.decode(x, &mut buf);
                    action.apply(c.representative, &buf) == x
                })
                .count() as u64
        })
        .collect();
    Ok(ActionData { q, dim, orbits, class_fixed })
}

/// Fixed points of an arbitrary element.
pub fn fixed_point_count(group: &FiniteMatrixGroup, element: usize, q: u64) -> u64 {
    let action = ReducedAction::new(group, q);
    let total = q.pow(group.dim() as u32);
    let mut buf = vec![0u64; group.dim()];
    (0..total)
        .filter(|&x| {
            action.decode(x, &mut buf);
            action.apply(element, &buf) == x
        })
        .count() as u64
}

/// ⟨χ_i, χ_{L/qL}⟩ from enumerated fixed-point counts.
pub fn brute_multiplicities(
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
    action: &ActionData,
) -> Result<Vec<BigInt>, OracleError> {
    let field = table.field();
    (0..table.len())
        .map(|i| {
            let mut acc = field.zero();
            for (ci, class) in group.classes().iter().enumerate() {
                // χ(c)* = χ(c⁻¹); permutation character values are rational
                let w = BigRational::from_integer(BigInt::from(class.size()) * action.class_fixed[ci]);
                acc = &acc + &table.row(i).value(ci).conj().scale(&w);
            }
            let value = acc
                .to_rational()
                .map(|r| r / BigRational::from_integer(group.order().into()))
                .filter(|r| r.is_integer())
                .ok_or_else(|| OracleError::NonIntegral { index: i, q: action.q, value: acc.to_string() })?;
            Ok(value.to_integer())
        })
        .collect()
}

/// Number of orbits whose isotropy group lies in ker λ.
pub fn brute_orbit_count_for_lambda(
    group: &FiniteMatrixGroup,
    table: &CharacterTable,
    lambda: usize,
    action: &ActionData,
) -> Result<u64, OracleError> {
    if !table.is_linear(lambda) {
        return Err(OracleError::NotLinear(lambda));
    }
    let one = table.field().one();
    let row = table.row(lambda);
    Ok(action
        .orbits
        .iter()
        .filter(|o| o.isotropy.iter().all(|&g| row.value(group.class_of(g)) == &one))
        .count() as u64)
}

/// Compares the symbolic results in `analysis` against enumeration for
/// q = 1..=q_max and reports the first mismatch of each kind.
pub fn differential_check(analysis: &Analysis, q_max: u64, cap: u64) -> Result<Vec<Verdict>, OracleError> {
    let group = &analysis.group;
    let table = &analysis.table;
    let linear = analysis.orbit_counts();
    let mut fixed = Vec::new();
    let mut mult = Vec::new();
    let mut orbits = Vec::new();
    let mut burnside = Vec::new();
    let mut stabilizer = Vec::new();
    let mut constancy = Vec::new();

    for q in 1..=q_max {
        let action = enumerate_action(group, q, cap)?;
        let qb = BigInt::from(q);

        if fixed.is_empty() {
            for (ci, &count) in action.class_fixed.iter().enumerate() {
                let predicted = fixed_point_qp(&analysis.data, ci).evaluate(&qb);
                if predicted != BigRational::from_integer(count.into()) {
                    fixed.push(format!("first mismatch at q = {q}, class {ci}: predicted {predicted}, counted {count}"));
                    break;
                }
            }
        }

        if mult.is_empty() {
            let brute = brute_multiplicities(group, table, &action)?;
            for (i, value) in brute.iter().enumerate() {
                let predicted = analysis.multiplicity(i).evaluate(&qb);
                if predicted != BigRational::from_integer(value.clone()) {
                    mult.push(format!("first mismatch at q = {q}, χ_{i}: predicted {predicted}, counted {value}"));
                    break;
                }
            }
        }

        if orbits.is_empty() {
            for (lambda, qp) in &linear {
                let count = brute_orbit_count_for_lambda(group, table, *lambda, &action)?;
                let predicted = qp.evaluate(&qb);
                if predicted != BigRational::from_integer(count.into()) {
                    orbits.push(format!("first mismatch at q = {q}, λ = χ_{lambda}: predicted {predicted}, counted {count}"));
                    break;
                }
            }
        }

        if burnside.is_empty() {
            let sum: BigInt = group
                .classes()
                .iter()
                .zip(&action.class_fixed)
                .map(|(c, &f)| BigInt::from(c.size()) * f)
                .sum();
            let (quot, rem) = sum.div_rem(&BigInt::from(group.order()));
            if !rem.is_zero() || quot != BigInt::from(action.orbits.len()) {
                burnside.push(format!("q = {q}: Σ|c|·fix/|G| = {sum}/{}, orbits {}", group.order(), action.orbits.len()));
            }
        }

        if stabilizer.is_empty() {
            let total: u64 = action.orbits.iter().map(|o| o.size).sum();
            let bad = action.orbits.iter().find(|o| o.size * o.isotropy.len() as u64 != group.order() as u64);
            if let Some(o) = bad {
                stabilizer.push(format!("q = {q}: orbit of {} has size {} and isotropy {}", o.representative, o.size, o.isotropy.len()));
            } else if total != q.pow(action.dim as u32) {
                stabilizer.push(format!("q = {q}: orbits cover {total} points"));
            }
        }

        // Small q only: fixed counts of every element, not just representatives.
        if constancy.is_empty() && q <= 6 {
            for x in 0..group.order() {
                let expected = action.class_fixed[group.class_of(x)];
                let got = fixed_point_count(group, x, q);
                if got != expected {
                    constancy.push(format!("q = {q}: element {x} fixes {got}, its class representative {expected}"));
                    break;
                }
            }
        }
    }

    let method = format!("brute-force enumeration of (ℤ/qℤ)^ℓ for q in 1..={q_max}");
    Ok(vec![
        Verdict::new("oracle-fixed-points", "k_c(q) = Π_j gcd(e_{c,j}, q) · q^{ℓ - r(c)}", &method, fixed),
        Verdict::new("oracle-multiplicities", "symbolic m(χ_i; q) agrees with ⟨χ_i, χ_{L/qL}⟩", &method, mult),
        Verdict::new("oracle-orbit-counts", "m(λ; q) counts the orbits with isotropy in ker λ", &method, orbits),
        Verdict::new("oracle-burnside", "orbit count equals (1/|G|) Σ_c |c| fix(c)", &method, burnside),
        Verdict::new("oracle-orbit-stabilizer", "|orbit| · |isotropy| = |G| and orbits partition L/qL", &method, stabilizer),
        Verdict::new(
            "oracle-class-constancy",
            "fixed-point counts are constant on conjugacy classes",
            "enumeration for every element, q ≤ 6",
            constancy,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dixon::dixon_character_table;
    use crate::group::{generate_group, DEFAULT_MAX_ORDER};
    use crate::linalg::IntMatrix;

    fn c6_z2() -> Analysis {
        let sigma = IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 1]]).unwrap();
        let g = generate_group(2, &[sigma], DEFAULT_MAX_ORDER).unwrap();
        let t = dixon_character_table(&g).unwrap();
        Analysis::new(g, t).unwrap()
    }

    #[test]
    fn orbit_counts_small_q() {
        let a = c6_z2();
        // q = 2: 0 fixed, {(1,0),(0,1),(1,1)} one orbit
        let act = enumerate_action(&a.group, 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(act.orbits.len(), 2);
        let act = enumerate_action(&a.group, 7, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(act.orbits.len(), 1 + 48 / 6);
    }

    #[test]
    fn cap_is_enforced() {
        let a = c6_z2();
        assert_eq!(
            enumerate_action(&a.group, 100, 1000).unwrap_err(),
            OracleError::EnumerationCapExceeded { q: 100, dim: 2, cap: 1000 }
        );
        assert_eq!(enumerate_action(&a.group, 0, 1000).unwrap_err(), OracleError::InvalidModulus(0));
    }

    #[test]
    fn differential_check_passes() {
        let a = c6_z2();
        for v in differential_check(&a, 24, DEFAULT_POINT_CAP).unwrap() {
            assert!(v.passed, "{}: {}", v.check, v.detail);
        }
    }

    #[test]
    fn corrupted_divisors_are_caught() {
        let mut a = c6_z2();
        let sigma = a.group.generator_indices()[0];
        let c3 = a.group.class_of(a.group.pow(sigma, 3));
        a.data.classes_mut()[c3].divisors = vec![BigInt::from(1), BigInt::from(2)];
        let verdicts = differential_check(&a, 12, DEFAULT_POINT_CAP).unwrap();
        let fixed = verdicts.iter().find(|v| v.check == "oracle-fixed-points").unwrap();
        assert!(!fixed.passed);
        assert!(fixed.detail.contains("q = 2"), "{}", fixed.detail);
    }
}

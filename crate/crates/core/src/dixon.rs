//! Dixon's method: class-algebra structure constants, simultaneous
//! eigenvectors over F_p, and the lift of the modular characters to exact
//! cyclotomic values.

use num_rational::BigRational;
use num_traits::Zero;

use crate::character::{CharacterError, CharacterTable, ClassFunction, TableSource};
use crate::cyclotomic::CyclotomicField;
use crate::group::FiniteMatrixGroup;

const PRIME_SEARCH_BOUND: u64 = 1 << 31;

#[derive(Debug, Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.0 != 0);
        self.pow(a, self.0 - 2)
    }
    fn reduce(self, n: u64) -> u64 {
        n % self.0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p ≡ 1 (mod exponent) with p > 2√|G|.
pub fn dixon_prime(exponent: usize, order: usize) -> Result<u64, CharacterError> {
    let e = exponent as u64;
    let mut p = e + 1;
    while p < PRIME_SEARCH_BOUND {
        if (p as u128) * (p as u128) > 4 * order as u128 && is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(CharacterError::PrimeSearchFailed { exponent, bound: PRIME_SEARCH_BOUND })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(f: Fp) -> u64 {
    let p = f.0;
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| f.pow(g, (p - 1) / q) != 1))
        .unwrap_or(1)
}

/// Basis of the null space of a `rows × cols` matrix over F_p.
fn kernel(f: Fp, mut m: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let v = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], v);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (pr, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.sub(0, m[pr][fc]);
            }
            v
        })
        .collect()
}

/// a[j][r][c] = #{x ∈ C_j : x⁻¹ g_c ∈ C_r}, the coefficient of C_c in C_j·C_r.
fn structure_constants(group: &FiniteMatrixGroup) -> Vec<Vec<Vec<u64>>> {
    let k = group.class_count();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (j, cj) in group.classes().iter().enumerate() {
        for (c, cc) in group.classes().iter().enumerate() {
            for &x in &cj.elements {
                let y = group.mul(group.inv(x), cc.representative);
                a[j][group.class_of(y)][c] += 1;
            }
        }
    }
    a
}

/// Splits F_p^k into the common eigenlines of the class matrices.
fn common_eigenvectors(f: Fp, constants: &[Vec<Vec<u64>>]) -> Result<Vec<Vec<u64>>, CharacterError> {
    let k = constants.len();
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for mat in constants.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            // image[r][b] = (M · basis_b)[r]
            let image: Vec<Vec<u64>> = (0..k)
                .map(|r| {
                    basis
                        .iter()
                        .map(|v| (0..k).fold(0, |acc, c| f.add(acc, f.mul(f.reduce(mat[r][c]), v[c]))))
                        .collect()
                })
                .collect();
            let mut found = 0;
            for lambda in 0..f.0 {
                let system: Vec<Vec<u64>> = (0..k)
                    .map(|r| (0..d).map(|b| f.sub(image[r][b], f.mul(lambda, basis[b][r]))).collect())
                    .collect();
                let ker = kernel(f, system, d);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| (0..k).map(|r| (0..d).fold(0, |acc, b| f.add(acc, f.mul(c[b], basis[b][r])))).collect())
                    .collect();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(CharacterError::ValidationFailed(format!(
                    "class matrix not diagonalizable over F_{} ({found} of {d} dimensions split)",
                    f.0
                )));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(CharacterError::ValidationFailed("class matrices do not separate all characters".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().expect("one vector")).collect())
}

/// Full irreducible character table of `group` by Dixon's method.
pub fn dixon_character_table(group: &FiniteMatrixGroup) -> Result<CharacterTable, CharacterError> {
    let order = group.order();
    let exponent = group.exponent();
    let k = group.class_count();
    let p = dixon_prime(exponent, order)?;
    let f = Fp(p);
    let omega = f.pow(primitive_root(f), (p - 1) / exponent as u64);

    let constants = structure_constants(group);
    let vectors = common_eigenvectors(f, &constants)?;
    let sizes = group.class_sizes();
    let inverse_class = group.inverse_classes();

    // Class of g_c^t for t = 0..exponent.
    let power_classes: Vec<Vec<usize>> = group
        .classes()
        .iter()
        .map(|c| (0..exponent).map(|t| group.class_of(group.pow(c.representative, t))).collect())
        .collect();

    let field = CyclotomicField::new(exponent as u64);
    let inv_e = f.inv(exponent as u64 % p);
    let mut rows = Vec::with_capacity(k);
    for v in vectors {
        // Normalise the central character to value 1 on the identity class.
        if v[0] == 0 {
            return Err(CharacterError::ValidationFailed("eigenvector vanishes on the identity".into()));
        }
        let scale = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();

        // Σ_c w(c) w(c*) / |C_c| = |G| / χ(1)².
        let s = (0..k).fold(0, |acc, c| {
            f.add(acc, f.mul(f.mul(w[c], w[inverse_class[c]]), f.inv(sizes[c] as u64 % p)))
        });
        let target = f.mul(order as u64 % p, f.inv(s));
        let degree = (1..=order as u64)
            .take_while(|d| d * d <= order as u64)
            .find(|&d| f.mul(d, d) == target)
            .ok_or_else(|| CharacterError::ValidationFailed("no degree matches the modular norm".into()))?;

        let modular: Vec<u64> = (0..k).map(|c| f.mul(f.mul(degree, w[c]), f.inv(sizes[c] as u64 % p))).collect();

        let mut values = Vec::with_capacity(k);
        for pc in &power_classes {
            // Eigenvalue multiplicities of ρ(g): μ_s = (1/e) Σ_t χ(g^t) ω^{-st}.
            let mut coeffs = vec![BigRational::zero(); exponent];
            for (s, coeff) in coeffs.iter_mut().enumerate() {
                let mut mu = 0;
                for (t, &cls) in pc.iter().enumerate() {
                    let e = (exponent - (s * t) % exponent) % exponent;
                    mu = f.add(mu, f.mul(modular[cls], f.pow(omega, e as u64)));
                }
                let mu = f.mul(mu, inv_e);
                if mu > degree {
                    return Err(CharacterError::ValidationFailed(format!(
                        "eigenvalue multiplicity {mu} exceeds the degree {degree}"
                    )));
                }
                *coeff = BigRational::from_integer(mu.into());
            }
            values.push(field.from_power_coefficients(coeffs));
        }
        rows.push(ClassFunction::new(values));
    }
    CharacterTable::from_rows(group, field, rows, TableSource::Dixon)
}

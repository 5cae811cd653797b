//! Univariate polynomials with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients low → high with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `(Σ numerators[k] t^k) / denominator`
    pub fn from_ints_over(numerators: &[i64], denominator: i64) -> Self {
        let d = BigInt::from(denominator);
        Polynomial::from_coeffs(numerators.iter().map(|&c| BigRational::new(c.into(), d.clone())).collect())
    }

    pub fn monomial(coeff: BigRational, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = coeff;
        Polynomial::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(t.clone()))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// p(t) ↦ p(−t)
    pub fn reflect(&self) -> Polynomial {
        Polynomial::from_coeffs(
            self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect(),
        )
    }

    /// Least common denominator D and the integer coefficients of D·p.
    pub fn integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self.coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        (den, nums)
    }

    /// Plain-text rendering in the variable `var`, e.g. `(q^2 + 3q + 2)/6`.
    pub fn render(&self, var: &str) -> String {
        let (den, nums) = self.integer_form();
        let body = render_integer_poly(&nums, var, false);
        if den.is_one() {
            body
        } else if nums.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({body})/{den}")
        } else {
            format!("{body}/{den}")
        }
    }

    /// LaTeX rendering, e.g. `\dfrac{1}{6}(q^2 + 3q + 2)`.
    pub fn render_latex(&self, var: &str) -> String {
        let (den, nums) = self.integer_form();
        let body = render_integer_poly(&nums, var, true);
        if den.is_one() {
            body
        } else if nums.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("\\dfrac{{1}}{{{den}}}({body})")
        } else {
            format!("\\dfrac{{1}}{{{den}}}{body}")
        }
    }
}

fn render_integer_poly(nums: &[BigInt], var: &str, latex: bool) -> String {
    let mut out = String::new();
    for (k, c) in nums.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ if latex => format!("{var}^{{{k}}}"),
            _ => format!("{var}^{k}"),
        };
        if k == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(Polynomial::from_ints_over(&[2, 3, 1], 6).render("q"), "(q^2 + 3q + 2)/6");
        assert_eq!(Polynomial::from_ints_over(&[0, 0, 1], 6).render("q"), "q^2/6");
        assert_eq!(Polynomial::from_ints_over(&[-12, 6, -2, 1], 6).render("q"), "(q^3 - 2q^2 + 6q - 12)/6");
        assert_eq!(Polynomial::zero().render("q"), "0");
        assert_eq!(Polynomial::from_ints(&[-1, 0, 1]).render("q"), "q^2 - 1");
        assert_eq!(Polynomial::from_ints_over(&[2, 3, 1], 6).render_latex("q"), "\\dfrac{1}{6}(q^{2} + 3q + 2)");
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::from_ints(&[1, 2, 3]);
        let q = Polynomial::from_ints(&[-1, -2, -3]);
        assert!(p.add(&q).is_zero());
        assert_eq!(p.reflect(), Polynomial::from_ints(&[1, -2, 3]));
        assert_eq!(p.eval_int(&BigInt::from(2)), BigRational::from_integer(17.into()));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Polynomial::zero().degree(), None);
    }
}

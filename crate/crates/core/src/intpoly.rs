//! Exact integer-coefficient polynomials and cyclotomic polynomial
//! construction.
//!
//! Dense representation, ascending degree, arbitrary-precision
//! coefficients. Multiplication is schoolbook; cyclotomic inputs stay small
//! enough (n up to a few thousand) that nothing fancier is warranted.
//! Karatsuba would slot into [`IntPolynomial::mul`] if that ever changes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, MulDivExact};
use crate::error::{Error, Result};

/// Polynomial over the integers; `coeffs[k]` multiplies `x^k`.
///
/// The zero polynomial is the empty coefficient list and has no degree;
/// for anything else the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds from ascending coefficients, trimming leading zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: u64) -> Self {
        let n = n as usize;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial, which has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Schoolbook product. Exact; degrees add for nonzero inputs.
    pub fn mul(&self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn add(&self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        IntPolynomial::new(out)
    }

    /// Exact division over the integers. Errors with the offending
    /// remainder when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &IntPolynomial) -> Result<IntPolynomial> {
        if rhs.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let db = rhs.coeffs.len() - 1;
        if self.coeffs.len() - 1 < db {
            return Err(Error::InexactDivision {
                remainder: self.to_string(),
                divisor: rhs.to_string(),
            });
        }
        let lead_b = rhs.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - db];
        // Long division from the top; every quotient coefficient must be an
        // integer, otherwise the division cannot be exact over Z.
        for k in (0..quot.len()).rev() {
            let lead_r = rem[k + db].clone();
            if lead_r.is_zero() {
                continue;
            }
            let (c, leftover) = num_integer::Integer::div_rem(&lead_r, lead_b);
            if !leftover.is_zero() {
                return Err(Error::InexactDivision {
                    remainder: IntPolynomial::new(rem).to_string(),
                    divisor: rhs.to_string(),
                });
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &c * b;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        let remainder = IntPolynomial::new(rem);
        if !remainder.is_zero() {
            return Err(Error::InexactDivision {
                remainder: remainder.to_string(),
                divisor: rhs.to_string(),
            });
        }
        Ok(IntPolynomial::new(quot))
    }

    /// Evaluates at an integer point by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl MulDivExact for IntPolynomial {
    fn one() -> Self {
        IntPolynomial::one()
    }

    fn mul(&self, rhs: &Self) -> Self {
        IntPolynomial::mul(self, rhs)
    }

    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        IntPolynomial::div_exact(self, rhs)
    }
}

/// Prints in conventional descending order, e.g. `x^2 - x + 1`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => {
                    if show_coeff {
                        write!(f, "*x")?;
                    } else {
                        write!(f, "x")?;
                    }
                }
                _ => {
                    if show_coeff {
                        write!(f, "*x^{k}")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Serialized as a JSON array of decimal strings, ascending degree.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(strings.len());
        for s in &strings {
            let c: BigInt = s
                .parse()
                .map_err(|_| D::Error::custom(format!("bad integer coefficient {s:?}")))?;
            coeffs.push(c);
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

/// The n-th cyclotomic polynomial, via the multiplicative inversion of
/// `x^n - 1 = prod over d | n of Phi_d(x)`:
/// `Phi_n(x) = prod over d | n of (x^d - 1)^{mu(n/d)}`.
///
/// Monic, integer coefficients, degree `phi(n)`. The divisions are exact by
/// theory; an inexact one would be an internal inconsistency and panics.
pub fn cyclotomic(n: u64) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let f_values: BTreeMap<BigUint, IntPolynomial> = arith::divisors(&BigUint::from(n))?
        .into_iter()
        .map(|d| {
            let exp = u64::try_from(&d).expect("divisor of a u64 fits in u64");
            (d, IntPolynomial::x_pow_minus_one(exp))
        })
        .collect();
    let phi = arith::mobius_invert_multiplicative(&f_values, &BigUint::from(n))
        .expect("cyclotomic product must divide exactly");
    Ok(phi)
}

/// Checks `prod over d | n of Phi_d = x^n - 1` coefficient by coefficient.
pub fn verify_product_identity(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut prod = IntPolynomial::one();
    for d in arith::divisors(&BigUint::from(n))? {
        let d = u64::try_from(&d).expect("divisor fits");
        prod = prod.mul(&cyclotomic(d)?);
    }
    Ok(prod == IntPolynomial::x_pow_minus_one(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn mul_basics() {
        // (x - 1)(x + 1) = x^2 - 1
        assert_eq!(p(&[-1, 1]).mul(&p(&[1, 1])), p(&[-1, 0, 1]));
        // absorbing zero
        assert_eq!(p(&[3, 2, 1]).mul(&IntPolynomial::zero()), IntPolynomial::zero());
        // degree additivity
        let a = p(&[1, 2, 3]);
        let b = p(&[5, 0, 0, 7]);
        assert_eq!(a.mul(&b).degree(), Some(2 + 3));
    }

    #[test]
    fn divexact_examples() {
        let q = IntPolynomial::x_pow_minus_one(6)
            .div_exact(&IntPolynomial::x_pow_minus_one(2))
            .unwrap();
        assert_eq!(q, p(&[1, 0, 1, 0, 1]));

        let q = IntPolynomial::x_pow_minus_one(2)
            .div_exact(&p(&[-1, 1]))
            .unwrap();
        assert_eq!(q, p(&[1, 1]));

        // ((x^6 - 1)(x - 1)) / ((x^2 - 1)(x^3 - 1)) = x^2 - x + 1
        let num = IntPolynomial::x_pow_minus_one(6).mul(&p(&[-1, 1]));
        let den = IntPolynomial::x_pow_minus_one(2).mul(&IntPolynomial::x_pow_minus_one(3));
        assert_eq!(num.div_exact(&den).unwrap(), p(&[1, -1, 1]));
    }

    #[test]
    fn divexact_rejects_inexact() {
        let err = p(&[1, 0, 1]).div_exact(&p(&[-1, 1])).unwrap_err();
        match err {
            Error::InexactDivision { remainder, .. } => assert_eq!(remainder, "2"),
            other => panic!("unexpected error {other:?}"),
        }
        // exact over Q but not over Z: x / 2x
        assert!(p(&[0, 1]).div_exact(&p(&[0, 2])).is_err());
        assert!(p(&[1]).div_exact(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn mul_div_round_trip() {
        let a = p(&[3, -1, 0, 7, 2]);
        let b = p(&[-5, 1, 4]);
        assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), p(&[1, 1]));
        assert_eq!(cyclotomic(3).unwrap(), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(5).unwrap(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), p(&[1, -1, 1]));
    }

    /// Test-local long-hand construction, independent of the library path:
    /// multiply the mu = +1 factors and divide by the mu = -1 factors using
    /// naive i128 polynomial arithmetic.
    fn cyclotomic_longhand(n: u64) -> Vec<i128> {
        fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
            let mut out = vec![0i128; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }
        fn div(a: &[i128], b: &[i128]) -> Vec<i128> {
            let mut rem = a.to_vec();
            let db = b.len() - 1;
            let mut quot = vec![0i128; a.len() - db];
            for k in (0..quot.len()).rev() {
                let c = rem[k + db] / b[db];
                assert_eq!(rem[k + db] % b[db], 0);
                for (j, &bj) in b.iter().enumerate() {
                    rem[k + j] -= c * bj;
                }
                quot[k] = c;
            }
            assert!(rem.iter().all(|&c| c == 0));
            quot
        }
        fn xd1(d: u64) -> Vec<i128> {
            let mut v = vec![0i128; d as usize + 1];
            v[0] = -1;
            v[d as usize] = 1;
            v
        }
        let mut mu_values = std::collections::BTreeMap::new();
        for d in 1..=n {
            if n % d == 0 {
                let m = n / d;
                // squarefree check and prime counting by trial division
                let mut rest = m;
                let mut k = 0;
                let mut square = false;
                let mut q = 2;
                while q * q <= rest {
                    if rest % q == 0 {
                        rest /= q;
                        k += 1;
                        if rest % q == 0 {
                            square = true;
                            break;
                        }
                    }
                    q += 1;
                }
                if rest > 1 {
                    k += 1;
                }
                mu_values.insert(d, if square { 0 } else if k % 2 == 0 { 1 } else { -1 });
            }
        }
        let mut num = vec![1i128];
        let mut dens = Vec::new();
        for (&d, &mu) in &mu_values {
            if mu == 1 {
                num = mul(&num, &xd1(d));
            } else if mu == -1 {
                dens.push(xd1(d));
            }
        }
        for den in dens {
            num = div(&num, &den);
        }
        num
    }

    #[test]
    fn cyclotomic_105_has_coefficient_minus_two() {
        let longhand = cyclotomic_longhand(105);
        assert_eq!(longhand[7], -2);
        let lib = cyclotomic(105).unwrap();
        assert_eq!(lib.coeff(7), BigInt::from(-2));
        let expected: Vec<BigInt> = longhand.into_iter().map(BigInt::from).collect();
        assert_eq!(lib.coeffs(), &expected[..]);
    }

    #[test]
    fn cyclotomic_degree_is_phi() {
        for n in 1..=120u64 {
            let c = cyclotomic(n).unwrap();
            let phi = arith::euler_phi(&BigUint::from(n)).unwrap();
            assert_eq!(BigUint::from(c.degree().unwrap()), phi, "n = {n}");
            assert!(c.is_monic(), "n = {n}");
        }
    }

    #[test]
    fn product_identity_small() {
        for n in 1..=64u64 {
            assert!(verify_product_identity(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn evaluation_consistency() {
        // Phi_n(t) = prod over d | n of (t^d - 1)^{mu(n/d)} at t = 2, 3.
        for n in 1..=50u64 {
            for t in [2i64, 3] {
                let t = BigInt::from(t);
                let mut num = num_rational::BigRational::from_integer(BigInt::one());
                let mut ok = true;
                for d in arith::divisors(&BigUint::from(n)).unwrap() {
                    let d = u64::try_from(&d).unwrap();
                    let factor = t.pow(d as u32) - BigInt::one();
                    if factor.is_zero() {
                        ok = false;
                        break;
                    }
                    let factor = num_rational::BigRational::from_integer(factor);
                    match arith::mobius(&BigUint::from(n / d)).unwrap() {
                        1 => num *= &factor,
                        -1 => num /= &factor,
                        _ => {}
                    }
                }
                if ok {
                    let lhs =
                        num_rational::BigRational::from_integer(cyclotomic(n).unwrap().eval(&t));
                    assert_eq!(lhs, num, "n = {n}, t = {t}");
                }
            }
        }
    }

    #[test]
    fn display_descending() {
        assert_eq!(cyclotomic(6).unwrap().to_string(), "x^2 - x + 1");
        assert_eq!(cyclotomic(1).unwrap().to_string(), "x - 1");
        assert_eq!(p(&[2, 0, -3, 1]).to_string(), "x^3 - 3*x^2 + 2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p(&[-7]).to_string(), "-7");
    }

    #[test]
    fn json_round_trip() {
        // Phi_12 = x^4 - x^2 + 1, ascending coefficients as decimal strings.
        let c = cyclotomic(12).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"["1","0","-1","0","1"]"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}

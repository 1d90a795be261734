//! Classical multiplicative number theory: factorization, the Möbius
//! function, Euler's totient, divisor enumeration, and the additive and
//! multiplicative inversion formulas.
//!
//! All arithmetic is exact. Factorization is deterministic trial division,
//! which is comfortable up to inputs around `10^12`; there is deliberately
//! no probabilistic primality fallback.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A positive integer together with its sorted prime factorization.
///
/// Invariants: primes strictly increasing, exponents >= 1, and the product
/// of `p_i^{e_i}` equals `n`. The factor list is empty exactly for `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }
}

/// Factors `n` by deterministic trial division up to `sqrt(n)`.
///
/// Practical cap: around `10^12` (a million candidate divisors). Larger
/// inputs are accepted but take time proportional to `sqrt(n)`.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small));
    }
    // Big path: u64 trial divisors against a big remainder.
    let mut rest = n.clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in TrialDivisors::new() {
        let pb = BigUint::from(p);
        if (&pb * &pb) > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    Ok(Factorization {
        n: n.clone(),
        factors,
    })
}

fn factorize_u64(mut n: u64) -> Factorization {
    let original = BigUint::from(n);
    let mut factors = Vec::new();
    for p in TrialDivisors::new() {
        if p.checked_mul(p).map_or(true, |sq| sq > n) {
            break;
        }
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((BigUint::from(p), e));
        }
    }
    if n > 1 {
        factors.push((BigUint::from(n), 1));
    }
    Factorization {
        n: original,
        factors,
    }
}

/// Candidate divisors 2, 3, 5, 7, 11, ... via the 6k +/- 1 wheel.
struct TrialDivisors {
    next: u64,
    step: u64,
}

impl TrialDivisors {
    fn new() -> Self {
        TrialDivisors { next: 2, step: 0 }
    }
}

impl Iterator for TrialDivisors {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let out = self.next;
        self.next = match out {
            2 => 3,
            3 => 5,
            _ => {
                // alternate +2 / +4 starting from 5
                let inc = if self.step == 0 { 2 } else { 4 };
                self.step ^= 1;
                out + inc
            }
        };
        Some(out)
    }
}

/// True when `n` is prime (trial division; see [`factorize`] for the cap).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = factorize_u64(n);
    f.factors.len() == 1 && f.factors[0].1 == 1
}

/// Classical Möbius function: 1 at n = 1, 0 when a square divides n,
/// otherwise `(-1)^k` for n a product of k distinct primes.
pub fn mobius(n: &BigUint) -> Result<i8> {
    let f = factorize(n)?;
    Ok(mobius_of(&f))
}

pub fn mobius_of(f: &Factorization) -> i8 {
    if !f.is_squarefree() {
        return 0;
    }
    if f.distinct_primes() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient, computed exactly as `n / prod p * prod (p - 1)`.
pub fn euler_phi(n: &BigUint) -> Result<BigUint> {
    let f = factorize(n)?;
    Ok(euler_phi_of(&f))
}

pub fn euler_phi_of(f: &Factorization) -> BigUint {
    let mut phi = f.n.clone();
    for (p, _) in &f.factors {
        phi = phi / p * (p - 1u32);
    }
    phi
}

/// All divisors of `n`, ascending.
pub fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let f = factorize(n)?;
    Ok(divisors_of(&f))
}

/// Divisors from a factorization by mixed-radix exponent counting, then a
/// final sort for deterministic ascending output.
pub fn divisors_of(f: &Factorization) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..*e {
                power = &power * p;
                next.push(power.clone());
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Additive Möbius inversion: given `f` on the divisors of `n`, returns
/// `sum over d | n of mu(n/d) * f(d)`. When `f(n) = sum over d | n of g(d)`
/// this recovers `g(n)`.
pub fn mobius_invert_additive(f_values: &BTreeMap<BigUint, BigInt>, n: &BigUint) -> Result<BigInt> {
    let divs = divisors(n)?;
    let mut acc = BigInt::zero();
    for d in &divs {
        let fd = f_values
            .get(d)
            .ok_or_else(|| Error::MissingDivisor(d.to_string()))?;
        let quotient = n / d;
        match mobius(&quotient)? {
            1 => acc += fd,
            -1 => acc -= fd,
            _ => {}
        }
    }
    Ok(acc)
}

/// Operand of the multiplicative inversion formula: anything with a unit,
/// an exact product, and an exactness-checked division.
pub trait MulDivExact: Clone {
    fn one() -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Divides exactly, or reports why the division leaves a remainder.
    fn div_exact(&self, rhs: &Self) -> Result<Self>;
}

impl MulDivExact for BigRational {
    fn one() -> Self {
        One::one()
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self / rhs)
    }
}

/// Multiplicative Möbius inversion: `prod over d | n of f(d)^{mu(n/d)}`.
///
/// All `mu = +1` factors are multiplied first, then each `mu = -1` factor is
/// divided out, so integral operands stay integral at every step when the
/// input really is of the form `f(n) = prod g(d)`. An inexact division
/// signals inconsistent input.
pub fn mobius_invert_multiplicative<T: MulDivExact>(
    f_values: &BTreeMap<BigUint, T>,
    n: &BigUint,
) -> Result<T> {
    let divs = divisors(n)?;
    let mut numerator = T::one();
    let mut denominators = Vec::new();
    for d in &divs {
        let quotient = n / d;
        let mu = mobius(&quotient)?;
        if mu == 0 {
            continue;
        }
        let fd = f_values
            .get(d)
            .ok_or_else(|| Error::MissingDivisor(d.to_string()))?;
        if mu == 1 {
            numerator = numerator.mul(fd);
        } else {
            denominators.push(fd);
        }
    }
    let mut out = numerator;
    for fd in denominators {
        out = out.div_exact(fd)?;
    }
    Ok(out)
}

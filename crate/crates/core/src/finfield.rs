//! Arithmetic in F_p and F_{p^m}: irreducibility testing, enumeration and
//! counting of monic irreducible polynomials, multiplicative generators,
//! and explicit isomorphisms between same-cardinality fields.
//!
//! A [`FieldSpec`] is the arithmetic context: elements and polynomials are
//! plain coefficient data and every operation takes the spec, in the style
//! of a ring handle. Field sizes are desk-scale by design (`q <= 2^20`);
//! enumeration works up to `q^n <= 2^24`.
//!
//! Ordering convention, used everywhere: polynomials compare
//! lexicographically by coefficient vector from the constant term upward
//! (ties broken by degree), and field elements compare the same way on
//! their F_p coordinate vectors. "Rank" below always means position in
//! that order.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::par;
use crate::rng::SplitMix64;

/// Largest permitted field size `q = p^m`.
pub const FIELD_SIZE_CAP: u64 = 1 << 20;
/// Largest permitted candidate count `q^n` for irreducible enumeration.
pub const ENUMERATION_CAP: u64 = 1 << 24;
/// Largest permitted `q^n` when materializing `x^{q^n} - x`.
pub const XQN_PRODUCT_CAP: u64 = 1 << 16;

/// A concrete realization of F_{p^m} as `F_p[x]/(h)`.
///
/// `h` is monic of degree m and irreducible over F_p; [`FieldSpec::new`]
/// picks the lexicographically least such `h`, so constructions are
/// reproducible across runs and platforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Monic modulus over F_p, ascending, length m + 1.
    modulus: Vec<u64>,
    q: u64,
}

/// An element of F_{p^m}: its length-m coordinate vector over F_p in the
/// basis `1, w, ..., w^{m-1}`, where `w` is the class of x.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqElement {
    coeffs: Vec<u64>,
}

impl FqElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Polynomial over F_{p^m}, ascending coefficients, leading coefficient
/// nonzero unless the polynomial is zero (empty list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqPolynomial {
    coeffs: Vec<FqElement>,
}

impl FqPolynomial {
    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

impl FieldSpec {
    /// The prime field F_p, realized as `F_p[x]/(x)`.
    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > FIELD_SIZE_CAP {
            return Err(Error::FieldTooLarge {
                q: p as u128,
                cap: FIELD_SIZE_CAP as u128,
            });
        }
        Ok(FieldSpec {
            p,
            m: 1,
            modulus: vec![0, 1],
            q: p,
        })
    }

    /// F_{p^m} with the lexicographically least monic irreducible modulus
    /// of degree m over F_p. Deterministic across runs.
    pub fn new(p: u64, m: usize) -> Result<FieldSpec> {
        let base = FieldSpec::prime_field(p)?;
        if m == 0 {
            return Err(Error::ZeroInput);
        }
        if m == 1 {
            return Ok(base);
        }
        let q = (1..=m).try_fold(1u64, |acc, _| {
            acc.checked_mul(p).filter(|&v| v <= FIELD_SIZE_CAP)
        });
        let q = q.ok_or(Error::FieldTooLarge {
            q: (p as u128).pow(m as u32),
            cap: FIELD_SIZE_CAP as u128,
        })?;
        // Scan monic degree-m candidates in lex order. A candidate with zero
        // constant term is divisible by x, so start the scan past that block.
        let block = q / p; // candidates per fixed constant coefficient
        let found = par::find_first_range(block, q, |rank| {
            let f = base.monic_poly_by_rank(m, rank);
            base.is_irreducible(&f).expect("candidate has degree >= 1")
        });
        let rank = found.expect("an irreducible polynomial of every degree exists over F_p");
        let f = base.monic_poly_by_rank(m, rank);
        let modulus: Vec<u64> = f.coeffs.iter().map(|e| e.coeffs[0]).collect();
        Ok(FieldSpec { p, m, modulus, q })
    }

    /// F_{p^m} with a caller-supplied monic modulus (ascending, length
    /// m + 1). Irreducibility over F_p is checked at construction.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<FieldSpec> {
        let base = FieldSpec::prime_field(p)?;
        if modulus.len() < 2 {
            return Err(Error::ConstantPolynomial);
        }
        let m = modulus.len() - 1;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(Error::ReducibleModulus(format!(
                "{modulus:?} is not monic"
            )));
        }
        let q = (1..=m).try_fold(1u64, |acc, _| {
            acc.checked_mul(p).filter(|&v| v <= FIELD_SIZE_CAP)
        });
        let q = q.ok_or(Error::FieldTooLarge {
            q: (p as u128).pow(m as u32),
            cap: FIELD_SIZE_CAP as u128,
        })?;
        if m == 1 {
            // Every monic linear polynomial is irreducible.
            return Ok(FieldSpec { p, m, modulus, q });
        }
        let as_poly = FqPolynomial {
            coeffs: modulus.iter().map(|&c| base.constant(c)).collect(),
        };
        if !base.is_irreducible(&as_poly)? {
            return Err(Error::ReducibleModulus(format!("{modulus:?}")));
        }
        Ok(FieldSpec { p, m, modulus, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    // ---- scalar arithmetic in F_p ----

    fn fp_add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn fp_sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn fp_mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn fp_inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of 0 in F_p");
        // Fermat: a^(p-2) mod p.
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    // ---- elements of F_q ----

    pub fn zero(&self) -> FqElement {
        FqElement {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> FqElement {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> FqElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = c % self.p;
        FqElement { coeffs }
    }

    /// The class of x, i.e. the basis generator `w` of the representation.
    /// Degenerates to 0 in the prime field, where the modulus is x itself.
    pub fn representation_generator(&self) -> FqElement {
        let mut coeffs = vec![0; self.m];
        if self.m > 1 {
            coeffs[1] = 1;
        }
        FqElement { coeffs }
    }

    /// Element at `rank` in lex order (constant coordinate most
    /// significant). Ranks run over `0..q`.
    pub fn element_by_rank(&self, rank: u64) -> FqElement {
        debug_assert!(rank < self.q);
        let mut coeffs = vec![0; self.m];
        let mut r = rank;
        for k in (0..self.m).rev() {
            coeffs[k] = r % self.p;
            r /= self.p;
        }
        FqElement { coeffs }
    }

    pub fn rank_of(&self, e: &FqElement) -> u64 {
        e.coeffs.iter().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| self.fp_add(x, y))
            .collect();
        FqElement { coeffs }
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| self.fp_sub(x, y))
            .collect();
        FqElement { coeffs }
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        let coeffs = a.coeffs.iter().map(|&x| self.fp_sub(0, x)).collect();
        FqElement { coeffs }
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        if self.m == 1 {
            return FqElement {
                coeffs: vec![self.fp_mul(a.coeffs[0], b.coeffs[0])],
            };
        }
        let mut wide = vec![0u64; 2 * self.m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                wide[i + j] = (wide[i + j] + x * y) % self.p;
            }
        }
        // Reduce modulo the monic modulus: x^m = -(h_0 + ... + h_{m-1} x^{m-1}).
        for k in (self.m..wide.len()).rev() {
            let c = wide[k];
            if c == 0 {
                continue;
            }
            wide[k] = 0;
            for j in 0..self.m {
                let t = self.fp_mul(c, self.modulus[j]);
                wide[k - self.m + j] = self.fp_sub(wide[k - self.m + j], t);
            }
        }
        wide.truncate(self.m);
        FqElement { coeffs: wide }
    }

    pub fn pow(&self, base: &FqElement, mut exp: u64) -> FqElement {
        let mut acc = self.one();
        let mut base = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm on representatives,
    /// which works uniformly for the prime field and extensions.
    pub fn inv(&self, a: &FqElement) -> FqElement {
        assert!(!a.is_zero(), "inverse of 0 in F_q");
        let (g, s) = self.fp_poly_ext_gcd(&a.coeffs, &self.modulus);
        // g is a nonzero constant since the modulus is irreducible.
        debug_assert!(g.len() == 1 && g[0] != 0);
        let scale = self.fp_inv(g[0]);
        let mut coeffs: Vec<u64> = s.iter().map(|&c| self.fp_mul(c, scale)).collect();
        coeffs.resize(self.m, 0);
        FqElement { coeffs }
    }

    /// Extended gcd over F_p[x]: returns (g, s) with `s*a = g (mod b)`,
    /// g the last nonzero remainder.
    fn fp_poly_ext_gcd(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        fn trim(mut v: Vec<u64>) -> Vec<u64> {
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        }
        let mut r0 = trim(a.to_vec());
        let mut r1 = trim(b.to_vec());
        let mut s0 = vec![1u64];
        let mut s1: Vec<u64> = vec![];
        while !r1.is_empty() {
            let (quot, rem) = self.fp_poly_divmod(&r0, &r1);
            let qs1 = self.fp_poly_mul_raw(&quot, &s1);
            let next_s = trim(self.fp_poly_sub_raw(&s0, &qs1));
            r0 = r1;
            r1 = trim(rem);
            s0 = s1;
            s1 = next_s;
        }
        (r0, s0)
    }

    fn fp_poly_mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        out
    }

    fn fp_poly_sub_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|k| {
                let x = a.get(k).copied().unwrap_or(0);
                let y = b.get(k).copied().unwrap_or(0);
                self.fp_sub(x, y)
            })
            .collect()
    }

    fn fp_poly_divmod(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by zero polynomial over F_p");
        if a.len() < b.len() {
            return (vec![], a.to_vec());
        }
        let lead_inv = self.fp_inv(*b.last().unwrap());
        let mut rem = a.to_vec();
        let mut quot = vec![0u64; a.len() - b.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = self.fp_mul(rem[k + b.len() - 1], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &bj) in b.iter().enumerate() {
                let t = self.fp_mul(c, bj);
                rem[k + j] = self.fp_sub(rem[k + j], t);
            }
        }
        while rem.last() == Some(&0) {
            rem.pop();
        }
        (quot, rem)
    }

    // ---- polynomials over F_q ----

    pub fn poly_from_elements(&self, coeffs: Vec<FqElement>) -> FqPolynomial {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPolynomial { coeffs }
    }

    pub fn poly_zero(&self) -> FqPolynomial {
        FqPolynomial { coeffs: vec![] }
    }

    pub fn poly_one(&self) -> FqPolynomial {
        FqPolynomial {
            coeffs: vec![self.one()],
        }
    }

    pub fn poly_x(&self) -> FqPolynomial {
        FqPolynomial {
            coeffs: vec![self.zero(), self.one()],
        }
    }

    /// Monic polynomial of degree n at `rank` in lex order: the constant
    /// coefficient is the most significant digit, each digit an element
    /// rank. Ranks run over `0..q^n`.
    pub fn monic_poly_by_rank(&self, n: usize, rank: u64) -> FqPolynomial {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut r = rank;
        let mut digits = vec![0u64; n];
        for k in (0..n).rev() {
            digits[k] = r % self.q;
            r /= self.q;
        }
        for k in 0..n {
            coeffs.push(self.element_by_rank(digits[k]));
        }
        coeffs.push(self.one());
        FqPolynomial { coeffs }
    }

    pub fn poly_add(&self, a: &FqPolynomial, b: &FqPolynomial) -> FqPolynomial {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.zero();
        let coeffs = (0..n)
            .map(|k| {
                let x = a.coeffs.get(k).unwrap_or(&zero);
                let y = b.coeffs.get(k).unwrap_or(&zero);
                self.add(x, y)
            })
            .collect();
        self.poly_from_elements(coeffs)
    }

    pub fn poly_sub(&self, a: &FqPolynomial, b: &FqPolynomial) -> FqPolynomial {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.zero();
        let coeffs = (0..n)
            .map(|k| {
                let x = a.coeffs.get(k).unwrap_or(&zero);
                let y = b.coeffs.get(k).unwrap_or(&zero);
                self.sub(x, y)
            })
            .collect();
        self.poly_from_elements(coeffs)
    }

    pub fn poly_mul(&self, a: &FqPolynomial, b: &FqPolynomial) -> FqPolynomial {
        if a.is_zero() || b.is_zero() {
            return self.poly_zero();
        }
        let mut out = vec![self.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.mul(x, y);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        self.poly_from_elements(out)
    }

    pub fn poly_divmod(&self, a: &FqPolynomial, b: &FqPolynomial) -> (FqPolynomial, FqPolynomial) {
        assert!(!b.is_zero(), "division by zero polynomial over F_q");
        if a.coeffs.len() < b.coeffs.len() {
            return (self.poly_zero(), a.clone());
        }
        let lead_inv = self.inv(b.coeffs.last().unwrap());
        let db = b.coeffs.len() - 1;
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.zero(); a.coeffs.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.mul(&rem[k + db], &lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = self.mul(&c, bj);
                rem[k + j] = self.sub(&rem[k + j], &t);
            }
            quot[k] = c;
        }
        (self.poly_from_elements(quot), self.poly_from_elements(rem))
    }

    pub fn poly_rem(&self, a: &FqPolynomial, b: &FqPolynomial) -> FqPolynomial {
        self.poly_divmod(a, b).1
    }

    pub fn poly_make_monic(&self, a: &FqPolynomial) -> FqPolynomial {
        match a.coeffs.last() {
            None => self.poly_zero(),
            Some(lead) if lead == &self.one() => a.clone(),
            Some(lead) => {
                let inv = self.inv(lead);
                let coeffs = a.coeffs.iter().map(|c| self.mul(c, &inv)).collect();
                FqPolynomial { coeffs }
            }
        }
    }

    pub fn poly_gcd(&self, a: &FqPolynomial, b: &FqPolynomial) -> FqPolynomial {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let rem = self.poly_rem(&r0, &r1);
            r0 = r1;
            r1 = rem;
        }
        self.poly_make_monic(&r0)
    }

    /// `base^exp mod modulus` by square-and-multiply.
    pub fn poly_pow_mod(&self, base: &FqPolynomial, exp: u64, modulus: &FqPolynomial) -> FqPolynomial {
        let mut acc = self.poly_rem(&self.poly_one(), modulus);
        let mut base = self.poly_rem(base, modulus);
        let mut exp = exp;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), modulus);
            }
            base = self.poly_rem(&self.poly_mul(&base, &base), modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn poly_eval(&self, f: &FqPolynomial, at: &FqElement) -> FqElement {
        let mut acc = self.zero();
        for c in f.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, at), c);
        }
        acc
    }

    /// Irreducibility over this field: f of degree n is irreducible iff
    /// `x^{q^n} = x (mod f)` and, for every prime l dividing n,
    /// `gcd(f, x^{q^{n/l}} - x mod f)` is constant. The Frobenius powers
    /// are built by repeated exponentiation mod f, never by materializing
    /// degree-q^n polynomials.
    pub fn is_irreducible(&self, f: &FqPolynomial) -> Result<bool> {
        let n = match f.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.poly_make_monic(f);
        let x = self.poly_rem(&self.poly_x(), &f);
        let proper_power_degrees: Vec<usize> = arith::factorize(&BigUint::from(n as u64))
            .expect("n >= 1")
            .factors()
            .iter()
            .map(|(l, _)| {
                let l = u64::try_from(l).expect("prime factor of usize fits");
                n / l as usize
            })
            .collect();
        let mut frob = x.clone(); // x^{q^0}
        let mut checkpoints = Vec::new();
        for step in 1..=n {
            frob = self.poly_pow_mod(&frob, self.q, &f);
            if proper_power_degrees.contains(&step) {
                checkpoints.push(frob.clone());
            }
        }
        if frob != x {
            return Ok(false);
        }
        for power in checkpoints {
            let diff = self.poly_sub(&power, &x);
            let g = self.poly_gcd(&f, &diff);
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All monic irreducibles of degree n over this field, in lex order.
    /// The scan over the `q^n` candidates is data-parallel; the output
    /// order is the deterministic lex order regardless.
    pub fn enumerate_irreducible(&self, n: usize) -> Result<Vec<FqPolynomial>> {
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let count = checked_pow(self.q, n as u32, ENUMERATION_CAP).ok_or(
            Error::EnumerationTooLarge {
                size: (self.q as u128).pow(n as u32),
                cap: ENUMERATION_CAP as u128,
            },
        )?;
        Ok(par::filter_map_range(0, count, |rank| {
            let f = self.monic_poly_by_rank(n, rank);
            match self.is_irreducible(&f) {
                Ok(true) => Some(f),
                _ => None,
            }
        }))
    }

    /// Checks that `x^{q^n} - x` equals the product of all monic
    /// irreducibles whose degree divides n. This is the one place the
    /// full degree-q^n polynomial is materialized, hence the tighter cap.
    pub fn verify_xqn_factorization(&self, n: usize) -> Result<bool> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        let qn = checked_pow(self.q, n as u32, XQN_PRODUCT_CAP).ok_or(
            Error::EnumerationTooLarge {
                size: (self.q as u128).pow(n as u32),
                cap: XQN_PRODUCT_CAP as u128,
            },
        )?;
        let mut factors = Vec::new();
        for d in 1..=n {
            if n % d == 0 {
                factors.extend(self.enumerate_irreducible(d)?);
            }
        }
        let product = par::reduce_assoc(factors, self.poly_one(), |a, b| self.poly_mul(&a, &b));
        // x^{q^n} - x
        let mut coeffs = vec![self.zero(); qn as usize + 1];
        coeffs[1] = self.neg(&self.one());
        coeffs[qn as usize] = self.one();
        let target = self.poly_from_elements(coeffs);
        Ok(product == target)
    }

    /// An element of multiplicative order exactly q - 1: the first in lex
    /// order whose `(q-1)/l`-th powers avoid 1 for every prime l | q - 1.
    /// Existence is guaranteed (the multiplicative group is cyclic), so
    /// exhausting the field without finding one panics.
    pub fn find_generator(&self) -> FqElement {
        let order = self.q - 1;
        let prime_divisors: Vec<u64> = if order == 0 {
            Vec::new()
        } else {
            arith::factorize(&BigUint::from(order))
                .expect("order >= 1")
                .factors()
                .iter()
                .map(|(l, _)| u64::try_from(l).expect("fits"))
                .collect()
        };
        for rank in 1..self.q {
            let g = self.element_by_rank(rank);
            let is_generator = prime_divisors
                .iter()
                .all(|&l| self.pow(&g, order / l) != self.one());
            if is_generator {
                return g;
            }
        }
        panic!("multiplicative group of F_{} has no generator: internal inconsistency", self.q);
    }

    /// Verifies the Frobenius identity `(u + v)^p = u^p + v^p`.
    pub fn frobenius_additivity(&self, u: &FqElement, v: &FqElement) -> bool {
        let lhs = self.pow(&self.add(u, v), self.p);
        let rhs = self.add(&self.pow(u, self.p), &self.pow(v, self.p));
        lhs == rhs
    }

    /// Evaluates the F_p representative of `x` at `theta` in this field.
    /// With `theta = find_isomorphism(a, b)` this computes the isomorphism
    /// image in b of an element of a.
    pub fn isomorphic_image(&self, theta: &FqElement, x: &FqElement) -> FqElement {
        let rep: Vec<FqElement> = x.coeffs.iter().map(|&c| self.constant(c)).collect();
        let rep = FqPolynomial { coeffs: rep };
        self.poly_eval(&rep, theta)
    }
}

fn checked_pow(base: u64, exp: u32, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

/// The count of monic irreducible polynomials of degree n over F_q:
/// `I_q(n) = (1/n) * sum over d | n of mu(n/d) q^d`. The sum is always
/// divisible by n; a nonzero remainder would be an internal inconsistency
/// and panics.
pub fn count_irreducible(q: u64, n: u32) -> Result<BigUint> {
    let f = arith::factorize(&BigUint::from(q))?;
    if f.distinct_primes() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let qb = BigInt::from(q);
    let nb = BigUint::from(n);
    let mut sum = BigInt::zero();
    for d in arith::divisors(&nb)? {
        let d32 = u32::try_from(&d).expect("divisor of u32 fits");
        let term = qb.pow(d32);
        match arith::mobius(&(&nb / &d))? {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    let (quot, rem) = num_integer::Integer::div_rem(&sum, &BigInt::from(n));
    assert!(
        rem.is_zero(),
        "sum of mu(n/d) q^d not divisible by n: internal inconsistency"
    );
    assert!(!quot.is_negative(), "negative irreducible count");
    Ok(quot.to_biguint().expect("nonnegative"))
}

/// The image of the class of x under a field isomorphism `a -> b`:
/// the first root (in lex order) of a's modulus inside b. The returned
/// map sends an element of a with representative r(x) to r(theta); its
/// multiplicativity is spot-checked on 100 deterministic random pairs.
pub fn find_isomorphism(a: &FieldSpec, b: &FieldSpec) -> Result<FqElement> {
    if a.q() != b.q() {
        return Err(Error::CardinalityMismatch(a.q(), b.q()));
    }
    let h_a: Vec<FqElement> = a.modulus.iter().map(|&c| b.constant(c)).collect();
    let h_a_in_b = FqPolynomial { coeffs: h_a };
    let theta = (0..b.q())
        .map(|rank| b.element_by_rank(rank))
        .find(|t| b.poly_eval(&h_a_in_b, t).is_zero())
        .expect("a's modulus splits in any field of the same cardinality");
    let mut rng = SplitMix64::new(0x1050_3715_u64);
    for _ in 0..100 {
        let u = a.element_by_rank(rng.below(a.q()));
        let v = a.element_by_rank(rng.below(a.q()));
        let image_of_product = b.isomorphic_image(&theta, &a.mul(&u, &v));
        let product_of_images = b.mul(
            &b.isomorphic_image(&theta, &u),
            &b.isomorphic_image(&theta, &v),
        );
        assert_eq!(
            image_of_product, product_of_images,
            "evaluation map at a root of the modulus must be multiplicative"
        );
    }
    Ok(theta)
}

/// Wire format for a polynomial over F_q: the field parameters followed by
/// one length-m residue vector per coefficient, ascending degree.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FqPolynomialWire {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u64>,
    pub coeffs: Vec<Vec<u64>>,
}

impl FqPolynomialWire {
    pub fn pack(spec: &FieldSpec, f: &FqPolynomial) -> Self {
        FqPolynomialWire {
            p: spec.p(),
            m: spec.m(),
            modulus: spec.modulus().to_vec(),
            coeffs: f.coeffs.iter().map(|e| e.coeffs.clone()).collect(),
        }
    }

    pub fn unpack(&self) -> Result<(FieldSpec, FqPolynomial)> {
        let spec = FieldSpec::with_modulus(self.p, self.modulus.clone())?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for v in &self.coeffs {
            if v.len() != spec.m() {
                return Err(Error::BadParse {
                    input: format!("{v:?}"),
                    what: "length-m residue vector",
                });
            }
            coeffs.push(FqElement {
                coeffs: v.iter().map(|&c| c % spec.p()).collect(),
            });
        }
        let f = spec.poly_from_elements(coeffs);
        Ok((spec, f))
    }
}

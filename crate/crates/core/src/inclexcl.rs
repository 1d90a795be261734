//! Inclusion-exclusion over concrete set families and finite probability
//! spaces, plus derangement counting through the fixed-point inversion on
//! the exclusion poset.
//!
//! Set operations run on bitmasks over an indexed universe, so the
//! `2^n` subset walk stays cheap at the capped family size.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{self, SubsetOrder};

/// Cap on the number of sets (the walk enumerates `2^n` index sets).
pub const FAMILY_SIZE_CAP: usize = 20;
/// Cap on the universe (bitmask width).
pub const UNIVERSE_CAP: usize = 64;
/// Cap on the fixed-point table base size.
pub const FIXED_POINT_CAP: usize = 8;

/// A family of subsets of a labeled finite universe, stored as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Vec<String>,
    sets: Vec<u64>,
}

impl SetFamily {
    pub fn new(universe: Vec<String>, sets: Vec<Vec<String>>) -> Result<SetFamily> {
        if universe.len() > UNIVERSE_CAP {
            return Err(Error::UniverseTooLarge(universe.len(), UNIVERSE_CAP));
        }
        if sets.len() > FAMILY_SIZE_CAP {
            return Err(Error::TooManySets(sets.len(), FAMILY_SIZE_CAP));
        }
        let index: std::collections::HashMap<&str, usize> = universe
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != universe.len() {
            let dup = universe
                .iter()
                .find(|l| universe.iter().filter(|x| x == l).count() > 1)
                .unwrap();
            return Err(Error::DuplicateElement(dup.clone()));
        }
        let mut masks = Vec::with_capacity(sets.len());
        for set in &sets {
            let mut mask = 0u64;
            for member in set {
                let &i = index
                    .get(member.as_str())
                    .ok_or_else(|| Error::NotInUniverse(member.clone()))?;
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        Ok(SetFamily {
            universe,
            sets: masks,
        })
    }

    /// Family straight from bitmasks, for tests and generators.
    pub fn from_masks(universe_size: usize, sets: Vec<u64>) -> Result<SetFamily> {
        let universe = (0..universe_size).map(|i| format!("u{i}")).collect();
        if universe_size > UNIVERSE_CAP {
            return Err(Error::UniverseTooLarge(universe_size, UNIVERSE_CAP));
        }
        if sets.len() > FAMILY_SIZE_CAP {
            return Err(Error::TooManySets(sets.len(), FAMILY_SIZE_CAP));
        }
        Ok(SetFamily { universe, sets })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn masks(&self) -> &[u64] {
        &self.sets
    }

    fn intersection_of(&self, index_set: u32) -> u64 {
        let mut acc = u64::MAX >> (64 - self.universe.len().max(1));
        if self.universe.is_empty() {
            acc = 0;
        }
        let mut bits = index_set;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc &= self.sets[i];
            bits &= bits - 1;
        }
        acc
    }

    /// `|A_1 union ... union A_n|` by the direct bitset union. Oracle side
    /// of the inclusion-exclusion pair.
    pub fn direct_union_size(&self) -> u64 {
        self.sets
            .iter()
            .fold(0u64, |acc, &m| acc | m)
            .count_ones() as u64
    }

    /// `|A_1 union ... union A_n|` by the alternating sum
    /// `sum over k of (-1)^{k-1} sum over |I| = k of |A_I|`.
    pub fn union_size_ie(&self) -> u64 {
        let n = self.sets.len();
        let mut total: i64 = 0;
        for index_set in 1u32..(1 << n) {
            let size = self.intersection_of(index_set).count_ones() as i64;
            if index_set.count_ones() % 2 == 1 {
                total += size;
            } else {
                total -= size;
            }
        }
        u64::try_from(total).expect("inclusion-exclusion sums to a set size")
    }

    /// Pointwise check of the indicator identity
    /// `1_A = sum over k of (-1)^{k-1} sum over |I| = k of 1_{A_I}`
    /// and of the product identity
    /// `(1_A - 1_{A_1}) ... (1_A - 1_{A_n}) = 0` at every point of the
    /// universe.
    pub fn verify_indicator_identity(&self) -> bool {
        let n = self.sets.len();
        let union = self.sets.iter().fold(0u64, |acc, &m| acc | m);
        for x in 0..self.universe.len() {
            let bit = 1u64 << x;
            let in_union = i64::from(union & bit != 0);
            let mut rhs: i64 = 0;
            for index_set in 1u32..(1 << n) {
                if self.intersection_of(index_set) & bit != 0 {
                    if index_set.count_ones() % 2 == 1 {
                        rhs += 1;
                    } else {
                        rhs -= 1;
                    }
                }
            }
            if rhs != in_union {
                return false;
            }
            let mut product: i64 = 1;
            for &set in &self.sets {
                product *= in_union - i64::from(set & bit != 0);
            }
            if n > 0 && product != 0 {
                return false;
            }
        }
        true
    }
}

/// JSON file format for set families.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetFamilyFile {
    pub universe: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

impl SetFamilyFile {
    pub fn into_family(self) -> Result<SetFamily> {
        SetFamily::new(self.universe, self.sets)
    }
}

/// A finite probability space with exact rational weights and a family of
/// events.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteProbSpace {
    outcomes: Vec<String>,
    weights: Vec<BigRational>,
    events: Vec<u64>,
}

impl FiniteProbSpace {
    pub fn new(
        outcomes: Vec<String>,
        weights: Vec<BigRational>,
        events: Vec<Vec<String>>,
    ) -> Result<FiniteProbSpace> {
        if outcomes.len() > UNIVERSE_CAP {
            return Err(Error::UniverseTooLarge(outcomes.len(), UNIVERSE_CAP));
        }
        if events.len() > FAMILY_SIZE_CAP {
            return Err(Error::TooManySets(events.len(), FAMILY_SIZE_CAP));
        }
        for w in &weights {
            if w.is_negative() {
                return Err(Error::NegativeWeight(w.to_string()));
            }
        }
        let total: BigRational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::WeightsNotNormalized(total.to_string()));
        }
        let family = SetFamily::new(outcomes.clone(), events)?;
        Ok(FiniteProbSpace {
            outcomes,
            weights,
            events: family.sets,
        })
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    fn measure(&self, mask: u64) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, w) in self.weights.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc += w;
            }
        }
        acc
    }

    /// Measure of the union by direct evaluation. Oracle side.
    pub fn direct_union_prob(&self) -> BigRational {
        self.measure(self.events.iter().fold(0u64, |acc, &m| acc | m))
    }

    /// Measure of the union by the alternating sum of intersection
    /// measures, exactly in rationals.
    pub fn prob_union_ie(&self) -> BigRational {
        let n = self.events.len();
        let full = if self.outcomes.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.outcomes.len())
        };
        let mut total = BigRational::zero();
        for index_set in 1u32..(1 << n) {
            let mut inter = full;
            let mut bits = index_set;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                inter &= self.events[i];
                bits &= bits - 1;
            }
            let p = self.measure(inter);
            if index_set.count_ones() % 2 == 1 {
                total += p;
            } else {
                total -= p;
            }
        }
        total
    }
}

/// JSON file format for probability spaces; weights are rationals written
/// as `"p/q"` (or plain integers).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbSpaceFile {
    pub outcomes: Vec<String>,
    pub weights: Vec<String>,
    pub events: Vec<Vec<String>>,
}

impl ProbSpaceFile {
    pub fn into_space(self) -> Result<FiniteProbSpace> {
        let mut weights = Vec::with_capacity(self.weights.len());
        for s in &self.weights {
            let w: BigRational = s.parse().map_err(|_| Error::BadParse {
                input: s.clone(),
                what: "rational number",
            })?;
            weights.push(w);
        }
        FiniteProbSpace::new(self.outcomes, weights, self.events)
    }
}

/// Number of derangements of an n-set, by the integer recurrence
/// `D_k = k D_{k-1} + (-1)^k` (the alternating factorial sum in integer
/// form). Never touches floating point; the closest-integer-to-`n!/e`
/// characterization is verified in tests, not used.
pub fn count_derangements(n: u64) -> BigUint {
    let mut d = BigInt::one(); // D_0 = 1
    for k in 1..=n {
        d = d * BigInt::from(k) + if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    }
    d.to_biguint().expect("derangement counts are nonnegative")
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Fixed-point bookkeeping for permutations of `{1..n}`, keyed by the
/// subset T (as a bitmask): `g(T)` counts permutations fixing all of T
/// (maybe more), `f(T)` those fixing exactly T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointCounts {
    pub fixing_at_least: BigUint,
    pub fixing_exactly: BigUint,
}

/// Builds the table `T -> (g(T), f(T))` with `g(T) = (n - |T|)!` and `f`
/// recovered by Möbius inversion on the exclusion poset, exercising the
/// bridge between the subset order and the counting argument:
/// `g(T) = sum over U >= T (exclusion: U contains T) of f(U)`.
///
/// `f(empty)` is the derangement count; every `f(T)` is nonnegative.
pub fn fixed_point_table(n: usize) -> Result<BTreeMap<u32, FixedPointCounts>> {
    if n > FIXED_POINT_CAP {
        return Err(Error::BaseSizeTooLarge(n, FIXED_POINT_CAP));
    }
    let p = std::sync::Arc::new(poset::subset_poset(n, SubsetOrder::Exclusion)?);
    let g_map: BTreeMap<String, BigRational> = (0..(1u32 << n))
        .map(|mask| {
            let size = mask.count_ones() as u64;
            let g = factorial(n as u64 - size);
            (
                poset::subset_label(mask),
                BigRational::from_integer(BigInt::from(g)),
            )
        })
        .collect();
    let f_map = poset::mobius_invert(&g_map, &p)?;
    let mut out = BTreeMap::new();
    for mask in 0..(1u32 << n) {
        let label = poset::subset_label(mask);
        let f = &f_map[&label];
        assert!(
            f.is_integer() && !f.is_negative(),
            "exact-fix count must be a nonnegative integer, got {f}"
        );
        out.insert(
            mask,
            FixedPointCounts {
                fixing_at_least: g_map[&label]
                    .to_integer()
                    .to_biguint()
                    .expect("factorial is nonnegative"),
                fixing_exactly: f.to_integer().to_biguint().expect("checked nonnegative"),
            },
        );
    }
    Ok(out)
}

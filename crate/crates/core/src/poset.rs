//! Finite posets and their incidence algebra: delta, zeta, the Möbius
//! function, convolution, nilpotent inversion, and Möbius inversion of
//! functions on elements.
//!
//! Scalars are exact rationals. Möbius values are integers, but inverses
//! of general incidence functions need denominators, and exactness makes
//! every identity assertable as equality.
//!
//! The order relation is stored as a full bitmatrix after validation;
//! interval sums are then masked dot products. Fine for the desk scale
//! this library targets (up to a few thousand elements).

use std::collections::BTreeMap;
use std::sync::Arc;


use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Cap on `subset_poset` base size: 2^16 elements.
pub const SUBSET_BASE_CAP: usize = 16;

/// A validated finite partial order with a topological numbering.
///
/// Elements keep their input order for labeling; internally the relation
/// is stored in topological coordinates, where it is upper triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// topo[k] = input index of the k-th element in topological order.
    topo: Vec<usize>,
    /// pos[i] = topological position of input element i.
    pos: Vec<usize>,
    /// Row-per-element bitmatrix in topological coordinates.
    rows: Vec<Vec<u64>>,
    words: usize,
}

fn bit_get(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

fn bit_set(row: &mut [u64], j: usize) {
    row[j / 64] |= 1u64 << (j % 64);
}

impl Poset {
    /// Validates `leq` (given on input indices) as a partial order and
    /// numbers the elements topologically, ties broken by input order.
    /// Violations are reported with a witness pair or triple.
    pub fn validate<F>(labels: Vec<String>, leq: F) -> Result<Poset>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        {
            let mut seen = std::collections::HashSet::new();
            for l in &labels {
                if !seen.insert(l) {
                    return Err(Error::DuplicateElement(l.clone()));
                }
            }
        }
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = leq(i, j);
            }
        }
        for i in 0..n {
            if !matrix[i * n + i] {
                return Err(Error::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[i * n + j] && matrix[j * n + i] {
                    return Err(Error::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !matrix[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if matrix[j * n + k] && !matrix[i * n + k] {
                        return Err(Error::NotTransitive(
                            labels[i].clone(),
                            labels[j].clone(),
                            labels[k].clone(),
                        ));
                    }
                }
            }
        }
        // Stable Kahn: repeatedly take the smallest input index whose
        // strict predecessors are all placed.
        let mut placed = vec![false; n];
        let mut topo = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .find(|&i| {
                    !placed[i] && (0..n).all(|j| j == i || placed[j] || !matrix[j * n + i])
                })
                .expect("a finite partial order always has a minimal element");
            placed[next] = true;
            topo.push(next);
        }
        let mut pos = vec![0usize; n];
        for (k, &i) in topo.iter().enumerate() {
            pos[i] = k;
        }
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        for (k1, &i) in topo.iter().enumerate() {
            for (k2, &j) in topo.iter().enumerate() {
                if matrix[i * n + j] {
                    bit_set(&mut rows[k1], k2);
                }
            }
        }
        Ok(Poset {
            labels,
            topo,
            pos,
            rows,
            words,
        })
    }

    /// Builds from explicit related pairs: reflexive pairs are optional and
    /// the transitive closure is taken before the axioms are validated, so
    /// the only reportable violation is antisymmetry.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(String, String)]) -> Result<Poset> {
        let n = labels.len();
        let index: std::collections::HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != n {
            let dup = labels
                .iter()
                .find(|l| labels.iter().filter(|x| x == l).count() > 1)
                .unwrap();
            return Err(Error::DuplicateElement(dup.clone()));
        }
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            matrix[i * n + i] = true;
        }
        for (a, b) in pairs {
            let &i = index
                .get(a.as_str())
                .ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let &j = index
                .get(b.as_str())
                .ok_or_else(|| Error::UnknownElement(b.clone()))?;
            matrix[i * n + j] = true;
        }
        // Floyd-Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if matrix[i * n + k] {
                    for j in 0..n {
                        if matrix[k * n + j] {
                            matrix[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Poset::validate(labels, |i, j| matrix[i * n + j])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// topo[k] = input index of the k-th element in topological order.
    pub fn topo_numbering(&self) -> &[usize] {
        &self.topo
    }

    /// Order relation on input indices.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.topo_leq(self.pos[i], self.pos[j])
    }

    /// Order relation on topological positions.
    pub fn topo_leq(&self, k1: usize, k2: usize) -> bool {
        bit_get(&self.rows[k1], k2)
    }

    pub fn label_at_topo(&self, k: usize) -> &str {
        &self.labels[self.topo[k]]
    }
}

/// The divisor poset of n: divisors of n ordered by divisibility, listed
/// ascending (already a topological order).
pub fn divisor_poset(n: u64) -> Result<Poset> {
    let divs = arith::divisors(&n.into())?;
    let values: Vec<u64> = divs
        .iter()
        .map(|d| u64::try_from(d).expect("divisor of u64 fits"))
        .collect();
    let labels = values.iter().map(|d| d.to_string()).collect();
    Poset::validate(labels, |i, j| values[j] % values[i] == 0)
}

/// Which way to order subsets of the base set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetOrder {
    /// `S <= T` iff `S` is a subset of `T`.
    Inclusion,
    /// `U <= T` iff `U` is a superset of `T`.
    Exclusion,
}

/// Label for a subset bitmask over base points 1..=k, e.g. `{1,3}`.
pub fn subset_label(mask: u32) -> String {
    let members: Vec<String> = (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// The poset of all subsets of `{1..base_size}` under inclusion or
/// exclusion. Elements are listed in mask order, labeled like `{1,3}`.
pub fn subset_poset(base_size: usize, order: SubsetOrder) -> Result<Poset> {
    if base_size > SUBSET_BASE_CAP {
        return Err(Error::BaseSizeTooLarge(base_size, SUBSET_BASE_CAP));
    }
    let count = 1u32 << base_size;
    let labels = (0..count).map(subset_label).collect();
    Poset::validate(labels, |i, j| {
        let (a, b) = (i as u32, j as u32);
        match order {
            SubsetOrder::Inclusion => a & b == a,
            SubsetOrder::Exclusion => a & b == b,
        }
    })
}

/// Random poset for test corpora: a random DAG on indexed vertices (edges
/// only i -> j for i < j), then the transitive closure. Axioms hold by
/// construction; `edge_chance_percent` tunes density. Deterministic in the
/// seed.
pub fn random_poset(seed: u64, n: usize, edge_chance_percent: u64) -> Poset {
    let mut rng = SplitMix64::new(seed);
    let mut matrix = vec![false; n * n];
    for i in 0..n {
        matrix[i * n + i] = true;
        for j in (i + 1)..n {
            if rng.chance(edge_chance_percent, 100) {
                matrix[i * n + j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if matrix[i * n + k] {
                for j in 0..n {
                    if matrix[k * n + j] {
                        matrix[i * n + j] = true;
                    }
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Poset::validate(labels, |i, j| matrix[i * n + j]).expect("random DAG closure is a poset")
}

/// JSON file format for posets: element labels plus related pairs.
/// Reflexive pairs may be omitted; the transitive closure is taken.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub relation: Vec<(String, String)>,
}

impl PosetFile {
    pub fn into_poset(self) -> Result<Poset> {
        Poset::from_pairs(self.elements, &self.relation)
    }
}

/// Scalar-valued function on the intervals of a poset, stored as an
/// upper-triangular matrix in topological coordinates. Conceptually zero
/// on non-intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceFunction {
    poset: Arc<Poset>,
    /// Row-major n x n in topological coordinates.
    values: Vec<BigRational>,
}

impl IncidenceFunction {
    /// The identity of convolution: 1 on the diagonal.
    pub fn delta(poset: &Arc<Poset>) -> Self {
        Self::build(poset, |k1, k2| {
            if k1 == k2 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// The zeta function: 1 on every interval.
    pub fn zeta(poset: &Arc<Poset>) -> Self {
        Self::build(poset, |_, _| BigRational::one())
    }

    /// Builds from a closure evaluated on related pairs of input indices.
    pub fn from_fn<F>(poset: &Arc<Poset>, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> BigRational,
    {
        let topo = poset.topo_numbering().to_vec();
        Self::build(poset, |k1, k2| f(topo[k1], topo[k2]))
    }

    fn build<F>(poset: &Arc<Poset>, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> BigRational,
    {
        let n = poset.len();
        let mut values = vec![BigRational::zero(); n * n];
        for k1 in 0..n {
            for k2 in k1..n {
                if poset.topo_leq(k1, k2) {
                    values[k1 * n + k2] = f(k1, k2);
                }
            }
        }
        IncidenceFunction {
            poset: Arc::clone(poset),
            values,
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    /// Value at a pair of input indices (0 when not an interval).
    pub fn value(&self, i: usize, j: usize) -> BigRational {
        self.value_at_topo(self.poset.pos[i], self.poset.pos[j])
    }

    pub fn value_by_labels(&self, a: &str, b: &str) -> Result<BigRational> {
        let i = self
            .poset
            .index_of(a)
            .ok_or_else(|| Error::UnknownElement(a.to_string()))?;
        let j = self
            .poset
            .index_of(b)
            .ok_or_else(|| Error::UnknownElement(b.to_string()))?;
        Ok(self.value(i, j))
    }

    pub fn value_at_topo(&self, k1: usize, k2: usize) -> BigRational {
        self.values[k1 * self.poset.len() + k2].clone()
    }

    fn same_poset(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset
    }

    /// Incidence convolution `(f * g)(a, b) = sum over a <= t <= b of
    /// f(a, t) g(t, b)`. Associative, with delta as two-sided identity.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if !self.same_poset(other) {
            return Err(Error::MismatchedPosets);
        }
        let n = self.poset.len();
        let mut values = vec![BigRational::zero(); n * n];
        for k1 in 0..n {
            for k2 in k1..n {
                if !self.poset.topo_leq(k1, k2) {
                    continue;
                }
                let mut acc = BigRational::zero();
                for t in k1..=k2 {
                    if self.poset.topo_leq(k1, t) && self.poset.topo_leq(t, k2) {
                        let a = &self.values[k1 * n + t];
                        let b = &other.values[t * n + k2];
                        if !a.is_zero() && !b.is_zero() {
                            acc += a * b;
                        }
                    }
                }
                values[k1 * n + k2] = acc;
            }
        }
        Ok(IncidenceFunction {
            poset: Arc::clone(&self.poset),
            values,
        })
    }

    /// Inverse of a unitriangular function by the nilpotent expansion:
    /// writing `a = delta + N`, returns
    /// `delta - N + N^2 - ... + (-1)^{n-1} N^{n-1}` (convolution powers).
    pub fn invert_unitriangular(&self) -> Result<Self> {
        let n = self.poset.len();
        for k in 0..n {
            if !self.values[k * n + k].is_one() {
                let label = self.poset.label_at_topo(k).to_string();
                return Err(Error::NotUnitriangular(
                    label,
                    self.values[k * n + k].to_string(),
                ));
            }
        }
        let delta = IncidenceFunction::delta(&self.poset);
        let mut nilpotent = self.clone();
        for k in 0..n {
            nilpotent.values[k * n + k] = BigRational::zero();
        }
        let mut result = delta.clone();
        let mut power = delta;
        for step in 1..n {
            power = power.convolve(&nilpotent)?;
            if power.values.iter().all(|v| v.is_zero()) {
                break;
            }
            let negate = step % 2 == 1;
            for (r, p) in result.values.iter_mut().zip(&power.values) {
                if negate {
                    *r -= p;
                } else {
                    *r += p;
                }
            }
        }
        Ok(result)
    }
}

/// The Möbius function of the poset, by dynamic programming in topological
/// order: `mu(x, x) = 1` and `mu(x, y) = -sum over x <= t < y of mu(x, t)`.
pub fn mobius_function(poset: &Arc<Poset>) -> IncidenceFunction {
    let n = poset.len();
    let mut values = vec![BigRational::zero(); n * n];
    for k1 in 0..n {
        values[k1 * n + k1] = BigRational::one();
        for k2 in (k1 + 1)..n {
            if !poset.topo_leq(k1, k2) {
                continue;
            }
            let mut acc = BigRational::zero();
            for t in k1..k2 {
                if poset.topo_leq(k1, t) && poset.topo_leq(t, k2) {
                    acc += &values[k1 * n + t];
                }
            }
            values[k1 * n + k2] = -acc;
        }
    }
    IncidenceFunction {
        poset: Arc::clone(poset),
        values,
    }
}

/// Möbius inversion on element functions: given `g`, returns `f` with
/// `f(x) = sum over y <= x of g(y) mu(y, x)`, the inverse of the down-sum
/// `g(x) = sum over y <= x of f(y)`.
pub fn mobius_invert(
    g_values: &BTreeMap<String, BigRational>,
    poset: &Arc<Poset>,
) -> Result<BTreeMap<String, BigRational>> {
    let n = poset.len();
    let mut g_topo = Vec::with_capacity(n);
    for k in 0..n {
        let label = poset.label_at_topo(k);
        let v = g_values
            .get(label)
            .ok_or_else(|| Error::MissingElement(label.to_string()))?;
        g_topo.push(v.clone());
    }
    let mu = mobius_function(poset);
    let mut out = BTreeMap::new();
    for k2 in 0..n {
        let mut acc = BigRational::zero();
        for k1 in 0..=k2 {
            if poset.topo_leq(k1, k2) {
                acc += &g_topo[k1] * mu.value_at_topo(k1, k2);
            }
        }
        out.insert(poset.label_at_topo(k2).to_string(), acc);
    }
    Ok(out)
}

/// Down-sum of an element function: `g(x) = sum over y <= x of f(y)`.
/// The inverse direction of [`mobius_invert`].
pub fn down_sum(
    f_values: &BTreeMap<String, BigRational>,
    poset: &Arc<Poset>,
) -> Result<BTreeMap<String, BigRational>> {
    let n = poset.len();
    let mut f_topo = Vec::with_capacity(n);
    for k in 0..n {
        let label = poset.label_at_topo(k);
        let v = f_values
            .get(label)
            .ok_or_else(|| Error::MissingElement(label.to_string()))?;
        f_topo.push(v.clone());
    }
    let mut out = BTreeMap::new();
    for k2 in 0..n {
        let mut acc = BigRational::zero();
        for (k1, fv) in f_topo.iter().enumerate().take(k2 + 1) {
            if poset.topo_leq(k1, k2) {
                acc += fv;
            }
        }
        out.insert(poset.label_at_topo(k2).to_string(), acc);
    }
    Ok(out)
}

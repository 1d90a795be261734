//! Small-degree permutation groups by exhaustive closure: parity, the
//! 3-cycle identities, generation of A_n by 3-cycles, normal closures,
//! and solvability via the derived series.
//!
//! Composition convention, fixed once and pinned by the tests: the right
//! factor applies first, `(p . q)(x) = p(q(x))`, and cycle notation
//! `(a b c)` means `a -> b -> c -> a`. The displayed identities below are
//! sensitive to this choice.
//!
//! Everything here is deliberately exhaustive — BFS closures over full
//! element sets at degree <= 8 — rather than any polynomial-time group
//! machinery; the caps keep the worst case (S_7, 5040 elements) small.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Degree cap for [`generate_group`] (|S_8| = 40320).
pub const GENERATE_DEGREE_CAP: usize = 8;
/// Degree cap for [`normal_closure`].
pub const NORMAL_CLOSURE_DEGREE_CAP: usize = 7;
/// Order cap for [`derived_series_solvable`] (S_6 at 720 is the largest
/// supported S_n; degree-7 groups must be smaller).
pub const DERIVED_SERIES_ORDER_CAP: usize = 720;

/// A bijection of `{1..n}` in one-line notation: `images[i]` is the image
/// of `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (1..=degree as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection of `1..=len`.
    pub fn from_images(images: Vec<u32>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::NotABijection(images.clone(), n));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The cycle `points[0] -> points[1] -> ... -> points[0]` on `{1..n}`.
    pub fn cycle(degree: usize, points: &[u32]) -> Result<Permutation> {
        let mut images: Vec<u32> = (1..=degree as u32).collect();
        let mut seen = vec![false; degree];
        for (k, &pt) in points.iter().enumerate() {
            if pt == 0 || pt as usize > degree {
                return Err(Error::BadCycleNotation {
                    input: format!("{points:?}"),
                    reason: format!("point {pt} outside 1..={degree}"),
                });
            }
            if seen[pt as usize - 1] {
                return Err(Error::BadCycleNotation {
                    input: format!("{points:?}"),
                    reason: format!("point {pt} repeated"),
                });
            }
            seen[pt as usize - 1] = true;
            images[pt as usize - 1] = points[(k + 1) % points.len()];
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize - 1]
    }

    /// Right factor first: `(self . rhs)(x) = self(rhs(x))`.
    pub fn compose(&self, rhs: &Permutation) -> Result<Permutation> {
        if self.degree() != rhs.degree() {
            return Err(Error::DegreeMismatch(self.degree(), rhs.degree()));
        }
        let images = rhs.images.iter().map(|&v| self.apply(v)).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// Disjoint cycles of length >= 2, each starting at its smallest
    /// point, sorted by that point.
    pub fn cycle_decomposition(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Sign from the cycle type: `(-1)^{n - #cycles}` counting fixed
    /// points as 1-cycles, equal to `(-1)^{#transpositions}`.
    pub fn parity(&self) -> i8 {
        let moved: usize = self.cycle_decomposition().iter().map(|c| c.len() - 1).sum();
        if moved % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    /// Parses cycle notation like `(1 2 3)(4 5)`; the identity is `()`.
    /// Cycles are composed right factor first, so non-disjoint input is
    /// accepted and applied rightmost cycle first.
    pub fn parse_cycles(input: &str, degree: usize) -> Result<Permutation> {
        let s = input.trim();
        let bad = |reason: &str| Error::BadCycleNotation {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(bad("empty input"));
        }
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| bad("expected '('"))?;
            if !rest[..open].trim().is_empty() {
                return Err(bad("unexpected text outside parentheses"));
            }
            let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
            if close < open {
                return Err(bad("')' before '('"));
            }
            let body = &rest[open + 1..close];
            let mut points = Vec::new();
            for tok in body.split_whitespace() {
                let pt: u32 = tok
                    .parse()
                    .map_err(|_| bad(&format!("{tok:?} is not a point")))?;
                points.push(pt);
            }
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = &rest[close + 1..];
        }
        let mut out = Permutation::identity(degree);
        for points in &cycles {
            let c = Permutation::cycle(degree, points)?;
            out = out.compose(&c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycle_decomposition();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let parts: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A deduplicated set of same-degree permutations, iterated in canonical
/// (lexicographic one-line) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSet {
    degree: usize,
    elements: BTreeSet<Permutation>,
}

impl PermSet {
    pub fn empty(degree: usize) -> PermSet {
        PermSet {
            degree,
            elements: BTreeSet::new(),
        }
    }

    pub fn from_perms<I>(degree: usize, perms: I) -> Result<PermSet>
    where
        I: IntoIterator<Item = Permutation>,
    {
        let mut elements = BTreeSet::new();
        for p in perms {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(p.degree(), degree));
            }
            elements.insert(p);
        }
        Ok(PermSet { degree, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    pub fn is_subset(&self, other: &PermSet) -> bool {
        self.elements.is_subset(&other.elements)
    }
}

/// Closure of the generators under composition, by breadth-first
/// multiplication until fixpoint. Inverses come for free in a finite
/// group (every element has finite order). The identity is always
/// included; empty generators give the trivial group.
pub fn generate_group(gens: &PermSet) -> Result<PermSet> {
    if gens.degree() > GENERATE_DEGREE_CAP {
        return Err(Error::DegreeTooLarge(gens.degree(), GENERATE_DEGREE_CAP));
    }
    let id = Permutation::identity(gens.degree());
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let generators: Vec<&Permutation> = gens.iter().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in &generators {
                let product = g.compose(h)?;
                if seen.insert(product.clone()) {
                    next.push(product);
                }
            }
        }
        frontier = next;
    }
    Ok(PermSet {
        degree: gens.degree(),
        elements: seen,
    })
}

/// All 3-cycles of the given degree.
pub fn three_cycles(degree: usize) -> Result<PermSet> {
    if degree < 3 {
        return Err(Error::DegreeTooSmall(degree, 3));
    }
    let mut out = BTreeSet::new();
    for a in 1..=degree as u32 {
        for b in 1..=degree as u32 {
            for c in 1..=degree as u32 {
                if a != b && b != c && a != c {
                    out.insert(Permutation::cycle(degree, &[a, b, c])?);
                }
            }
        }
    }
    Ok(PermSet {
        degree,
        elements: out,
    })
}

/// All transpositions of the given degree.
pub fn transpositions(degree: usize) -> Result<PermSet> {
    if degree < 2 {
        return Err(Error::DegreeTooSmall(degree, 2));
    }
    let mut out = BTreeSet::new();
    for a in 1..=degree as u32 {
        for b in (a + 1)..=degree as u32 {
            out.insert(Permutation::cycle(degree, &[a, b])?);
        }
    }
    Ok(PermSet {
        degree,
        elements: out,
    })
}

fn all_permutations(degree: usize) -> Vec<Permutation> {
    // Heap's algorithm over one-line notation.
    let mut out = Vec::new();
    let mut arr: Vec<u32> = (1..=degree as u32).collect();
    fn heap(k: usize, arr: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        if k <= 1 {
            out.push(Permutation {
                images: arr.clone(),
            });
            return;
        }
        for i in 0..k {
            heap(k - 1, arr, out);
            if k % 2 == 0 {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    heap(degree, &mut arr, &mut out);
    out
}

/// The full symmetric group S_n by direct enumeration.
pub fn symmetric_group(degree: usize) -> Result<PermSet> {
    if degree > GENERATE_DEGREE_CAP {
        return Err(Error::DegreeTooLarge(degree, GENERATE_DEGREE_CAP));
    }
    Ok(PermSet {
        degree,
        elements: all_permutations(degree).into_iter().collect(),
    })
}

/// The alternating group A_n: the even permutations.
pub fn alternating_group(degree: usize) -> Result<PermSet> {
    if degree > GENERATE_DEGREE_CAP {
        return Err(Error::DegreeTooLarge(degree, GENERATE_DEGREE_CAP));
    }
    Ok(PermSet {
        degree,
        elements: all_permutations(degree)
            .into_iter()
            .filter(|p| p.is_even())
            .collect(),
    })
}

/// Checks the generation identities behind "A_n is generated by the
/// 3-cycles", exhaustively over all tuples of distinct points, under the
/// fixed right-factor-first convention:
///
/// * `(a b c) = (b c) . (a c)`
/// * `(a b)(c d) = (a c b) . (a c d)`
///
/// The second identity is the displayed juxtaposition `(acd)(acb)` read
/// left factor first; under the right-first convention the factors swap
/// (tests pin what the unswapped form evaluates to instead).
pub fn verify_threecycle_identities(degree: usize) -> Result<bool> {
    if degree < 4 {
        return Err(Error::DegreeTooSmall(degree, 4));
    }
    let n = degree as u32;
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                if a == b || b == c || a == c {
                    continue;
                }
                let lhs = Permutation::cycle(degree, &[a, b, c])?;
                let bc = Permutation::cycle(degree, &[b, c])?;
                let ac = Permutation::cycle(degree, &[a, c])?;
                if lhs != bc.compose(&ac)? {
                    return Ok(false);
                }
                for d in 1..=n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    let ab = Permutation::cycle(degree, &[a, b])?;
                    let cd = Permutation::cycle(degree, &[c, d])?;
                    let lhs = ab.compose(&cd)?;
                    let acb = Permutation::cycle(degree, &[a, c, b])?;
                    let acd = Permutation::cycle(degree, &[a, c, d])?;
                    if lhs != acb.compose(&acd)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Smallest subgroup of `ambient` containing `gens` that is closed under
/// conjugation by all of `ambient`: generated by every ambient conjugate
/// of the generators. `ambient` must be a group.
pub fn normal_closure(gens: &PermSet, ambient: &PermSet) -> Result<PermSet> {
    if gens.degree() > NORMAL_CLOSURE_DEGREE_CAP {
        return Err(Error::DegreeTooLarge(
            gens.degree(),
            NORMAL_CLOSURE_DEGREE_CAP,
        ));
    }
    if gens.degree() != ambient.degree() {
        return Err(Error::DegreeMismatch(gens.degree(), ambient.degree()));
    }
    if !gens.is_subset(ambient) {
        return Err(Error::GensNotInAmbient);
    }
    let mut conjugates = BTreeSet::new();
    for g in gens.iter() {
        for a in ambient.iter() {
            let conj = a.compose(g)?.compose(&a.inverse())?;
            conjugates.insert(conj);
        }
    }
    let conj_set = PermSet {
        degree: gens.degree(),
        elements: conjugates,
    };
    generate_group(&conj_set)
}

/// Commutator subgroup `[G, G]`, generated by all
/// `g^{-1} h^{-1} g h`.
fn derived_subgroup(group: &PermSet) -> Result<PermSet> {
    let mut commutators = BTreeSet::new();
    for g in group.iter() {
        for h in group.iter() {
            let comm = g
                .inverse()
                .compose(&h.inverse())?
                .compose(g)?
                .compose(h)?;
            commutators.insert(comm);
        }
    }
    generate_group(&PermSet {
        degree: group.degree(),
        elements: commutators,
    })
}

/// Runs the derived series `G >= G' >= G'' >= ...` until it stabilizes;
/// true iff it reaches the trivial group (solvability).
pub fn derived_series_solvable(group: &PermSet) -> Result<bool> {
    if group.len() > DERIVED_SERIES_ORDER_CAP {
        return Err(Error::GroupTooLarge {
            order: group.len(),
            cap: DERIVED_SERIES_ORDER_CAP,
        });
    }
    let mut current = group.clone();
    loop {
        let next = derived_subgroup(&current)?;
        if next.len() == current.len() {
            return Ok(current.len() == 1);
        }
        current = next;
        if current.len() == 1 {
            return Ok(true);
        }
    }
}

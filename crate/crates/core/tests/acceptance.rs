//! Acceptance suite: the identity/oracle checks that gate the library,
//! one test per criterion, each printing a pass/fail line (run with
//! `--nocapture` to see them). Every tolerance is pinned here.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use moebius_core::arith;
use moebius_core::dirichlet::{self, Verdict};
use moebius_core::finfield::{self, FieldSpec};
use moebius_core::inclexcl::{self, SetFamily};
use moebius_core::intpoly::{self, IntPolynomial};
use moebius_core::par;
use moebius_core::permgroup::{self, PermSet, Permutation};
use moebius_core::poset::{self, IncidenceFunction, SubsetOrder};
use moebius_core::rng::SplitMix64;

fn pass(n: u32, what: &str) {
    println!("acceptance {n}: PASS — {what}");
}

/// Criterion 1: the cyclotomic table Phi_1..Phi_6 matches the displayed
/// polynomials exactly.
#[test]
fn criterion_01_cyclotomic_table() {
    let expected: [&[i64]; 6] = [
        &[-1, 1],         // x - 1
        &[1, 1],          // x + 1
        &[1, 1, 1],       // x^2 + x + 1
        &[1, 0, 1],       // x^2 + 1
        &[1, 1, 1, 1, 1], // x^4 + x^3 + x^2 + x + 1
        &[1, -1, 1],      // x^2 - x + 1
    ];
    for (n, coeffs) in expected.iter().enumerate() {
        let got = intpoly::cyclotomic(n as u64 + 1).unwrap();
        assert_eq!(got, IntPolynomial::from_i64(coeffs), "Phi_{}", n + 1);
    }
    pass(1, "cyclotomic table n = 1..6 matches exactly");
}

/// Criterion 2: the product identity for n <= 200 and the degree formula
/// for n <= 500, both exact.
#[test]
fn criterion_02_product_identity_and_degrees() {
    assert!(
        par::all_range(1, 201, |n| intpoly::verify_product_identity(n).unwrap()),
        "prod over d | n of Phi_d = x^n - 1 failed somewhere in 1..=200"
    );
    assert!(
        par::all_range(1, 501, |n| {
            let c = intpoly::cyclotomic(n).unwrap();
            let phi = arith::euler_phi(&BigUint::from(n)).unwrap();
            BigUint::from(c.degree().unwrap()) == phi
        }),
        "deg Phi_n = phi(n) failed somewhere in 1..=500"
    );
    pass(2, "product identity (n <= 200) and deg Phi_n = phi(n) (n <= 500)");
}

/// Criterion 3: counting matches enumeration, including I_2(2) = 1.
#[test]
fn criterion_03_irreducible_counts_match_enumeration() {
    assert_eq!(
        finfield::count_irreducible(2, 2).unwrap(),
        BigUint::one(),
        "I_2(2) must be 1"
    );
    let cases: [(u64, usize, u32); 4] = [(2, 1, 8), (3, 1, 5), (2, 2, 4), (5, 1, 3)];
    for (p, m, max_n) in cases {
        let spec = FieldSpec::new(p, m).unwrap();
        for n in 1..=max_n {
            let listed = spec.enumerate_irreducible(n as usize).unwrap();
            let counted = finfield::count_irreducible(spec.q(), n).unwrap();
            assert_eq!(
                BigUint::from(listed.len()),
                counted,
                "q = {}, n = {n}",
                spec.q()
            );
        }
    }
    pass(3, "count_irreducible equals enumeration for q in {2,3,4,5}");
}

/// Criterion 4: x^{q^n} - x factors as the product of all monic
/// irreducibles of degree dividing n.
#[test]
fn criterion_04_xqn_factorization() {
    for (p, ns) in [(2u64, 1..=4usize), (3, 1..=2), (5, 1..=2)] {
        let spec = FieldSpec::prime_field(p).unwrap();
        for n in ns {
            assert!(
                spec.verify_xqn_factorization(n).unwrap(),
                "q = {p}, n = {n}"
            );
        }
    }
    pass(4, "x^(q^n) - x is the product of irreducibles of degree d | n");
}

/// Criterion 5: the Möbius identity q^n = sum over d | n of d * I_q(d).
#[test]
fn criterion_05_count_identity() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=12u32 {
            let mut total = BigUint::zero();
            for d in 1..=n {
                if n % d == 0 {
                    total += BigUint::from(d) * finfield::count_irreducible(q, d).unwrap();
                }
            }
            assert_eq!(total, BigUint::from(q).pow(n), "q = {q}, n = {n}");
        }
    }
    pass(5, "q^n = sum of d * I_q(d) for q in {2,3,4,5,7,8,9}, n <= 12");
}

/// The shared poset corpus for criteria 6 and 7: divisor posets of every
/// n <= 200, the two subset orders at base <= 5, and 50 deterministic
/// random posets of size <= 32.
fn poset_corpus() -> Vec<Arc<poset::Poset>> {
    let mut corpus: Vec<Arc<poset::Poset>> = (1..=200u64)
        .map(|n| Arc::new(poset::divisor_poset(n).unwrap()))
        .collect();
    for base in 0..=5usize {
        corpus.push(Arc::new(
            poset::subset_poset(base, SubsetOrder::Inclusion).unwrap(),
        ));
        corpus.push(Arc::new(
            poset::subset_poset(base, SubsetOrder::Exclusion).unwrap(),
        ));
    }
    let mut rng = SplitMix64::new(0x5eed_c0de);
    for _ in 0..50 {
        let n = 1 + rng.below(32) as usize;
        let density = 10 + rng.below(70);
        corpus.push(Arc::new(poset::random_poset(rng.next_u64(), n, density)));
    }
    corpus
}

/// Criterion 6: the incidence-algebra engine: mu * zeta = zeta * mu =
/// delta and invert_unitriangular(zeta) = mu across the corpus.
#[test]
fn criterion_06_poset_engine() {
    let corpus = poset_corpus();
    let ok = par::all_range(0, corpus.len() as u64, |i| {
        let p = &corpus[i as usize];
        let mu = poset::mobius_function(p);
        let zeta = IncidenceFunction::zeta(p);
        let delta = IncidenceFunction::delta(p);
        mu.convolve(&zeta).unwrap() == delta
            && zeta.convolve(&mu).unwrap() == delta
            && zeta.invert_unitriangular().unwrap() == mu
    });
    assert!(ok, "incidence engine identity failed somewhere in the corpus");
    pass(
        6,
        "mu * zeta = zeta * mu = delta and nilpotent inversion, 262-poset corpus",
    );
}

/// Criterion 7: bridge identities to the classical Möbius function and to
/// the signed-size formula on the exclusion poset.
#[test]
fn criterion_07_bridge_identities() {
    let ok = par::all_range(1, 201, |n| {
        let p = Arc::new(poset::divisor_poset(n).unwrap());
        let mu = poset::mobius_function(&p);
        for (i, a) in p.labels().iter().enumerate() {
            for (j, b) in p.labels().iter().enumerate() {
                if p.leq(i, j) {
                    let (a, b): (u64, u64) = (a.parse().unwrap(), b.parse().unwrap());
                    let classical = arith::mobius(&BigUint::from(b / a)).unwrap();
                    if mu.value(i, j) != BigRational::from_integer(BigInt::from(classical)) {
                        return false;
                    }
                }
            }
        }
        true
    });
    assert!(ok, "divisor-poset bridge failed");

    for base in 0..=5usize {
        let p = Arc::new(poset::subset_poset(base, SubsetOrder::Exclusion).unwrap());
        let mu = poset::mobius_function(&p);
        for u in 0..(1u32 << base) {
            for t in 0..(1u32 << base) {
                if u & t == t {
                    // u >= t in exclusion order (u is a superset)
                    let i = p.index_of(&poset::subset_label(u)).unwrap();
                    let j = p.index_of(&poset::subset_label(t)).unwrap();
                    let signed = if (u ^ t).count_ones() % 2 == 0 { 1 } else { -1 };
                    assert_eq!(
                        mu.value(i, j),
                        BigRational::from_integer(BigInt::from(signed)),
                        "base {base}, U = {u:#b}, T = {t:#b}"
                    );
                }
            }
        }
    }
    pass(7, "poset mu matches classical mu(b/a) and (-1)^|U\\T|");
}

/// Brute-force derangement count by walking all permutations.
fn derangements_by_enumeration(n: usize) -> BigUint {
    fn walk(used: &mut [bool], pos: usize, n: usize) -> u64 {
        if pos == n {
            return 1;
        }
        let mut total = 0;
        for v in 0..n {
            if !used[v] && v != pos {
                used[v] = true;
                total += walk(used, pos + 1, n);
                used[v] = false;
            }
        }
        total
    }
    if n == 0 {
        return BigUint::one();
    }
    BigUint::from(walk(&mut vec![false; n], 0, n))
}

/// Criterion 8: derangements three ways — brute force (n <= 9), the
/// exclusion-poset inversion (n <= 8), and the closest-integer-to-n!/e
/// characterization in exact rationals (n <= 50).
#[test]
fn criterion_08_derangements() {
    for n in 0..=9usize {
        assert_eq!(
            inclexcl::count_derangements(n as u64),
            derangements_by_enumeration(n),
            "n = {n}"
        );
    }
    for n in 0..=8usize {
        let table = inclexcl::fixed_point_table(n).unwrap();
        assert_eq!(
            table[&0].fixing_exactly,
            inclexcl::count_derangements(n as u64),
            "poset inversion at n = {n}"
        );
    }
    // |D(n) - n!/e| < 1/2: approximate n!/e by n! * sum_{k<=M} (-1)^k/k!
    // with M = 90; the alternating tail keeps |n!/e - approx| <= n!/(M+1)!.
    let m_terms = 90u64;
    let mut e_partial = BigRational::zero();
    let mut sign = BigInt::one();
    for k in 0..=m_terms {
        e_partial += BigRational::new(sign.clone(), BigInt::from(inclexcl::factorial(k)));
        sign = -sign;
    }
    for n in 1..=50u64 {
        let d = BigRational::from_integer(BigInt::from(inclexcl::count_derangements(n)));
        let nf = BigRational::from_integer(BigInt::from(inclexcl::factorial(n)));
        let approx = &nf * &e_partial;
        let tail = &nf
            * BigRational::new(BigInt::one(), BigInt::from(inclexcl::factorial(m_terms + 1)));
        let distance = (&d - &approx).abs() + tail;
        assert!(
            distance < BigRational::new(BigInt::one(), BigInt::from(2)),
            "n = {n}: |D(n) - n!/e| not below 1/2"
        );
    }
    pass(8, "derangements by enumeration, poset inversion, and n!/e rounding");
}

/// Criterion 9: inclusion-exclusion against direct-union oracles on 500
/// deterministic random instances, plus the indicator identity on all.
#[test]
fn criterion_09_inclusion_exclusion_oracles() {
    let mut rng = SplitMix64::new(0xa110f);
    for round in 0..500 {
        let universe = 1 + rng.below(16) as usize;
        let n_sets = rng.below(9) as usize; // n <= 8
        let sets: Vec<u64> = (0..n_sets).map(|_| rng.below(1u64 << universe)).collect();
        let fam = SetFamily::from_masks(universe, sets.clone()).unwrap();
        assert_eq!(
            fam.union_size_ie(),
            fam.direct_union_size(),
            "round {round}"
        );
        assert!(fam.verify_indicator_identity(), "round {round}");

        // probability version on the same masks with random rational
        // weights normalized to sum 1
        let raw: Vec<u64> = (0..universe).map(|_| 1 + rng.below(9)).collect();
        let total: u64 = raw.iter().sum();
        let weights: Vec<BigRational> = raw
            .iter()
            .map(|&w| BigRational::new(BigInt::from(w), BigInt::from(total)))
            .collect();
        let labels: Vec<String> = (0..universe).map(|i| format!("u{i}")).collect();
        let events: Vec<Vec<String>> = sets
            .iter()
            .map(|&mask| {
                (0..universe)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| format!("u{i}"))
                    .collect()
            })
            .collect();
        let space = inclexcl::FiniteProbSpace::new(labels, weights, events).unwrap();
        assert_eq!(
            space.prob_union_ie(),
            space.direct_union_prob(),
            "round {round}"
        );
    }
    pass(9, "union size and union measure match direct oracles, 500 instances");
}

/// Criterion 10: the zeta magnitude bounds on a fixed 10 x 10 grid at
/// N = 10^6 — pass, or inconclusive only with a bound gap below
/// 10 * tail_bound — and the reciprocal product near 1 at three points.
#[test]
fn criterion_10_zeta_bounds_grid() {
    let n_terms = 1_000_000u64;
    let grid: Vec<Complex64> = (0..10)
        .flat_map(|i| {
            (0..10).map(move |j| {
                Complex64::new(1.1 + 8.9 * i as f64 / 9.0, -10.0 + 20.0 * j as f64 / 9.0)
            })
        })
        .collect();
    assert_eq!(grid.len(), 100);
    let reports = par::map_range(0, 100, |i| {
        dirichlet::verify_zeta_bounds(grid[i as usize], n_terms).unwrap()
    });
    for r in &reports {
        let budget = 10.0 * (r.tail_bound + r.rounding_bound);
        match r.verdict {
            Verdict::Pass => {}
            Verdict::Inconclusive => assert!(
                r.gap < budget,
                "z = {}: inconclusive with gap {} >= {budget}",
                r.z,
                r.gap
            ),
            Verdict::Violation => panic!("z = {}: strict violation", r.z),
        }
        assert_ne!(r.reciprocal_verdict, Verdict::Violation, "z = {}", r.z);
        if r.reciprocal_verdict == Verdict::Inconclusive {
            assert!(
                r.reciprocal_gap < budget,
                "z = {}: reciprocal gap {} >= {budget}",
                r.z,
                r.reciprocal_gap
            );
        }
    }

    // zeta * (1/zeta) partial-product check within combined error bounds
    for z in [
        Complex64::new(2.0, 0.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(2.0, 5.0),
    ] {
        let n = 10_000u64;
        let zt = dirichlet::zeta_truncated(z, n).unwrap();
        let rt = dirichlet::zeta_reciprocal_truncated(z, n).unwrap();
        let product = zt.partial_sum() * rt.partial_sum();
        let combined = zt.partial_sum().norm() * rt.total_error()
            + rt.partial_sum().norm() * zt.total_error()
            + zt.total_error() * rt.total_error();
        assert!(
            (product - Complex64::new(1.0, 0.0)).norm() <= combined,
            "z = {z}"
        );
    }
    pass(10, "zeta bounds on the 100-point grid at N = 10^6, product near 1");
}

/// Criterion 11: the alternating-group facts at small degree.
#[test]
fn criterion_11_group_facts() {
    for n in 3..=7usize {
        let group = permgroup::generate_group(&permgroup::three_cycles(n).unwrap()).unwrap();
        let half_factorial: usize = (2..=n).product::<usize>() / 2;
        assert_eq!(group.len(), half_factorial, "|<3-cycles>| at n = {n}");
        assert!(group.iter().all(|p| p.is_even()), "odd element at n = {n}");
        assert_eq!(group, permgroup::alternating_group(n).unwrap());
    }
    for n in 5..=7usize {
        let ambient = permgroup::alternating_group(n).unwrap();
        let gen = PermSet::from_perms(n, [Permutation::cycle(n, &[1, 2, 3]).unwrap()]).unwrap();
        let closure = permgroup::normal_closure(&gen, &ambient).unwrap();
        assert_eq!(closure, ambient, "normal closure of (123) in A_{n}");
    }
    for n in 4..=7usize {
        assert!(
            permgroup::verify_threecycle_identities(n).unwrap(),
            "identities at n = {n}"
        );
    }
    assert!(permgroup::derived_series_solvable(&permgroup::symmetric_group(3).unwrap()).unwrap());
    assert!(permgroup::derived_series_solvable(&permgroup::symmetric_group(4).unwrap()).unwrap());
    assert!(!permgroup::derived_series_solvable(&permgroup::symmetric_group(5).unwrap()).unwrap());
    pass(11, "A_n generation, normal closures, identities, derived series");
}

/// The fixed-point bookkeeping bridge used by criterion 8, spelled out:
/// g(T) = (n - |T|)! and f nonnegative with f(full) = 1.
#[test]
fn fixed_point_table_shape() {
    for n in 0..=8usize {
        let table = inclexcl::fixed_point_table(n).unwrap();
        let full = (1u32 << n) - 1;
        assert_eq!(table[&full].fixing_exactly, BigUint::one());
        for (mask, counts) in &table {
            assert_eq!(
                counts.fixing_at_least,
                inclexcl::factorial(n as u64 - mask.count_ones() as u64)
            );
        }
    }
}

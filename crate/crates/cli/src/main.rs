//! `moebius` — command-line surface over the exact-arithmetic library:
//! classical Möbius/totient/divisors, cyclotomic polynomials, finite-field
//! irreducibility and isomorphisms, poset Möbius inversion,
//! inclusion-exclusion, derangements, truncated zeta series, and small
//! permutation-group facts.
//!
//! Every subcommand takes `--json` for a machine-readable envelope
//! (`{command, inputs, result, format_version}` on stdout) or `--plain`
//! (the default) for human output. Exit codes: 0 success, 1 domain error,
//! 2 usage error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use moebius_core::dirichlet::{self, Verdict};
use moebius_core::finfield::{self, FieldSpec, FqElement, FqPolynomial};
use moebius_core::inclexcl::{ProbSpaceFile, SetFamilyFile};
use moebius_core::intpoly;
use moebius_core::permgroup::{self, PermSet, Permutation};
use moebius_core::poset::{self, PosetFile};
use moebius_core::{arith, inclexcl};

const FORMAT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "moebius",
    about = "Exact computations around Möbius inversion: cyclotomics, finite fields, posets, inclusion-exclusion, zeta truncations, permutation groups",
    version
)]
struct Cli {
    /// Emit a single JSON document on stdout.
    #[arg(long, global = true, conflicts_with = "plain")]
    json: bool,

    /// Human-readable output (the default).
    #[arg(long, global = true)]
    plain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical Möbius function μ(N)
    Mobius { n: BigUint },
    /// Euler totient φ(N)
    Phi { n: BigUint },
    /// All divisors of N, ascending
    Divisors { n: BigUint },
    /// The N-th cyclotomic polynomial (printed descending degree)
    Cyclotomic {
        n: u64,
        /// Also check prod over d | N of Phi_d = x^N - 1
        #[arg(long)]
        verify: bool,
    },
    /// Number of monic irreducible polynomials of degree N over F_Q
    CountIrreducible { q: u64, n: u32 },
    /// All monic irreducibles of degree N over F_{P^M}, in lex order
    EnumerateIrreducible { p: u64, m: usize, n: usize },
    /// Check x^(q^N) - x = product of irreducibles of degree dividing N over F_{P^M}
    VerifyField { p: u64, m: usize, n: usize },
    /// A generator of the multiplicative group of F_{P^M}
    FindGenerator { p: u64, m: usize },
    /// Isomorphism between two realizations of F_{P^M}; moduli are
    /// comma-separated ascending coefficients, e.g. "2,1,1" for x^2+x+2
    FieldIso {
        p: u64,
        m: usize,
        modulus_a: String,
        modulus_b: String,
    },
    /// Möbius function of the poset in FILE on all intervals
    PosetMobius { file: PathBuf },
    /// Möbius inversion of the element values in VALUES over the poset in FILE
    PosetInvert { file: PathBuf, values: PathBuf },
    /// Number of derangements of an N-set
    Derangements { n: u64 },
    /// Union size of the set family in FILE by inclusion-exclusion
    InclusionExclusion { file: PathBuf },
    /// Union measure of the probability space in FILE, exactly
    ProbUnion { file: PathBuf },
    /// Partial sum of the zeta series at RE + IM*i
    Zeta {
        re: f64,
        im: f64,
        #[arg(long, default_value_t = 1_000_000)]
        n_terms: u64,
    },
    /// Check the magnitude bounds (Re z - 1)/Re z < |zeta(z)| < Re z/(Re z - 1)
    ZetaBounds {
        re: f64,
        im: f64,
        #[arg(long, default_value_t = 1_000_000)]
        n_terms: u64,
    },
    /// Verify the 3-cycle generation identities exhaustively at degree N
    PermIdentities { n: usize },
    /// Group generated by semicolon-separated cycle words, e.g. "(1 2 3);(2 3 4)"
    PermGenerate {
        n: usize,
        #[arg(long)]
        gens: String,
    },
    /// Normal closure of a cycle word in A_N (in S_N when the element is odd)
    NormalClosure {
        n: usize,
        #[arg(long = "gen")]
        generator: String,
    },
    /// Solvability of S_N or A_N via the derived series
    Solvable {
        family: Family,
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "Sn", alias = "sn")]
    Symmetric,
    #[value(name = "An", alias = "an")]
    Alternating,
}

struct Output {
    inputs: Value,
    result: Value,
    plain: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let envelope = json!({
                    "command": command_name(&cli.command),
                    "inputs": out.inputs,
                    "result": out.result,
                    "format_version": FORMAT_VERSION,
                });
                println!("{envelope}");
            } else {
                println!("{}", out.plain);
            }
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Mobius { .. } => "mobius",
        Command::Phi { .. } => "phi",
        Command::Divisors { .. } => "divisors",
        Command::Cyclotomic { .. } => "cyclotomic",
        Command::CountIrreducible { .. } => "count-irreducible",
        Command::EnumerateIrreducible { .. } => "enumerate-irreducible",
        Command::VerifyField { .. } => "verify-field",
        Command::FindGenerator { .. } => "find-generator",
        Command::FieldIso { .. } => "field-iso",
        Command::PosetMobius { .. } => "poset-mobius",
        Command::PosetInvert { .. } => "poset-invert",
        Command::Derangements { .. } => "derangements",
        Command::InclusionExclusion { .. } => "inclusion-exclusion",
        Command::ProbUnion { .. } => "prob-union",
        Command::Zeta { .. } => "zeta",
        Command::ZetaBounds { .. } => "zeta-bounds",
        Command::PermIdentities { .. } => "perm-identities",
        Command::PermGenerate { .. } => "perm-generate",
        Command::NormalClosure { .. } => "normal-closure",
        Command::Solvable { .. } => "solvable",
    }
}

fn run(cmd: &Command) -> Result<Output, String> {
    match cmd {
        Command::Mobius { n } => {
            let mu = arith::mobius(n).map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({ "n": n.to_string() }),
                result: json!(mu),
                plain: mu.to_string(),
            })
        }
        Command::Phi { n } => {
            let phi = arith::euler_phi(n).map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({ "n": n.to_string() }),
                result: json!(phi.to_string()),
                plain: phi.to_string(),
            })
        }
        Command::Divisors { n } => {
            let divs = arith::divisors(n).map_err(|e| e.to_string())?;
            let strings: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
            Ok(Output {
                inputs: json!({ "n": n.to_string() }),
                result: json!(strings),
                plain: strings.join(" "),
            })
        }
        Command::Cyclotomic { n, verify } => {
            let c = intpoly::cyclotomic(*n).map_err(|e| e.to_string())?;
            let verified = if *verify {
                Some(intpoly::verify_product_identity(*n).map_err(|e| e.to_string())?)
            } else {
                None
            };
            let mut plain = c.to_string();
            if let Some(v) = verified {
                plain.push_str(&format!("\nproduct identity for n = {n}: {v}"));
            }
            Ok(Output {
                inputs: json!({ "n": n, "verify": verify }),
                result: json!({
                    "degree": c.degree(),
                    "coefficients": c,
                    "product_identity": verified,
                }),
                plain,
            })
        }
        Command::CountIrreducible { q, n } => {
            let count = finfield::count_irreducible(*q, *n).map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({ "q": q, "n": n }),
                result: json!(count.to_string()),
                plain: count.to_string(),
            })
        }
        Command::EnumerateIrreducible { p, m, n } => {
            let spec = FieldSpec::new(*p, *m).map_err(|e| e.to_string())?;
            let polys = spec.enumerate_irreducible(*n).map_err(|e| e.to_string())?;
            let coeff_lists: Vec<Vec<Vec<u64>>> = polys
                .iter()
                .map(|f| f.coeffs().iter().map(|e| e.coeffs().to_vec()).collect())
                .collect();
            let plain = polys
                .iter()
                .map(|f| fmt_fq_poly(&spec, f))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                inputs: json!({ "p": p, "m": m, "n": n }),
                result: json!({
                    "p": spec.p(),
                    "m": spec.m(),
                    "modulus": spec.modulus(),
                    "count": polys.len(),
                    "polynomials": coeff_lists,
                }),
                plain,
            })
        }
        Command::VerifyField { p, m, n } => {
            let spec = FieldSpec::new(*p, *m).map_err(|e| e.to_string())?;
            let ok = spec.verify_xqn_factorization(*n).map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({ "p": p, "m": m, "n": n }),
                result: json!(ok),
                plain: ok.to_string(),
            })
        }
        Command::FindGenerator { p, m } => {
            let spec = FieldSpec::new(*p, *m).map_err(|e| e.to_string())?;
            let g = spec.find_generator();
            Ok(Output {
                inputs: json!({ "p": p, "m": m }),
                result: json!({
                    "modulus": spec.modulus(),
                    "generator": g.coeffs(),
                    "order": spec.q() - 1,
                }),
                plain: fmt_element(&spec, &g),
            })
        }
        Command::FieldIso {
            p,
            m,
            modulus_a,
            modulus_b,
        } => {
            let coeffs_a = parse_modulus(modulus_a, *m)?;
            let coeffs_b = parse_modulus(modulus_b, *m)?;
            let a = FieldSpec::with_modulus(*p, coeffs_a).map_err(|e| e.to_string())?;
            let b = FieldSpec::with_modulus(*p, coeffs_b).map_err(|e| e.to_string())?;
            let theta = finfield::find_isomorphism(&a, &b).map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({
                    "p": p, "m": m,
                    "modulus_a": a.modulus(),
                    "modulus_b": b.modulus(),
                }),
                result: json!({
                    "theta": theta.coeffs(),
                    "multiplicativity_checked_pairs": 100,
                }),
                plain: format!(
                    "class of x in the first field maps to {} in the second",
                    fmt_element(&b, &theta)
                ),
            })
        }
        Command::PosetMobius { file } => {
            let poset_file: PosetFile = read_json(file)?;
            let p = Arc::new(poset_file.into_poset().map_err(|e| e.to_string())?);
            let mu = poset::mobius_function(&p);
            let mut entries = Vec::new();
            let mut plain_lines = Vec::new();
            for i in 0..p.len() {
                for j in 0..p.len() {
                    if p.leq(i, j) {
                        let v = mu.value(i, j);
                        entries.push(json!([
                            p.labels()[i],
                            p.labels()[j],
                            v.to_string()
                        ]));
                        plain_lines.push(format!(
                            "mu({}, {}) = {}",
                            p.labels()[i],
                            p.labels()[j],
                            v
                        ));
                    }
                }
            }
            Ok(Output {
                inputs: json!({ "file": file.display().to_string() }),
                result: json!({ "elements": p.labels(), "mobius": entries }),
                plain: plain_lines.join("\n"),
            })
        }
        Command::PosetInvert { file, values } => {
            let poset_file: PosetFile = read_json(file)?;
            let p = Arc::new(poset_file.into_poset().map_err(|e| e.to_string())?);
            let raw: BTreeMap<String, Value> = read_json(values)?;
            let mut g = BTreeMap::new();
            for (label, v) in &raw {
                g.insert(label.clone(), parse_scalar(v)?);
            }
            let f = poset::mobius_invert(&g, &p).map_err(|e| e.to_string())?;
            let result: BTreeMap<String, String> = f
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect();
            let plain = f
                .iter()
                .map(|(k, v)| format!("f({k}) = {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                inputs: json!({
                    "file": file.display().to_string(),
                    "values": values.display().to_string(),
                }),
                result: json!(result),
                plain,
            })
        }
        Command::Derangements { n } => {
            let d = inclexcl::count_derangements(*n);
            Ok(Output {
                inputs: json!({ "n": n }),
                result: json!(d.to_string()),
                plain: d.to_string(),
            })
        }
        Command::InclusionExclusion { file } => {
            let fam_file: SetFamilyFile = read_json(file)?;
            let fam = fam_file.into_family().map_err(|e| e.to_string())?;
            let ie = fam.union_size_ie();
            let direct = fam.direct_union_size();
            let identity = fam.verify_indicator_identity();
            Ok(Output {
                inputs: json!({ "file": file.display().to_string() }),
                result: json!({
                    "union_size": ie,
                    "direct_union_size": direct,
                    "indicator_identity": identity,
                }),
                plain: format!(
                    "union size: {ie}\ndirect oracle: {direct}\nindicator identity: {identity}"
                ),
            })
        }
        Command::ProbUnion { file } => {
            let space_file: ProbSpaceFile = read_json(file)?;
            let space = space_file.into_space().map_err(|e| e.to_string())?;
            let p = space.prob_union_ie();
            Ok(Output {
                inputs: json!({ "file": file.display().to_string() }),
                result: json!(p.to_string()),
                plain: p.to_string(),
            })
        }
        Command::Zeta { re, im, n_terms } => {
            let s = dirichlet::zeta_truncated(Complex64::new(*re, *im), *n_terms)
                .map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({ "re_z": re, "im_z": im, "N": n_terms }),
                result: json!({
                    "re_z": re,
                    "im_z": im,
                    "N": n_terms,
                    "partial_re": s.partial_sum().re,
                    "partial_im": s.partial_sum().im,
                    "tail_bound": s.tail_bound(),
                    "rounding_bound": s.rounding_bound(),
                }),
                plain: format!(
                    "partial sum = {} + {}i  (N = {}, tail <= {:e}, rounding <= {:e})",
                    s.partial_sum().re,
                    s.partial_sum().im,
                    n_terms,
                    s.tail_bound(),
                    s.rounding_bound()
                ),
            })
        }
        Command::ZetaBounds { re, im, n_terms } => {
            let r = dirichlet::verify_zeta_bounds(Complex64::new(*re, *im), *n_terms)
                .map_err(|e| e.to_string())?;
            let verdict = verdict_str(r.verdict);
            Ok(Output {
                inputs: json!({ "re_z": re, "im_z": im, "N": n_terms }),
                result: json!({
                    "re_z": re,
                    "im_z": im,
                    "N": n_terms,
                    "partial_re": r.partial_sum.re,
                    "partial_im": r.partial_sum.im,
                    "tail_bound": r.tail_bound,
                    "rounding_bound": r.rounding_bound,
                    "lower_bound": r.lower_bound,
                    "upper_bound": r.upper_bound,
                    "verdict": verdict,
                    "reciprocal_verdict": verdict_str(r.reciprocal_verdict),
                }),
                plain: format!(
                    "|zeta({re} + {im}i)| in [{:.9}, {:.9}]; bounds ({:.9}, {:.9}); verdict: {verdict}",
                    r.magnitude_interval.0,
                    r.magnitude_interval.1,
                    r.lower_bound,
                    r.upper_bound
                ),
            })
        }
        Command::PermIdentities { n } => {
            let ok = permgroup::verify_threecycle_identities(*n).map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({ "n": n }),
                result: json!(ok),
                plain: ok.to_string(),
            })
        }
        Command::PermGenerate { n, gens } => {
            let mut perms = Vec::new();
            for word in gens.split(';') {
                let word = word.trim();
                if word.is_empty() {
                    continue;
                }
                perms.push(Permutation::parse_cycles(word, *n).map_err(|e| e.to_string())?);
            }
            let gen_set = PermSet::from_perms(*n, perms).map_err(|e| e.to_string())?;
            let group = permgroup::generate_group(&gen_set).map_err(|e| e.to_string())?;
            let elements: Vec<String> = group.iter().map(|p| p.to_string()).collect();
            Ok(Output {
                inputs: json!({ "n": n, "gens": gens }),
                result: json!({ "order": group.len(), "elements": elements }),
                plain: format!("order {}", group.len()),
            })
        }
        Command::NormalClosure { n, generator } => {
            let g = Permutation::parse_cycles(generator, *n).map_err(|e| e.to_string())?;
            let (ambient, ambient_name) = if g.is_even() {
                (
                    permgroup::alternating_group(*n).map_err(|e| e.to_string())?,
                    format!("A{n}"),
                )
            } else {
                (
                    permgroup::symmetric_group(*n).map_err(|e| e.to_string())?,
                    format!("S{n}"),
                )
            };
            let gens = PermSet::from_perms(*n, [g]).map_err(|e| e.to_string())?;
            let closure = permgroup::normal_closure(&gens, &ambient).map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({ "n": n, "gen": generator }),
                result: json!({
                    "ambient": ambient_name,
                    "ambient_order": ambient.len(),
                    "closure_order": closure.len(),
                    "is_whole_ambient": closure.len() == ambient.len(),
                }),
                plain: format!(
                    "closure order {} in {} (order {})",
                    closure.len(),
                    ambient_name,
                    ambient.len()
                ),
            })
        }
        Command::Solvable { family, n } => {
            let group = match family {
                Family::Symmetric => permgroup::symmetric_group(*n).map_err(|e| e.to_string())?,
                Family::Alternating => {
                    permgroup::alternating_group(*n).map_err(|e| e.to_string())?
                }
            };
            let solvable = permgroup::derived_series_solvable(&group).map_err(|e| e.to_string())?;
            Ok(Output {
                inputs: json!({
                    "family": match family { Family::Symmetric => "Sn", Family::Alternating => "An" },
                    "n": n,
                }),
                result: json!(solvable),
                plain: solvable.to_string(),
            })
        }
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Inconclusive => "inconclusive",
        Verdict::Violation => "violation",
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn parse_scalar(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigRational>()
            .map_err(|_| format!("cannot use {n} as an exact scalar (use a string for rationals)")),
        Value::String(s) => s
            .parse::<BigRational>()
            .map_err(|_| format!("cannot parse {s:?} as a rational")),
        other => Err(format!("expected a number or \"p/q\" string, got {other}")),
    }
}

fn parse_modulus(input: &str, m: usize) -> Result<Vec<u64>, String> {
    let coeffs: Result<Vec<u64>, _> = input
        .split(',')
        .map(|tok| tok.trim().parse::<u64>())
        .collect();
    let coeffs = coeffs.map_err(|_| {
        format!("cannot parse modulus {input:?}: expected comma-separated coefficients, ascending")
    })?;
    if coeffs.len() != m + 1 {
        return Err(format!(
            "modulus {input:?} has {} coefficients, expected degree {m} (so {} coefficients)",
            coeffs.len(),
            m + 1
        ));
    }
    Ok(coeffs)
}

fn fmt_element(spec: &FieldSpec, e: &FqElement) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, &c) in e.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match k {
            0 => c.to_string(),
            1 if c == 1 => "w".to_string(),
            1 => format!("{c}*w"),
            _ if c == 1 => format!("w^{k}"),
            _ => format!("{c}*w^{k}"),
        };
        parts.push(term);
    }
    let _ = spec;
    parts.join(" + ")
}

fn fmt_fq_poly(spec: &FieldSpec, f: &FqPolynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, e) in f.coeffs().iter().enumerate().rev() {
        if e.is_zero() {
            continue;
        }
        let coeff = fmt_element(spec, e);
        let is_one = coeff == "1";
        let needs_parens = coeff.contains('+') || coeff.contains(' ');
        let coeff = if needs_parens {
            format!("({coeff})")
        } else {
            coeff
        };
        let term = match k {
            0 => coeff,
            1 if is_one => "x".to_string(),
            1 => format!("{coeff}*x"),
            _ if is_one => format!("x^{k}"),
            _ => format!("{coeff}*x^{k}"),
        };
        parts.push(term);
    }
    parts.join(" + ")
}

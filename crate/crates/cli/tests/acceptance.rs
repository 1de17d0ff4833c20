//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p padic-welch-cli --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use padic_welch::classical::{classical_secondary_bounds, classical_welch, gerzon, Field};
use padic_welch::factorial::{binomial_valuation, legendre_factorial_valuation};
use padic_welch::format::{parse_config, render_config};
use padic_welch::generators::random_tight_config;
use padic_welch::linalg::{check_tight, frame_operator, inner, Vector};
use padic_welch::search::{run_search, EntrySet, HitReport, SearchMode, SearchSpec};
use padic_welch::sym::{
    check_sym_tight, enumerate_multi_indices, lift, lifted_frame_operator, multinomial, sym_dim, sym_inner,
};
use padic_welch::welch::{q1_check, welch_general, zauner_check, WelchReport};
use padic_welch::{AbsValue, Error, FrameConfig, Prime, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const PRIMES: [u64; 4] = [2, 3, 5, 7];
const TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn random_rational(rng: &mut StdRng, height: i64) -> Rational {
    Rational::new(rng.gen_range(-height..=height), rng.gen_range(1..=height))
}

fn random_config(rng: &mut StdRng, p: Prime, d: usize, n: usize, height: i64) -> FrameConfig {
    let rows = (0..n).map(|_| (0..d).map(|_| random_rational(rng, height)).collect()).collect();
    FrameConfig::from_rows(p, d, rows).unwrap()
}

// Independent p-adic arithmetic: valuations by repeated exact division, and
// absolute values kept as `Option<i64>` exponents of p (None is zero).

fn integer_vp(mut x: Rational, p: u64) -> i64 {
    let p = int(p as i64);
    let mut v = 0;
    loop {
        let q = &x / &p;
        if !q.denom().to_string().eq("1") {
            return v;
        }
        x = q;
        v += 1;
    }
}

fn vp(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(integer_vp(Rational::from_integer(x.numer().clone()), p) - integer_vp(Rational::from_integer(x.denom().clone()), p))
}

fn abs_exp(x: &Rational, p: u64) -> Option<i64> {
    vp(x, p).map(|v| -v)
}

fn pascal_binomial(n: u64, k: u64) -> Rational {
    let mut row = vec![int(1)];
    for _ in 0..n {
        let mut next = vec![int(1); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Both sides of the order-m bound, computed straight from the definition.
fn oracle_bound(config: &FrameConfig, m: u32) -> (Option<i64>, Option<i64>) {
    let p = config.prime().get();
    let v = config.vectors();
    let selfs: Vec<Rational> = v.iter().map(|t| inner(t, t).unwrap()).collect();
    let diag: Rational = selfs.iter().map(|s| s.pow(2 * m)).sum();
    let mut lhs = abs_exp(&diag, p);
    for j in 0..v.len() {
        for k in 0..v.len() {
            if j != k {
                lhs = lhs.max(abs_exp(&inner(&v[j], &v[k]).unwrap().pow(2 * m), p));
            }
        }
    }
    let sum: Rational = selfs.iter().map(|s| s.pow(m)).sum();
    let binom = abs_exp(&pascal_binomial(config.dim() as u64 + m as u64 - 1, m as u64), p).unwrap();
    let rhs = abs_exp(&sum, p).map(|e| 2 * e - binom);
    (lhs, rhs)
}

fn check_against_oracle(config: &FrameConfig, report: &WelchReport, m: u32) -> Result<(), String> {
    let (lhs, rhs) = oracle_bound(config, m);
    ensure!(report.lhs.exponent() == lhs, "lhs {} differs from oracle {lhs:?}", report.lhs);
    ensure!(report.rhs.exponent() == rhs, "rhs {} differs from oracle {rhs:?}", report.rhs);
    ensure!(report.holds == (lhs >= rhs), "holds = {} but oracle says {}", report.holds, lhs >= rhs);
    ensure!(report.equality == (lhs == rhs), "equality flag disagrees with oracle");
    Ok(())
}

fn first_order_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    for i in 0..500 {
        let p = prime(PRIMES[i % 4]);
        let d = rng.gen_range(1..=4);
        let copies = rng.gen_range(1..=12 / d);
        let scale = rng.gen_bool(0.5);
        let config = random_tight_config(&mut rng, p, d, copies, scale);
        ensure!(config.len() <= 12, "generator produced n = {}", config.len());
        let report = welch_general(&config, 1).map_err(|e| format!("config {i}: {e}"))?;
        ensure!(report.holds, "config {i} violates the bound: {}", render_config(&config));
        check_against_oracle(&config, &report, 1).map_err(|e| format!("config {i}: {e}"))?;
    }
    Ok("500 generated tight configurations hold, all matching the oracle".into())
}

fn higher_order_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut checked = 0;
    for m in [2, 3] {
        for i in 0..100 {
            let p = prime(PRIMES[i % 4]);
            let n = rng.gen_range(1..=6);
            let mut config = random_config(&mut rng, p, 1, n, 30);
            if i % 10 == 0 {
                config = config.scaled(&Rational::zero());
            }
            ensure!(check_sym_tight(&config, m).unwrap().is_tight, "d = 1 lift not tight");
            let report = welch_general(&config, m).map_err(|e| e.to_string())?;
            ensure!(report.holds, "violation at m = {m}: {}", render_config(&config));
            check_against_oracle(&config, &report, m)?;
            checked += 1;
        }
        for d in 2..=3 {
            let zero = FrameConfig::from_rows(prime(3), d, vec![vec![Rational::zero(); d]; 2]).unwrap();
            let report = welch_general(&zero, m).map_err(|e| e.to_string())?;
            ensure!(report.holds && report.degenerate_b(), "all-zero configuration");
            checked += 1;
        }
    }
    let mut generator_hits = 0;
    for i in 0..100 {
        let p = prime(PRIMES[i % 4]);
        let d = rng.gen_range(2..=3);
        let copies = rng.gen_range(1..=3);
        let config = random_tight_config(&mut rng, p, d, copies, true);
        for m in [2, 3] {
            if check_sym_tight(&config, m).unwrap().is_tight {
                generator_hits += 1;
                let report = welch_general(&config, m).map_err(|e| e.to_string())?;
                ensure!(report.holds, "generator hit violates the bound");
                check_against_oracle(&config, &report, m)?;
            }
        }
    }

    for i in 0..200 {
        let p = prime(PRIMES[i % 4]);
        let d = rng.gen_range(1..=3);
        let config = if i % 2 == 0 {
            let copies = rng.gen_range(1..=3);
            random_tight_config(&mut rng, p, d, copies, true)
        } else {
            let n = rng.gen_range(1..=5);
            random_config(&mut rng, p, d, n, 4)
        };
        let plain = check_tight(&config);
        ensure!(check_sym_tight(&config, 1).unwrap() == plain, "m = 1 lift disagrees with plain tightness");
        match welch_general(&config, 1) {
            Ok(report) => {
                ensure!(plain.is_tight, "bound evaluated on a non-tight configuration");
                check_against_oracle(&config, &report, 1)?;
            }
            Err(Error::NotTight(_)) => ensure!(!plain.is_tight, "tight configuration rejected"),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!(
        "{checked} Sym-tight configurations hold at m in {{2,3}}; {generator_hits} generator hits; m = 1 agrees on 200"
    ))
}

fn equality_witnesses() -> Outcome {
    for p in [2, 3, 5] {
        for d in 1..=6 {
            let config = FrameConfig::standard_basis(prime(p), d).unwrap();
            let report = welch_general(&config, 1).map_err(|e| e.to_string())?;
            let expected = AbsValue::power(prime(p), -vp(&int(d as i64), p).unwrap());
            ensure!(
                report.lhs == expected && report.rhs == expected && report.equality,
                "ONB p = {p}, d = {d}: lhs {} rhs {}",
                report.lhs,
                report.rhs
            );
        }
    }
    let p = prime(2);
    for n in 1..=6usize {
        for signs in 0..(1u32 << n) {
            let rows = (0..n).map(|j| vec![int(if signs >> j & 1 == 1 { -1 } else { 1 })]).collect();
            let config = FrameConfig::from_rows(p, 1, rows).unwrap();
            let report = q1_check(&config);
            ensure!(report.equality == Some(n % 2 == 1), "d = 1, n = {n}, signs {signs:b}");
            ensure!(report.verdict == (n % 2 == 1), "Q1 verdict for n = {n}");
        }
    }
    Ok("ONB equality for p in {2,3,5}, d <= 6; sign lines give equality iff n is odd".into())
}

fn tensor_identity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let p = prime(5);
    let x = Vector::from_integers(p, &[1, 2]);
    let y = Vector::from_integers(p, &[3, 4]);
    let worked = sym_inner(&lift(&x, 2), &lift(&y, 2)).unwrap();
    ensure!(worked == int(121), "worked value is {worked}");
    for i in 0..1000 {
        let d = rng.gen_range(1..=4);
        let m = (i % 3) as u32 + 1;
        let x = Vector::new(p, (0..d).map(|_| random_rational(&mut rng, 50)).collect());
        let y = Vector::new(p, (0..d).map(|_| random_rational(&mut rng, 50)).collect());
        let lhs = sym_inner(&lift(&x, m), &lift(&y, m)).unwrap();
        let rhs = inner(&x, &y).unwrap().pow(m);
        ensure!(lhs == rhs, "pair {i}: {lhs} != {rhs}");
    }
    Ok("1000 pairs exact; <(1,2)^2, (3,4)^2> = 121".into())
}

fn trace_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..300 {
        let p = prime(PRIMES[i % 4]);
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=5);
        let config = random_config(&mut rng, p, d, n, 20);
        let v = config.vectors();
        let s = frame_operator(&config);
        for m in 1..=3u32 {
            let sm = lifted_frame_operator(&config, m).unwrap();
            if m == 1 {
                ensure!(sm == s, "m = 1 lift differs from the frame operator");
            }
            let tr: Rational = v.iter().map(|t| inner(t, t).unwrap().pow(m)).sum();
            ensure!(sm.trace().unwrap() == tr, "config {i}: trace at m = {m}");
            let mut tr2 = Rational::zero();
            for a in v {
                for b in v {
                    tr2 += inner(a, b).unwrap().pow(2 * m);
                }
            }
            ensure!(sm.try_mul(&sm).unwrap().trace().unwrap() == tr2, "config {i}: trace of square at m = {m}");
        }
    }
    Ok("300 configurations, m in {1,2,3}".into())
}

fn sym_counts() -> Outcome {
    for d in 1..=6usize {
        for m in 0..=5u32 {
            // count exponent vectors in {0..m}^d summing to m
            let mut count = 0u64;
            let mut alpha = vec![0u32; d];
            loop {
                if alpha.iter().sum::<u32>() == m {
                    count += 1;
                }
                let mut i = 0;
                while i < d && alpha[i] == m {
                    alpha[i] = 0;
                    i += 1;
                }
                if i == d {
                    break;
                }
                alpha[i] += 1;
            }
            let indices = enumerate_multi_indices(d, m);
            ensure!(indices.len() as u64 == count, "enumeration count d = {d}, m = {m}");
            ensure!(sym_dim(d, m).to_string() == count.to_string(), "sym_dim d = {d}, m = {m}");
            let total: Rational = indices
                .iter()
                .map(|a| multinomial(m, a).unwrap().to_string().parse::<Rational>().unwrap())
                .sum();
            ensure!(total == int(d as i64).pow(m), "multinomial row sum d = {d}, m = {m}");
        }
    }
    Ok("d <= 6, m <= 5".into())
}

fn kummer_legendre() -> Outcome {
    let mut row = vec![int(1)];
    let mut checked = 0;
    for n in 0..=300u64 {
        if n > 0 {
            let mut next = vec![int(1); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        for &p in &PRIMES {
            let pr = prime(p);
            for k in 0..=n {
                let kummer = binomial_valuation(pr, n, k).unwrap();
                let legendre = legendre_factorial_valuation(pr, n)
                    - legendre_factorial_valuation(pr, k)
                    - legendre_factorial_valuation(pr, n - k);
                let direct = integer_vp(row[k as usize].clone(), p) as u64;
                ensure!(kummer == legendre && legendre == direct, "n = {n}, k = {k}, p = {p}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, k, p) triples agree"))
}

fn classical_values() -> Outcome {
    let close = |x: f64, y: f64| (x - y).abs() <= TOL;
    let welch = classical_welch(2, 4, 1).map_err(|e| e.to_string())?.max_bound;
    ensure!(close(welch, 1.0 / 3.0), "welch_max(2,4,1) = {welch}");
    ensure!(gerzon(3, Field::Complex) == 9 && gerzon(3, Field::Real) == 6, "gerzon");
    let b = classical_secondary_bounds(4, 17, Field::Complex).map_err(|e| e.to_string())?;
    ensure!(b.orthoplex.value.is_some_and(|v| close(v, 0.5)), "orthoplex(4) = {:?}", b.orthoplex);
    let b = classical_secondary_bounds(2, 5, Field::Complex).map_err(|e| e.to_string())?;
    ensure!(b.levenstein.value.is_some_and(|v| close(v, 2.0 / 3.0)), "levenstein = {:?}", b.levenstein);
    ensure!(b.exponential.value.is_some_and(|v| close(v, 0.6)), "exponential = {:?}", b.exponential);
    let b = classical_secondary_bounds(2, 4, Field::Complex).map_err(|e| e.to_string())?;
    ensure!(b.bukh_cox.value.is_some_and(|v| close(v, 1.0 / 3f64.sqrt())), "bukh_cox = {:?}", b.bukh_cox);
    Ok(format!("all values within {TOL:e}"))
}

fn search_determinism() -> Outcome {
    let p = prime(2);
    let signs = EntrySet::Explicit(vec![int(1), int(-1)]);
    let mut specs = Vec::new();
    let mut spec = SearchSpec::new(p, 1, 3, SearchMode::Q1);
    spec.entries = signs.clone();
    specs.push((spec, Some(4)));
    let mut spec = SearchSpec::new(p, 1, 2, SearchMode::Q1);
    spec.entries = signs;
    specs.push((spec, Some(0)));
    specs.push((SearchSpec::new(p, 2, 2, SearchMode::Q1), None));
    specs.push((SearchSpec::new(p, 1, 1, SearchMode::Zauner), None));
    specs.push((SearchSpec::new(prime(3), 2, 3, SearchMode::Q1), None));

    let mut total = 0;
    for (spec, expected) in &specs {
        let one = run_search(spec, 1).map_err(|e| e.to_string())?;
        let four = run_search(spec, 4).map_err(|e| e.to_string())?;
        let list = |r: &padic_welch::search::SearchResult| r.hits.iter().map(|h| render_config(&h.config)).collect::<Vec<_>>();
        ensure!(list(&one) == list(&four), "hit lists differ for {spec:?}");
        if let Some(k) = expected {
            ensure!(one.hits.len() == *k, "expected {k} hits, found {}", one.hits.len());
        }
        for hit in &one.hits {
            let ok = match &hit.report {
                HitReport::Question(_) => q1_check(&hit.config).verdict,
                HitReport::Zauner(_) => zauner_check(&hit.config, false).map(|r| r.verdict).unwrap_or(false),
                HitReport::Equiangular(r) => r.holds,
            };
            ensure!(ok && hit.report.verdict(), "hit fails re-validation: {}", render_config(&hit.config));
        }
        total += one.hits.len();
    }
    // hits are canonical orderings, so compare as multisets of vectors
    let as_set = |c: &FrameConfig| {
        let mut rows: Vec<String> = c.vectors().iter().map(|v| format!("{:?}", v.coords())).collect();
        rows.sort();
        rows
    };
    let onb = as_set(&FrameConfig::standard_basis(p, 2).unwrap());
    let d2 = run_search(&specs[2].0, 2).map_err(|e| e.to_string())?;
    ensure!(d2.hits.iter().any(|h| as_set(&h.config) == onb), "ONB missing from d = 2 hits");
    Ok(format!("{} specs, {total} hits identical across 1 and 4 workers", specs.len()))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn cli_contract() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    for i in 0..100 {
        let p = prime([2, 3, 5, 7, 11, 13][rng.gen_range(0..6)]);
        let d = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=8);
        let height = if i % 4 == 0 { i64::MAX } else { 1000 };
        let config = random_config(&mut rng, p, d, n, height);
        let text = render_config(&config);
        let back = parse_config(&text).map_err(|e| e.to_string())?;
        ensure!(back == config && render_config(&back) == text, "round trip {i}: {text}");
    }

    let golden: &[(&[&str], i32)] = &[
        (&["bound", "--input", &fixture("onb_p2_d2.json")], 0),
        (&["verify", "--input", &fixture("onb_p2_d2.json")], 0),
        (&["zauner", "--input", &fixture("single_line.json")], 0),
        (&["classical", "--d", "2", "--n", "4"], 0),
        (&["search", "--input", &fixture("search_q1_d1.json")], 0),
        (&["verify", "--input", &fixture("not_tight.json")], 1),
        (&["question", "--input", &fixture("two_lines.json")], 1),
        (&["tensor", "--m", "2", "--input", &fixture("onb_p2_d2.json")], 1),
        (&["bound", "--input", &fixture("not_tight.json")], 2),
        (&["zauner", "--input", &fixture("onb_p2_d2.json")], 2),
        (&["search", "--input", &fixture("search_budget.json")], 2),
        (&["verify", "--input", &fixture("bad_prime.json")], 3),
        (&["verify", "--input", &fixture("ragged.json")], 3),
        (&["verify", "--input", &fixture("malformed_number.json")], 3),
        (&["bound", "--m", "0", "--input", &fixture("onb_p2_d2.json")], 3),
    ];
    for (args, expected) in golden {
        let status = Command::new(env!("CARGO_BIN_EXE_padic-welch")).args(*args).output().map_err(|e| e.to_string())?.status;
        ensure!(status.code() == Some(*expected), "{args:?} exited {:?}, expected {expected}", status.code());
    }
    Ok(format!("100 round trips bit-exact; {} golden exit codes", golden.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("first-order bound on generated tight frames", first_order_suite),
        ("higher-order bound on Sym-tight configurations", higher_order_suite),
        ("equality witnesses", equality_witnesses),
        ("tensor inner-product identity", tensor_identity),
        ("trace identities", trace_identities),
        ("Sym dimension and multinomial sums", sym_counts),
        ("Kummer, Legendre and direct binomial valuations", kummer_legendre),
        ("classical comparator values", classical_values),
        ("search determinism and soundness", search_determinism),
        ("CLI round trip and exit codes", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

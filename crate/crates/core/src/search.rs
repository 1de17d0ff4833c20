//! Exhaustive search for configurations over bounded-height rational grids.
//!
//! Configurations are visited in lexicographic order: vectors are ordered by
//! their coordinate indices into the entry list, configurations by their
//! sequence of vectors. Vectors failing the per-vector conditions of the mode
//! (unit self-pairing, unit norm, prescribed self-pairing) are dropped before
//! enumeration. The first vector partitions the space across workers, and
//! partial results are concatenated in partition order, so the hit list does
//! not depend on the number of workers.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{dot, max_norm, FrameConfig, Vector};
use crate::prime::Prime;
use crate::rational::Rational;
use crate::valuation::{abs_of_count, abs_p, AbsValue};
use crate::welch::{
    equiangular_check, q1_check, q2_check, zauner_check, EquiangularReport, QuestionReport, ZaunerReport,
};

pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchMode {
    Q1,
    Q2,
    Zauner,
    ZaunerStrong,
    Equiangular { a: Rational, gamma: AbsValue },
}

impl SearchMode {
    fn is_zauner(&self) -> bool {
        matches!(self, SearchMode::Zauner | SearchMode::ZaunerStrong)
    }

    fn needs_unit_norm(&self) -> bool {
        matches!(self, SearchMode::Q2 | SearchMode::ZaunerStrong)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntrySet {
    /// Every reduced `a/b` with `|a| <= H` and `1 <= b <= H`.
    Auto,
    Explicit(Vec<Rational>),
}

impl Serialize for EntrySet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EntrySet::Auto => serializer.serialize_str("auto"),
            EntrySet::Explicit(list) => list.serialize(serializer),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub p: Prime,
    pub d: usize,
    pub n: usize,
    pub mode: SearchMode,
    pub height: u64,
    pub entries: EntrySet,
    pub symmetry_pruning: bool,
    pub limit: Option<usize>,
    /// Refuse to run when more configurations than this would be visited.
    pub budget: u128,
}

impl SearchSpec {
    pub fn new(p: Prime, d: usize, n: usize, mode: SearchMode) -> Self {
        SearchSpec {
            p,
            d,
            n,
            mode,
            height: 1,
            entries: EntrySet::Auto,
            symmetry_pruning: true,
            limit: None,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.n == 0 {
            return Err(Error::InvalidSearch("d and n must be positive".into()));
        }
        if self.height == 0 {
            return Err(Error::InvalidSearch("height bound must be at least 1".into()));
        }
        if self.mode.is_zauner() && self.n != self.d * self.d {
            return Err(Error::ZaunerShape { expected: self.d * self.d, found: self.n });
        }
        if let SearchMode::Equiangular { gamma, .. } = &self.mode {
            self.p.ensure_same(gamma.prime())?;
        }
        if self.limit == Some(0) {
            return Err(Error::InvalidSearch("limit must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum HitReport {
    Question(Box<QuestionReport>),
    Zauner(Box<ZaunerReport>),
    Equiangular(EquiangularReport),
}

impl HitReport {
    pub fn verdict(&self) -> bool {
        match self {
            HitReport::Question(r) => r.verdict,
            HitReport::Zauner(r) => r.verdict,
            HitReport::Equiangular(r) => r.holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub config: FrameConfig,
    pub report: HitReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub spec: SearchSpec,
    pub entries: Vec<Rational>,
    /// Vectors surviving the per-vector conditions.
    pub admissible_vectors: usize,
    /// Configurations that would be visited without pair pruning.
    #[serde(serialize_with = "serialize_display")]
    pub space_size: BigUint,
    /// Complete configurations that reached the tightness and final checks.
    pub configs_checked: u64,
    pub hits: Vec<SearchHit>,
    #[serde(serialize_with = "serialize_secs")]
    pub wall_time: Duration,
}

fn serialize_display<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn serialize_secs<S: Serializer>(x: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(x.as_secs_f64())
}

/// The ordered, deduplicated entry list of a spec.
///
/// The list is sorted by numeric value; `Auto` resolves to every reduced
/// fraction of height at most H with either sign.
pub fn candidate_entries(spec: &SearchSpec) -> Result<Vec<Rational>> {
    let mut entries = match &spec.entries {
        EntrySet::Explicit(list) => list.clone(),
        EntrySet::Auto => {
            let h = spec.height as i64;
            let mut out = vec![Rational::zero()];
            for den in 1..=h {
                for num in 1..=h {
                    if num.gcd(&den) == 1 {
                        out.push(Rational::new(num, den));
                        out.push(Rational::new(-num, den));
                    }
                }
            }
            out
        }
    };
    entries.sort();
    entries.dedup();
    if entries.is_empty() {
        return Err(Error::InvalidSearch("entry set is empty".into()));
    }
    Ok(entries)
}

/// Number of length-n sequences over `a` symbols, nondecreasing when `pruned`.
fn sequence_count(a: usize, n: usize, pruned: bool) -> BigUint {
    if pruned {
        if a == 0 {
            return BigUint::ZERO;
        }
        crate::factorial::binomial((a + n - 1) as u64, n as u64).expect("n <= a + n - 1")
    } else {
        BigUint::from(a).pow(n as u32)
    }
}

/// Per-vector data used during enumeration.
struct Candidate {
    coords: Vec<Rational>,
    /// Upper triangle of `v v^T`, row-major.
    outer: Vec<Rational>,
}

struct Searcher<'a> {
    spec: &'a SearchSpec,
    candidates: Vec<Candidate>,
    /// `compatible[i][j]`: pair condition between candidates i and j, when the mode has one.
    compatible: Option<Vec<Vec<bool>>>,
    limit: usize,
}

struct Partition {
    hits: Vec<SearchHit>,
    checked: u64,
}

impl Searcher<'_> {
    fn admissible(spec: &SearchSpec, v: &[Rational]) -> bool {
        let self_inner = dot(v, v);
        let ok = match &spec.mode {
            SearchMode::Equiangular { a, .. } => self_inner == *a,
            _ => self_inner.is_one(),
        };
        ok && (!spec.mode.needs_unit_norm() || max_norm(&Vector::new(spec.p, v.to_vec())) == AbsValue::one(spec.p))
    }

    fn pair_target(spec: &SearchSpec) -> Option<AbsValue> {
        match &spec.mode {
            SearchMode::Zauner | SearchMode::ZaunerStrong => Some(abs_of_count(spec.p, (spec.d * spec.d) as u64)),
            SearchMode::Equiangular { gamma, .. } => Some(*gamma),
            SearchMode::Q1 | SearchMode::Q2 => None,
        }
    }

    fn run_partition(&self, first: usize) -> Partition {
        let mut out = Partition { hits: Vec::new(), checked: 0 };
        let tri = self.spec.d * (self.spec.d + 1) / 2;
        let mut path = vec![first];
        let mut sums = vec![self.candidates[first].outer.clone()];
        debug_assert_eq!(sums[0].len(), tri);
        self.descend(&mut path, &mut sums, &mut out);
        out
    }

    fn descend(&self, path: &mut Vec<usize>, sums: &mut Vec<Vec<Rational>>, out: &mut Partition) {
        if out.hits.len() >= self.limit {
            return;
        }
        if path.len() == self.spec.n {
            out.checked += 1;
            if is_scalar(sums.last().expect("nonempty"), self.spec.d) {
                self.finish(path, out);
            }
            return;
        }
        let start = if self.spec.symmetry_pruning { *path.last().expect("nonempty") } else { 0 };
        for next in start..self.candidates.len() {
            if let Some(compatible) = &self.compatible {
                if !path.iter().all(|&i| compatible[i][next]) {
                    continue;
                }
            }
            let sum: Vec<Rational> = sums
                .last()
                .expect("nonempty")
                .iter()
                .zip(&self.candidates[next].outer)
                .map(|(a, b)| a + b)
                .collect();
            path.push(next);
            sums.push(sum);
            self.descend(path, sums, out);
            path.pop();
            sums.pop();
            if out.hits.len() >= self.limit {
                return;
            }
        }
    }

    fn finish(&self, path: &[usize], out: &mut Partition) {
        let rows = path.iter().map(|&i| self.candidates[i].coords.clone()).collect();
        let config = FrameConfig::from_rows(self.spec.p, self.spec.d, rows).expect("shape checked");
        let report = match &self.spec.mode {
            SearchMode::Q1 => HitReport::Question(Box::new(q1_check(&config))),
            SearchMode::Q2 => HitReport::Question(Box::new(q2_check(&config))),
            SearchMode::Zauner => HitReport::Zauner(Box::new(zauner_check(&config, false).expect("n = d^2"))),
            SearchMode::ZaunerStrong => HitReport::Zauner(Box::new(zauner_check(&config, true).expect("n = d^2"))),
            SearchMode::Equiangular { a, gamma } => {
                HitReport::Equiangular(equiangular_check(&config, a, gamma).expect("same prime"))
            }
        };
        if report.verdict() {
            out.hits.push(SearchHit { config, report });
        }
    }
}

/// Whether the packed upper triangle describes `b I`.
fn is_scalar(upper: &[Rational], d: usize) -> bool {
    let mut idx = 0;
    let b = &upper[0];
    for r in 0..d {
        for c in r..d {
            let entry = &upper[idx];
            let ok = if r == c { entry == b } else { entry.is_zero() };
            if !ok {
                return false;
            }
            idx += 1;
        }
    }
    true
}

fn outer_upper(v: &[Rational]) -> Vec<Rational> {
    let d = v.len();
    let mut out = Vec::with_capacity(d * (d + 1) / 2);
    for r in 0..d {
        for c in r..d {
            out.push(&v[r] * &v[c]);
        }
    }
    out
}

/// All vectors of `Q^d` with coordinates in `entries`, in lexicographic order.
fn all_vectors(entries: &[Rational], d: usize) -> impl Iterator<Item = Vec<Rational>> + '_ {
    let e = entries.len();
    let total = e.pow(d as u32);
    (0..total).map(move |mut code| {
        let mut digits = vec![0; d];
        for slot in digits.iter_mut().rev() {
            *slot = code % e;
            code /= e;
        }
        digits.into_iter().map(|i| entries[i].clone()).collect()
    })
}

/// Enumerates the spec's space and returns every configuration passing the
/// mode's checker, up to `limit`, in enumeration order. `workers = 0` uses
/// the default thread count; the result is the same for every worker count.
pub fn run_search(spec: &SearchSpec, workers: usize) -> Result<SearchResult> {
    spec.validate()?;
    let started = Instant::now();
    let entries = candidate_entries(spec)?;

    let vector_space = BigUint::from(entries.len()).pow(spec.d as u32);
    if vector_space > BigUint::from(spec.budget) {
        return Err(Error::BudgetExceeded { estimate: vector_space.to_string(), budget: spec.budget });
    }
    let candidates: Vec<Candidate> = all_vectors(&entries, spec.d)
        .filter(|v| Searcher::admissible(spec, v))
        .map(|coords| Candidate { outer: outer_upper(&coords), coords })
        .collect();
    let space_size = sequence_count(candidates.len(), spec.n, spec.symmetry_pruning);
    if space_size > BigUint::from(spec.budget) {
        return Err(Error::BudgetExceeded { estimate: space_size.to_string(), budget: spec.budget });
    }

    let compatible = Searcher::pair_target(spec).map(|target| {
        candidates
            .iter()
            .map(|u| {
                candidates
                    .iter()
                    .map(|v| abs_p(spec.p, &dot(&u.coords, &v.coords)).pow(2) == target)
                    .collect()
            })
            .collect()
    });
    let searcher = Searcher { spec, candidates, compatible, limit: spec.limit.unwrap_or(usize::MAX) };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidSearch(format!("cannot start workers: {e}")))?;
    let partitions: Vec<Partition> =
        pool.install(|| (0..searcher.candidates.len()).into_par_iter().map(|first| searcher.run_partition(first)).collect());

    let mut hits = Vec::new();
    let mut checked = 0u64;
    for part in partitions {
        checked += part.checked;
        hits.extend(part.hits);
    }
    hits.truncate(searcher.limit);

    Ok(SearchResult {
        spec: spec.clone(),
        entries,
        admissible_vectors: searcher.candidates.len(),
        space_size,
        configs_checked: checked,
        hits,
        wall_time: started.elapsed(),
    })
}

impl SearchResult {
    /// Count as `u128`, saturating for astronomically large spaces.
    pub fn space_size_u128(&self) -> u128 {
        self.space_size.to_u128().unwrap_or(u128::MAX)
    }
}

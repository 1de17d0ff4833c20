//! Exact p-adic Welch bounds and the Zauner / equiangular conditions.
//!
//! For a configuration whose order-m lift is tight, the bound states
//!
//! ```text
//! max{ |sum_l <t_l,t_l>^(2m)|, max_{j!=k} |<t_j,t_k>|^(2m) }
//!     >= |sum_j <t_j,t_j>^m|^2 / |C(d+m-1, m)|
//! ```
//!
//! and, for unit self-pairings, `max{|n|, max_{j!=k} |<t_j,t_k>|^(2m)} >= |n|^2 / |C(d+m-1, m)|`.
//! Both sides are powers of p and are compared on exponents.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorial::binomial_valuation;
use crate::linalg::{check_tight, gram, max_norm, FrameConfig, Matrix, TightnessReport, TightnessWitness};
use crate::prime::Prime;
use crate::rational::Rational;
use crate::sym::check_sym_tight;
use crate::valuation::{abs_of_count, abs_p, AbsValue};

/// Largest off-diagonal term and the first pair `(j, k)`, `j < k`, attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OffDiagonalMax {
    pub value: AbsValue,
    pub pair: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundForm {
    General,
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WelchReport {
    pub m: u32,
    pub form: BoundForm,
    pub precondition: TightnessReport,
    pub lhs: AbsValue,
    pub rhs: AbsValue,
    pub holds: bool,
    pub equality: bool,
    /// `|sum_l <t_l,t_l>^(2m)|` for the general form, `|n|` for the unit form.
    pub diag_term: AbsValue,
    /// `None` when `n = 1`: the maximum over `j != k` is empty.
    pub max_offdiag: Option<OffDiagonalMax>,
    pub unit_inner: bool,
}

impl WelchReport {
    /// The tightness constant is zero, which the hypotheses do not exclude.
    pub fn degenerate_b(&self) -> bool {
        self.precondition.is_degenerate()
    }
}

fn precondition(config: &FrameConfig, m: u32) -> Result<TightnessReport> {
    if m == 0 {
        return Err(Error::InvalidConfig("order m must be at least 1".into()));
    }
    let report = if m == 1 { check_tight(config) } else { check_sym_tight(config, m)? };
    if report.is_tight {
        Ok(report)
    } else {
        Err(Error::NotTight(Box::new(report)))
    }
}

/// `|C(d+m-1, m)|_p`.
fn sym_dim_abs(p: Prime, d: usize, m: u32) -> AbsValue {
    let v = binomial_valuation(p, d as u64 + m as u64 - 1, m as u64).expect("m <= d + m - 1");
    AbsValue::power(p, -(v as i64))
}

fn max_offdiagonal(p: Prime, g: &Matrix, m: u32) -> Option<OffDiagonalMax> {
    let n = g.rows();
    let mut best: Option<OffDiagonalMax> = None;
    for j in 0..n {
        for k in j + 1..n {
            let value = abs_p(p, g.get(j, k)).pow(2 * m);
            if best.is_none_or(|b| value > b.value) {
                best = Some(OffDiagonalMax { value, pair: (j, k) });
            }
        }
    }
    best
}

fn assemble(
    config: &FrameConfig,
    m: u32,
    form: BoundForm,
    precondition: TightnessReport,
    g: &Matrix,
    diag_term: AbsValue,
    rhs_numerator: AbsValue,
) -> WelchReport {
    let p = config.prime();
    let max_offdiag = max_offdiagonal(p, g, m);
    let lhs = match max_offdiag {
        Some(off) if off.value > diag_term => off.value,
        _ => diag_term,
    };
    let rhs = rhs_numerator.try_div(&sym_dim_abs(p, config.dim(), m)).expect("binomial is nonzero");
    let order = lhs.try_cmp(&rhs).expect("same prime");
    let unit_inner = (0..g.rows()).all(|i| g.get(i, i).is_one());
    WelchReport {
        m,
        form,
        precondition,
        lhs,
        rhs,
        holds: order != Ordering::Less,
        equality: order == Ordering::Equal,
        diag_term,
        max_offdiag,
        unit_inner,
    }
}

/// The order-m bound for an arbitrary configuration whose lift is tight.
pub fn welch_general(config: &FrameConfig, m: u32) -> Result<WelchReport> {
    let pre = precondition(config, m)?;
    let p = config.prime();
    let g = gram(config);
    let diag: Vec<&Rational> = (0..config.len()).map(|i| g.get(i, i)).collect();
    let diag_sum: Rational = diag.iter().map(|s| s.pow(2 * m)).sum();
    let trace_sum: Rational = diag.iter().map(|s| s.pow(m)).sum();
    let diag_term = abs_p(p, &diag_sum);
    let rhs_numerator = abs_p(p, &trace_sum).pow(2);
    Ok(assemble(config, m, BoundForm::General, pre, &g, diag_term, rhs_numerator))
}

/// The order-m bound specialised to `<t_j, t_j> = 1` for every j.
pub fn welch_unit(config: &FrameConfig, m: u32) -> Result<WelchReport> {
    if let Some((index, value)) = first_non_unit(config) {
        return Err(Error::NonUnitInner { index, value });
    }
    let pre = precondition(config, m)?;
    let p = config.prime();
    let g = gram(config);
    let n_abs = abs_of_count(p, config.len() as u64);
    Ok(assemble(config, m, BoundForm::Unit, pre, &g, n_abs, n_abs.pow(2)))
}

fn first_non_unit(config: &FrameConfig) -> Option<(usize, Rational)> {
    config.self_inners().into_iter().enumerate().find(|(_, s)| !s.is_one())
}

/// Why a condition failed, naming the first offending index or pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    NonUnitInner { index: usize, value: Rational },
    NotTight(TightnessWitness),
    NoEquality { lhs: AbsValue, rhs: AbsValue },
    OffDiagonal { j: usize, k: usize, found: AbsValue, expected: AbsValue },
    NormNotOne { index: usize, norm: AbsValue },
    Diagonal { index: usize, found: Rational, expected: Rational },
}

/// Outcome of the existence conditions: unit self-pairings, tightness and
/// equality in the first-order bound, plus unit max-norm for the strong form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuestionReport {
    pub strong: bool,
    pub unit_inner: bool,
    pub tight: TightnessReport,
    /// `None` when the bound could not be evaluated (non-unit or not tight).
    pub equality: Option<bool>,
    pub bound: Option<WelchReport>,
    pub norm_one: Option<bool>,
    pub verdict: bool,
    pub failures: Vec<Failure>,
}

fn first_norm_failure(config: &FrameConfig) -> Option<Failure> {
    let one = AbsValue::one(config.prime());
    config.vectors().iter().enumerate().find_map(|(index, v)| {
        let norm = max_norm(v);
        (norm != one).then_some(Failure::NormNotOne { index, norm })
    })
}

fn question_check(config: &FrameConfig, strong: bool) -> QuestionReport {
    let mut failures = Vec::new();
    let non_unit = first_non_unit(config);
    if let Some((index, value)) = &non_unit {
        failures.push(Failure::NonUnitInner { index: *index, value: value.clone() });
    }
    let tight = check_tight(config);
    if let Some(w) = &tight.witness {
        failures.push(Failure::NotTight(w.clone()));
    }
    let bound = if non_unit.is_none() && tight.is_tight {
        Some(welch_unit(config, 1).expect("preconditions verified"))
    } else {
        None
    };
    let equality = bound.as_ref().map(|b| b.equality);
    if let Some(b) = bound.as_ref().filter(|b| !b.equality) {
        failures.push(Failure::NoEquality { lhs: b.lhs, rhs: b.rhs });
    }
    let norm_one = strong.then(|| {
        let failure = first_norm_failure(config);
        let ok = failure.is_none();
        failures.extend(failure);
        ok
    });
    let verdict = equality == Some(true) && norm_one != Some(false);
    QuestionReport { strong, unit_inner: non_unit.is_none(), tight, equality, bound, norm_one, verdict, failures }
}

/// Unit self-pairings, tightness, and equality in the first-order unit bound.
pub fn q1_check(config: &FrameConfig) -> QuestionReport {
    question_check(config, false)
}

/// [`q1_check`] plus `||t_j|| = 1` in the sup-norm for every j.
pub fn q2_check(config: &FrameConfig) -> QuestionReport {
    question_check(config, true)
}

/// How the target `|n|` of the off-diagonal condition was fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reading", content = "n", rename_all = "snake_case")]
pub enum TargetReading {
    /// `n` read as the number of vectors, `d^2`.
    DimensionSquared,
    /// `n` supplied by the caller.
    Override(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZaunerReport {
    pub strong: bool,
    pub unit_inner: bool,
    pub tight: TightnessReport,
    pub equiangular: bool,
    /// Only one vector, so the off-diagonal condition holds vacuously.
    pub offdiag_vacuous: bool,
    pub norm_one: Option<bool>,
    pub target: AbsValue,
    pub target_reading: TargetReading,
    pub verdict: bool,
    /// First failure of each violated condition, in condition order.
    pub failures: Vec<Failure>,
}

impl ZaunerReport {
    pub fn degenerate_b(&self) -> bool {
        self.tight.is_degenerate()
    }
}

/// `d^2` unit vectors forming a tight frame with every `|<t_j,t_k>|^2` equal
/// to `|d^2|_p`; with `strong`, also sup-norm one.
pub fn zauner_check(config: &FrameConfig, strong: bool) -> Result<ZaunerReport> {
    zauner_check_with_target(config, strong, None)
}

pub fn zauner_check_with_target(
    config: &FrameConfig,
    strong: bool,
    target_n: Option<u64>,
) -> Result<ZaunerReport> {
    let d = config.dim();
    let expected = d * d;
    if config.len() != expected {
        return Err(Error::ZaunerShape { expected, found: config.len() });
    }
    let p = config.prime();
    let (target, target_reading) = match target_n {
        Some(n) => (abs_of_count(p, n), TargetReading::Override(n)),
        None => (abs_of_count(p, expected as u64), TargetReading::DimensionSquared),
    };

    let mut failures = Vec::new();
    let non_unit = first_non_unit(config);
    if let Some((index, value)) = &non_unit {
        failures.push(Failure::NonUnitInner { index: *index, value: value.clone() });
    }
    let tight = check_tight(config);
    if let Some(w) = &tight.witness {
        failures.push(Failure::NotTight(w.clone()));
    }
    let off = first_offdiag_mismatch(&gram(config), p, &target);
    let equiangular = off.is_none();
    failures.extend(off);
    let norm_one = strong.then(|| {
        let failure = first_norm_failure(config);
        let ok = failure.is_none();
        failures.extend(failure);
        ok
    });
    let verdict = non_unit.is_none() && tight.is_tight && equiangular && norm_one != Some(false);
    Ok(ZaunerReport {
        strong,
        unit_inner: non_unit.is_none(),
        tight,
        equiangular,
        offdiag_vacuous: config.len() == 1,
        norm_one,
        target,
        target_reading,
        verdict,
        failures,
    })
}

fn first_offdiag_mismatch(g: &Matrix, p: Prime, target: &AbsValue) -> Option<Failure> {
    let n = g.rows();
    (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).filter(|(j, k)| j != k).find_map(|(j, k)| {
        let found = abs_p(p, g.get(j, k)).pow(2);
        (found != *target).then_some(Failure::OffDiagonal { j, k, found, expected: *target })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquiangularReport {
    pub holds: bool,
    pub offdiag_vacuous: bool,
    pub failure: Option<Failure>,
}

/// `<t_j, t_j> = a` for all j and `|<t_j, t_k>|^2 = gamma` for all `j != k`.
pub fn equiangular_check(config: &FrameConfig, a: &Rational, gamma: &AbsValue) -> Result<EquiangularReport> {
    let p = config.prime();
    p.ensure_same(gamma.prime())?;
    let diagonal = config.self_inners().into_iter().enumerate().find(|(_, s)| s != a);
    let failure = match diagonal {
        Some((index, found)) => Some(Failure::Diagonal { index, found, expected: a.clone() }),
        None => first_offdiag_mismatch(&gram(config), p, gamma),
    };
    Ok(EquiangularReport { holds: failure.is_none(), offdiag_vacuous: config.len() == 1, failure })
}

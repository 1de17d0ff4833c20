//! Symmetric tensor powers `Sym^m(Q_p^d)` in monomial coordinates.
//!
//! A symmetric tensor is stored by one coefficient per degree-m multi-index,
//! ordered colexicographically. With the pairing
//! `<u, v> = sum_alpha multinomial(m, alpha) u_alpha v_alpha` the lift
//! `tau -> tau^{(x)m}` (coefficients `prod_i tau_i^alpha_i`) satisfies
//! `<lift(x), lift(y)> = <x, y>^m` by the multinomial theorem.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorial::binomial;
use crate::linalg::{scalar_identity_check, FrameConfig, Matrix, TightnessReport, Vector};
use crate::prime::Prime;
use crate::rational::Rational;

/// Largest `dim Sym^m(Q_p^d)` for which the dense lifted operator is built
/// unless the caller raises the cap.
pub const DEFAULT_SYM_DIM_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(alpha: Vec<u32>) -> Self {
        MultiIndex(alpha)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// `binomial(d + m - 1, m)`.
pub fn sym_dim(d: usize, m: u32) -> BigUint {
    assert!(d >= 1, "Sym^m needs d >= 1");
    binomial(d as u64 + m as u64 - 1, m as u64).expect("m <= d + m - 1")
}

/// All degree-m multi-indices of length d, colexicographic: the last
/// coordinate varies slowest.
pub fn enumerate_multi_indices(d: usize, m: u32) -> Vec<MultiIndex> {
    assert!(d >= 1, "Sym^m needs d >= 1");
    fn build(d: usize, m: u32, out: &mut Vec<Vec<u32>>) {
        if d == 1 {
            out.push(vec![m]);
            return;
        }
        for last in 0..=m {
            let start = out.len();
            build(d - 1, m - last, out);
            for prefix in &mut out[start..] {
                prefix.push(last);
            }
        }
    }
    let mut out = Vec::new();
    build(d, m, &mut out);
    out.into_iter().map(MultiIndex).collect()
}

/// `m! / prod_i alpha_i!`.
pub fn multinomial(m: u32, alpha: &MultiIndex) -> Result<BigUint> {
    let found = alpha.degree();
    if found != m {
        return Err(Error::DegreeMismatch { expected: m, found });
    }
    // product of binomials C(a_1 + .. + a_i, a_i)
    let mut acc = BigUint::from(1u32);
    let mut partial = 0u64;
    for &a in &alpha.0 {
        partial += a as u64;
        acc *= binomial(partial, a as u64)?;
    }
    Ok(acc)
}

/// The multi-index basis of `Sym^m(Q_p^d)` with its multinomial weights.
#[derive(Debug, Clone)]
pub struct SymBasis {
    d: usize,
    m: u32,
    indices: Vec<MultiIndex>,
    weights: Vec<Rational>,
}

impl SymBasis {
    pub fn new(d: usize, m: u32) -> Self {
        let indices = enumerate_multi_indices(d, m);
        let weights = indices
            .iter()
            .map(|alpha| Rational::from_integer(BigInt::from(multinomial(m, alpha).expect("degree m"))))
            .collect();
        SymBasis { d, m, indices, weights }
    }

    /// Like [`SymBasis::new`] but refuses dimensions above `cap`.
    pub fn with_cap(d: usize, m: u32, cap: usize) -> Result<Self> {
        let dim = sym_dim(d, m);
        if dim.to_usize().is_none_or(|n| n > cap) {
            return Err(Error::SymDimensionCap { d, m, dim: dim.to_string(), cap });
        }
        Ok(SymBasis::new(d, m))
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn lift(&self, tau: &Vector) -> Result<SymVector> {
        if tau.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: tau.dim() });
        }
        let coords = tau.coords();
        // powers[i][k] = tau_i^k
        let powers: Vec<Vec<Rational>> = coords
            .iter()
            .map(|t| {
                let mut row = Vec::with_capacity(self.m as usize + 1);
                row.push(Rational::one());
                for k in 1..=self.m as usize {
                    let next = &row[k - 1] * t;
                    row.push(next);
                }
                row
            })
            .collect();
        let coeffs = self
            .indices
            .iter()
            .map(|alpha| {
                alpha.0.iter().enumerate().map(|(i, &a)| powers[i][a as usize].clone()).product()
            })
            .collect();
        Ok(SymVector { p: tau.prime(), d: self.d, m: self.m, coeffs })
    }

    /// Matrix of `x -> sum_j <x, lift(tau_j)> lift(tau_j)` in monomial
    /// coordinates: `[alpha][beta] = sum_j L_j[alpha] w[beta] L_j[beta]`.
    pub fn frame_operator(&self, config: &FrameConfig) -> Result<Matrix> {
        let dim = self.dim();
        let mut out = Matrix::zeros(dim, dim);
        for tau in config.vectors() {
            let lifted = self.lift(tau)?;
            let weighted: Vec<Rational> =
                lifted.coeffs.iter().zip(&self.weights).map(|(c, w)| c * w).collect();
            for (a, la) in lifted.coeffs.iter().enumerate() {
                if la.is_zero() {
                    continue;
                }
                for (b, wb) in weighted.iter().enumerate() {
                    if !wb.is_zero() {
                        out.add_to(a, b, &(la * wb));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// An element of `Sym^m(Q_p^d)` in monomial coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymVector {
    #[serde(skip)]
    p: Prime,
    d: usize,
    m: u32,
    coeffs: Vec<Rational>,
}

impl SymVector {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.d
    }
}

pub fn lift(tau: &Vector, m: u32) -> SymVector {
    SymBasis::new(tau.dim(), m).lift(tau).expect("basis built for tau's dimension")
}

pub fn sym_inner(u: &SymVector, v: &SymVector) -> Result<Rational> {
    u.p.ensure_same(v.p)?;
    if u.d != v.d || u.m != v.m {
        return Err(Error::InvalidConfig(format!(
            "Sym^{}(Q_p^{}) and Sym^{}(Q_p^{}) do not pair",
            u.m, u.d, v.m, v.d
        )));
    }
    let indices = enumerate_multi_indices(u.d, u.m);
    let mut acc = Rational::zero();
    for ((alpha, a), b) in indices.iter().zip(&u.coeffs).zip(&v.coeffs) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let w = Rational::from_integer(BigInt::from(multinomial(u.m, alpha)?));
        acc += w * a * b;
    }
    Ok(acc)
}

pub fn lifted_frame_operator(config: &FrameConfig, m: u32) -> Result<Matrix> {
    SymBasis::with_cap(config.dim(), m, DEFAULT_SYM_DIM_CAP)?.frame_operator(config)
}

/// Whether the lifted configuration is tight on `Sym^m`; for `m = 1` this is
/// exactly [`crate::linalg::check_tight`].
pub fn check_sym_tight(config: &FrameConfig, m: u32) -> Result<TightnessReport> {
    check_sym_tight_with_cap(config, m, DEFAULT_SYM_DIM_CAP)
}

pub fn check_sym_tight_with_cap(config: &FrameConfig, m: u32, cap: usize) -> Result<TightnessReport> {
    let op = SymBasis::with_cap(config.dim(), m, cap)?.frame_operator(config)?;
    scalar_identity_check(&op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{check_tight, inner, trace, TightnessWitness};
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn idx(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    /// Brute force: all length-d tuples over 0..=m with sum m.
    fn count_by_brute_force(d: usize, m: u32) -> usize {
        (0..(m as usize + 1).pow(d as u32))
            .filter(|&code| {
                let mut c = code;
                let mut sum = 0;
                for _ in 0..d {
                    sum += c % (m as usize + 1);
                    c /= m as usize + 1;
                }
                sum == m as usize
            })
            .count()
    }

    #[test]
    fn dimension_examples() {
        for d in 1..=10 {
            assert_eq!(sym_dim(d, 1), BigUint::from(d));
        }
        assert_eq!(sym_dim(2, 2), BigUint::from(3u32));
        assert_eq!(sym_dim(3, 2), BigUint::from(6u32));
        for d in 1..=5 {
            for m in 1..=4 {
                assert_eq!(sym_dim(d, m), BigUint::from(count_by_brute_force(d, m)));
            }
        }
    }

    #[test]
    fn colex_order() {
        assert_eq!(enumerate_multi_indices(1, 4), vec![idx(&[4])]);
        assert_eq!(enumerate_multi_indices(2, 2), vec![idx(&[2, 0]), idx(&[1, 1]), idx(&[0, 2])]);
        assert_eq!(
            enumerate_multi_indices(3, 1),
            vec![idx(&[1, 0, 0]), idx(&[0, 1, 0]), idx(&[0, 0, 1])]
        );
        assert_eq!(
            enumerate_multi_indices(3, 2),
            vec![
                idx(&[2, 0, 0]),
                idx(&[1, 1, 0]),
                idx(&[0, 2, 0]),
                idx(&[1, 0, 1]),
                idx(&[0, 1, 1]),
                idx(&[0, 0, 2]),
            ]
        );
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &idx(&[1, 1])).unwrap(), BigUint::from(2u32));
        assert_eq!(multinomial(2, &idx(&[2, 0])).unwrap(), BigUint::from(1u32));
        assert_eq!(multinomial(3, &idx(&[1, 1, 1])).unwrap(), BigUint::from(6u32));
        assert_eq!(multinomial(3, &idx(&[1, 1])), Err(Error::DegreeMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn lift_examples() {
        let two = p(2);
        for m in 1..5 {
            let lifted = lift(&Vector::basis(two, 2, 0), m);
            assert_eq!(lifted.coeffs()[0], Rational::one());
            assert!(lifted.coeffs()[1..].iter().all(Rational::is_zero));
            assert!(lift(&Vector::from_integers(two, &[0, 0]), m).coeffs().iter().all(Rational::is_zero));
        }
        let lifted = lift(&Vector::from_integers(two, &[1, 2]), 2);
        assert_eq!(lifted.coeffs(), &[Rational::from(1), Rational::from(2), Rational::from(4)]);
    }

    #[test]
    fn sym_inner_examples() {
        let two = p(2);
        let x = Vector::from_integers(two, &[1, 2]);
        let y = Vector::from_integers(two, &[3, 4]);
        assert_eq!(sym_inner(&lift(&x, 2), &lift(&y, 2)).unwrap(), Rational::from(121));
        for m in 1..4 {
            let e1 = lift(&Vector::basis(two, 2, 0), m);
            let e2 = lift(&Vector::basis(two, 2, 1), m);
            assert!(sym_inner(&e1, &e2).unwrap().is_zero());
        }
        assert_eq!(sym_inner(&lift(&x, 1), &lift(&y, 1)).unwrap(), inner(&x, &y).unwrap());
        assert!(sym_inner(&lift(&x, 1), &lift(&y, 2)).is_err());
    }

    #[test]
    fn sym_tightness_examples() {
        let onb = FrameConfig::standard_basis(p(5), 2).unwrap();
        let report = check_sym_tight(&onb, 2).unwrap();
        assert!(!report.is_tight);
        assert_eq!(
            report.witness,
            Some(TightnessWitness { row: 1, col: 1, expected: Rational::one(), found: Rational::zero() })
        );
        assert_eq!(check_sym_tight(&onb, 1).unwrap(), check_tight(&onb));

        let t = Rational::new(-3, 7);
        let line = FrameConfig::from_rows(p(3), 1, vec![vec![t.clone()]]).unwrap();
        for m in 1..5 {
            let report = check_sym_tight(&line, m).unwrap();
            assert!(report.is_tight);
            assert_eq!(report.b, Some(t.pow(2 * m)));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = FrameConfig::standard_basis(p(2), 30).unwrap();
        assert!(matches!(check_sym_tight(&cfg, 4), Err(Error::SymDimensionCap { .. })));
        assert!(check_sym_tight_with_cap(&cfg, 2, 500).is_ok());
    }

    #[test]
    fn lifted_trace_is_sum_of_powers() {
        let cfg = FrameConfig::from_rows(
            p(3),
            3,
            vec![
                vec![Rational::new(1, 2), Rational::from(3), Rational::from(-1)],
                vec![Rational::from(2), Rational::new(-5, 3), Rational::from(0)],
            ],
        )
        .unwrap();
        for m in 1..4 {
            let expected: Rational = cfg.self_inners().iter().map(|s| s.pow(m)).sum();
            assert_eq!(trace(&lifted_frame_operator(&cfg, m).unwrap()).unwrap(), expected);
        }
    }

    proptest! {
        #[test]
        fn weights_sum_to_d_pow_m(d in 1usize..=5, m in 1u32..=5) {
            let total: BigUint = enumerate_multi_indices(d, m).iter().map(|a| multinomial(m, a).unwrap()).sum();
            prop_assert_eq!(total, BigUint::from(d).pow(m));
        }

        #[test]
        fn m1_verdict_matches_plain_tightness(
            rows in (1usize..4).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-3i64..4, d), 1..5)),
        ) {
            let d = rows[0].len();
            let rows = rows.into_iter().map(|r| r.into_iter().map(Rational::from).collect()).collect();
            let cfg = FrameConfig::from_rows(p(2), d, rows).unwrap();
            prop_assert_eq!(check_sym_tight(&cfg, 1).unwrap(), check_tight(&cfg));
        }
    }
}

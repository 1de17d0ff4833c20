//! Provably tight configurations for exercising the bounds.
//!
//! The rows of a rational orthogonal matrix `Q` form an orthonormal basis, so
//! their frame operator is `Q^T Q = I`. A union of `k` such bases, the i-th
//! scaled by `c_i`, has frame operator `(sum_i c_i^2) I`. Orthogonal factors
//! used here are signed permutations and Givens rotations through Pythagorean
//! triples, e.g. rows `(3/5, 4/5)` and `(-4/5, 3/5)`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::{FrameConfig, Matrix, Vector};
use crate::prime::Prime;
use crate::rational::Rational;

pub const PYTHAGOREAN_TRIPLES: [(i64, i64, i64); 6] =
    [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29), (12, 35, 37)];

pub fn signed_permutation(perm: &[usize], signs: &[bool]) -> Matrix {
    let d = perm.len();
    let mut m = Matrix::zeros(d, d);
    for (row, (&col, &negative)) in perm.iter().zip(signs).enumerate() {
        m.set(row, col, if negative { -Rational::one() } else { Rational::one() });
    }
    m
}

/// Rotation in the `(i, j)` coordinate plane with cosine `a/c` and sine `b/c`.
pub fn givens_rotation(d: usize, i: usize, j: usize, (a, b, c): (i64, i64, i64)) -> Matrix {
    assert!(i != j && i < d && j < d);
    assert_eq!(a * a + b * b, c * c, "not a Pythagorean triple");
    let mut m = Matrix::identity(d);
    let cos = Rational::new(a, c);
    let sin = Rational::new(b, c);
    m.set(i, i, cos.clone());
    m.set(j, j, cos);
    m.set(i, j, sin.clone());
    m.set(j, i, -sin);
    m
}

/// A random product of a signed permutation and up to `rotations` Givens rotations.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, d: usize, rotations: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let signs: Vec<bool> = (0..d).map(|_| rng.gen()).collect();
    let mut q = signed_permutation(&perm, &signs);
    if d >= 2 {
        for _ in 0..rotations {
            let i = rng.gen_range(0..d);
            let j = (i + rng.gen_range(1..d)) % d;
            let triple = *PYTHAGOREAN_TRIPLES.choose(rng).expect("nonempty");
            q = q.try_mul(&givens_rotation(d, i, j, triple)).expect("square, same size");
        }
    }
    q
}

pub fn rows_as_vectors(p: Prime, m: &Matrix) -> Vec<Vector> {
    m.to_rows().into_iter().map(|r| Vector::new(p, r)).collect()
}

/// `copies` rotated orthonormal bases of Q_p^d, each scaled by a random
/// nonzero rational when `scale` is set, in shuffled order.
pub fn random_tight_config<R: Rng + ?Sized>(
    rng: &mut R,
    p: Prime,
    d: usize,
    copies: usize,
    scale: bool,
) -> FrameConfig {
    assert!(d >= 1 && copies >= 1);
    let mut vectors = Vec::with_capacity(d * copies);
    for _ in 0..copies {
        let rotations = rng.gen_range(0..=3);
        let q = random_orthogonal(rng, d, rotations);
        let c = if scale {
            let num = rng.gen_range(1..=12) * if rng.gen() { 1 } else { -1 };
            Rational::new(num, rng.gen_range(1..=12))
        } else {
            Rational::one()
        };
        vectors.extend(rows_as_vectors(p, &q).into_iter().map(|v| v.scale(&c)));
    }
    vectors.shuffle(rng);
    FrameConfig::new(p, d, vectors).expect("rows have length d")
}

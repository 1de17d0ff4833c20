//! Rational vectors and matrices inside Q_p^d.
//!
//! The pairing is the plain bilinear form `<x, y> = sum_j x_j y_j`; there is
//! no conjugation. The frame operator of `tau_1..tau_n` is the d x d matrix
//! `sum_j tau_j tau_j^T`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::rational::Rational;
use crate::valuation::{abs_p, AbsValue};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Vector {
    #[serde(skip)]
    p: Prime,
    coords: Vec<Rational>,
}

impl Vector {
    pub fn new(p: Prime, coords: Vec<Rational>) -> Self {
        Vector { p, coords }
    }

    pub fn from_integers(p: Prime, coords: &[i64]) -> Self {
        Vector::new(p, coords.iter().map(|&c| Rational::from(c)).collect())
    }

    /// `e_index` in Q_p^d.
    pub fn basis(p: Prime, d: usize, index: usize) -> Self {
        let coords = (0..d)
            .map(|i| if i == index { Rational::one() } else { Rational::zero() })
            .collect();
        Vector::new(p, coords)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector::new(self.p, self.coords.iter().map(|x| x * c).collect())
    }

    pub fn try_add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Vector::new(self.p, coords))
    }

    fn check_compatible(&self, other: &Vector) -> Result<()> {
        self.p.ensure_same(other.p)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }
}

/// `<x, y> = sum_j x_j y_j`.
pub fn inner(x: &Vector, y: &Vector) -> Result<Rational> {
    x.check_compatible(y)?;
    Ok(dot(&x.coords, &y.coords))
}

pub(crate) fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `max_j |x_j|_p`, the sup-norm on Q_p^d.
pub fn max_norm(x: &Vector) -> AbsValue {
    x.coords
        .iter()
        .map(|c| abs_p(x.p, c))
        .fold(AbsValue::zero(x.p), |acc, a| if a > acc { a } else { acc })
}

/// A prime, an ambient dimension and an ordered, nonempty list of vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FrameConfig {
    p: Prime,
    d: usize,
    vectors: Vec<Vector>,
}

impl FrameConfig {
    pub fn new(p: Prime, d: usize, vectors: Vec<Vector>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidConfig("dimension d must be positive".into()));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidConfig("at least one vector is required".into()));
        }
        for v in &vectors {
            p.ensure_same(v.p)?;
            if v.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.dim() });
            }
        }
        Ok(FrameConfig { p, d, vectors })
    }

    pub fn from_rows(p: Prime, d: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        FrameConfig::new(p, d, rows.into_iter().map(|r| Vector::new(p, r)).collect())
    }

    /// The standard basis `e_1..e_d` of Q_p^d.
    pub fn standard_basis(p: Prime, d: usize) -> Result<Self> {
        FrameConfig::new(p, d, (0..d).map(|i| Vector::basis(p, d, i)).collect())
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// Every vector multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> FrameConfig {
        FrameConfig { p: self.p, d: self.d, vectors: self.vectors.iter().map(|v| v.scale(c)).collect() }
    }

    /// The diagonal `<tau_j, tau_j>` of the Gram matrix.
    pub fn self_inners(&self) -> Vec<Rational> {
        self.vectors.iter().map(|v| dot(&v.coords, &v.coords)).collect()
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub(crate) fn add_to(&mut self, r: usize, c: usize, value: &Rational) {
        self.entries[r * self.cols + c] += value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_to(i, j, &(a * other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `M x` for a coordinate vector `x`.
    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), x)).collect())
    }

    pub fn trace(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

pub fn trace(m: &Matrix) -> Result<Rational> {
    m.trace()
}

/// `G[j][k] = <tau_j, tau_k>`.
pub fn gram(config: &FrameConfig) -> Matrix {
    let n = config.len();
    let mut g = Matrix::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let value = dot(&config.vectors[j].coords, &config.vectors[k].coords);
            if j != k {
                g.set(k, j, value.clone());
            }
            g.set(j, k, value);
        }
    }
    g
}

/// `S[a][b] = sum_j tau_j[a] tau_j[b]`, the matrix of `x -> sum_j <x, tau_j> tau_j`.
pub fn frame_operator(config: &FrameConfig) -> Matrix {
    let d = config.d;
    let mut s = Matrix::zeros(d, d);
    for v in &config.vectors {
        for a in 0..d {
            if v.coords[a].is_zero() {
                continue;
            }
            for b in a..d {
                s.add_to(a, b, &(&v.coords[a] * &v.coords[b]));
            }
        }
    }
    for a in 0..d {
        for b in 0..a {
            let mirrored = s.get(b, a).clone();
            s.set(a, b, mirrored);
        }
    }
    s
}

/// First entry where a square matrix differs from `b I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightnessWitness {
    pub row: usize,
    pub col: usize,
    pub expected: Rational,
    pub found: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub is_tight: bool,
    /// The scalar with `S = b I`; present iff tight.
    pub b: Option<Rational>,
    pub witness: Option<TightnessWitness>,
}

impl TightnessReport {
    /// Tight with `b = 0`, i.e. the frame operator vanishes.
    pub fn is_degenerate(&self) -> bool {
        self.b.as_ref().is_some_and(Rational::is_zero)
    }
}

/// Decides `m = b I` exactly, reading `b` from `m[0][0]` and scanning row by row.
pub fn scalar_identity_check(m: &Matrix) -> Result<TightnessReport> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let b = m.get(0, 0).clone();
    for r in 0..m.rows {
        for c in 0..m.cols {
            let expected = if r == c { b.clone() } else { Rational::zero() };
            let found = m.get(r, c);
            if *found != expected {
                return Ok(TightnessReport {
                    is_tight: false,
                    b: None,
                    witness: Some(TightnessWitness { row: r, col: c, expected, found: found.clone() }),
                });
            }
        }
    }
    Ok(TightnessReport { is_tight: true, b: Some(b), witness: None })
}

/// Whether the frame operator of `config` equals `b I` for some rational `b`.
pub fn check_tight(config: &FrameConfig) -> TightnessReport {
    scalar_identity_check(&frame_operator(config)).expect("frame operator is square")
}

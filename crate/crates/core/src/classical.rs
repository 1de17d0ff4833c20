//! Classical (real and complex) comparator bounds, in floating point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorial::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl Field {
    /// `dim_R(K) / 2`.
    fn half_real_dim(self) -> f64 {
        match self {
            Field::Real => 0.5,
            Field::Complex => 1.0,
        }
    }
}

/// Gerzon's bound: `d^2` over C, `d(d+1)/2` over R.
pub fn gerzon(d: u64, field: Field) -> u64 {
    match field {
        Field::Complex => d * d,
        Field::Real => d * (d + 1) / 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalWelch {
    pub m: u32,
    /// Lower bound on `sum_{j,k} |<t_j,t_k>|^(2m)`.
    pub sum_bound: f64,
    /// Lower bound on `max_{j!=k} |<t_j,t_k>|^(2m)`.
    pub max_bound: f64,
}

/// Welch's bounds for `n > d` unit vectors: `n^2 / C(d+m-1, m)` and
/// `(n / C(d+m-1, m) - 1) / (n - 1)`.
pub fn classical_welch(d: u64, n: u64, m: u32) -> Result<ClassicalWelch> {
    if n <= d {
        return Err(Error::ClassicalDomain(format!("Welch bounds need n > d (n = {n}, d = {d})")));
    }
    if m == 0 {
        return Err(Error::ClassicalDomain("order m must be at least 1".into()));
    }
    let dim = biguint_to_f64(&binomial(d + m as u64 - 1, m as u64)?);
    let n = n as f64;
    Ok(ClassicalWelch { m, sum_bound: n * n / dim, max_bound: (n / dim - 1.0) / (n - 1.0) })
}

fn biguint_to_f64(x: &num_bigint::BigUint) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::INFINITY)
}

/// A coherence lower bound together with its side condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparatorBound {
    pub applicable: bool,
    /// Present iff `applicable`.
    pub value: Option<f64>,
}

impl ComparatorBound {
    fn when(applicable: bool, value: impl FnOnce() -> f64) -> Self {
        ComparatorBound { applicable, value: applicable.then(value) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalBounds {
    pub field: Field,
    pub d: u64,
    pub n: u64,
    pub gerzon: u64,
    /// First-order Welch bounds; present when `n > d`.
    pub welch: Option<ClassicalWelch>,
    pub bukh_cox: ComparatorBound,
    pub orthoplex: ComparatorBound,
    pub levenstein: ComparatorBound,
    pub exponential: ComparatorBound,
}

/// Bukh-Cox, orthoplex, Levenstein and exponential lower bounds on
/// `max_{j!=k} |<t_j,t_k>|` for n unit vectors in K^d.
pub fn classical_secondary_bounds(d: u64, n: u64, field: Field) -> Result<ClassicalBounds> {
    if d < 1 || n < 2 {
        return Err(Error::ClassicalDomain(format!("need d >= 1 and n >= 2 (d = {d}, n = {n})")));
    }
    let h = field.half_real_dim();
    let z_d = gerzon(d, field);
    let (df, nf) = (d as f64, n as f64);

    let bukh_cox = ComparatorBound::when(n > d, || {
        let z = gerzon(n - d, field) as f64;
        let gap = nf - df;
        z / (nf * (1.0 + h * (gap - 1.0) * (1.0 / h + gap).sqrt()) - z)
    });
    let orthoplex = ComparatorBound::when(n > z_d, || 1.0 / df.sqrt());
    let levenstein = ComparatorBound::when(n > z_d, || {
        ((nf * (h + 1.0) - df * (h * df + 1.0)) / ((nf - df) * (h * df + 1.0))).sqrt()
    });
    let exponential = ComparatorBound::when(d >= 2, || 1.0 - 2.0 * nf.powf(-1.0 / (df - 1.0)));

    Ok(ClassicalBounds {
        field,
        d,
        n,
        gerzon: z_d,
        welch: classical_welch(d, n, 1).ok(),
        bukh_cox,
        orthoplex,
        levenstein,
        exponential,
    })
}

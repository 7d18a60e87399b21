//! Operator norms on finite groupoid convolution algebras.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{convolve, FiniteGroupoid, GroupoidFunction};
use crate::random::RationalSampler;

/// Default stopping tolerance for power iteration.
pub const DEFAULT_POWER_TOL: f64 = 1e-10;
const MAX_ITERATIONS: usize = 10_000;
/// Up to this dimension the Gram matrix is diagonalized directly.
const EIGEN_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        Ok(FloatMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FloatMatrix {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.cols + j] += v;
    }

    fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn tmul_vec(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += self.get(i, j) * vi;
            }
        }
        out
    }

    fn gram(&self) -> DMatrix<f64> {
        let m = DMatrix::from_row_slice(self.rows, self.cols, &self.entries);
        m.transpose() * m
    }
}

/// Matrix of `ψ ↦ f*ψ` on `ℓ²(G_x)`, basis the arrows with source `x` in
/// increasing order.
pub fn regular_rep_matrix(g: &FiniteGroupoid, f: &GroupoidFunction, x: usize) -> Result<FloatMatrix> {
    if x >= g.num_units() {
        return Err(Error::UnitNotFound(x));
    }
    if !f.belongs_to(g) {
        return Err(Error::MismatchedGroupoid);
    }
    let basis = g.arrows_from(x);
    let position = |a: usize| basis.binary_search(&a).expect("ah has source x");
    let values = f.to_f64();
    let mut m = FloatMatrix::zeros(basis.len(), basis.len());
    for (j, &h) in basis.iter().enumerate() {
        for &a in g.arrows_from(g.range(h)) {
            if values[a] != 0.0 {
                let ah = g.compose(a, h).expect("s(a) = r(h)");
                m.add_to(position(ah), j, values[a]);
            }
        }
    }
    if m.entries.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteEntries);
    }
    Ok(m)
}

/// Largest singular value by power iteration on `MᵀM` from `start`.
pub fn power_iteration(m: &FloatMatrix, start: &[f64], tol: f64) -> f64 {
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n0 = norm(start);
    if n0 == 0.0 {
        return 0.0;
    }
    let mut v: Vec<f64> = start.iter().map(|x| x / n0).collect();
    let mut estimate = 0.0f64;
    for _ in 0..MAX_ITERATIONS {
        let w = m.tmul_vec(&m.mul_vec(&v));
        let next = norm(&w);
        if next == 0.0 {
            return 0.0;
        }
        v = w.iter().map(|x| x / next).collect();
        let converged = (next - estimate).abs() <= tol * next;
        estimate = next;
        if converged {
            break;
        }
    }
    estimate.sqrt()
}

/// `‖M‖₂`. Dimensions up to 64 are settled by a symmetric eigendecomposition
/// of the Gram matrix; power iteration from the normalized all-ones vector is
/// run alongside and can only undershoot (when the start is orthogonal to the
/// top singular vector). Larger matrices use power iteration from two fixed
/// starts.
pub fn spectral_norm(m: &FloatMatrix, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    if m.entries.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteEntries);
    }
    if m.rows == 0 || m.cols == 0 {
        return Ok(0.0);
    }
    let ones = vec![1.0; m.cols];
    let power = power_iteration(m, &ones, tol);
    if m.cols <= EIGEN_DIM {
        let top = SymmetricEigen::new(m.gram())
            .eigenvalues
            .iter()
            .fold(0.0f64, |acc, &x| acc.max(x));
        let exact = top.max(0.0).sqrt();
        if power > exact * (1.0 + 1e-6) + 1e-9 {
            log::warn!("power iteration overshoots eigen solver: {power} vs {exact}");
        }
        return Ok(exact);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let second: Vec<f64> = (0..m.cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Ok(power.max(power_iteration(m, &second, tol)))
}

/// `‖f‖_r = max_x ‖λ_x(f)‖`.
pub fn reduced_norm(g: &FiniteGroupoid, f: &GroupoidFunction, tol: f64) -> Result<f64> {
    let mut best = 0.0f64;
    for x in 0..g.num_units() {
        best = best.max(spectral_norm(&regular_rep_matrix(g, f, x)?, tol)?);
    }
    Ok(best)
}

/// Both sides of the norm equation for a unit set `X`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEquation {
    /// Reduced norm of `a` restricted to `G|_X`.
    pub restricted: f64,
    /// Reduced norm of `1_X a 1_X` in `G`.
    pub compressed: f64,
}

impl NormEquation {
    pub fn residual(&self) -> f64 {
        (self.restricted - self.compressed).abs()
    }
}

pub fn norm_equation_sides(g: &FiniteGroupoid, units: &[usize], a: &GroupoidFunction, tol: f64) -> Result<NormEquation> {
    if units.is_empty() {
        return Err(Error::EmptyUnitSet);
    }
    if !a.belongs_to(g) {
        return Err(Error::MismatchedGroupoid);
    }
    let (sub, embedding) = g.restrict(units)?;
    let local = GroupoidFunction::from_values(&sub, embedding.iter().map(|&e| a.value(e).clone()).collect())?;
    let restricted = reduced_norm(&sub, &local, tol)?;
    let p = GroupoidFunction::unit_indicator(g, units);
    let compressed_fn = convolve(g, &convolve(g, &p, a)?, &p)?;
    let compressed = reduced_norm(g, &compressed_fn, tol)?;
    Ok(NormEquation { restricted, compressed })
}

/// `|‖a|_{G|_X}‖_r − ‖1_X a 1_X‖_r|`.
pub fn verify_norm_equation(g: &FiniteGroupoid, units: &[usize], a: &GroupoidFunction, tol: f64) -> Result<f64> {
    Ok(norm_equation_sides(g, units, a, tol)?.residual())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetResidual {
    pub units: Vec<usize>,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormcheckReport {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub subsets: Vec<SubsetResidual>,
    pub max_residual: f64,
    pub passed: bool,
}

/// Singletons, pairs and (for three or more units) the whole unit space.
pub fn default_subsets(units: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..units).map(|u| vec![u]).collect();
    for a in 0..units {
        for b in a + 1..units {
            out.push(vec![a, b]);
        }
    }
    if units > 2 {
        out.push((0..units).collect());
    }
    out
}

/// Norm equation residuals for `trials` seeded random functions, shared
/// across all unit subsets.
pub fn normcheck(g: &FiniteGroupoid, subsets: Vec<Vec<usize>>, trials: usize, seed: u64, tol: f64) -> Result<NormcheckReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    let mut sampler = RationalSampler::new(seed);
    let functions: Vec<_> = (0..trials).map(|_| sampler.groupoid_function(g)).collect();
    let mut rows = Vec::with_capacity(subsets.len());
    for units in subsets {
        let residuals = functions
            .par_iter()
            .map(|a| verify_norm_equation(g, &units, a, DEFAULT_POWER_TOL))
            .collect::<Result<Vec<f64>>>()?;
        let max_residual = residuals.into_iter().fold(0.0, f64::max);
        rows.push(SubsetResidual { units, max_residual });
    }
    let max_residual = rows.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    Ok(NormcheckReport {
        trials,
        seed,
        tol,
        subsets: rows,
        max_residual,
        passed: max_residual < tol,
    })
}

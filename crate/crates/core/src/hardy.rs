//! Hardy's uncertainty principle: the matrix criterion on Gaussian envelopes
//! and a discrete ħ-Fourier transform to test envelopes of sampled functions.
//!
//! Transform convention:
//! `ψ̂(p) = (2πħ)^{-1/2} ∫ e^{-ipx/ħ} ψ(x) dx`, under which `e^{-x²/4σx²}`
//! has envelope `e^{-p²/4σp²}` with `σx σp = ħ/2`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::body::ConvexBody;
use crate::covariance::{self, envelope_pair};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polar::{self, check_hbar, PairVerdict};

#[derive(Debug, Clone)]
pub struct HardyInput {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: f64,
}

impl HardyInput {
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>, c: f64) -> Result<Self> {
        let a = linalg::spd_checked(&a)?;
        let b = linalg::spd_checked(&b)?;
        if a.nrows() != b.nrows() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: b.nrows(),
            });
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("envelope constant must be > 0, got {c}")));
        }
        Ok(Self { a, b, c })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HardyClass {
    /// Some eigenvalue of `AB` is below `ħ²/4`: no such ψ exists.
    Violates,
    /// Every eigenvalue equals `ħ²/4`: ψ is a Gaussian.
    GaussianBoundary,
    /// Every eigenvalue is at least `ħ²/4`, one strictly larger.
    HermiteSubcritical,
}

#[derive(Debug, Clone)]
pub struct HardyVerdict {
    pub eigenvalues: Vec<f64>,
    pub classification: HardyClass,
    /// `X = {½ x^T A^{-1} x <= 1}`, `P = {½ p^T B^{-1} p <= 1}`.
    pub pair: (ConvexBody, ConvexBody),
}

/// Relative tolerance on `λ_j(AB)` versus `ħ²/4`.
pub const HARDY_RTOL: f64 = 1e-9;

pub fn hardy_check(input: &HardyInput, hbar: f64) -> Result<HardyVerdict> {
    check_hbar(hbar)?;
    let eigenvalues = covariance::product_eigenvalues(&input.a, &input.b)?;
    let bound = 0.25 * hbar * hbar;
    let tol = HARDY_RTOL * bound;
    let classification = if eigenvalues.iter().any(|l| *l < bound - tol) {
        HardyClass::Violates
    } else if eigenvalues.iter().all(|l| (l - bound).abs() <= tol) {
        HardyClass::GaussianBoundary
    } else {
        HardyClass::HermiteSubcritical
    };
    Ok(HardyVerdict {
        eigenvalues,
        classification,
        pair: envelope_pair(&input.a, &input.b)?,
    })
}

/// Uniform grid `start + k * step`, `k = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformGrid {
    pub fn new(start: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && start.is_finite()) || len < 2 {
            return Err(Error::InvalidParameter("grid needs step > 0 and len >= 2".into()));
        }
        Ok(Self { start, step, len })
    }

    /// `len` points covering `[lo, hi)`; `[lo, hi)` symmetric gives the
    /// centered grid used by the transform.
    pub fn spanning(lo: f64, hi: f64, len: usize) -> Result<Self> {
        Self::new(lo, (hi - lo) / len as f64, len)
    }

    /// Validates that explicit coordinates are uniformly spaced.
    pub fn from_points(points: &[f64]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::NonUniformGrid);
        }
        let step = (points[points.len() - 1] - points[0]) / (points.len() - 1) as f64;
        let span = (points[points.len() - 1] - points[0]).abs().max(f64::MIN_POSITIVE);
        for (k, x) in points.iter().enumerate() {
            if (x - (points[0] + k as f64 * step)).abs() > 1e-9 * span {
                return Err(Error::NonUniformGrid);
            }
        }
        Self::new(points[0], step, points.len())
    }

    pub fn point(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|k| self.point(k)).collect()
    }

    /// Centered reciprocal grid with step `2πħ / (len * step)`.
    pub fn dual(&self, hbar: f64) -> Self {
        let step = 2.0 * PI * hbar / (self.len as f64 * self.step);
        Self {
            start: -((self.len / 2) as f64) * step,
            step,
            len: self.len,
        }
    }
}

/// Samples at the grid edges must be below this fraction of the peak.
pub const EDGE_DECAY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Kernel `e^{-ipx/ħ}`.
    Forward,
    /// Kernel `e^{+ipx/ħ}`.
    Inverse,
}

/// Discrete ħ-Fourier transform on a uniform power-of-two grid.
///
/// Returns the centered dual grid and `ψ̂` sampled on it. The discretization
/// is exactly unitary: `Σ|ψ̂|² Δp = Σ|ψ|² Δx`.
pub fn hbar_fourier_1d(
    samples: &[Complex64],
    grid: &UniformGrid,
    hbar: f64,
    direction: Direction,
) -> Result<(UniformGrid, Vec<Complex64>)> {
    check_hbar(hbar)?;
    let n = grid.len;
    if samples.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: samples.len(),
        });
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let peak = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(peak > 0.0 && peak.is_finite()) {
        return Err(Error::Degenerate("samples are zero or non-finite".into()));
    }
    let edge = samples[0].norm().max(samples[n - 1].norm());
    if edge > EDGE_DECAY * peak {
        return Err(Error::InsufficientDecay { ratio: edge / peak });
    }

    let dual = grid.dual(hbar);
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    // p_m x_k / ħ = p_m x_0 / ħ + 2π (m - N/2) k / N, and e^{∓iπk} = (-1)^k.
    let mut buf: Vec<Complex64> = samples
        .iter()
        .enumerate()
        .map(|(k, z)| if k % 2 == 0 { *z } else { -*z })
        .collect();
    let mut planner = FftPlanner::new();
    let fft = match direction {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    };
    fft.process(&mut buf);
    let prefactor = grid.step / (2.0 * PI * hbar).sqrt();
    let out = buf
        .into_iter()
        .enumerate()
        .map(|(m, z)| {
            let phase = sign * dual.point(m) * grid.start / hbar;
            z * Complex64::from_polar(prefactor, phase)
        })
        .collect();
    Ok((dual, out))
}

/// Noise floor below which samples are treated as vanished tails.
pub const ENVELOPE_FLOOR: f64 = 1e-10;

/// Default cap on the envelope constant, as a multiple of `max|ψ|`.
pub const ENVELOPE_C_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCheck {
    pub holds: bool,
    /// Smallest `C` that works for both `ψ` and `ψ̂` on the grid.
    pub constant: f64,
    pub constant_cap: f64,
    /// Raised when the envelopes hold although `σx σp < ħ/2`.
    pub alarm: bool,
}

/// `max_k |f_k| / e^{-exponent(t_k)}` over samples above the noise floor.
fn envelope_constant(values: &[Complex64], grid: &UniformGrid, exponent: impl Fn(f64) -> f64) -> f64 {
    let peak = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let floor = ENVELOPE_FLOOR * peak;
    values
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > floor)
        .map(|(k, z)| z.norm() * exponent(grid.point(k)).exp())
        .fold(0.0, f64::max)
}

/// Checks `|ψ(x)| <= C e^{-x²/4σx²}` and `|ψ̂(p)| <= C e^{-p²/4σp²}` with
/// `C <= 10 max|ψ|`.
pub fn hardy_envelope_verify(
    samples: &[Complex64],
    grid: &UniformGrid,
    sigma_x: f64,
    sigma_p: f64,
    hbar: f64,
) -> Result<EnvelopeCheck> {
    hardy_envelope_verify_with(samples, grid, sigma_x, sigma_p, hbar, ENVELOPE_C_FACTOR)
}

pub fn hardy_envelope_verify_with(
    samples: &[Complex64],
    grid: &UniformGrid,
    sigma_x: f64,
    sigma_p: f64,
    hbar: f64,
    c_factor: f64,
) -> Result<EnvelopeCheck> {
    if !(sigma_x > 0.0 && sigma_p > 0.0) {
        return Err(Error::InvalidParameter("envelope widths must be > 0".into()));
    }
    let (pgrid, transformed) = hbar_fourier_1d(samples, grid, hbar, Direction::Forward)?;
    let cx = envelope_constant(samples, grid, |x| x * x / (4.0 * sigma_x * sigma_x));
    let cp = envelope_constant(&transformed, &pgrid, |p| p * p / (4.0 * sigma_p * sigma_p));
    let peak = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let constant = cx.max(cp);
    let cap = c_factor * peak;
    let holds = constant <= cap;
    Ok(EnvelopeCheck {
        holds,
        constant,
        constant_cap: cap,
        alarm: holds && sigma_x * sigma_p < 0.5 * hbar * (1.0 - HARDY_RTOL),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiExperiment {
    pub verdict: PairVerdict,
    pub x_envelope: bool,
    pub p_envelope: bool,
    pub constant: f64,
    /// Both envelopes hold but `(X, P)` is not a pair: flagged for review.
    pub counterexample_candidate: bool,
}

/// Gathers evidence on envelopes `C e^{-½‖x‖_X²}` and `C e^{-½‖p‖_P²}` built
/// from gauges, next to the pair verdict for `(X, P)`.
pub fn minkowski_envelope_experiment(
    samples: &[Complex64],
    grid: &UniformGrid,
    x: &ConvexBody,
    p: &ConvexBody,
    hbar: f64,
) -> Result<MinkowskiExperiment> {
    if x.dim() != 1 || p.dim() != 1 {
        return Err(Error::InvalidParameter("experiment is one-dimensional".into()));
    }
    let (pgrid, transformed) = hbar_fourier_1d(samples, grid, hbar, Direction::Forward)?;
    let gauge_exp = |body: &ConvexBody| {
        let g = body.gauge(&DVector::from_element(1, 1.0)).expect("dimension checked");
        move |t: f64| 0.5 * (g * t).powi(2)
    };
    let cx = envelope_constant(samples, grid, gauge_exp(x));
    let cp = envelope_constant(&transformed, &pgrid, gauge_exp(p));
    let peak = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let cap = ENVELOPE_C_FACTOR * peak;
    let verdict = polar::is_quantum_pair_default(x, p, hbar)?;
    let (x_envelope, p_envelope) = (cx <= cap, cp <= cap);
    Ok(MinkowskiExperiment {
        verdict,
        x_envelope,
        p_envelope,
        constant: cx.max(cp),
        counterexample_candidate: x_envelope && p_envelope && !verdict.is_pair,
    })
}

/// Samples of `f` on the grid as complex values.
pub fn sample_on_grid(grid: &UniformGrid, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
    grid.points().into_iter().map(f).collect()
}

//! Position and momentum measurement clouds: generation, fitting, and the
//! full pair / capacity / covariance analysis.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::capacity::{self, CapacityReport};
use crate::containment::DEFAULT_TOL;
use crate::covariance::{self, CovarianceMatrix, VALIDITY_TOL};
use crate::error::{Error, Result};
use crate::fit::{self, FitMode};
use crate::io::{self, BodyDoc};
use crate::linalg;
use crate::polar::{self, check_hbar, PairVerdict};

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementCloud {
    pub label: String,
    pub x_samples: Vec<DVector<f64>>,
    pub p_samples: Vec<DVector<f64>>,
}

#[derive(Serialize, Deserialize)]
struct CloudDoc {
    #[serde(default)]
    label: String,
    x: Vec<Vec<f64>>,
    p: Vec<Vec<f64>>,
}

impl MeasurementCloud {
    pub fn new(label: impl Into<String>, x: Vec<DVector<f64>>, p: Vec<DVector<f64>>) -> Result<Self> {
        let cloud = Self {
            label: label.into(),
            x_samples: x,
            p_samples: p,
        };
        cloud.dim()?;
        Ok(cloud)
    }

    /// Common dimension of all samples.
    pub fn dim(&self) -> Result<usize> {
        let first = self
            .x_samples
            .first()
            .or(self.p_samples.first())
            .ok_or_else(|| Error::Degenerate("cloud has no samples".into()))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::Degenerate("zero-dimensional samples".into()));
        }
        for s in self.x_samples.iter().chain(&self.p_samples) {
            if s.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
        }
        Ok(n)
    }

    /// Position and momentum samples are index-paired (same count).
    pub fn is_paired(&self) -> bool {
        self.x_samples.len() == self.p_samples.len()
    }

    pub fn to_json(&self) -> Result<String> {
        let rows = |v: &[DVector<f64>]| v.iter().map(|s| s.iter().copied().collect()).collect();
        Ok(serde_json::to_string(&CloudDoc {
            label: self.label.clone(),
            x: rows(&self.x_samples),
            p: rows(&self.p_samples),
        })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CloudDoc = serde_json::from_str(text)?;
        let vecs = |rows: Vec<Vec<f64>>| rows.into_iter().map(DVector::from_vec).collect();
        Self::new(doc.label, vecs(doc.x), vecs(doc.p))
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    /// Reads separate position and momentum sample files.
    pub fn read_text(x_path: &Path, p_path: &Path) -> Result<Self> {
        Self::new(
            format!("{} + {}", x_path.display(), p_path.display()),
            io::read_samples(x_path)?,
            io::read_samples(p_path)?,
        )
    }

    pub fn write_text(&self, x_path: &Path, p_path: &Path) -> Result<()> {
        let n = self.dim()?;
        let header = |c: char| (1..=n).map(|k| format!("{c}{k}")).collect::<Vec<_>>().join(",");
        fs::write(x_path, io::format_rows(&self.x_samples, Some(&header('x'))))?;
        fs::write(p_path, io::format_rows(&self.p_samples, Some(&header('p'))))?;
        Ok(())
    }
}

fn uniform_disk<R: Rng>(radius: f64, rng: &mut R) -> DVector<f64> {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = 2.0 * PI * rng.gen::<f64>();
    DVector::from_vec(vec![r * t.cos(), r * t.sin()])
}

/// `count` position samples uniform on `D(0, rx)` and `count` momentum samples
/// uniform on `D(0, rp)`, in two degrees of freedom.
pub fn cloud_generate_disk(rx: f64, rp: f64, count: usize, seed: u64) -> Result<MeasurementCloud> {
    if !(rx > 0.0 && rp > 0.0 && rx.is_finite() && rp.is_finite()) {
        return Err(Error::InvalidParameter("disk radii must be > 0".into()));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("sample count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = (0..count).map(|_| uniform_disk(rx, &mut rng)).collect();
    let p = (0..count).map(|_| uniform_disk(rp, &mut rng)).collect();
    MeasurementCloud::new(format!("disk rx={rx} rp={rp} n={count} seed={seed}"), x, p)
}

/// Per-coordinate Gaussian clouds with standard deviations `sx`, `sp`.
pub fn cloud_generate_gaussian(n: usize, sx: f64, sp: f64, count: usize, seed: u64) -> Result<MeasurementCloud> {
    if !(sx > 0.0 && sp > 0.0) || n == 0 || count == 0 {
        return Err(Error::InvalidParameter("need n, count >= 1 and positive widths".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |s: f64| -> DVector<f64> { crate::sample::gaussian_vector(n, &mut rng) * s };
    let x = (0..count).map(|_| draw(sx)).collect();
    let p = (0..count).map(|_| draw(sp)).collect();
    MeasurementCloud::new(format!("gaussian sx={sx} sp={sp} n={count} seed={seed}"), x, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub hbar: f64,
    pub fit: FitMode,
    /// Fraction of samples with the largest Mahalanobis norm removed before
    /// fitting. Zero keeps everything.
    pub trim: f64,
    pub tol: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            fit: FitMode::Ball,
            trim: 0.0,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceVerdicts {
    pub rs: Vec<bool>,
    pub sigpos: bool,
    pub capacity_criterion: bool,
    pub symplectic_spectrum: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub label: String,
    pub options: AnalysisOptions,
    pub dim: usize,
    pub x_used: usize,
    pub p_used: usize,
    pub x_center: Vec<f64>,
    pub p_center: Vec<f64>,
    pub x_body: BodyDoc,
    pub p_body: BodyDoc,
    pub pair: PairVerdict,
    pub capacity: CapacityReport,
    /// Sample covariance in `(x, p)` ordering. The cross block is estimated
    /// only when samples are index-paired, and is zero otherwise.
    pub covariance: Vec<Vec<f64>>,
    pub cross_covariance_paired: bool,
    pub x_variances: Vec<f64>,
    pub p_variances: Vec<f64>,
    pub covariance_verdicts: Option<CovarianceVerdicts>,
}

fn mean(samples: &[DVector<f64>]) -> DVector<f64> {
    let mut m = DVector::zeros(samples[0].len());
    for s in samples {
        m += s;
    }
    m / samples.len() as f64
}

fn covariance_of(samples: &[DVector<f64>]) -> DMatrix<f64> {
    let m = mean(samples);
    let n = m.len();
    let mut c = DMatrix::zeros(n, n);
    for s in samples {
        let d = s - &m;
        c += &d * d.transpose();
    }
    c / samples.len() as f64
}

/// Indices kept after dropping the `trim` fraction with the largest
/// Mahalanobis norm.
fn trim_indices(samples: &[DVector<f64>], trim: f64) -> Result<Vec<usize>> {
    let all: Vec<usize> = (0..samples.len()).collect();
    if trim == 0.0 {
        return Ok(all);
    }
    let m = mean(samples);
    let inv = linalg::spd_inverse(&covariance_of(samples))
        .map_err(|_| Error::Degenerate("sample covariance is singular".into()))?;
    let mut scored: Vec<(f64, usize)> = samples
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let d = s - &m;
            (d.dot(&(&inv * &d)), k)
        })
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let keep = ((1.0 - trim) * samples.len() as f64).ceil() as usize;
    let mut kept: Vec<usize> = scored[..keep.clamp(1, samples.len())].iter().map(|s| s.1).collect();
    kept.sort_unstable();
    Ok(kept)
}

pub fn cloud_analyze(cloud: &MeasurementCloud, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    check_hbar(opts.hbar)?;
    if !(0.0..0.5).contains(&opts.trim) {
        return Err(Error::InvalidParameter(format!("trim must be in [0, 0.5), got {}", opts.trim)));
    }
    let n = cloud.dim()?;
    if cloud.x_samples.is_empty() || cloud.p_samples.is_empty() {
        return Err(Error::Degenerate("both position and momentum samples are required".into()));
    }
    let paired = cloud.is_paired();
    let (xs, ps): (Vec<DVector<f64>>, Vec<DVector<f64>>) = if paired {
        let joint: Vec<DVector<f64>> = cloud
            .x_samples
            .iter()
            .zip(&cloud.p_samples)
            .map(|(x, p)| DVector::from_iterator(2 * n, x.iter().chain(p.iter()).copied()))
            .collect();
        let keep = trim_indices(&joint, opts.trim)?;
        (
            keep.iter().map(|&k| cloud.x_samples[k].clone()).collect(),
            keep.iter().map(|&k| cloud.p_samples[k].clone()).collect(),
        )
    } else {
        let kx = trim_indices(&cloud.x_samples, opts.trim)?;
        let kp = trim_indices(&cloud.p_samples, opts.trim)?;
        (
            kx.iter().map(|&k| cloud.x_samples[k].clone()).collect(),
            kp.iter().map(|&k| cloud.p_samples[k].clone()).collect(),
        )
    };

    let x_body = fit::fit_body(&xs, opts.fit)?;
    let p_body = fit::fit_body(&ps, opts.fit)?;
    let pair = polar::is_quantum_pair(&x_body, &p_body, opts.hbar, opts.tol)?;
    let capacity = capacity::product_capacity(&x_body, &p_body, opts.hbar)?;

    let cxx = covariance_of(&xs);
    let cpp = covariance_of(&ps);
    let cxp = if paired {
        let (mx, mp) = (mean(&xs), mean(&ps));
        let mut c = DMatrix::zeros(n, n);
        for (x, p) in xs.iter().zip(&ps) {
            c += (x - &mx) * (p - &mp).transpose();
        }
        c / xs.len() as f64
    } else {
        DMatrix::zeros(n, n)
    };
    let sigma = CovarianceMatrix::from_blocks(&cxx, &cxp, &cpp)?;
    let covariance_verdicts = match covariance::symplectic_spectrum(&sigma) {
        Ok(spectrum) => Some(CovarianceVerdicts {
            rs: covariance::rs_check(&sigma, opts.hbar)?,
            sigpos: covariance::is_quantum_covariance(&sigma, opts.hbar, VALIDITY_TOL)?,
            capacity_criterion: covariance::capacity_criterion(&sigma, opts.hbar, VALIDITY_TOL)?,
            symplectic_spectrum: spectrum.values().to_vec(),
        }),
        Err(Error::NotPositiveDefinite) => None,
        Err(e) => return Err(e),
    };

    Ok(AnalysisReport {
        label: cloud.label.clone(),
        options: *opts,
        dim: n,
        x_used: xs.len(),
        p_used: ps.len(),
        x_center: mean(&xs).iter().copied().collect(),
        p_center: mean(&ps).iter().copied().collect(),
        x_body: BodyDoc::from_body(&x_body),
        p_body: BodyDoc::from_body(&p_body),
        pair,
        capacity,
        covariance: linalg::matrix_to_rows(sigma.matrix()),
        cross_covariance_paired: paired,
        x_variances: cxx.diagonal().iter().copied().collect(),
        p_variances: cpp.diagonal().iter().copied().collect(),
        covariance_verdicts,
    })
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(", ");
        let mut s = String::new();
        s += &format!("cloud          : {}\n", self.label);
        s += &format!("hbar           : {}\n", self.options.hbar);
        s += &format!("fit            : {:?} (trim {})\n", self.options.fit, self.options.trim);
        s += &format!("samples used   : x {}  p {}\n", self.x_used, self.p_used);
        s += &format!("x center       : [{}]\n", fmt(&self.x_center));
        s += &format!("p center       : [{}]\n", fmt(&self.p_center));
        s += &format!("x variances    : [{}]\n", fmt(&self.x_variances));
        s += &format!("p variances    : [{}]\n", fmt(&self.p_variances));
        s += &format!(
            "quantum pair   : {}  (lambda_max {:.6}, margin {:+.6}{})\n",
            self.pair.is_pair,
            self.pair.lambda_max,
            self.pair.margin,
            if self.pair.exact { "" } else { ", approximate" }
        );
        s += &format!(
            "capacity       : {:.6}  (bound 4hbar = {:.6}, met {})\n",
            self.capacity.value, self.capacity.bound, self.capacity.lower_bound_met
        );
        match &self.covariance_verdicts {
            Some(c) => {
                s += &format!("williamson     : [{}]\n", fmt(&c.symplectic_spectrum));
                s += &format!("RS per mode    : {:?}\n", c.rs);
                s += &format!("sigma + i hbar/2 J >= 0 : {}\n", c.sigpos);
                s += &format!("c(Omega) >= h/2         : {}\n", c.capacity_criterion);
            }
            None => s += "covariance     : singular, no verdicts\n",
        }
        s
    }
}

/// Worked example with uniform position and momentum disks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskDemoReport {
    pub rx: f64,
    pub rp: f64,
    pub samples: usize,
    pub seed: u64,
    pub hbar: f64,
    /// Sample variances of `x_1, x_2` and `p_1, p_2`.
    pub x_variances: Vec<f64>,
    pub p_variances: Vec<f64>,
    /// Uniform-disk variance `R^2 / 4` for each coordinate.
    pub analytic_x_variance: f64,
    pub analytic_p_variance: f64,
    /// The literature figure `π R^2 / 4`, kept for comparison.
    pub stated_x_variance: f64,
    pub measured_matches_analytic: bool,
    pub stated_matches_measured: bool,
    pub pair: PairVerdict,
    /// `R_x R_p` at which the ball-fit verdict flips for this sample set.
    pub estimated_flip_product: f64,
    /// `σ_{x_1} σ_{p_1}` from the samples against `ħ/2`.
    pub sigma_product: f64,
    pub heisenberg_half_hbar: f64,
}

/// Relative tolerance for comparing Monte Carlo and analytic variances.
pub const DISK_VARIANCE_RTOL: f64 = 0.04;

pub fn disk_example(rx: f64, rp: f64, count: usize, seed: u64, hbar: f64) -> Result<DiskDemoReport> {
    check_hbar(hbar)?;
    let cloud = cloud_generate_disk(rx, rp, count, seed)?;
    let report = cloud_analyze(
        &cloud,
        &AnalysisOptions {
            hbar,
            ..AnalysisOptions::default()
        },
    )?;
    let analytic_x = rx * rx / 4.0;
    let analytic_p = rp * rp / 4.0;
    let stated_x = PI * rx * rx / 4.0;
    let close = |a: f64, b: f64| (a / b - 1.0).abs() <= DISK_VARIANCE_RTOL;
    let measured_matches_analytic = report.x_variances.iter().all(|v| close(*v, analytic_x))
        && report.p_variances.iter().all(|v| close(*v, analytic_p));
    let stated_matches_measured = report.x_variances.iter().all(|v| close(*v, stated_x));
    Ok(DiskDemoReport {
        rx,
        rp,
        samples: count,
        seed,
        hbar,
        sigma_product: (report.x_variances[0] * report.p_variances[0]).sqrt(),
        x_variances: report.x_variances,
        p_variances: report.p_variances,
        analytic_x_variance: analytic_x,
        analytic_p_variance: analytic_p,
        stated_x_variance: stated_x,
        measured_matches_analytic,
        stated_matches_measured,
        estimated_flip_product: rx * rp / report.pair.lambda_max,
        pair: report.pair,
        heisenberg_half_hbar: 0.5 * hbar,
    })
}

impl DiskDemoReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s += &format!(
            "uniform disks Rx = {}, Rp = {}, N = {}, seed = {}, hbar = {}\n",
            self.rx, self.rp, self.samples, self.seed, self.hbar
        );
        s += &format!(
            "Var(x1), Var(x2)      : {:.6}, {:.6}   (R^2/4 = {:.6})\n",
            self.x_variances[0], self.x_variances[1], self.analytic_x_variance
        );
        s += &format!(
            "Var(p1), Var(p2)      : {:.6}, {:.6}   (R^2/4 = {:.6})\n",
            self.p_variances[0], self.p_variances[1], self.analytic_p_variance
        );
        s += &format!(
            "Monte Carlo vs R^2/4  : {}\n",
            if self.measured_matches_analytic { "consistent" } else { "INCONSISTENT" }
        );
        s += &format!(
            "stated pi R^2/4 = {:.6}: {}\n",
            self.stated_x_variance,
            if self.stated_matches_measured {
                "consistent with samples"
            } else {
                "inconsistent with the Monte Carlo variance (flagged)"
            }
        );
        s += &format!(
            "quantum pair          : {}  (lambda_max {:.6}, capacity {:.6})\n",
            self.pair.is_pair, self.pair.lambda_max, self.pair.capacity
        );
        s += &format!("verdict flips at RxRp : {:.6}\n", self.estimated_flip_product);
        s += &format!(
            "sigma_x1 sigma_p1     : {:.6}   (hbar/2 = {:.6})\n",
            self.sigma_product, self.heisenberg_half_hbar
        );
        s
    }
}

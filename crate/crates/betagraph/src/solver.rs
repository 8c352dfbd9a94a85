//! Maximum likelihood fitting from a degree sequence.
//!
//! The estimate solves the moment equations
//!
//! ```text
//! d_i = sum_{j != i} sigma(beta_i + beta_j),   i = 1..t,
//! ```
//!
//! iterated in the fixed-point rearrangement
//!
//! ```text
//! beta_i <- log d_i - log sum_{j != i} 1 / (e^{-beta_j} + e^{beta_i}),
//! ```
//!
//! which costs O(t^2) per sweep with no linear solves and only 2t
//! exponentials per sweep. Existence of a finite maximizer is not
//! guaranteed; detection here is a documented heuristic (boundary
//! degrees, iterate blowup, or iteration-cap exhaustion), with the last
//! two reported as distinct statuses so borderline runs are never
//! silently misclassified.

use crate::error::{Error, Result};
use crate::graph::{BetaVector, DegreeSequence};
use crate::math::{log1p_exp, logit, sigmoid};

/// Tuning knobs for the fixed-point solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    /// Sup-norm residual tolerance on the moment equations.
    pub tol: f64,
    /// Sweep cap.
    pub max_iter: usize,
    /// Divergence threshold on |beta_i|. Beyond sums of +-60 the logistic
    /// saturates past double precision, so 30 already means "no finite
    /// solution is distinguishable".
    pub blowup: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 5000, blowup: 30.0 }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tol {} must be positive", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if !(self.blowup > 0.0) {
            return Err(Error::InvalidConfig(format!("blowup {} must be positive", self.blowup)));
        }
        Ok(())
    }
}

/// How a fit ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitStatus {
    /// Residual dropped below `tol` with all |beta_i| <= blowup.
    Converged,
    /// A boundary degree (0 or t-1) or iterate blowup: no finite
    /// maximizer is identifiable.
    NonExistent,
    /// Iteration cap hit without convergence or blowup.
    MaxIterExceeded,
}

/// Fitted parameters plus convergence diagnostics.
#[derive(Debug, Clone)]
pub struct FitResult {
    /// Final iterate. Only meaningful as an estimate when `status` is
    /// `Converged`; otherwise it is the last iterate, kept for
    /// diagnostics.
    pub beta_hat: BetaVector,
    pub status: FitStatus,
    /// Number of sweeps performed.
    pub iterations: usize,
    /// Sup-norm of d_i - sum_j p_ij at `beta_hat`.
    pub residual: f64,
    /// log L = sum_i beta_i d_i - sum_{i<j} log(1 + e^{beta_i+beta_j}).
    pub log_likelihood: f64,
}

impl FitResult {
    pub fn is_converged(&self) -> bool {
        self.status == FitStatus::Converged
    }

    /// Errors with `NotConverged` unless the fit converged.
    pub fn require_converged(&self) -> Result<()> {
        if self.is_converged() {
            Ok(())
        } else {
            Err(Error::NotConverged(self.status))
        }
    }
}

/// Expected degrees at `beta`: m_i = sum_{j != i} sigma(beta_i + beta_j).
///
/// Shares the e^{beta} / e^{-beta} precomputation trick with the solver
/// sweep so a full evaluation needs only 2t exponentials.
fn expected_degrees(beta: &[f64]) -> Vec<f64> {
    let t = beta.len();
    let eb: Vec<f64> = beta.iter().map(|b| b.exp()).collect();
    let enb: Vec<f64> = beta.iter().map(|b| (-b).exp()).collect();
    let mut m = vec![0.0; t];
    for i in 0..t {
        let mut s = 0.0;
        for j in 0..t {
            if j != i {
                // sigma(beta_i + beta_j) = e^{beta_i} / (e^{beta_i} + e^{-beta_j})
                s += 1.0 / (eb[i] + enb[j]);
            }
        }
        m[i] = eb[i] * s;
    }
    m
}

/// Sup-norm of the moment-equation residual |d_i - sum_j p_ij| at `beta`.
pub fn residual(beta: &BetaVector, d: &DegreeSequence) -> Result<f64> {
    if beta.len() != d.len() {
        return Err(Error::LengthMismatch { expected: d.len(), got: beta.len() });
    }
    let m = expected_degrees(beta.as_slice());
    Ok(d.as_slice()
        .iter()
        .zip(&m)
        .map(|(&di, &mi)| (di as f64 - mi).abs())
        .fold(0.0f64, f64::max))
}

/// Log-likelihood of a degree sequence at `beta`.
pub fn log_likelihood(beta: &BetaVector, d: &DegreeSequence) -> Result<f64> {
    if beta.len() != d.len() {
        return Err(Error::LengthMismatch { expected: d.len(), got: beta.len() });
    }
    let b = beta.as_slice();
    let t = b.len();
    let mut ll = 0.0;
    for i in 0..t {
        ll += b[i] * d.as_slice()[i] as f64;
    }
    for i in 0..t {
        for j in (i + 1)..t {
            ll -= log1p_exp(b[i] + b[j]);
        }
    }
    Ok(ll)
}

/// Closed form for a k-regular degree sequence: every coordinate equals
/// logit(k/(t-1))/2. Exact, so it doubles as a test oracle for
/// [`solve_mle`].
pub fn regular_closed_form(t: usize, k: usize) -> Result<BetaVector> {
    if t < 3 {
        return Err(Error::TooFewVertices { t, min: 3 });
    }
    if k == 0 || k >= t - 1 {
        return Err(Error::RegularDegreeInfeasible { k, max: t - 1 });
    }
    let value = 0.5 * logit(k as f64 / (t - 1) as f64);
    BetaVector::new(vec![value; t])
}

fn initial_iterate(d: &DegreeSequence, blowup: f64) -> Vec<f64> {
    let t = d.len();
    d.as_slice()
        .iter()
        .map(|&di| (0.5 * logit(di as f64 / (t - 1) as f64)).clamp(-blowup, blowup))
        .collect()
}

/// Solves the moment equations for a degree sequence.
///
/// Starts from `beta_i = logit(d_i/(t-1))/2` (exact for regular
/// sequences) clamped to the blowup box, then runs Jacobi-style
/// fixed-point sweeps. Boundary degrees short-circuit to `NonExistent`
/// before any iteration.
pub fn solve_mle(d: &DegreeSequence, cfg: &FitConfig) -> Result<FitResult> {
    cfg.validate()?;
    let t = d.len();
    if t < 3 {
        return Err(Error::TooFewVertices { t, min: 3 });
    }

    let finish = |beta: Vec<f64>, status: FitStatus, iterations: usize| -> Result<FitResult> {
        let beta_hat = BetaVector::new(beta)?;
        let residual = residual(&beta_hat, d)?;
        let log_likelihood = log_likelihood(&beta_hat, d)?;
        Ok(FitResult { beta_hat, status, iterations, residual, log_likelihood })
    };

    let mut beta = initial_iterate(d, cfg.blowup);
    if d.has_boundary_degree() {
        return finish(beta, FitStatus::NonExistent, 0);
    }

    let degrees: Vec<f64> = d.as_slice().iter().map(|&x| x as f64).collect();
    for sweep in 1..=cfg.max_iter {
        let eb: Vec<f64> = beta.iter().map(|b| b.exp()).collect();
        let enb: Vec<f64> = beta.iter().map(|b| (-b).exp()).collect();

        // s_i = sum_{j != i} 1/(e^{beta_i} + e^{-beta_j}); the expected
        // degree at the current iterate is e^{beta_i} * s_i, so the
        // convergence check comes for free before each update.
        let mut sup = 0.0f64;
        let mut sums = vec![0.0; t];
        for i in 0..t {
            let mut s = 0.0;
            for j in 0..t {
                if j != i {
                    s += 1.0 / (eb[i] + enb[j]);
                }
            }
            sums[i] = s;
            sup = sup.max((degrees[i] - eb[i] * s).abs());
        }
        if sup <= cfg.tol {
            return finish(beta, FitStatus::Converged, sweep - 1);
        }

        for i in 0..t {
            beta[i] = degrees[i].ln() - sums[i].ln();
        }
        if beta.iter().any(|b| b.abs() > cfg.blowup) {
            return finish(beta, FitStatus::NonExistent, sweep);
        }
    }
    finish(beta, FitStatus::MaxIterExceeded, cfg.max_iter)
}

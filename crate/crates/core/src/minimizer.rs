//! Projected gradient descent of the Wehrl entropy over pure states.
//!
//! The search runs on the unit sphere of `ℂ^|G|` with renormalization as
//! the retraction. Each restart is independent and the overall result is
//! the minimum over restarts, ties going to the lowest restart index, so
//! serial and parallel runs return the same answer.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WehrlError};
use crate::fourier::GroupFourier;
use crate::frame::CoherentFrame;
use crate::group::{GroupDescriptor, PhaseSpacePoint, Subgroup};
use crate::husimi::{frame_amplitudes, frame_synthesis, husimi_fast, ENTROPY_ZERO_THRESHOLD};
use crate::random::random_state;
use crate::state::{inner, StateVector};

/// Points with `Q` below this are left out of the gradient.
pub const GRADIENT_SKIP: f64 = 1e-12;
const MIN_STEP: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerConfig {
    pub max_iters: usize,
    /// Initial step, halved whenever a trial step fails to decrease the
    /// entropy.
    pub step_size: f64,
    pub tol_grad: f64,
    pub tol_entropy: f64,
    pub restarts: usize,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for MinimizerConfig {
    fn default() -> Self {
        MinimizerConfig {
            max_iters: 5000,
            step_size: 0.1,
            tol_grad: 1e-8,
            tol_entropy: 1e-9,
            restarts: 16,
            seed: 0,
            parallel: true,
        }
    }
}

impl MinimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        MinimizerConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("step_size", self.step_size),
            ("tol_grad", self.tol_grad),
            ("tol_entropy", self.tol_entropy),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(WehrlError::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.restarts == 0 {
            return Err(WehrlError::InvalidConfig(
                "restarts must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of one descent run.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentOutcome {
    pub state: StateVector,
    pub entropy: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerResult {
    pub best_state: StateVector,
    pub best_entropy: f64,
    pub nearest_coherent: PhaseSpacePoint,
    /// `|⟨z|ψ*⟩|` for the nearest coherent state `z`.
    pub overlap: f64,
    pub iterations: usize,
    pub converged: bool,
    pub restart: usize,
}

struct Objective<'a> {
    frame: &'a CoherentFrame,
    fourier: GroupFourier,
}

impl<'a> Objective<'a> {
    fn new(frame: &'a CoherentFrame) -> Self {
        Objective {
            frame,
            fourier: GroupFourier::new(frame.group()),
        }
    }

    fn entropy(&self, psi: &[Complex64]) -> f64 {
        let w = self.frame.haar_weight();
        w * frame_amplitudes(self.frame, &self.fourier, psi)
            .iter()
            .map(|c| {
                let q = c.norm_sqr();
                if q < ENTROPY_ZERO_THRESHOLD {
                    0.0
                } else {
                    -q * q.ln()
                }
            })
            .sum::<f64>()
    }

    /// Tangent-space gradient `g − Re⟨ψ, g⟩ψ` with
    /// `g = −Σ_z w (log Q(z) + 1) ⟨z|ψ⟩ |z⟩`.
    fn gradient(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let w = self.frame.haar_weight();
        let coeffs: Vec<Complex64> = frame_amplitudes(self.frame, &self.fourier, psi)
            .into_iter()
            .map(|c| {
                let q = c.norm_sqr();
                if q < GRADIENT_SKIP {
                    Complex64::default()
                } else {
                    c * (-w * (q.ln() + 1.0))
                }
            })
            .collect();
        let mut g = frame_synthesis(self.frame, &self.fourier, &coeffs);
        let radial = inner(psi, &g).re;
        for (gi, p) in g.iter_mut().zip(psi) {
            *gi -= p * radial;
        }
        g
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Riemannian gradient of `ψ ↦ S^W(|ψ⟩⟨ψ|)` on the unit sphere, in the
/// `∂/∂ψ̄` convention.
pub fn entropy_gradient(frame: &CoherentFrame, psi: &StateVector) -> Result<Vec<Complex64>> {
    if psi.dim() != frame.dim() {
        return Err(WehrlError::DimensionMismatch {
            expected: frame.dim(),
            found: psi.dim(),
        });
    }
    Ok(Objective::new(frame).gradient(psi.amplitudes()))
}

/// Descends from `start` until the entropy drops to `tol_entropy`, the
/// gradient norm drops to `tol_grad`, or `max_iters` trial steps are spent.
pub fn descend(
    frame: &CoherentFrame,
    start: &StateVector,
    config: &MinimizerConfig,
) -> Result<DescentOutcome> {
    config.validate()?;
    if start.dim() != frame.dim() {
        return Err(WehrlError::DimensionMismatch {
            expected: frame.dim(),
            found: start.dim(),
        });
    }
    let objective = Objective::new(frame);
    Ok(run_descent(&objective, start.amplitudes().to_vec(), config))
}

fn run_descent(
    objective: &Objective<'_>,
    mut psi: Vec<Complex64>,
    config: &MinimizerConfig,
) -> DescentOutcome {
    let mut f = objective.entropy(&psi);
    let mut step = config.step_size;
    let mut iterations = 0;
    let mut converged = false;
    let mut grad = objective.gradient(&psi);
    while iterations < config.max_iters {
        if f <= config.tol_entropy || norm(&grad) <= config.tol_grad {
            converged = true;
            break;
        }
        iterations += 1;
        let trial: Vec<Complex64> = psi.iter().zip(&grad).map(|(p, g)| p - g * step).collect();
        let scale = norm(&trial);
        let trial: Vec<Complex64> = trial.into_iter().map(|x| x / scale).collect();
        let f_trial = objective.entropy(&trial);
        if f_trial < f {
            psi = trial;
            f = f_trial;
            grad = objective.gradient(&psi);
        } else {
            step *= 0.5;
            if step < MIN_STEP {
                break;
            }
        }
    }
    if !converged && (f <= config.tol_entropy || norm(&grad) <= config.tol_grad) {
        converged = true;
    }
    DescentOutcome {
        state: StateVector::from_unit_unchecked(psi),
        entropy: f,
        iterations,
        converged,
    }
}

fn restart_start(dim: usize, seed: u64, restart: usize) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    random_state(dim, &mut rng)
}

/// Multi-restart minimization from random unit starts.
pub fn minimize(frame: &CoherentFrame, config: &MinimizerConfig) -> Result<MinimizerResult> {
    config.validate()?;
    let objective = Objective::new(frame);
    let dim = frame.dim();
    let run = |r: usize| {
        run_descent(
            &objective,
            restart_start(dim, config.seed, r).into_amplitudes(),
            config,
        )
    };
    let outcomes: Vec<DescentOutcome> = if config.parallel {
        (0..config.restarts).into_par_iter().map(run).collect()
    } else {
        (0..config.restarts).map(run).collect()
    };
    let (restart, best) = outcomes
        .into_iter()
        .enumerate()
        .reduce(|best, next| {
            if next.1.entropy < best.1.entropy {
                next
            } else {
                best
            }
        })
        .expect("at least one restart");
    let (nearest_coherent, q) = husimi_fast(frame, &best.state)?.max();
    Ok(MinimizerResult {
        best_entropy: best.entropy,
        overlap: q.max(0.0).sqrt(),
        nearest_coherent,
        iterations: best.iterations,
        converged: best.converged,
        restart,
        best_state: best.state,
    })
}

/// One row of a minimization report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizeReport {
    pub group: String,
    pub subgroup: String,
    pub fiducial_kind: String,
    pub best_entropy: f64,
    pub overlap: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl MinimizeReport {
    pub fn new(frame: &CoherentFrame, kind: &str, result: &MinimizerResult, seed: u64) -> Self {
        MinimizeReport {
            group: frame.group().to_string(),
            subgroup: frame
                .subgroup()
                .map(Subgroup::generator_string)
                .unwrap_or_default(),
            fiducial_kind: kind.to_string(),
            best_entropy: result.best_entropy,
            overlap: result.overlap,
            iterations: result.iterations,
            seed,
        }
    }
}

/// Minimizes over `trials` random fiducials, preceded by the vacuum frame of
/// `control` as a reference row.
pub fn scan_fiducials(
    group: &GroupDescriptor,
    control: &Subgroup,
    trials: usize,
    config: &MinimizerConfig,
) -> Result<Vec<MinimizeReport>> {
    config.validate()?;
    let vacuum = CoherentFrame::vacuum(control);
    let mut rows = vec![MinimizeReport::new(
        &vacuum,
        "vacuum",
        &minimize(&vacuum, config)?,
        config.seed,
    )];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(u64::MAX);
    for _ in 0..trials {
        let fiducial = random_state(group.order(), &mut rng);
        let frame = CoherentFrame::new(group, fiducial)?;
        let result = minimize(&frame, config)?;
        rows.push(MinimizeReport::new(&frame, "random", &result, config.seed));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> GroupDescriptor {
        GroupDescriptor::parse(spec).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(MinimizerConfig::default().validate().is_ok());
        let bad = MinimizerConfig {
            tol_grad: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = MinimizerConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn start_at_coherent_state() {
        let group = g("Z4");
        let h = group
            .subgroup_closure(vec![group.element(&[2]).unwrap()])
            .unwrap();
        let frame = CoherentFrame::vacuum(&h);
        let start = frame
            .coherent_state(&group.parse_point("1;3").unwrap())
            .unwrap();
        let out = descend(&frame, &start, &MinimizerConfig::default()).unwrap();
        assert_eq!(out.iterations, 0);
        assert!(out.converged);
        assert!(out.entropy <= 1e-12);
        let grad = entropy_gradient(&frame, &start).unwrap();
        assert!(norm(&grad) <= 1e-8);
    }

    #[test]
    fn z4_witness() {
        let group = g("Z4");
        let h = group
            .subgroup_closure(vec![group.element(&[2]).unwrap()])
            .unwrap();
        let frame = CoherentFrame::vacuum(&h);
        let r = minimize(&frame, &MinimizerConfig::with_seed(7)).unwrap();
        assert!(r.best_entropy <= 1e-6, "{r:?}");
        assert!(r.overlap >= 0.9999);
    }

    #[test]
    fn scan_has_control_row() {
        let group = g("Z3");
        let config = MinimizerConfig {
            restarts: 4,
            ..MinimizerConfig::with_seed(1)
        };
        let rows = scan_fiducials(&group, &group.whole(), 2, &config).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].fiducial_kind, "vacuum");
        assert!(rows[0].best_entropy <= 1e-6);
        assert!(rows.iter().all(|r| r.best_entropy >= -1e-9));
    }
}

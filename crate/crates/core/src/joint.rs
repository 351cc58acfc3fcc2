//! Joint estimation across K categories: LLA outer loop with the group
//! penalty `lambda * sum_{j<j'} sqrt(sum_k |theta_jj'^(k)|)`, the closed-form
//! penalty factorization, and KKT stationarity diagnostics.
//!
//! Each LLA iteration linearizes the concave square-root penalty at the
//! current estimates, giving per-edge weights `1 / sqrt(sum_k |theta|)` and K
//! decoupled weighted-l1 problems handled by [`crate::solver::fit_weighted`].
//! A fixed point satisfies, per category, the stationarity system
//! `grad l = lambda * sign(theta) / sqrt(sum_k |theta|)` on active edges and
//! the corresponding bound on inactive ones, which is what [`check_kkt`]
//! measures.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    CategoryCollection, InteractionMatrix, PenaltySpec, pseudo_loglik, pseudo_loglik_grad,
};
use crate::num::Scalar;
use crate::solver::{FitResult, SolverOptions, WeightMatrix, fit_weighted};

/// sqrt(sum_k |theta|) is thresholded here before inversion, capping the
/// reweighting at [`crate::solver::WEIGHT_CAP`].
pub const GROUP_SQRT_FLOOR: f64 = 1e-10;

/// Hard cap on LLA outer iterations.
pub const LLA_MAX_ITERS: usize = 50;

/// Options for [`fit_joint`]: inner solver settings plus the LLA loop cap
/// and an escape hatch that stops after the separate-initialization step
/// (used by the `K = 1` reduction checks and the `--no-lla` CLI flag).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointOptions {
    pub solver: SolverOptions,
    pub max_lla_iters: usize,
    pub lla: bool,
}

impl Default for JointOptions {
    fn default() -> Self {
        Self {
            solver: SolverOptions::default(),
            max_lla_iters: LLA_MAX_ITERS,
            lla: true,
        }
    }
}

/// Where a KKT violation was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KktConditionKind {
    /// Active edge failing the sign-equality condition.
    ActiveEquality,
    /// Zero edge whose gradient exceeds the group bound.
    InactiveBound,
    /// Main-effect gradient not stationary.
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KktViolation {
    pub category: usize,
    pub row: usize,
    pub col: usize,
    pub kind: KktConditionKind,
    pub magnitude: f64,
}

/// Stationarity diagnostics for a fitted joint model. `max_residuals` holds,
/// per category, the max over off-diagonal edges of the equality-condition
/// gap (active edges) or bound excess (inactive edges); diagonal stationarity
/// is reported through the violation list only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KktReport {
    pub max_residuals: Vec<f64>,
    pub violations: Vec<KktViolation>,
    pub tol: f64,
}

impl KktReport {
    pub fn worst_residual(&self) -> f64 {
        self.max_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// K fitted interaction matrices plus the fitting trace.
#[derive(Debug, Clone)]
pub struct JointModel<F: Scalar> {
    pub thetas: Vec<InteractionMatrix<F>>,
    pub labels: Vec<String>,
    pub penalty: PenaltySpec,
    pub lla_iterations: usize,
    /// Joint criterion after initialization and after each LLA iteration.
    pub objective_trace: Vec<F>,
    pub kkt_report: KktReport,
    pub seed: Option<u64>,
}

impl<F: Scalar> JointModel<F> {
    pub fn k(&self) -> usize {
        self.thetas.len()
    }

    pub fn p(&self) -> usize {
        self.thetas[0].p()
    }
}

/// Closed-form factorization of one edge group: the minimizer of
/// `eta1 * phi + eta2 * sum_k |gamma_k|` subject to `phi * gamma_k = theta_k`
/// and `phi >= 0`, attaining `2 * sqrt(eta1 * eta2 * sum_k |theta_k|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationResult<F: Scalar> {
    pub phi: F,
    pub gammas: Vec<F>,
    pub eta1: F,
    pub eta2: F,
}

impl<F: Scalar> FactorizationResult<F> {
    /// eta1 * phi + eta2 * sum_k |gamma_k|.
    pub fn penalty_value(&self) -> F {
        let gsum = self
            .gammas
            .iter()
            .map(|g| g.abs())
            .fold(F::zero(), |a, b| a + b);
        self.eta1 * self.phi + self.eta2 * gsum
    }
}

fn check_same_dims<F: Scalar>(thetas: &[InteractionMatrix<F>]) -> Result<usize> {
    if thetas.is_empty() {
        return Err(Error::InvalidArgument("need at least one matrix".into()));
    }
    let p = thetas[0].p();
    for (k, t) in thetas.iter().enumerate() {
        if t.p() != p {
            return Err(Error::DimensionMismatch {
                context: format!("theta matrix {k}"),
                expected: p,
                found: t.p(),
            });
        }
    }
    Ok(p)
}

/// Group penalty `lambda * sum_{j<j'} sqrt(sum_k |theta_jj'^(k)|)`; the sum
/// inside the square root is an l1 sum, not a Euclidean norm, and the
/// diagonal is excluded.
pub fn group_penalty<F: Scalar>(thetas: &[InteractionMatrix<F>], lambda: f64) -> Result<F> {
    let p = check_same_dims(thetas)?;
    let mut total = F::zero();
    for j in 0..p {
        for l in (j + 1)..p {
            let u: F = thetas
                .iter()
                .map(|t| t.get(j, l).abs())
                .fold(F::zero(), |a, b| a + b);
            total += u.sqrt();
        }
    }
    Ok(F::from_f64(lambda) * total)
}

/// LLA weights `w_jj' = 1 / max(sqrt(sum_k |theta_jj'|), 1e-10)`.
pub fn lla_weights<F: Scalar>(thetas: &[InteractionMatrix<F>]) -> Result<WeightMatrix<F>> {
    let p = check_same_dims(thetas)?;
    let floor = F::from_f64(GROUP_SQRT_FLOOR);
    let mut w = WeightMatrix::zeros(p);
    for j in 0..p {
        for l in (j + 1)..p {
            let u: F = thetas
                .iter()
                .map(|t| t.get(j, l).abs())
                .fold(F::zero(), |a, b| a + b);
            w.set(j, l, F::one() / u.sqrt().max(floor));
        }
    }
    Ok(w)
}

/// The criterion the LLA loop ascends and [`check_kkt`] characterizes:
/// `sum_k l_k - 2 * lambda * sum_{j<j'} sqrt(sum_k |theta|) - ridge`.
///
/// The weighted subproblem penalty `(lambda / sqrt(u_t)) * u` is the tangent
/// majorant of `2 * lambda * sqrt(u)` at `u_t`, so this value is
/// nondecreasing across LLA iterations, and its stationary points satisfy
/// `grad l = lambda * sign(theta) / sqrt(u)` exactly.
pub fn joint_objective<F: Scalar>(
    collection: &CategoryCollection,
    thetas: &[InteractionMatrix<F>],
    penalty: &PenaltySpec,
) -> Result<F> {
    if thetas.len() != collection.k() {
        return Err(Error::DimensionMismatch {
            context: "joint_objective".into(),
            expected: collection.k(),
            found: thetas.len(),
        });
    }
    let p = check_same_dims(thetas)?;
    let mut total = F::zero();
    for (k, theta) in thetas.iter().enumerate() {
        total += pseudo_loglik(collection.category(k), theta)?;
    }
    total -= F::from_f64(2.0) * group_penalty(thetas, penalty.lambda)?;
    if penalty.lambda2 > 0.0 {
        let lam2 = F::from_f64(penalty.lambda2);
        for theta in thetas {
            for j in 0..p {
                for l in (j + 1)..p {
                    let t = theta.get(j, l);
                    total -= lam2 * t * t;
                }
            }
        }
    }
    Ok(total)
}

fn fit_all_categories<F: Scalar>(
    collection: &CategoryCollection,
    penalty: &PenaltySpec,
    weights: &WeightMatrix<F>,
    inits: &[InteractionMatrix<F>],
    opts: &SolverOptions,
) -> Result<Vec<FitResult<F>>> {
    collection
        .categories()
        .par_iter()
        .enumerate()
        .map(|(k, data)| {
            fit_weighted(data, penalty, weights, &inits[k], opts).map_err(|e| e.in_category(k))
        })
        .collect()
}

/// Joint fit: separate-estimation initialization (uniform weights at the
/// same lambda), then LLA reweighting until the estimates stabilize.
pub fn fit_joint<F: Scalar>(
    collection: &CategoryCollection,
    penalty: &PenaltySpec,
    opts: &JointOptions,
) -> Result<JointModel<F>> {
    opts.solver.validate()?;
    if opts.max_lla_iters == 0 {
        return Err(Error::InvalidArgument(
            "max_lla_iters must be positive".into(),
        ));
    }
    let p = collection.p();
    let zeros: Vec<InteractionMatrix<F>> = (0..collection.k())
        .map(|_| InteractionMatrix::zeros(p))
        .collect();
    let uniform = WeightMatrix::uniform(p);
    let init_fits = fit_all_categories(collection, penalty, &uniform, &zeros, &opts.solver)?;
    let mut thetas: Vec<InteractionMatrix<F>> = init_fits.into_iter().map(|f| f.theta).collect();

    let mut trace = vec![joint_objective(collection, &thetas, penalty)?];
    let tol = F::from_f64(opts.solver.tol);
    let mut lla_iterations = 0;

    if opts.lla {
        for _ in 0..opts.max_lla_iters {
            let weights = lla_weights(&thetas)?;
            let fits = fit_all_categories(collection, penalty, &weights, &thetas, &opts.solver)?;
            let new_thetas: Vec<InteractionMatrix<F>> =
                fits.into_iter().map(|f| f.theta).collect();
            let change = new_thetas
                .iter()
                .zip(thetas.iter())
                .map(|(a, b)| a.max_abs_diff(b))
                .fold(F::zero(), F::max);
            thetas = new_thetas;
            trace.push(joint_objective(collection, &thetas, penalty)?);
            lla_iterations += 1;
            if change < tol {
                break;
            }
        }
    }

    let mut model = JointModel {
        thetas,
        labels: collection.labels().to_vec(),
        penalty: *penalty,
        lla_iterations,
        objective_trace: trace,
        kkt_report: KktReport {
            max_residuals: vec![],
            violations: vec![],
            tol: 0.0,
        },
        seed: None,
    };
    model.kkt_report = check_kkt(&model, collection, opts.solver.tol * 10.0)?;
    Ok(model)
}

/// The separate-estimation baseline: per-category weighted fits with uniform
/// weights and no reweighting. The trace holds the summed per-category
/// penalized criteria of the fits.
pub fn fit_separate<F: Scalar>(
    collection: &CategoryCollection,
    penalty: &PenaltySpec,
    opts: &SolverOptions,
) -> Result<JointModel<F>> {
    opts.validate()?;
    let p = collection.p();
    let zeros: Vec<InteractionMatrix<F>> = (0..collection.k())
        .map(|_| InteractionMatrix::zeros(p))
        .collect();
    let uniform = WeightMatrix::uniform(p);
    let fits = fit_all_categories(collection, penalty, &uniform, &zeros, opts)?;
    let total = fits
        .iter()
        .map(|f| f.objective)
        .fold(F::zero(), |a, b| a + b);
    let thetas = fits.into_iter().map(|f| f.theta).collect();
    let mut model = JointModel {
        thetas,
        labels: collection.labels().to_vec(),
        penalty: *penalty,
        lla_iterations: 0,
        objective_trace: vec![total],
        kkt_report: KktReport {
            max_residuals: vec![],
            violations: vec![],
            tol: 0.0,
        },
        seed: None,
    };
    model.kkt_report = weighted_report(&model, collection, opts.tol * 10.0)?;
    Ok(model)
}

/// KKT report for the separate baseline: per-category uniform-weight
/// subgradient residuals (no group coupling).
fn weighted_report<F: Scalar>(
    model: &JointModel<F>,
    collection: &CategoryCollection,
    tol: f64,
) -> Result<KktReport> {
    let uniform = WeightMatrix::uniform(model.p());
    let residuals: Vec<f64> = (0..model.k())
        .map(|k| {
            crate::solver::weighted_kkt_residual(
                collection.category(k),
                &model.penalty,
                &uniform,
                &model.thetas[k],
            )
            .map(|r| r.as_f64())
        })
        .collect::<Result<_>>()?;
    Ok(KktReport {
        max_residuals: residuals,
        violations: vec![],
        tol,
    })
}

/// Stationarity check of the group-penalized criterion: on active edges
/// `grad l - 2*lambda2*theta` must equal `lambda * sign(theta) / sqrt(u)`
/// with `u = sum_k |theta_jj'|`; on inactive edges its magnitude must stay
/// below `lambda / sqrt(u)` (vacuous when the whole group is zero). Diagonal
/// main effects must have vanishing gradient; they enter the violation list
/// but not the per-category residual.
pub fn check_kkt<F: Scalar>(
    model: &JointModel<F>,
    collection: &CategoryCollection,
    tol: f64,
) -> Result<KktReport> {
    if model.k() != collection.k() {
        return Err(Error::DimensionMismatch {
            context: "check_kkt categories".into(),
            expected: collection.k(),
            found: model.k(),
        });
    }
    let p = model.p();
    let kk = model.k();
    let lam = model.penalty.lambda;
    let lam2 = model.penalty.lambda2;
    let grads: Vec<InteractionMatrix<F>> = (0..kk)
        .map(|k| pseudo_loglik_grad(collection.category(k), &model.thetas[k]))
        .collect::<Result<_>>()?;

    let mut max_residuals = vec![0.0f64; kk];
    let mut violations = Vec::new();
    for j in 0..p {
        for l in (j + 1)..p {
            let u: f64 = (0..kk)
                .map(|k| model.thetas[k].get(j, l).abs().as_f64())
                .sum();
            for k in 0..kk {
                let t = model.thetas[k].get(j, l).as_f64();
                let g = grads[k].get(j, l).as_f64() - 2.0 * lam2 * t;
                let r = if t != 0.0 {
                    let target = lam * t.signum() / u.sqrt();
                    let gap = (g - target).abs();
                    if gap > tol {
                        violations.push(KktViolation {
                            category: k,
                            row: j,
                            col: l,
                            kind: KktConditionKind::ActiveEquality,
                            magnitude: gap,
                        });
                    }
                    gap
                } else if u > 0.0 {
                    let excess = (g.abs() - lam / u.sqrt()).max(0.0);
                    if excess > tol {
                        violations.push(KktViolation {
                            category: k,
                            row: j,
                            col: l,
                            kind: KktConditionKind::InactiveBound,
                            magnitude: excess,
                        });
                    }
                    excess
                } else {
                    // Whole group at zero: the bound is infinite.
                    0.0
                };
                if r > max_residuals[k] {
                    max_residuals[k] = r;
                }
            }
        }
    }
    for k in 0..kk {
        for j in 0..p {
            if model.thetas[k].get(j, j).abs().as_f64() >= crate::solver::MAIN_EFFECT_CLAMP {
                continue; // clamp active, stationarity does not apply
            }
            let g = grads[k].get(j, j).as_f64();
            if g.abs() >= tol {
                violations.push(KktViolation {
                    category: k,
                    row: j,
                    col: j,
                    kind: KktConditionKind::Diagonal,
                    magnitude: g.abs(),
                });
            }
        }
    }
    violations.sort_by(|a, b| b.magnitude.total_cmp(&a.magnitude));
    Ok(KktReport {
        max_residuals,
        violations,
        tol,
    })
}

/// Closed-form minimizer of `eta1 * phi + eta2 * sum_k |gamma_k|` subject to
/// `phi * gamma_k = theta_k`, `phi >= 0`. The all-zero group returns the
/// canonical zero factorization.
pub fn factorize_penalty<F: Scalar>(
    theta_values: &[F],
    eta1: F,
    eta2: F,
) -> Result<FactorizationResult<F>> {
    if !(eta1 > F::zero()) || !(eta2 > F::zero()) {
        return Err(Error::InvalidArgument(
            "eta1 and eta2 must be positive".into(),
        ));
    }
    let u: F = theta_values
        .iter()
        .map(|t| t.abs())
        .fold(F::zero(), |a, b| a + b);
    if u == F::zero() {
        return Ok(FactorizationResult {
            phi: F::zero(),
            gammas: vec![F::zero(); theta_values.len()],
            eta1,
            eta2,
        });
    }
    let phi = (eta2 * u / eta1).sqrt();
    let gammas = theta_values.iter().map(|&t| t / phi).collect();
    Ok(FactorizationResult {
        phi,
        gammas,
        eta1,
        eta2,
    })
}

//! Numeric norms of the Nijenhuis tensor, decay sweeps over t with rate
//! fitting, and projected gradient descent on {J : J^2 = -I} minimizing
//! ||N_J|| -- the search procedure that turns up families like the shipped
//! ones in the first place.
//!
//! Everything here works on float algebras; symbolic parameters (k, the
//! lambdas) must be specialized before optimizing. Sweep norms, by contrast,
//! are evaluated through the exact layer at rational sample points and only
//! converted to floats at the end, so decay fits are immune to the roundoff
//! the unreduced symbolic fractions would otherwise cause.

use crate::acstruct::{catalog_family, check_acs_f64, nijenhuis, nijenhuis_f64, AcsError, DecayKind};
use crate::liealg::{FloatLieAlgebra, LieError};
use crate::scalar::{Indeterminate, Rational, ScalarError};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumOptError {
    #[error("J is not almost complex within tolerance")]
    NotAlmostComplex,
    #[error("retraction failed: square-root iteration did not converge")]
    RetractionFailure,
    #[error("only {valid} valid sweep points (need at least {needed})")]
    TooFewPoints { valid: usize, needed: usize },
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Acs(#[from] AcsError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormKind {
    /// sqrt of the sum of squared components N^k_{ij} over i < j, with the
    /// declared basis orthonormal.
    Frobenius,
    /// Max of |N(x, y)| over sampled unit pairs; a lower bound on the true
    /// operator norm. At least 100 samples.
    OperatorSampled { samples: usize },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct NormConfig {
    pub kind: NormKind,
    pub seed: u64,
}

impl Default for NormConfig {
    fn default() -> Self {
        Self {
            kind: NormKind::Frobenius,
            seed: 0,
        }
    }
}

/// Norm of a componentwise tensor N^k_{ij} given on pairs i < j.
fn norm_from_components(
    n: usize,
    comps: &[((usize, usize), Vec<f64>)],
    cfg: &NormConfig,
) -> Result<f64, NumOptError> {
    match cfg.kind {
        NormKind::Frobenius => {
            let sum: f64 = comps
                .iter()
                .flat_map(|(_, v)| v.iter())
                .map(|x| x * x)
                .sum();
            Ok(sum.sqrt())
        }
        NormKind::OperatorSampled { samples } => {
            if samples < 100 {
                return Err(NumOptError::BadConfig(format!(
                    "operator_sampled needs at least 100 samples, got {samples}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let unit = |rng: &mut ChaCha8Rng| -> Vec<f64> {
                loop {
                    let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-3 {
                        return v.iter().map(|x| x / norm).collect();
                    }
                }
            };
            let mut best = 0.0f64;
            for _ in 0..samples {
                let x = unit(&mut rng);
                let y = unit(&mut rng);
                // N(x, y)_m = sum_{i<j} N^m_{ij} (x_i y_j - x_j y_i).
                let mut val = vec![0.0f64; n];
                for ((i, j), comp) in comps {
                    let w = x[*i] * y[*j] - x[*j] * y[*i];
                    for m in 0..n {
                        val[m] += comp[m] * w;
                    }
                }
                best = best.max(val.iter().map(|v| v * v).sum::<f64>().sqrt());
            }
            Ok(best)
        }
    }
}

/// Norm of the Nijenhuis tensor of (g, J); J must be almost complex.
pub fn nijenhuis_norm(
    g: &FloatLieAlgebra,
    j: &DMatrix<f64>,
    cfg: &NormConfig,
) -> Result<f64, NumOptError> {
    if !check_acs_f64(j, 1e-8)? {
        return Err(NumOptError::NotAlmostComplex);
    }
    let comps = nijenhuis_f64(g, j)?;
    norm_from_components(g.dim(), &comps, cfg)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FitReport {
    pub model: DecayKind,
    /// Slope of log ||N|| against log t (power model) or t (exponential).
    pub rate: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub family: String,
    pub t_grid: Vec<f64>,
    pub norms: Vec<f64>,
    /// Grid points skipped because a formula had a pole there.
    pub skipped: Vec<f64>,
    pub fit: FitReport,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}

/// Evaluate ||N_t|| for a catalog family on a geometric t-grid and fit the
/// decay rate under the family's declared model. Norms are computed through
/// exact rational specialization of the symbolic tensor.
pub fn sweep(
    family: &str,
    t_min: f64,
    t_max: f64,
    points: usize,
    cfg: &NormConfig,
    params: &BTreeMap<Indeterminate, Rational>,
) -> Result<SweepReport, NumOptError> {
    if !(t_min.is_finite() && t_max.is_finite() && 0.0 < t_min && t_min < t_max) {
        return Err(NumOptError::BadConfig(
            "need finite 0 < t_min < t_max".into(),
        ));
    }
    if points < 8 {
        return Err(NumOptError::BadConfig(format!(
            "need at least 8 sweep points, got {points}"
        )));
    }
    let fam = catalog_family(family)?;
    let n = fam.algebra.dim();
    let tensor = nijenhuis(&fam.algebra, &fam.j)?;
    let pairs: Vec<(usize, usize)> = tensor.pairs().collect();

    let ratio = t_max / t_min;
    let mut t_grid = Vec::new();
    let mut norms = Vec::new();
    let mut skipped = Vec::new();
    'grid: for step in 0..points {
        let t = t_min * ratio.powf(step as f64 / (points - 1) as f64);
        let mut b = params.clone();
        b.insert(Indeterminate::T, Rational::from_float(t).expect("finite t"));
        if let Some(s) = Rational::from_float(t.sinh()) {
            b.insert(Indeterminate::S, s);
        }
        let mut comps = Vec::new();
        for &(i, j) in &pairs {
            let mut vals = Vec::with_capacity(n);
            for s in tensor.component(i, j) {
                match s.specialize(&b) {
                    Ok(v) => vals.push(v.to_f64_constant().ok_or_else(|| {
                        ScalarError::UnboundIndeterminate(
                            s.vars_present()
                                .iter()
                                .find(|v| !b.contains_key(v))
                                .map(|v| v.symbol())
                                .unwrap_or("t"),
                        )
                    })?),
                    Err(ScalarError::PoleError) => {
                        skipped.push(t);
                        continue 'grid;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            comps.push(((i, j), vals));
        }
        t_grid.push(t);
        norms.push(norm_from_components(n, &comps, cfg)?);
    }
    if t_grid.len() < 8 {
        return Err(NumOptError::TooFewPoints {
            valid: t_grid.len(),
            needed: 8,
        });
    }

    let xs: Vec<f64> = match fam.decay_kind {
        DecayKind::PowerInT => t_grid.iter().map(|t| t.ln()).collect(),
        DecayKind::ExponentialInT => t_grid.clone(),
    };
    let ys: Vec<f64> = norms.iter().map(|v| v.ln()).collect();
    let (rate, intercept, r_squared) = least_squares(&xs, &ys);
    Ok(SweepReport {
        family: family.to_string(),
        t_grid,
        norms,
        skipped,
        fit: FitReport {
            model: fam.decay_kind,
            rate,
            intercept,
            r_squared,
        },
    })
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

/// Retraction onto {J : J^2 = -I}: J = A (-A^2)^{-1/2}, with the inverse
/// square root from the Denman-Beavers iteration. Fixed point on matrices
/// that already square to -I.
pub fn project_to_acs(a: &DMatrix<f64>) -> Result<DMatrix<f64>, NumOptError> {
    let n = a.nrows();
    if n != a.ncols() || n % 2 != 0 {
        return Err(NumOptError::BadConfig(format!(
            "retraction needs an even-dimensional square matrix, got {n}x{}",
            a.ncols()
        )));
    }
    let m = -(a * a);
    let id = DMatrix::identity(n, n);
    let mut y = m.clone();
    let mut z = id.clone();
    for _ in 0..100 {
        let yi = y.clone().try_inverse().ok_or(NumOptError::RetractionFailure)?;
        let zi = z.clone().try_inverse().ok_or(NumOptError::RetractionFailure)?;
        let y_next = (&y + &zi) * 0.5;
        let z_next = (&z + &yi) * 0.5;
        let delta = max_abs(&(&y_next - &y));
        y = y_next;
        z = z_next;
        if !delta.is_finite() {
            return Err(NumOptError::RetractionFailure);
        }
        if delta <= 1e-14 * (1.0 + max_abs(&y)) {
            break;
        }
    }
    // z is now (-A^2)^{-1/2}.
    let j = a * z;
    if max_abs(&(&j * &j + &id)) > 1e-10 {
        return Err(NumOptError::RetractionFailure);
    }
    Ok(j)
}

/// f(J) = ||N_J||^2 in the Frobenius norm; defined for arbitrary matrices.
fn objective(g: &FloatLieAlgebra, j: &DMatrix<f64>) -> f64 {
    let comps = nijenhuis_f64(g, j).expect("matching dimensions");
    comps
        .iter()
        .flat_map(|(_, v)| v.iter())
        .map(|x| x * x)
        .sum()
}

/// Central finite-difference gradient of f in the full matrix space.
fn fd_gradient(g: &FloatLieAlgebra, j: &DMatrix<f64>) -> DMatrix<f64> {
    let n = j.nrows();
    let mut grad = DMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let h = 1e-6 * (1.0 + j[(r, c)].abs());
            let mut jp = j.clone();
            jp[(r, c)] += h;
            let mut jm = j.clone();
            jm[(r, c)] -= h;
            grad[(r, c)] = (objective(g, &jp) - objective(g, &jm)) / (2.0 * h);
        }
    }
    grad
}

/// Frobenius-orthogonal projector onto the tangent space
/// {A : AJ + JA = 0} of the constraint J^2 = -I at a given J.
///
/// The spectral projector (A + JAJ)/2 lands in the right subspace but is
/// orthogonal only when J is antisymmetric; gradient descent needs the true
/// orthogonal projection, so this builds it from the vectorized constraint
/// map L(A) = AJ + JA as I - L^+ L (pseudo-inverse via SVD).
pub struct TangentProjector {
    n: usize,
    p: DMatrix<f64>,
}

impl TangentProjector {
    pub fn new(j: &DMatrix<f64>) -> Self {
        let n = j.nrows();
        let nn = n * n;
        // Column-major vec: entry (r, c) sits at index c*n + r.
        // (AJ + JA)[p][q] = sum_s A[p][s] J[s][q] + sum_r J[p][r] A[r][q].
        let mut l: DMatrix<f64> = DMatrix::zeros(nn, nn);
        for p in 0..n {
            for q in 0..n {
                let row = q * n + p;
                for s in 0..n {
                    l[(row, s * n + p)] += j[(s, q)];
                }
                for r in 0..n {
                    l[(row, q * n + r)] += j[(p, r)];
                }
            }
        }
        let svd = nalgebra::SVD::new(l.clone(), true, true);
        let smax: f64 = svd.singular_values.max();
        let pinv = svd
            .pseudo_inverse(1e-12 * smax.max(1.0))
            .expect("SVD computed with both factors");
        let p = DMatrix::identity(nn, nn) - pinv * l;
        Self { n, p }
    }

    pub fn apply(&self, a: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.n;
        let v = DMatrix::from_iterator(n * n, 1, a.iter().copied());
        let w = &self.p * v;
        DMatrix::from_iterator(n, n, w.iter().copied())
    }
}

/// One-shot orthogonal tangent projection; see [`TangentProjector`].
pub fn tangent_project(j: &DMatrix<f64>, a: &DMatrix<f64>) -> DMatrix<f64> {
    TangentProjector::new(j).apply(a)
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentState {
    pub iteration: usize,
    pub objective: f64,
    pub step: f64,
    pub grad_norm: f64,
    #[serde(skip)]
    pub j: DMatrix<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Termination {
    GradientBelowTol,
    ObjectiveBelowTol,
    MaxIters,
    LineSearchStall,
    RetractionFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub states: Vec<DescentState>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn final_state(&self) -> &DescentState {
        self.states.last().expect("trajectory is never empty")
    }
}

/// Projected gradient descent on {J : J^2 = -I} minimizing ||N_J||^2 with
/// Armijo backtracking (factor 0.5, c = 1e-4) and the square-root retraction
/// after every trial step. Accepted objectives are nonincreasing.
pub fn descend(
    g: &FloatLieAlgebra,
    j0: &DMatrix<f64>,
    max_iters: usize,
    step0: f64,
    tol: f64,
) -> Result<Trajectory, NumOptError> {
    const ARMIJO_C: f64 = 1e-4;
    let mut j = project_to_acs(j0)?;
    let mut states = Vec::new();
    let mut obj = objective(g, &j);
    for iteration in 0..=max_iters {
        let grad = TangentProjector::new(&j).apply(&fd_gradient(g, &j));
        let grad_norm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
        states.push(DescentState {
            iteration,
            objective: obj,
            step: 0.0,
            grad_norm,
            j: j.clone(),
        });
        if obj < tol * tol {
            return Ok(Trajectory {
                states,
                termination: Termination::ObjectiveBelowTol,
            });
        }
        if grad_norm < tol {
            return Ok(Trajectory {
                states,
                termination: Termination::GradientBelowTol,
            });
        }
        if iteration == max_iters {
            break;
        }

        let mut alpha = step0;
        let mut accepted = false;
        for _ in 0..60 {
            let trial = &j - &grad * alpha;
            match project_to_acs(&trial) {
                Ok(jt) => {
                    let ft = objective(g, &jt);
                    if ft <= obj - ARMIJO_C * alpha * grad_norm * grad_norm {
                        j = jt;
                        obj = ft;
                        states.last_mut().expect("just pushed").step = alpha;
                        accepted = true;
                        break;
                    }
                }
                Err(NumOptError::RetractionFailure) => {
                    // Stepped off the retractable region; shrink and retry.
                }
                Err(e) => return Err(e),
            }
            alpha *= 0.5;
        }
        if !accepted {
            return Ok(Trajectory {
                states,
                termination: Termination::LineSearchStall,
            });
        }
    }
    Ok(Trajectory {
        states,
        termination: Termination::MaxIters,
    })
}

/// Compare the projected finite-difference gradient against directional
/// secants through the retraction along seeded random tangent directions;
/// returns the max relative mismatch.
pub fn gradient_check(
    g: &FloatLieAlgebra,
    j: &DMatrix<f64>,
    directions: usize,
    seed: u64,
) -> Result<f64, NumOptError> {
    let n = g.dim();
    let j = project_to_acs(j)?;
    let proj = TangentProjector::new(&j);
    let grad = proj.apply(&fd_gradient(g, &j));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..directions {
        let raw = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let mut a = proj.apply(&raw);
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue; // degenerate direction, skipped
        }
        a /= norm;
        let predicted: f64 = grad.iter().zip(a.iter()).map(|(g, a)| g * a).sum();
        let h = 1e-6;
        let fp = objective(g, &project_to_acs(&(&j + &a * h))?);
        let fm = objective(g, &project_to_acs(&(&j - &a * h))?);
        let secant = (fp - fm) / (2.0 * h);
        let scale = predicted.abs().max(secant.abs());
        let err = if scale < 1e-9 {
            (predicted - secant).abs()
        } else {
            (predicted - secant).abs() / scale
        };
        worst = worst.max(err);
    }
    Ok(worst)
}

/// JSON lines: one record per grid point, then a summary with the fit.
pub fn sweep_jsonl(report: &SweepReport) -> String {
    let mut out = String::new();
    for (t, norm) in report.t_grid.iter().zip(&report.norms) {
        out.push_str(&serde_json::json!({"t": t, "norm": norm}).to_string());
        out.push('\n');
    }
    out.push_str(
        &serde_json::json!({
            "family": report.family,
            "fit": report.fit,
            "skipped": report.skipped,
        })
        .to_string(),
    );
    out.push('\n');
    out
}

/// JSON lines: one record per iteration, then a termination summary.
pub fn trajectory_jsonl(traj: &Trajectory) -> String {
    let mut out = String::new();
    for s in &traj.states {
        out.push_str(
            &serde_json::json!({
                "iter": s.iteration,
                "objective": s.objective,
                "step": s.step,
                "grad_norm": s.grad_norm,
            })
            .to_string(),
        );
        out.push('\n');
    }
    out.push_str(
        &serde_json::json!({
            "termination": traj.termination,
            "iterations": traj.states.len() - 1,
            "final_objective": traj.final_state().objective,
        })
        .to_string(),
    );
    out.push('\n');
    out
}

/// The standard block structure J0 (pairs of basis vectors rotated).
pub fn standard_j0(n: usize) -> DMatrix<f64> {
    assert!(n % 2 == 0, "J0 needs even dimension");
    let mut j = DMatrix::zeros(n, n);
    for b in 0..n / 2 {
        j[(2 * b + 1, 2 * b)] = 1.0;
        j[(2 * b, 2 * b + 1)] = -1.0;
    }
    j
}

/// A seeded random almost complex structure: conjugate of J0 by a random
/// perturbation of the identity.
pub fn random_acs(n: usize, seed: u64) -> Result<DMatrix<f64>, NumOptError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let p = DMatrix::identity(n, n)
            + DMatrix::from_fn(n, n, |_, _| rng.gen_range(-0.3..0.3));
        if let Some(pi) = p.clone().try_inverse() {
            let j = &pi * standard_j0(n) * &p;
            if let Ok(j) = project_to_acs(&j) {
                return Ok(j);
            }
        }
    }
    Err(NumOptError::RetractionFailure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog_algebra;
    use crate::scalar::{evaluate_f64, rat, time_bindings};

    fn float_algebra(name: &str) -> FloatLieAlgebra {
        let g = catalog_algebra(name).unwrap();
        let g = match name {
            "fg_solv" => {
                let mut at = BTreeMap::new();
                at.insert(Indeterminate::K, rat(1, 1));
                g.specialize(&at)
            }
            "hasegawa" => {
                let mut at = BTreeMap::new();
                at.insert(Indeterminate::L1, rat(7, 10));
                at.insert(Indeterminate::L2, rat(-1, 5));
                g.specialize(&at)
            }
            _ => g,
        };
        g.to_float().unwrap()
    }

    #[test]
    fn abelian_norm_is_zero() {
        let g = crate::liealg::LieAlgebra::abelian(4).to_float().unwrap();
        let norm = nijenhuis_norm(&g, &standard_j0(4), &NormConfig::default()).unwrap();
        assert_eq!(norm, 0.0);
    }

    #[test]
    fn frobenius_matches_reference_formulas() {
        // At t = asinh(1) evaluate the shipped filiform4 reference components
        // directly and compare against nijenhuis_norm on the float algebra.
        let t = 1.0f64.asinh();
        let fam = crate::acstruct::catalog_family("filiform4").unwrap();
        let b = time_bindings(t);
        let mut sum = 0.0;
        for (i, j) in fam.reference_n.pairs() {
            for s in fam.reference_n.component(i, j) {
                let v = evaluate_f64(&s, &b).unwrap();
                sum += v * v;
            }
        }
        let g = float_algebra("filiform4");
        let jf = fam.j.to_f64(&b).unwrap();
        let norm = nijenhuis_norm(&g, &jf, &NormConfig::default()).unwrap();
        assert!((norm - sum.sqrt()).abs() <= 1e-9 * sum.sqrt().max(1.0));
    }

    #[test]
    fn operator_sampled_below_frobenius() {
        let g = float_algebra("filiform4");
        for seed in 0..20 {
            let j = random_acs(4, seed).unwrap();
            let fro = nijenhuis_norm(&g, &j, &NormConfig::default()).unwrap();
            let op = nijenhuis_norm(
                &g,
                &j,
                &NormConfig {
                    kind: NormKind::OperatorSampled { samples: 200 },
                    seed,
                },
            )
            .unwrap();
            assert!(op <= fro + 1e-12, "seed {seed}: op {op} > fro {fro}");
        }
    }

    #[test]
    fn operator_sampled_rejects_tiny_sample_counts() {
        let g = float_algebra("filiform4");
        let err = nijenhuis_norm(
            &g,
            &standard_j0(4),
            &NormConfig {
                kind: NormKind::OperatorSampled { samples: 10 },
                seed: 0,
            },
        );
        assert!(matches!(err, Err(NumOptError::BadConfig(_))));
    }

    #[test]
    fn sweep_filiform6_power_rate() {
        let report = sweep(
            "filiform6",
            100.0,
            10_000.0,
            12,
            &NormConfig::default(),
            &BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(report.fit.model, DecayKind::PowerInT);
        assert!((report.fit.rate + 1.0).abs() <= 0.1, "rate {}", report.fit.rate);
        assert!(report.fit.r_squared >= 0.999);
    }

    #[test]
    fn sweep_filiform4_exponential_rate() {
        let report = sweep(
            "filiform4",
            5.0,
            20.0,
            12,
            &NormConfig::default(),
            &BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(report.fit.model, DecayKind::ExponentialInT);
        assert!((report.fit.rate + 1.0).abs() <= 0.05, "rate {}", report.fit.rate);
        assert!(report.fit.r_squared >= 0.999);
    }

    #[test]
    fn sweep_needs_parameters_bound() {
        let err = sweep(
            "fg_solv",
            100.0,
            10_000.0,
            12,
            &NormConfig::default(),
            &BTreeMap::new(),
        );
        assert!(err.is_err());
        let mut params = BTreeMap::new();
        params.insert(Indeterminate::K, rat(1, 1));
        let report = sweep(
            "fg_solv",
            100.0,
            10_000.0,
            12,
            &NormConfig::default(),
            &params,
        )
        .unwrap();
        assert!((report.fit.rate + 1.0).abs() <= 0.1);
    }

    #[test]
    fn retraction_fixed_point_and_scaling() {
        let j0 = standard_j0(4);
        let back = project_to_acs(&j0).unwrap();
        assert!(max_abs(&(&back - &j0)) <= 1e-12);
        let back = project_to_acs(&(&j0 * 2.0)).unwrap();
        assert!(max_abs(&(&back - &j0)) <= 1e-12);
    }

    #[test]
    fn retraction_perturbation_and_idempotence() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let j0 = standard_j0(4);
        let a = &j0 + DMatrix::from_fn(4, 4, |_, _| 0.01 * rng.gen_range(-1.0..1.0));
        let j = project_to_acs(&a).unwrap();
        assert!(max_abs(&(&j * &j + DMatrix::identity(4, 4))) <= 1e-10);
        assert!(max_abs(&(&j - &a)) <= 0.1);
        let again = project_to_acs(&j).unwrap();
        assert!(max_abs(&(&again - &j)) <= 1e-10);
    }

    #[test]
    fn gradient_check_filiform4() {
        let g = float_algebra("filiform4");
        let j = random_acs(4, 7).unwrap();
        let err = gradient_check(&g, &j, 20, 13).unwrap();
        assert!(err <= 1e-5, "gradient mismatch {err}");
    }

    #[test]
    fn gradient_vanishes_on_abelian() {
        let g = crate::liealg::LieAlgebra::abelian(4).to_float().unwrap();
        let err = gradient_check(&g, &standard_j0(4), 5, 1).unwrap();
        assert!(err <= 1e-12);
    }

    #[test]
    fn descent_is_monotone_and_converges_on_filiform4() {
        let g = float_algebra("filiform4");
        let j0 = random_acs(4, 3).unwrap();
        let traj = descend(&g, &j0, 2000, 1.0, 1e-6).unwrap();
        for w in traj.states.windows(2) {
            assert!(w[1].objective <= w[0].objective + 1e-15);
        }
        let initial = traj.states[0].objective;
        let final_obj = traj.final_state().objective;
        assert!(final_obj <= 0.01 * initial, "{final_obj} vs {initial}");
        // Every recorded state sits on the constraint variety.
        for s in &traj.states {
            assert!(max_abs(&(&s.j * &s.j + DMatrix::identity(4, 4))) <= 1e-8);
        }
    }

    #[test]
    fn descent_on_abelian_stops_immediately() {
        let g = crate::liealg::LieAlgebra::abelian(4).to_float().unwrap();
        let traj = descend(&g, &standard_j0(4), 100, 1.0, 1e-8).unwrap();
        assert_eq!(traj.termination, Termination::ObjectiveBelowTol);
        assert_eq!(traj.states.len(), 1);
        assert_eq!(traj.states[0].objective, 0.0);
    }

    #[test]
    fn descent_from_catalog_point_does_not_regress() {
        // J_{t=5} of the filiform4 family is already near-minimal; descent
        // must not increase the objective.
        let fam = crate::acstruct::catalog_family("filiform4").unwrap();
        let b = time_bindings(5.0);
        let j0 = fam.j.to_f64(&b).unwrap();
        let g = float_algebra("filiform4");
        let start = objective(&g, &project_to_acs(&j0).unwrap());
        let traj = descend(&g, &j0, 50, 1.0, 1e-10).unwrap();
        assert!(traj.final_state().objective <= start + 1e-15);
    }

    #[test]
    fn jsonl_outputs_parse_back() {
        let report = sweep(
            "filiform4",
            5.0,
            20.0,
            10,
            &NormConfig::default(),
            &BTreeMap::new(),
        )
        .unwrap();
        let text = sweep_jsonl(&report);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), report.t_grid.len() + 1);
        for line in &lines {
            serde_json::from_str::<serde_json::Value>(line).unwrap();
        }

        let g = float_algebra("filiform4");
        let traj = descend(&g, &random_acs(4, 1).unwrap(), 5, 1.0, 1e-9).unwrap();
        for line in trajectory_jsonl(&traj).lines() {
            serde_json::from_str::<serde_json::Value>(line).unwrap();
        }
    }
}

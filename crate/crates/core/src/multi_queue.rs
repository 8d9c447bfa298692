//! Amplitudes for more than two queues.
//!
//! With an even number of queues the steady state splits into two
//! anti-phase clusters of `N/2` identical queues, which is the two-queue
//! problem with the arrival rate reduced to `λ* = 2λ/N`.
//!
//! With an odd number the clusters have `(N+1)/2` and `(N-1)/2` queues. The
//! larger cluster alternates between `L1` and `U1`, the smaller between
//! `L2` and `U2`, and conservation at the epochs gives
//!
//! ```text
//! ((N+1)/2) U1 + ((N-1)/2) L2 = ρ
//! ((N+1)/2) L1 + ((N-1)/2) U2 = ρ
//! ```
//!
//! which eliminates the second cluster and leaves the pair
//! `U1 = a L1 + b g(L1)`, `L1 = a U1 + b g(U1)`.

use crate::error::{Error, Result};
use crate::params::{ModelParams, SolverConfig};
use crate::scalar::Real;
use crate::two_queue::{
    linear_approx_amplitude, quadratic_approx_amplitude, solve_fixed_point, AmplitudeResult, Method,
};

/// Which two-queue method the even reduction delegates to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvenMethod {
    FixedPoint,
    Linear,
    Quadratic,
}

/// Parameters of the equivalent two-queue system for an even `N`.
pub fn even_reduced_params<T: Real>(params: &ModelParams<T>) -> Result<ModelParams<T>> {
    let n = params.n_queues();
    if !n.is_multiple_of(2) {
        return Err(Error::WrongParity(format!(
            "{n} queues is odd; use odd_solve or odd_linear_approx"
        )));
    }
    let reduced_lambda = T::lit(2.0) * params.lambda() / T::from_count(n);
    ModelParams::new(
        reduced_lambda,
        params.mu(),
        params.theta(),
        2,
        params.delta(),
    )
}

/// Amplitude for an even number of queues via the two-queue reduction.
///
/// `lower`/`upper` are the epoch extremes of each queue, so
/// `lower + upper = 2ρ/N`. Fixed-point results are tagged
/// [`Method::EvenReduction`].
pub fn even_amplitude<T: Real>(
    params: &ModelParams<T>,
    method: EvenMethod,
    cfg: &SolverConfig<T>,
) -> Result<AmplitudeResult<T>> {
    let reduced = even_reduced_params(params)?;
    match method {
        EvenMethod::FixedPoint => {
            let mut r = solve_fixed_point(&reduced, cfg)?;
            r.method = Method::EvenReduction;
            Ok(r)
        }
        EvenMethod::Linear => linear_approx_amplitude(&reduced),
        EvenMethod::Quadratic => quadratic_approx_amplitude(&reduced),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddMethod {
    Nonlinear,
    Linear,
}

impl OddMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            OddMethod::Nonlinear => "nonlinear",
            OddMethod::Linear => "linear",
        }
    }
}

/// Epoch extremes of both clusters for an odd number of queues.
///
/// Cluster 1 holds `(N+1)/2` queues, cluster 2 the remaining `(N-1)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OddAmplitudeResult<T> {
    pub l1: T,
    pub u1: T,
    pub l2: T,
    pub u2: T,
    pub a1: T,
    pub a2: T,
    pub method: OddMethod,
    pub converged: bool,
    pub iterations: usize,
    pub residual_norm: T,
}

impl<T: Real> OddAmplitudeResult<T> {
    /// Completes a cluster-1 pair with the conservation identities.
    fn from_cluster_one(l1: T, u1: T, params: &ModelParams<T>, method: OddMethod) -> Self {
        let n = T::from_count(params.n_queues());
        let two = T::lit(2.0);
        let base = two * params.rho() / (n - T::one());
        let ratio = (n + T::one()) / (n - T::one());
        let l2 = base - ratio * u1;
        let u2 = base - ratio * l1;
        OddAmplitudeResult {
            l1,
            u1,
            l2,
            u2,
            a1: (u1 - l1) / two,
            a2: (u2 - l2) / two,
            method,
            converged: true,
            iterations: 0,
            residual_norm: T::zero(),
        }
    }
}

/// Ingredients of the reduced odd system: `a = e^{-μΔ}`,
/// `b = ρ(1 - e^{-μΔ})` and the effective logit
///
/// ```text
/// g(x) = e^{-θx} / [((N+1)/2) e^{-θx} + ((N-1)/2) e^{-2ρθ/(N-1)} e^{θ(N+1)x/(N-1)}]
/// ```
///
/// with `g(0)` and `g'(0)` precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OddLinearization<T> {
    pub a: T,
    pub b: T,
    pub g0: T,
    pub gp0: T,
    big: T,
    small: T,
    offset: T,
    rate: T,
}

impl<T: Real> OddLinearization<T> {
    pub fn new(params: &ModelParams<T>) -> Result<Self> {
        let n = params.n_queues();
        if n.is_multiple_of(2) {
            return Err(Error::WrongParity(format!(
                "{n} queues is even; use even_amplitude"
            )));
        }
        let nf = T::from_count(n);
        let two = T::lit(2.0);
        let theta = params.theta();
        let rho = params.rho();
        let mut lin = OddLinearization {
            a: params.decay(),
            b: rho * params.relaxation(),
            g0: T::zero(),
            gp0: T::zero(),
            big: (nf + T::one()) / two,
            small: (nf - T::one()) / two,
            offset: -two * rho * theta / (nf - T::one()),
            // e^{-θx} cancels: exponent of the second term is θ(1 + (N+1)/(N-1))x
            rate: theta * two * nf / (nf - T::one()),
        };
        lin.g0 = lin.g(T::zero());
        lin.gp0 = lin.g_prime(T::zero());
        Ok(lin)
    }

    /// `g(x) = 1 / (((N+1)/2) + ((N-1)/2) e^{-2ρθ/(N-1) + 2Nθx/(N-1)})`.
    pub fn g(&self, x: T) -> T {
        T::one() / (self.big + self.small * (self.offset + self.rate * x).exp())
    }

    /// `g'(x) = -(2Nθ/(N-1)) g(x) (1 - ((N+1)/2) g(x))`.
    pub fn g_prime(&self, x: T) -> T {
        let g = self.g(x);
        -self.rate * g * (T::one() - self.big * g)
    }

    fn residuals(&self, l1: T, u1: T) -> (T, T) {
        (
            u1 - self.a * l1 - self.b * self.g(l1),
            l1 - self.a * u1 - self.b * self.g(u1),
        )
    }
}

/// Residuals `(U1 - a L1 - b g(L1), L1 - a U1 - b g(U1))` of the reduced
/// odd system.
pub fn odd_residuals<T: Real>(l1: T, u1: T, params: &ModelParams<T>) -> Result<(T, T)> {
    Ok(OddLinearization::new(params)?.residuals(l1, u1))
}

/// First-order closed form for the odd system.
///
/// Substituting the first equation into the second and linearising about
/// `L1 = 0`:
///
/// ```text
/// L1 ≈ [ab g(0) + b g(b g(0))] / [1 - a² - ab g'(0) - g'(b g(0)) (ab + b² g'(0))]
/// ```
///
/// then `U1 = a L1 + b g(L1)` and the second cluster follows from the
/// conservation identities.
pub fn odd_linear_approx<T: Real>(params: &ModelParams<T>) -> Result<OddAmplitudeResult<T>> {
    let lin = OddLinearization::new(params)?;
    let (a, b) = (lin.a, lin.b);
    let inner = b * lin.g0;
    let numerator = a * b * lin.g0 + b * lin.g(inner);
    let denominator =
        T::one() - a * a - a * b * lin.gp0 - lin.g_prime(inner) * (a * b + b * b * lin.gp0);
    if denominator.abs() <= T::epsilon() * T::lit(16.0) {
        return Err(Error::SingularApproximation {
            denominator: denominator.as_f64(),
        });
    }
    let l1 = numerator / denominator;
    let u1 = a * l1 + b * lin.g(l1);
    Ok(OddAmplitudeResult::from_cluster_one(
        l1,
        u1,
        params,
        OddMethod::Linear,
    ))
}

/// Solves the reduced odd system by damped Newton iteration.
///
/// Seeds are the linear closed form, then the same point with `L1` and `U1`
/// moved 10% apart and 10% together. A seed that converges onto the
/// symmetric solution `L1 = U1 = ρ/N` counts as finding no oscillation; if
/// every seed does so the result has zero amplitude. A result with
/// `converged = false` is returned only when no seed converged.
pub fn odd_solve<T: Real>(
    params: &ModelParams<T>,
    cfg: &SolverConfig<T>,
) -> Result<OddAmplitudeResult<T>> {
    cfg.validate()?;
    let lin = OddLinearization::new(params)?;
    let seed = match odd_linear_approx(params) {
        Ok(r) if r.l1.is_finite() && r.u1.is_finite() => (r.l1, r.u1),
        _ => (T::zero(), lin.b * lin.g0),
    };
    let spread = T::lit(0.1);
    let seeds = [
        seed,
        (seed.0 * (T::one() - spread), seed.1 * (T::one() + spread)),
        (seed.0 * (T::one() + spread), seed.1 * (T::one() - spread)),
    ];

    let level = params.equilibrium_level();
    let symmetric_tol = T::lit(1e-8) * level.max(T::one());
    let mut found_symmetric = false;
    let mut last: Option<NewtonOutcome<T>> = None;
    let mut total_iterations = 0;

    for &(l0, u0) in &seeds {
        let outcome = newton(&lin, l0, u0, cfg);
        total_iterations += outcome.iterations;
        if outcome.converged {
            if (outcome.u1 - outcome.l1).abs() <= symmetric_tol {
                found_symmetric = true;
            } else {
                let (l1, u1) = if outcome.l1 <= outcome.u1 {
                    (outcome.l1, outcome.u1)
                } else {
                    (outcome.u1, outcome.l1)
                };
                let mut r =
                    OddAmplitudeResult::from_cluster_one(l1, u1, params, OddMethod::Nonlinear);
                r.iterations = total_iterations;
                r.residual_norm = outcome.residual_norm;
                return Ok(r);
            }
        }
        last = Some(outcome);
    }

    if found_symmetric {
        let mut r =
            OddAmplitudeResult::from_cluster_one(level, level, params, OddMethod::Nonlinear);
        r.iterations = total_iterations;
        let (r1, r2) = lin.residuals(level, level);
        r.residual_norm = r1.abs().max(r2.abs());
        return Ok(r);
    }

    let outcome = last.expect("at least one seed");
    let mut r =
        OddAmplitudeResult::from_cluster_one(outcome.l1, outcome.u1, params, OddMethod::Nonlinear);
    r.converged = false;
    r.iterations = total_iterations;
    r.residual_norm = outcome.residual_norm;
    Ok(r)
}

struct NewtonOutcome<T> {
    l1: T,
    u1: T,
    residual_norm: T,
    iterations: usize,
    converged: bool,
}

fn newton<T: Real>(
    lin: &OddLinearization<T>,
    l0: T,
    u0: T,
    cfg: &SolverConfig<T>,
) -> NewtonOutcome<T> {
    let norm = |(r1, r2): (T, T)| r1.abs().max(r2.abs());
    let (mut l, mut u) = (l0, u0);
    let mut res = lin.residuals(l, u);
    let mut res_norm = norm(res);

    for iter in 0..cfg.max_iter {
        if res_norm <= cfg.abs_tol {
            return NewtonOutcome {
                l1: l,
                u1: u,
                residual_norm: res_norm,
                iterations: iter,
                converged: true,
            };
        }
        // J = [[-a - b g'(L1), 1], [1, -a - b g'(U1)]]
        let j11 = -lin.a - lin.b * lin.g_prime(l);
        let j22 = -lin.a - lin.b * lin.g_prime(u);
        let det = j11 * j22 - T::one();
        if det == T::zero() || !det.is_finite() {
            break;
        }
        let dl = (-res.0 * j22 + res.1) / det;
        let du = (res.0 - j11 * res.1) / det;

        let mut step = T::one();
        let mut accepted = false;
        while step > T::lit(1e-10) {
            let (lt, ut) = (l + step * dl, u + step * du);
            let trial = lin.residuals(lt, ut);
            let trial_norm = norm(trial);
            if trial_norm.is_finite() && trial_norm <= (T::one() - T::lit(1e-4) * step) * res_norm {
                l = lt;
                u = ut;
                res = trial;
                res_norm = trial_norm;
                accepted = true;
                break;
            }
            step /= T::lit(2.0);
        }
        if !accepted {
            // line search stalled; accept only if already at rounding level
            let converged = res_norm <= cfg.abs_tol * T::lit(100.0);
            return NewtonOutcome {
                l1: l,
                u1: u,
                residual_norm: res_norm,
                iterations: iter + 1,
                converged,
            };
        }
    }
    NewtonOutcome {
        l1: l,
        u1: u,
        residual_norm: res_norm,
        iterations: cfg.max_iter,
        converged: res_norm <= cfg.abs_tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, delta: f64) -> ModelParams<f64> {
        ModelParams::new(10.0, 1.0, 1.0, n, delta).unwrap()
    }

    #[test]
    fn parity_checks() {
        let cfg = SolverConfig::default();
        assert!(matches!(
            even_amplitude(&params(3, 1.5), EvenMethod::FixedPoint, &cfg),
            Err(Error::WrongParity(_))
        ));
        assert!(matches!(
            odd_solve(&params(4, 1.5), &cfg),
            Err(Error::WrongParity(_))
        ));
        assert!(odd_linear_approx(&params(6, 1.5)).is_err());
        assert!(odd_residuals(1.0, 2.0, &params(2, 1.0)).is_err());
    }

    #[test]
    fn n2_reduction_is_identity() {
        let cfg = SolverConfig::default();
        let p = params(2, 1.0);
        let direct = solve_fixed_point(&p, &cfg).unwrap();
        let reduced = even_amplitude(&p, EvenMethod::FixedPoint, &cfg).unwrap();
        assert_eq!(direct.amplitude, reduced.amplitude);
        assert_eq!(reduced.method, Method::EvenReduction);
    }

    #[test]
    fn g_closed_forms() {
        for &n in &[3usize, 5, 7, 9] {
            let p = params(n, 2.0);
            let lin = OddLinearization::new(&p).unwrap();
            let nf = n as f64;
            let c = (-2.0 * 10.0 / (nf - 1.0)).exp();
            let g0 = 2.0 / ((nf + 1.0) + (nf - 1.0) * c);
            assert!((lin.g0 - g0).abs() < 1e-15);
            let direct = |x: f64| {
                (-x).exp()
                    / ((nf + 1.0) / 2.0 * (-x).exp()
                        + (nf - 1.0) / 2.0 * c * ((nf + 1.0) / (nf - 1.0) * x).exp())
            };
            for &x in &[0.0, 0.7, 2.3] {
                assert!((lin.g(x) - direct(x)).abs() < 1e-14);
            }
            assert!(lin.a > 0.0 && lin.a < 1.0 && lin.b > 0.0);
        }
    }

    #[test]
    fn symmetric_point_solves_system() {
        for &n in &[3usize, 5, 9] {
            let p = params(n, 1.7);
            let q = p.equilibrium_level();
            let (r1, r2) = odd_residuals(q, q, &p).unwrap();
            assert!(r1.abs() < 1e-14 && r2.abs() < 1e-14);
        }
    }

    #[test]
    fn residuals_swap_under_argument_swap() {
        let p = params(5, 2.0);
        let (a, b) = odd_residuals(0.8, 2.9, &p).unwrap();
        let (c, d) = odd_residuals(2.9, 0.8, &p).unwrap();
        assert_eq!((a, b), (d, c));
    }

    #[test]
    fn stable_odd_system_has_zero_amplitude() {
        // below the critical delay (≈ 0.619 for N = 3)
        let r = odd_solve(&params(3, 0.4), &SolverConfig::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.a1, 0.0);
        assert!(r.a2.abs() < 1e-12);
    }
}

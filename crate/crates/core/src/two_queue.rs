//! Steady-state oscillation amplitude of the two-queue system.
//!
//! In the period-two steady state one queue sits at `U` and the other at `L`
//! at each epoch, and they swap every interval. Adding the two epoch
//! equations gives `L + U = ρ`, which leaves the scalar fixed-point equation
//!
//! ```text
//! ρ - L = L e^{-μΔ} + ρ f(L) (1 - e^{-μΔ}),   f(x) = 1 / (1 + e^{-θ(ρ - 2x)})
//! ```
//!
//! whose non-trivial root gives the amplitude `ρ/2 - L`. The module also
//! carries the first- and second-order Taylor closed forms of that root.

use crate::error::{Error, Result};
use crate::params::{ModelParams, SolverConfig};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    FixedPoint,
    Linear,
    Quadratic,
    EvenReduction,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::FixedPoint => "fixed_point",
            Method::Linear => "linear",
            Method::Quadratic => "quadratic",
            Method::EvenReduction => "even_reduction",
        }
    }
}

/// Epoch extremes and amplitude of a two-queue (or reduced even) orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeResult<T> {
    pub lower: T,
    pub upper: T,
    /// `(upper - lower) / 2`.
    pub amplitude: T,
    pub method: Method,
    pub converged: bool,
    pub iterations: usize,
    /// Fixed-point residual `h(lower)`; zero for closed forms.
    pub residual: T,
    /// Set when the quadratic closed form degenerated (`f''(0) = 0`) and the
    /// linear closed form was returned in its place.
    pub degenerate_fallback: bool,
}

impl<T: Real> AmplitudeResult<T> {
    fn from_lower(lower: T, rho: T, method: Method) -> Self {
        let upper = rho - lower;
        AmplitudeResult {
            lower,
            upper,
            amplitude: (upper - lower) / T::lit(2.0),
            method,
            converged: true,
            iterations: 0,
            residual: T::zero(),
            degenerate_fallback: false,
        }
    }
}

/// Value and first two derivatives of the two-queue logit
/// `f(x) = e^{-θx} / (e^{-θx} + e^{-θ(ρ-x)})` at one expansion point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogitExpansion<T> {
    pub f0: T,
    pub fp0: T,
    pub fpp0: T,
}

impl<T: Real> LogitExpansion<T> {
    /// Expansion about `x = 0`.
    pub fn at_zero(params: &ModelParams<T>) -> Self {
        let rho = params.rho();
        let theta = params.theta();
        let half = -rho * theta / T::lit(2.0);
        let sech2 = half.sech2();
        LogitExpansion {
            f0: T::one() / (T::one() + (-theta * rho).exp()),
            fp0: -theta / T::lit(2.0) * sech2,
            fpp0: theta * theta * half.tanh() * sech2,
        }
    }

    /// Expansion about the equilibrium `x = ρ/2`: `(1/2, -θ/2, 0)`.
    pub fn at_equilibrium(params: &ModelParams<T>) -> Self {
        LogitExpansion {
            f0: T::lit(0.5),
            fp0: -params.theta() / T::lit(2.0),
            fpp0: T::zero(),
        }
    }
}

/// Two-queue logit `f(x) = 1 / (1 + e^{-θ(ρ - 2x)})`.
pub fn logit_share<T: Real>(x: T, params: &ModelParams<T>) -> T {
    let rho = params.rho();
    T::one() / (T::one() + (-params.theta() * (rho - x - x)).exp())
}

/// Residual `h(L) = [L e^{-μΔ} + ρ f(L)(1 - e^{-μΔ})] - (ρ - L)`.
///
/// `h(ρ/2) = 0` for every parameter set; the amplitude comes from the other
/// root in `[0, ρ/2)`.
pub fn fixed_point_residual<T: Real>(lower: T, params: &ModelParams<T>) -> T {
    let rho = params.rho();
    let gap = params.theta() * (rho - lower - lower);
    let share = T::one() / (T::one() + (-gap).exp());
    let complement = T::one() / (T::one() + gap.exp());
    // regrouped as a(L - ρf) + (L - ρ(1 - f)); both terms vanish exactly at ρ/2
    params.decay() * (lower - rho * share) + (lower - rho * complement)
}

/// Solves the fixed-point equation by bisection on
/// `[0, (ρ/2)(1 - exclusion_fraction)]`.
///
/// Without a sign change on that bracket the equilibrium is stable and the
/// result is `L = U = ρ/2`, amplitude `0`. Running out of iterations before
/// `|h| <= abs_tol` yields `converged = false` with the last midpoint.
pub fn solve_fixed_point<T: Real>(
    params: &ModelParams<T>,
    cfg: &SolverConfig<T>,
) -> Result<AmplitudeResult<T>> {
    cfg.validate()?;
    let rho = params.rho();
    let half = rho / T::lit(2.0);
    let h = |l: T| fixed_point_residual(l, params);

    let mut lo = T::zero();
    let mut hi = half * (T::one() - cfg.exclusion_fraction);
    let mut h_lo = h(lo);
    let h_hi = h(hi);

    if h_lo == T::zero() {
        return Ok(finished(lo, rho, h_lo, 0, true));
    }
    if h_hi == T::zero() {
        return Ok(finished(hi, rho, h_hi, 0, true));
    }
    if h_lo.signum() == h_hi.signum() {
        let mut stable = AmplitudeResult::from_lower(half, rho, Method::FixedPoint);
        stable.residual = h(half);
        return Ok(stable);
    }

    let mut mid = lo;
    let mut h_mid = h_lo;
    for iter in 1..=cfg.max_iter {
        mid = lo + (hi - lo) / T::lit(2.0);
        h_mid = h(mid);
        if h_mid.abs() <= cfg.abs_tol {
            return Ok(finished(mid, rho, h_mid, iter, true));
        }
        if mid <= lo || mid >= hi {
            // sign change pinned to adjacent floats: the root is exact at working precision
            return Ok(finished(mid, rho, h_mid, iter, true));
        }
        if h_mid.signum() == h_lo.signum() {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
    }
    Ok(finished(mid, rho, h_mid, cfg.max_iter, false))
}

fn finished<T: Real>(
    lower: T,
    rho: T,
    residual: T,
    iterations: usize,
    converged: bool,
) -> AmplitudeResult<T> {
    let mut r = AmplitudeResult::from_lower(lower, rho, Method::FixedPoint);
    r.residual = residual;
    r.iterations = iterations;
    r.converged = converged;
    r
}

/// First-order closed form: replaces `f(L)` by `f(0) + f'(0) L`, giving
///
/// ```text
/// L₁ = [ρ - ρ(1 - e^{-μΔ}) f(0)] / [1 + e^{-μΔ} + ρ f'(0)(1 - e^{-μΔ})]
/// ```
///
/// with `f'(0) = -(θ/2) sech²(ρθ/2)`.
pub fn linear_approx_amplitude<T: Real>(params: &ModelParams<T>) -> Result<AmplitudeResult<T>> {
    let rho = params.rho();
    let a = params.decay();
    let c = params.relaxation();
    let ex = LogitExpansion::at_zero(params);
    let numerator = rho - rho * c * ex.f0;
    let denominator = T::one() + a + rho * ex.fp0 * c;
    if denominator.abs() <= T::epsilon() * T::lit(16.0) * (T::one() + a) {
        return Err(Error::SingularApproximation {
            denominator: denominator.as_f64(),
        });
    }
    Ok(AmplitudeResult::from_lower(
        numerator / denominator,
        rho,
        Method::Linear,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadraticBranch {
    /// The `+` root of the quadratic formula, used for reporting.
    #[default]
    Plus,
    /// The `-` root, kept for comparison only.
    Minus,
}

/// Second-order closed form, `+` root.
pub fn quadratic_approx_amplitude<T: Real>(params: &ModelParams<T>) -> Result<AmplitudeResult<T>> {
    quadratic_approx_amplitude_branch(params, QuadraticBranch::Plus)
}

/// Second-order closed form on the chosen branch.
///
/// With `f(L) ≈ f(0) + f'(0)L + f''(0)L²/2` the fixed-point equation becomes
/// `α L² + β L + γ = 0` where `α = ρ f''(0)(1-e^{-μΔ})/2`,
/// `β = 1 + e^{-μΔ} + ρ f'(0)(1-e^{-μΔ})`, `γ = ρ(f(0)(1-e^{-μΔ}) - 1)`, and
/// the branches are `L = (-β ± √(β² - 4αγ)) / 2α`. The roots are evaluated
/// in the cancellation-free form since `α` is tiny for large `ρθ`.
pub fn quadratic_approx_amplitude_branch<T: Real>(
    params: &ModelParams<T>,
    branch: QuadraticBranch,
) -> Result<AmplitudeResult<T>> {
    let rho = params.rho();
    let a = params.decay();
    let c = params.relaxation();
    let ex = LogitExpansion::at_zero(params);
    let two = T::lit(2.0);

    let alpha = rho * ex.fpp0 * c / two;
    let beta = T::one() + a + rho * ex.fp0 * c;
    let gamma = rho * (ex.f0 * c - T::one());

    if alpha == T::zero() {
        let mut fallback = linear_approx_amplitude(params)?;
        fallback.degenerate_fallback = true;
        return Ok(fallback);
    }

    let discriminant = beta * beta - T::lit(4.0) * alpha * gamma;
    if discriminant < T::zero() {
        return Err(Error::NoRealRoot {
            discriminant: discriminant.as_f64(),
        });
    }
    let root = discriminant.sqrt();
    let sign = match branch {
        QuadraticBranch::Plus => T::one(),
        QuadraticBranch::Minus => -T::one(),
    };
    // (-β + s√D) / 2α, rewritten as 2γ / (-β - s√D) when the numerator cancels
    let direct = -beta + sign * root;
    let lower = if direct.abs() >= (beta.abs() + root) / two {
        direct / (two * alpha)
    } else {
        two * gamma / (-beta - sign * root)
    };

    let mut result = AmplitudeResult::from_lower(lower, rho, Method::Quadratic);
    result.converged = lower.is_finite();
    Ok(result)
}

/// Root of the fixed-point equation after linearising `f` about `ρ/2`
/// instead of `0`. The linearised equation always has the equilibrium as its
/// only solution, so this expansion carries no amplitude information.
/// Returns `None` when the linearised equation is degenerate.
pub fn linearized_at_equilibrium_root<T: Real>(params: &ModelParams<T>) -> Option<T> {
    let rho = params.rho();
    let a = params.decay();
    let c = params.relaxation();
    let ex = LogitExpansion::at_equilibrium(params);
    let half = rho / T::lit(2.0);
    // ρ - L - aL = ρc [f(ρ/2) + f'(ρ/2)(L - ρ/2)]
    let slope = T::one() + a + rho * c * ex.fp0;
    let constant = rho - rho * c * (ex.f0 - ex.fp0 * half);
    if slope.abs() <= T::epsilon() {
        return None;
    }
    Some(constant / slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(delta: f64) -> ModelParams<f64> {
        ModelParams::new(10.0, 1.0, 1.0, 2, delta).unwrap()
    }

    #[test]
    fn residual_vanishes_at_equilibrium() {
        for &d in &[0.1, 0.5, 1.0, 3.0] {
            assert!(fixed_point_residual(5.0, &params(d)).abs() < 1e-14);
        }
    }

    #[test]
    fn residual_negative_at_zero() {
        let p = params(1.0);
        let h0 = fixed_point_residual(0.0, &p);
        let f0 = 1.0 / (1.0 + (-10.0f64).exp());
        let expected = 10.0 * f0 * (1.0 - (-1.0f64).exp()) - 10.0;
        assert!((h0 - expected).abs() < 1e-12);
        assert!(h0 < 0.0);
    }

    #[test]
    fn residual_small_at_published_root() {
        assert!(fixed_point_residual(5.0 - 2.2609, &params(1.0)).abs() < 1e-3);
    }

    #[test]
    fn expansion_matches_closed_forms() {
        let p = params(1.0);
        let ex = LogitExpansion::at_zero(&p);
        // derivative forms in exponentials
        let e = (-10.0f64).exp();
        assert!((ex.fp0 - (-2.0 * e / (1.0 + e).powi(2))).abs() < 1e-15);
        let fpp = 8.0 * e * e / (1.0 + e).powi(3) - 4.0 * e / (1.0 + e).powi(2);
        assert!((ex.fpp0 - fpp).abs() < 1e-15);
        assert!(ex.f0 > 0.0 && ex.f0 < 1.0 && ex.fp0 < 0.0);
        assert_eq!(logit_share(5.0, &p), 0.5);
    }

    #[test]
    fn stable_regime_returns_equilibrium() {
        let r = solve_fixed_point(&params(0.3), &SolverConfig::default()).unwrap();
        assert_eq!(r.amplitude, 0.0);
        assert_eq!(r.lower, 5.0);
        assert_eq!(r.upper, 5.0);
        assert!(r.converged);
        assert_eq!(r.method, Method::FixedPoint);
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let cfg = SolverConfig::new(1e-12, 3, 1e-9).unwrap();
        let r = solve_fixed_point(&params(1.0), &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 3);
        assert!(r.residual.abs() > 1e-12);
    }

    #[test]
    fn minus_branch_differs() {
        let plus = quadratic_approx_amplitude(&params(1.0)).unwrap();
        let minus =
            quadratic_approx_amplitude_branch(&params(1.0), QuadraticBranch::Minus).unwrap();
        assert!((plus.amplitude - 2.3062).abs() < 5e-5);
        assert!((minus.amplitude - plus.amplitude).abs() > 1.0);
    }

    #[test]
    fn equilibrium_expansion_only_returns_equilibrium() {
        for &d in &[0.2, 0.7, 1.0, 2.5] {
            let root = linearized_at_equilibrium_root(&params(d)).unwrap();
            assert!((root - 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_precision_solve() {
        let p = ModelParams::<f32>::new(10.0, 1.0, 1.0, 2, 1.0).unwrap();
        let r = solve_fixed_point(&p, &SolverConfig::default()).unwrap();
        assert!((r.amplitude - 2.2609).abs() < 1e-3);
    }
}

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parameters of one update-queue system: total arrival rate `lambda`,
/// per-customer service rate `mu`, logit sensitivity `theta`, number of
/// parallel queues and the update interval `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    lambda: T,
    mu: T,
    theta: T,
    n_queues: usize,
    delta: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(lambda: T, mu: T, theta: T, n_queues: usize, delta: T) -> Result<Self> {
        check_positive("lambda", lambda)?;
        check_positive("mu", mu)?;
        check_positive("theta", theta)?;
        check_positive("delta", delta)?;
        if n_queues < 2 {
            return Err(Error::InvalidParameter(format!(
                "number of queues must be at least 2, got {n_queues}"
            )));
        }
        let params = ModelParams {
            lambda,
            mu,
            theta,
            n_queues,
            delta,
        };
        let rho = params.rho();
        if !(rho.is_finite() && rho > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "offered load lambda/mu = {rho} is not finite"
            )));
        }
        Ok(params)
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn n_queues(&self) -> usize {
        self.n_queues
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    /// Offered load `lambda / mu`, the total fluid content at equilibrium.
    pub fn rho(&self) -> T {
        self.lambda / self.mu
    }

    /// Per-interval decay factor `exp(-mu * delta)`.
    pub fn decay(&self) -> T {
        (-self.mu * self.delta).exp()
    }

    /// `1 - exp(-mu * delta)`, computed without cancellation for small intervals.
    pub fn relaxation(&self) -> T {
        -(-self.mu * self.delta).exp_m1()
    }

    /// Symmetric equilibrium level `rho / N` of every queue.
    pub fn equilibrium_level(&self) -> T {
        self.rho() / T::from_count(self.n_queues)
    }

    pub fn with_delta(&self, delta: T) -> Result<Self> {
        Self::new(self.lambda, self.mu, self.theta, self.n_queues, delta)
    }

    pub fn with_lambda(&self, lambda: T) -> Result<Self> {
        Self::new(lambda, self.mu, self.theta, self.n_queues, self.delta)
    }

    pub fn with_n_queues(&self, n_queues: usize) -> Result<Self> {
        Self::new(self.lambda, self.mu, self.theta, n_queues, self.delta)
    }
}

fn check_positive<T: Real>(name: &str, value: T) -> Result<()> {
    if value.is_finite() && value > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and positive, got {value}"
        )))
    }
}

/// Controls for the iterative solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    /// Residual tolerance.
    pub abs_tol: T,
    pub max_iter: usize,
    /// Relative band below `rho/2` left out of the bisection bracket so the
    /// trivial root at the equilibrium is never returned.
    pub exclusion_fraction: T,
}

impl<T: Real> SolverConfig<T> {
    pub fn new(abs_tol: T, max_iter: usize, exclusion_fraction: T) -> Result<Self> {
        let cfg = SolverConfig {
            abs_tol,
            max_iter,
            exclusion_fraction,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol.is_finite() && self.abs_tol > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidParameter(
                "max_iter must be at least 1".into(),
            ));
        }
        if !(self.exclusion_fraction > T::zero() && self.exclusion_fraction < T::one()) {
            return Err(Error::InvalidParameter(format!(
                "exclusion_fraction must lie in (0, 1), got {}",
                self.exclusion_fraction
            )));
        }
        Ok(())
    }
}

impl<T: Real> Default for SolverConfig<T> {
    /// `1e-12` residual tolerance (floored at a few ulps for `f32`), 200
    /// iterations, `1e-9` exclusion band.
    fn default() -> Self {
        SolverConfig {
            abs_tol: T::lit(1e-12).max(T::epsilon() * T::lit(16.0)),
            max_iter: 200,
            exclusion_fraction: T::lit(1e-9).max(T::epsilon() * T::lit(4.0)),
        }
    }
}

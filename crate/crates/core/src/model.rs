//! The update-queue fluid model.
//!
//! Between two update epochs `kΔ` and `(k+1)Δ` customers route by the
//! multinomial logit of the queue lengths published at `kΔ`, so every queue
//! obeys the linear ODE `q' = ρ μ p_i - μ q` with a frozen target `ρ p_i`.
//! Each interval is therefore integrated in closed form; no time stepping
//! error enters anywhere.

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::scalar::Real;
use crate::trajectory::{Sample, Trajectory};

/// Queue lengths of all `N` queues at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct QueueState<T> {
    values: Vec<T>,
}

impl<T: Real> QueueState<T> {
    /// Builds a state, rejecting negative or non-finite entries.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= T::zero()))
        {
            return Err(Error::InvalidParameter(format!(
                "queue {} has invalid length {v}",
                i + 1
            )));
        }
        Ok(QueueState { values })
    }

    /// Every queue at `rho / N`.
    pub fn equilibrium(params: &ModelParams<T>) -> Self {
        QueueState {
            values: vec![params.equilibrium_level(); params.n_queues()],
        }
    }

    /// Equilibrium shifted by `perturbation`.
    pub fn perturbed(params: &ModelParams<T>, perturbation: &Perturbation<T>) -> Result<Self> {
        let n = params.n_queues();
        let offsets = perturbation.offsets(n)?;
        let level = params.equilibrium_level();
        Self::new(offsets.into_iter().map(|d| level + d).collect())
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &v| acc + v)
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    fn check_dimension(&self, params: &ModelParams<T>) -> Result<()> {
        if self.values.len() != params.n_queues() {
            return Err(Error::DimensionMismatch {
                expected: params.n_queues(),
                found: self.values.len(),
            });
        }
        Ok(())
    }
}

/// Offset pattern applied to the equilibrium to start a simulation.
#[derive(Debug, Clone, PartialEq)]
pub enum Perturbation<T> {
    /// `-ε` on queue 1 and `+ε` on queue 2, all others at equilibrium.
    Pair(T),
    /// `-ε, +ε, -ε, ...` over all queues.
    Alternating(T),
    /// Explicit per-queue offsets.
    Offsets(Vec<T>),
}

impl<T: Real> Default for Perturbation<T> {
    fn default() -> Self {
        Perturbation::Pair(T::lit(0.01))
    }
}

impl<T: Real> Perturbation<T> {
    pub fn offsets(&self, n: usize) -> Result<Vec<T>> {
        match self {
            Perturbation::Pair(eps) => {
                let mut out = vec![T::zero(); n];
                if n > 0 {
                    out[0] = -*eps;
                }
                if n > 1 {
                    out[1] = *eps;
                }
                Ok(out)
            }
            Perturbation::Alternating(eps) => Ok((0..n)
                .map(|i| if i % 2 == 0 { -*eps } else { *eps })
                .collect()),
            Perturbation::Offsets(v) => {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                Ok(v.clone())
            }
        }
    }
}

/// Logit weights `exp(-θ q_i) / Σ_j exp(-θ q_j)` for every queue.
///
/// The smallest queue length is subtracted inside the exponentials, so the
/// largest weight is exactly `1` before normalising and nothing underflows
/// to a zero denominator.
pub fn choice_probabilities<T: Real>(q: &QueueState<T>, params: &ModelParams<T>) -> Result<Vec<T>> {
    q.check_dimension(params)?;
    Ok(logit(q.values(), params.theta()))
}

/// Probability that an arriving customer joins queue `i` (zero based).
pub fn choice_probability<T: Real>(
    q: &QueueState<T>,
    i: usize,
    params: &ModelParams<T>,
) -> Result<T> {
    q.check_dimension(params)?;
    if i >= q.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: q.len(),
        });
    }
    Ok(logit(q.values(), params.theta())[i])
}

pub(crate) fn logit<T: Real>(values: &[T], theta: T) -> Vec<T> {
    let min = values.iter().copied().fold(T::infinity(), T::min);
    let weights: Vec<T> = values.iter().map(|&v| (-theta * (v - min)).exp()).collect();
    let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    weights.into_iter().map(|w| w / total).collect()
}

/// Outcome of the critical-delay formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalDelay<T> {
    /// The equilibrium loses stability once `Δ` exceeds this value.
    Finite(T),
    /// `λθ/(μN) ≤ 1`: the formula has no positive solution and the
    /// equilibrium is treated as stable for every `Δ`.
    NoFiniteThreshold,
}

impl<T: Real> CriticalDelay<T> {
    pub fn value(&self) -> Option<T> {
        match *self {
            CriticalDelay::Finite(v) => Some(v),
            CriticalDelay::NoFiniteThreshold => None,
        }
    }

    /// Whether an update interval `delta` lies strictly beyond the threshold.
    pub fn is_exceeded_by(&self, delta: T) -> bool {
        match *self {
            CriticalDelay::Finite(v) => delta > v,
            CriticalDelay::NoFiniteThreshold => false,
        }
    }
}

/// Hopf threshold `Δ_cr = ln(1 + 2 / (λθ/(μN) - 1)) / μ`.
pub fn critical_delay<T: Real>(params: &ModelParams<T>) -> CriticalDelay<T> {
    let gain = params.lambda() * params.theta() / (params.mu() * T::from_count(params.n_queues()));
    if gain <= T::one() {
        return CriticalDelay::NoFiniteThreshold;
    }
    let two = T::lit(2.0);
    CriticalDelay::Finite((two / (gain - T::one())).ln_1p() / params.mu())
}

/// Closed-form flow over one update interval: each queue relaxes
/// exponentially from `start` towards a target frozen at the epoch.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalFlow<T> {
    start: Vec<T>,
    target: Vec<T>,
    mu: T,
}

impl<T: Real> IntervalFlow<T> {
    /// Flow started at an update epoch, with targets `ρ p_i` taken from the
    /// logit of `epoch_state`.
    pub fn from_epoch(epoch_state: &QueueState<T>, params: &ModelParams<T>) -> Result<Self> {
        let probs = choice_probabilities(epoch_state, params)?;
        let rho = params.rho();
        Ok(IntervalFlow {
            start: epoch_state.values().to_vec(),
            target: probs.into_iter().map(|p| rho * p).collect(),
            mu: params.mu(),
        })
    }

    pub fn start(&self) -> &[T] {
        &self.start
    }

    pub fn target(&self) -> &[T] {
        &self.target
    }

    /// Queue lengths `s` time units after the start of this flow.
    pub fn at(&self, s: T) -> Vec<T> {
        let keep = (-self.mu * s).exp();
        let gain = -(-self.mu * s).exp_m1();
        self.start
            .iter()
            .zip(&self.target)
            .map(|(&q, &r)| q * keep + r * gain)
            .collect()
    }

    /// The same flow, restarted from its state at offset `s` with the target
    /// left unchanged.
    pub fn restarted_at(&self, s: T) -> Self {
        IntervalFlow {
            start: self.at(s),
            target: self.target.clone(),
            mu: self.mu,
        }
    }
}

/// Exact state `s ∈ [0, Δ]` time units after an update epoch.
pub fn dense_solution<T: Real>(
    q_at_epoch: &QueueState<T>,
    params: &ModelParams<T>,
    s: T,
) -> Result<QueueState<T>> {
    if !(s >= T::zero() && s <= params.delta()) {
        return Err(Error::OffsetOutOfRange {
            offset: s.as_f64(),
            delta: params.delta().as_f64(),
        });
    }
    let flow = IntervalFlow::from_epoch(q_at_epoch, params)?;
    Ok(QueueState { values: flow.at(s) })
}

/// Update-epoch map `q((k+1)Δ)` as a function of `q(kΔ)`.
pub fn step_map<T: Real>(
    q_at_epoch: &QueueState<T>,
    params: &ModelParams<T>,
) -> Result<QueueState<T>> {
    dense_solution(q_at_epoch, params, params.delta())
}

/// Integrates the model over `[0, horizon]`.
///
/// `initial` is the state at `t = 0`; since customers only see `q(0)` during
/// the first interval, a constant history on `[-Δ, 0]` reduces to it. Each
/// interval is sampled at `samples_per_interval` evenly spaced offsets
/// starting at the epoch, every epoch inside the horizon is a sample, and the
/// horizon itself is always the last sample.
pub fn simulate<T: Real>(
    initial: &QueueState<T>,
    params: &ModelParams<T>,
    horizon: T,
    samples_per_interval: usize,
) -> Result<Trajectory<T>> {
    initial.check_dimension(params)?;
    if !(horizon.is_finite() && horizon > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    if samples_per_interval < 1 {
        return Err(Error::InvalidParameter(
            "samples_per_interval must be at least 1".into(),
        ));
    }

    let delta = params.delta();
    let full_intervals = whole_intervals(horizon, delta);
    let tail = horizon - T::from_count(full_intervals) * delta;
    let has_tail = tail > delta * T::lit(1e-9);
    let m = T::from_count(samples_per_interval);

    let mut samples = Vec::with_capacity((full_intervals + 2) * samples_per_interval + 1);
    let mut epochs = Vec::with_capacity(full_intervals + 1);
    let mut state = initial.values().to_vec();

    for k in 0..=full_intervals {
        let t0 = T::from_count(k) * delta;
        let epoch_state = QueueState { values: state };
        check_finite(epoch_state.values(), t0)?;
        epochs.push(samples.len());
        samples.push(Sample {
            time: t0,
            state: epoch_state.clone(),
        });

        let last = k == full_intervals;
        if last && !has_tail {
            break;
        }
        let flow = IntervalFlow::from_epoch(&epoch_state, params)?;
        let span = if last { tail } else { delta };
        for j in 1..samples_per_interval {
            let s = T::from_count(j) * delta / m;
            if s >= span {
                break;
            }
            let values = flow.at(s);
            check_finite(&values, t0 + s)?;
            samples.push(Sample {
                time: t0 + s,
                state: QueueState { values },
            });
        }
        if last {
            let values = flow.at(tail);
            check_finite(&values, horizon)?;
            samples.push(Sample {
                time: horizon,
                state: QueueState { values },
            });
            break;
        }
        state = flow.at(delta);
    }

    Ok(Trajectory::new(*params, samples, epochs))
}

/// Number of whole update intervals in `[0, horizon]`, treating a horizon
/// within a relative `1e-9` of a multiple of `Δ` as that multiple.
fn whole_intervals<T: Real>(horizon: T, delta: T) -> usize {
    let ratio = horizon / delta;
    let nearest = ratio.round();
    let k = if (ratio - nearest).abs() <= T::lit(1e-9) * nearest.max(T::one()) {
        nearest
    } else {
        ratio.floor()
    };
    k.to_usize().unwrap_or(0)
}

fn check_finite<T: Real>(values: &[T], time: T) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite {
            time: time.as_f64(),
        })
    }
}

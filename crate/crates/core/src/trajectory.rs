use crate::error::{Error, Result};
use crate::model::QueueState;
use crate::params::ModelParams;
use crate::scalar::Real;

/// Burn-in cap used when no explicit burn-in is given, in update intervals.
pub const DEFAULT_BURN_IN_INTERVALS: usize = 200;

/// Epoch-to-epoch change below which the orbit counts as settled.
pub const SETTLED_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Sample<T> {
    pub time: T,
    pub state: QueueState<T>,
}

/// Time-ordered simulation output.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    params: ModelParams<T>,
    samples: Vec<Sample<T>>,
    update_epoch_indices: Vec<usize>,
}

/// Extremes of one queue over a window of update epochs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueAmplitude<T> {
    pub min: T,
    pub max: T,
    /// `(max - min) / 2`.
    pub amplitude: T,
}

impl<T: Real> Trajectory<T> {
    pub(crate) fn new(
        params: ModelParams<T>,
        samples: Vec<Sample<T>>,
        update_epoch_indices: Vec<usize>,
    ) -> Self {
        Trajectory {
            params,
            samples,
            update_epoch_indices,
        }
    }

    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    pub fn samples(&self) -> &[Sample<T>] {
        &self.samples
    }

    pub fn update_epoch_indices(&self) -> &[usize] {
        &self.update_epoch_indices
    }

    pub fn horizon(&self) -> T {
        self.samples.last().map(|s| s.time).unwrap_or_else(T::zero)
    }

    /// Samples that fall on update epochs, in time order.
    pub fn epochs(&self) -> impl Iterator<Item = &Sample<T>> + '_ {
        self.update_epoch_indices
            .iter()
            .map(move |&i| &self.samples[i])
    }

    /// Epoch samples with `from <= t <= to`.
    pub fn epochs_in(&self, from: T, to: T) -> impl Iterator<Item = &Sample<T>> + '_ {
        let slack = self.params.delta() * T::lit(1e-9);
        self.epochs()
            .filter(move |s| s.time >= from - slack && s.time <= to + slack)
    }

    /// Per-queue amplitude over the epochs after `burn_in`.
    ///
    /// Within an interval every queue moves monotonically between its epoch
    /// value and its frozen target, so extremes over a periodic steady state
    /// are attained at epochs and epoch samples suffice.
    pub fn empirical_amplitude(&self, burn_in: T) -> Result<Vec<QueueAmplitude<T>>> {
        let available = self.horizon() - burn_in;
        let required = self.params.delta() * T::lit(10.0);
        if !(available >= required * (T::one() - T::lit(1e-9))) {
            return Err(Error::TrajectoryTooShort {
                available: available.as_f64(),
                required: required.as_f64(),
            });
        }
        Ok(self.window_amplitude(burn_in, self.horizon()))
    }

    /// Per-queue amplitude over the epochs in `[from, to]`.
    pub fn window_amplitude(&self, from: T, to: T) -> Vec<QueueAmplitude<T>> {
        let n = self.params.n_queues();
        let mut lo = vec![T::infinity(); n];
        let mut hi = vec![T::neg_infinity(); n];
        for sample in self.epochs_in(from, to) {
            for (i, &v) in sample.state.values().iter().enumerate() {
                lo[i] = lo[i].min(v);
                hi[i] = hi[i].max(v);
            }
        }
        lo.into_iter()
            .zip(hi)
            .map(|(min, max)| QueueAmplitude {
                min,
                max,
                amplitude: (max - min) / T::lit(2.0),
            })
            .collect()
    }

    /// Default burn-in: the first epoch `k ≤ 200` at which the orbit has
    /// settled onto a period-two (or fixed) pattern, i.e.
    /// `max_i |q_i(kΔ) - q_i((k-2)Δ)| < 1e-10`; `200Δ` otherwise.
    pub fn settled_burn_in(&self) -> T {
        let tol = T::lit(SETTLED_TOLERANCE);
        let epochs: Vec<&Sample<T>> = self.epochs().take(DEFAULT_BURN_IN_INTERVALS + 1).collect();
        for k in 2..epochs.len() {
            let gap = epochs[k]
                .state
                .values()
                .iter()
                .zip(epochs[k - 2].state.values())
                .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()));
            if gap < tol {
                return epochs[k].time;
            }
        }
        self.params.delta() * T::from_count(DEFAULT_BURN_IN_INTERVALS)
    }

    /// Groups queues that move in lockstep after `burn_in`: two queues share
    /// a cluster when their epoch values never differ by more than `tol`.
    /// Clusters are listed by their smallest queue index.
    pub fn phase_clusters(&self, burn_in: T, tol: T) -> Vec<Vec<usize>> {
        let n = self.params.n_queues();
        let tail: Vec<&Sample<T>> = self.epochs_in(burn_in, self.horizon()).collect();
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let home = clusters.iter_mut().find(|c| {
                let j = c[0];
                tail.iter()
                    .all(|s| (s.state.values()[i] - s.state.values()[j]).abs() <= tol)
            });
            match home {
                Some(c) => c.push(i),
                None => clusters.push(vec![i]),
            }
        }
        clusters
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{simulate, Perturbation};

    fn run(
        n: usize,
        delta: f64,
        perturbation: Perturbation<f64>,
        intervals: usize,
    ) -> Trajectory<f64> {
        let p = ModelParams::new(10.0, 1.0, 1.0, n, delta).unwrap();
        let q = QueueState::perturbed(&p, &perturbation).unwrap();
        simulate(&q, &p, delta * intervals as f64, 2).unwrap()
    }

    #[test]
    fn too_short_after_burn_in() {
        let traj = run(2, 1.0, Perturbation::default(), 20);
        assert!(matches!(
            traj.empirical_amplitude(15.0),
            Err(Error::TrajectoryTooShort { .. })
        ));
        assert!(traj.empirical_amplitude(10.0).is_ok());
    }

    #[test]
    fn stable_regime_flattens() {
        let traj = run(2, 0.3, Perturbation::default(), 600);
        let amps = traj.empirical_amplitude(100.0).unwrap();
        assert!(amps.iter().all(|a| a.amplitude < 1e-6));
        assert!(traj.settled_burn_in() < 0.3 * 200.0 + 1e-9);
    }

    #[test]
    fn clusters_for_even_alternating_start() {
        let traj = run(4, 3.0, Perturbation::Alternating(0.01), 400);
        let clusters = traj.phase_clusters(600.0, 1e-6);
        assert_eq!(clusters, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn window_amplitude_tracks_extremes() {
        let traj = run(2, 1.0, Perturbation::default(), 300);
        let amps = traj.window_amplitude(200.0, 300.0);
        for a in &amps {
            assert!((a.max - a.min - 2.0 * a.amplitude).abs() < 1e-15);
            assert!((a.amplitude - 2.2609).abs() < 1e-3);
        }
    }
}

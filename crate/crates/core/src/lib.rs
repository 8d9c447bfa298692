//! Oscillation amplitudes for parallel fluid queues whose customers route
//! by a multinomial logit of queue lengths published only at periodic
//! update epochs.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`); the `*64` aliases below are the double-precision
//! instantiations used by the command-line tool and the tests.
//!
//! ```
//! use update_queues::{solve_fixed_point, Params64, SolverConfig};
//!
//! let params = Params64::new(10.0, 1.0, 1.0, 2, 1.0).unwrap();
//! let result = solve_fixed_point(&params, &SolverConfig::default()).unwrap();
//! assert!((result.amplitude - 2.2609).abs() < 5e-5);
//! ```

// `!(x > y)` comparisons are deliberate: NaN must fail validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod model;
pub mod multi_queue;
pub mod params;
pub mod scalar;
pub mod trajectory;
pub mod two_queue;

pub use error::{Error, Result};
pub use model::{
    choice_probabilities, choice_probability, critical_delay, dense_solution, simulate, step_map,
    CriticalDelay, IntervalFlow, Perturbation, QueueState,
};
pub use multi_queue::{
    even_amplitude, even_reduced_params, odd_linear_approx, odd_residuals, odd_solve, EvenMethod,
    OddAmplitudeResult, OddLinearization, OddMethod,
};
pub use params::{ModelParams, SolverConfig};
pub use scalar::Real;
pub use trajectory::{QueueAmplitude, Sample, Trajectory};
pub use two_queue::{
    fixed_point_residual, linear_approx_amplitude, linearized_at_equilibrium_root, logit_share,
    quadratic_approx_amplitude, quadratic_approx_amplitude_branch, solve_fixed_point,
    AmplitudeResult, LogitExpansion, Method, QuadraticBranch,
};

pub type Params64 = ModelParams<f64>;
pub type Params32 = ModelParams<f32>;
pub type State64 = QueueState<f64>;
pub type Trajectory64 = Trajectory<f64>;
pub type Amplitude64 = AmplitudeResult<f64>;
pub type OddAmplitude64 = OddAmplitudeResult<f64>;
pub type SolverConfig64 = SolverConfig<f64>;

//! Jets, vectors, and the numerical workhorses (ODE, quadrature, roots).

pub mod jet;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod scalar;
pub mod vec3;

pub use jet::{Jet1, Jet2};
pub use ode::{ode_solve, ode_solve_observed, solve_field, taylor_jets, JetField, OdeSpec, StepControl, Trajectory};
pub use quad::{quad2d, quad_adaptive, try_quad2d, try_quad_adaptive, QuadFailure, QuadSpec, Rect};
pub use roots::{root_find, RootStart};
pub use scalar::{Elementary, Scalar};
pub use vec3::Vec3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("{function} is undefined at {value}")]
    Domain { function: &'static str, value: f64 },
    #[error("step size {step:e} fell below the minimum at t = {t}")]
    StepUnderflow { t: f64, step: f64 },
    #[error("exceeded {steps} integration steps at t = {t}")]
    MaxStepsExceeded { t: f64, steps: usize },
    #[error("quadrature subdivision depth exhausted (best estimate {estimate})")]
    MaxDepthExceeded { estimate: f64 },
    #[error("root finder did not converge (best x = {best}, |f| = {residual:e})")]
    NoConvergence { best: f64, residual: f64 },
    #[error("invalid numerical specification: {0}")]
    InvalidSpec(String),
}

//! Differential geometry of parametric curves and surfaces in R³.
//!
//! Maps are written once, generic over [`numerics::Scalar`], and evaluated
//! on truncated Taylor jets so that every derivative is exact to rounding.
//! The modules build on each other:
//!
//! - [`numerics`]: jets, adaptive ODE integration, quadrature, root finding
//! - [`expr`]: expression parsing and curve/surface definition files
//! - [`curve`]: Frenet frames, curvature and torsion, reconstruction
//! - [`surface`]: fundamental forms, curvatures, structure-equation residuals
//! - [`surface_curve`]: curves on surfaces, geodesics, transport, Gauss–Bonnet
//! - [`catalog`]: named shapes with closed-form reference values
//! - [`cli`]: the `diffgeo` command line

pub mod catalog;
pub mod cli;
pub mod curve;
pub mod expr;
pub mod numerics;
pub mod surface;
pub mod surface_curve;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] numerics::NumericsError),
    #[error(transparent)]
    Expr(#[from] expr::ExprError),
    #[error(transparent)]
    Curve(#[from] curve::CurveError),
    #[error(transparent)]
    Surface(#[from] surface::SurfaceError),
    #[error(transparent)]
    SurfaceCurve(#[from] surface_curve::SurfaceCurveError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

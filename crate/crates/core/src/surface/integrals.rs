use serde::Serialize;

use super::forms::{bundle_of, curvatures_of};
use super::{surface_jets, ParametricSurface, SurfaceError};
use crate::numerics::{try_quad2d, NumericsError, QuadFailure, QuadSpec, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceIntegral {
    pub value: f64,
    /// A boundary edge of the region touches singular points, which the
    /// interior quadrature nodes never sample.
    pub singular_boundary: bool,
}

fn integrate<T: ParametricSurface + ?Sized>(
    surface: &T,
    rect: &Rect,
    spec: &QuadSpec,
    weight_by_k: bool,
) -> Result<SurfaceIntegral, SurfaceError> {
    spec.validate()?;
    let scale = surface.scale();
    let value = try_quad2d(
        |u, v| {
            let j = surface_jets(surface, u, v, scale)?;
            let sqrt_a = j.sqrt_a.val();
            if weight_by_k {
                let cd = curvatures_of(&bundle_of(&j), j.e1.val(), j.e2.val(), scale);
                Ok(cd.k * sqrt_a)
            } else {
                Ok(sqrt_a)
            }
        },
        rect,
        spec,
    )
    .map_err(|e| match e {
        QuadFailure::Integrand(e) => e,
        QuadFailure::MaxDepth { estimate } => SurfaceError::Numerics(NumericsError::MaxDepthExceeded { estimate }),
    })?;
    Ok(SurfaceIntegral {
        value,
        singular_boundary: singular_on_boundary(surface, rect, scale),
    })
}

fn singular_on_boundary<T: ParametricSurface + ?Sized>(surface: &T, rect: &Rect, scale: f64) -> bool {
    const N: usize = 32;
    (0..=N).any(|i| {
        let s = i as f64 / N as f64;
        let u = rect.u0 + s * (rect.u1 - rect.u0);
        let v = rect.v0 + s * (rect.v1 - rect.v0);
        [(u, rect.v0), (u, rect.v1), (rect.u0, v), (rect.u1, v)]
            .into_iter()
            .any(|(p, q)| surface_jets(surface, p, q, scale).is_err())
    })
}

/// `int sqrt(a) du dv` over the rectangle.
pub fn surface_area<T: ParametricSurface + ?Sized>(
    surface: &T,
    rect: &Rect,
    spec: &QuadSpec,
) -> Result<SurfaceIntegral, SurfaceError> {
    integrate(surface, rect, spec, false)
}

/// `int K sqrt(a) du dv` over the rectangle.
pub fn total_curvature<T: ParametricSurface + ?Sized>(
    surface: &T,
    rect: &Rect,
    spec: &QuadSpec,
) -> Result<SurfaceIntegral, SurfaceError> {
    integrate(surface, rect, spec, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::test_surfaces::*;
    use std::f64::consts::PI;

    #[test]
    fn sphere_area_and_total_curvature() {
        let s = Sphere(1.0);
        let spec = QuadSpec::with_tol(1e-9);
        let area = surface_area(&s, &s.domain(), &spec).unwrap();
        assert!((area.value - 4.0 * PI).abs() <= 1e-6);
        assert!(area.singular_boundary);
        let kt = total_curvature(&s, &s.domain(), &spec).unwrap();
        assert!((kt.value - 4.0 * PI).abs() <= 1e-6);
    }

    #[test]
    fn torus_total_curvature_vanishes() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let kt = total_curvature(&t, &t.domain(), &QuadSpec::with_tol(1e-9)).unwrap();
        assert!(kt.value.abs() <= 1e-6);
        assert!(!kt.singular_boundary);
    }

    #[test]
    fn interior_singularity_aborts_with_location() {
        // polar plane is singular along u = 0, the midpoint node of the rule
        match surface_area(&PolarPlane, &Rect::new(-1.0, 1.0, 0.0, 1.0), &QuadSpec::default()) {
            Err(SurfaceError::SingularSurfacePoint { u, v, .. }) => assert!(u.abs() < 1e-12 && (0.0..=1.0).contains(&v)),
            other => panic!("expected a singular point, got {other:?}"),
        }
    }
}

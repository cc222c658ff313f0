use serde::Serialize;

use super::forms::{bundle_of, curvatures_of, scaled};
use super::{surface_jets, ParametricSurface, SurfaceError};
use crate::numerics::Vec3;

/// Scaled residual norms of the Gauss and Weingarten equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussWeingartenResiduals {
    /// For `(ab) = 11, 12, 22`: `dE_a/du^b - Gamma^c_ab E_c - b_ab n`.
    pub gauss: [f64; 3],
    /// For `a = 1, 2`: `dn/du^a + b_a^c E_c`.
    pub weingarten: [f64; 2],
    /// `dn/du x dn/dv - K E1 x E2`.
    pub normal_cross: f64,
}

impl GaussWeingartenResiduals {
    pub fn max(&self) -> f64 {
        self.gauss
            .iter()
            .chain(self.weingarten.iter())
            .fold(self.normal_cross, |m, r| m.max(*r))
    }
}

fn scaled_vec(lhs: Vec3, rhs: Vec3) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0)
}

pub fn gauss_weingarten_residuals<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
) -> Result<GaussWeingartenResiduals, SurfaceError> {
    let scale = surface.scale();
    let j = surface_jets(surface, u, v, scale)?;
    let fb = bundle_of(&j);
    let e = [j.e1.val(), j.e2.val()];
    let n = fb.n;
    let de = [[j.e1.du().val(), j.e1.dv().val()], [j.e2.du().val(), j.e2.dv().val()]];
    let b = fb.second();
    let mut gauss = [0.0; 3];
    for (slot, (a, bb)) in gauss.iter_mut().zip([(0, 0), (0, 1), (1, 1)]) {
        let rhs = e[0] * fb.gamma(0, a, bb) + e[1] * fb.gamma(1, a, bb) + n * b[a][bb];
        *slot = scaled_vec(de[a][bb], rhs);
    }
    let inv = fb.inverse_metric();
    let dn = [j.n.du().val(), j.n.dv().val()];
    let mut weingarten = [0.0; 2];
    for (a, slot) in weingarten.iter_mut().enumerate() {
        let mut rhs = Vec3::zero();
        for c in 0..2 {
            let mixed = b[a][0] * inv[0][c] + b[a][1] * inv[1][c];
            rhs = rhs - e[c] * mixed;
        }
        *slot = scaled_vec(dn[a], rhs);
    }
    let cd = curvatures_of(&fb, e[0], e[1], scale);
    let normal_cross = scaled_vec(dn[0].cross(&dn[1]), j.cross.val() * cd.k);
    Ok(GaussWeingartenResiduals {
        gauss,
        weingarten,
        normal_cross,
    })
}

/// Scaled residuals of the two Codazzi equations and the compatibility
/// condition expressing `eg - f^2` through Christoffel symbols.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CodazziResiduals {
    pub codazzi: [f64; 2],
    pub compatibility: f64,
}

impl CodazziResiduals {
    pub fn max(&self) -> f64 {
        self.codazzi[0].max(self.codazzi[1]).max(self.compatibility)
    }
}

pub fn codazzi_compatibility_residuals<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
) -> Result<CodazziResiduals, SurfaceError> {
    let j = surface_jets(surface, u, v, surface.scale())?;
    let gj = j.christoffel2_jets();
    let g = gj.map(|x| x.val());
    // index helpers: g[pair * 2 + upper]
    let (g111, g211, g112, g212, g122, g222) = (g[0], g[1], g[2], g[3], g[4], g[5]);
    let [e, f, gg] = j.second();
    let [big_e, big_f, _] = j.first();

    let lhs1 = j.b12.partial(1, 0) - j.b11.partial(0, 1);
    let rhs1 = gg * g211 - f * (g212 - g111) - e * g112;
    let lhs2 = j.b22.partial(1, 0) - j.b12.partial(0, 1);
    let rhs2 = gg * g212 - f * (g222 - g112) - e * g122;

    let du = |k: usize| gj[k].partial(1, 0);
    let dv = |k: usize| gj[k].partial(0, 1);
    let lhs3 = e * gg - f * f;
    let rhs3 = big_f * (du(5) - dv(3) + g122 * g211 - g112 * g212)
        + big_e * (du(4) - dv(2) + g122 * g111 + g222 * g112 - g112 * g112 - g212 * g122);

    Ok(CodazziResiduals {
        codazzi: [scaled(lhs1, rhs1), scaled(lhs2, rhs2)],
        compatibility: scaled(lhs3, rhs3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::test_surfaces::*;
    use crate::surface::Sheared;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn plane_residuals_vanish() {
        let gw = gauss_weingarten_residuals(&Plane, 0.2, 0.3).unwrap();
        assert_eq!(gw.max(), 0.0);
        let cz = codazzi_compatibility_residuals(&Plane, 0.2, 0.3).unwrap();
        assert_eq!(cz.max(), 0.0);
    }

    #[test]
    fn sphere_gauss_weingarten() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (u, v) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(-1.4..1.4));
            let r = gauss_weingarten_residuals(&Sphere(1.0), u, v).unwrap();
            assert!(r.max() <= 1e-9, "{r:?}");
        }
    }

    #[test]
    fn torus_grid_codazzi() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            for k in 0..10 {
                let (u, v) = (2.0 * PI * i as f64 / 10.0, 2.0 * PI * k as f64 / 10.0);
                worst = worst.max(codazzi_compatibility_residuals(&t, u, v).unwrap().max());
                worst = worst.max(gauss_weingarten_residuals(&t, u, v).unwrap().max());
            }
        }
        assert!(worst <= 1e-7, "{worst}");
    }

    #[test]
    fn saddle_and_sheared_codazzi() {
        for (u, v) in [(0.3, -0.7), (1.2, 0.4), (-1.5, 1.9)] {
            assert!(codazzi_compatibility_residuals(&Saddle, u, v).unwrap().max() <= 1e-8);
            let s = Sheared { surface: Catenoid(1.0), k: 0.3 };
            assert!(codazzi_compatibility_residuals(&s, u, v / 2.0).unwrap().max() <= 1e-8);
            assert!(gauss_weingarten_residuals(&s, u, v / 2.0).unwrap().max() <= 1e-9);
        }
    }
}

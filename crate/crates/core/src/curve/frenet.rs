use serde::Serialize;

use super::{CurveError, CurveJets, ParametricCurve};
use crate::numerics::{Scalar, Vec3};

/// Frenet triad with curvature, torsion and Darboux vector at `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetData {
    pub t: f64,
    pub position: Vec3,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
    /// `tau T + kappa B`.
    pub darboux: Vec3,
    /// `|dr/dt|`.
    pub speed: f64,
}

/// Unit tangent and curvature; defined wherever the curve is regular.
pub fn curvature_and_tangent<C: ParametricCurve + ?Sized>(c: &C, t: f64) -> Result<(Vec3, f64), CurveError> {
    let j = CurveJets::new(c, t)?;
    Ok((j.tangent().val(), j.kappa_value()))
}

pub(crate) fn frenet_from_jets(j: &CurveJets) -> Result<FrenetData, CurveError> {
    let kappa = j.kappa_value();
    if !(kappa > j.inflection_eps()) {
        return Err(CurveError::InflectionPoint { t: j.t, kappa });
    }
    let tangent = j.tangent().val();
    let normal = j.normal().val();
    let binormal = j.binormal().val();
    let tau = j.tau().val();
    if !(tau.is_finite() && normal.is_finite() && binormal.is_finite()) {
        return Err(CurveError::NonFinite { t: j.t });
    }
    Ok(FrenetData {
        t: j.t,
        position: j.r.val(),
        tangent,
        normal,
        binormal,
        kappa,
        tau,
        darboux: tangent * tau + binormal * kappa,
        speed: j.speed.val(),
    })
}

pub fn frenet<C: ParametricCurve + ?Sized>(c: &C, t: f64) -> Result<FrenetData, CurveError> {
    frenet_from_jets(&CurveJets::new(c, t)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetResiduals {
    /// `|dT/ds - kappa N|`
    pub tangent: f64,
    /// `|dN/ds - (tau B - kappa T)|`
    pub normal: f64,
    /// `|dB/ds + tau N|`
    pub binormal: f64,
    /// `| |dN/ds|^2 - (kappa^2 + tau^2) |`
    pub lancret: f64,
    /// `| |kappa tau| - |T'.B'| |`
    pub kappa_tau: f64,
}

impl FrenetResiduals {
    pub fn max(&self) -> f64 {
        [self.tangent, self.normal, self.binormal, self.lancret, self.kappa_tau]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn frenet_residuals<C: ParametricCurve + ?Sized>(c: &C, t: f64) -> Result<FrenetResiduals, CurveError> {
    let j = CurveJets::new(c, t)?;
    let f = frenet_from_jets(&j)?;
    let dt = j.dds_vec(j.tangent()).val();
    let dn = j.dds_vec(j.normal()).val();
    let db = j.dds_vec(j.binormal()).val();
    let (k, tau) = (f.kappa, f.tau);
    Ok(FrenetResiduals {
        tangent: (dt - f.normal * k).norm(),
        normal: (dn - (f.binormal * tau - f.tangent * k)).norm(),
        binormal: (db + f.normal * tau).norm(),
        lancret: (dn.norm_squared() - (k * k + tau * tau)).abs(),
        kappa_tau: ((k * tau).abs() - dt.dot(&db).abs()).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OsculatingCircle {
    pub center: Vec3,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OsculatingSphere {
    pub center: Vec3,
    pub radius: f64,
}

pub fn osculating_circle<C: ParametricCurve + ?Sized>(c: &C, t: f64) -> Result<OsculatingCircle, CurveError> {
    let f = frenet(c, t)?;
    Ok(OsculatingCircle {
        center: f.position + f.normal * (1.0 / f.kappa),
        radius: 1.0 / f.kappa,
    })
}

pub fn osculating_sphere<C: ParametricCurve + ?Sized>(c: &C, t: f64) -> Result<OsculatingSphere, CurveError> {
    let j = CurveJets::new(c, t)?;
    let f = frenet_from_jets(&j)?;
    if f.tau.abs() <= j.inflection_eps() {
        return Err(CurveError::ZeroTorsion { t });
    }
    let r_kappa = 1.0 / f.kappa;
    let r_tau = 1.0 / f.tau;
    let r_kappa_prime = j.dds(j.kappa().recip()).val();
    let along_b = r_tau * r_kappa_prime;
    Ok(OsculatingSphere {
        center: f.position + f.normal * r_kappa + f.binormal * along_b,
        radius: (r_kappa * r_kappa + along_b * along_b).sqrt(),
    })
}

/// `R_kappa / R_tau + d/ds (R_tau dR_kappa/ds)`, zero along spherical curves.
pub fn sphericity_residual<C: ParametricCurve + ?Sized>(c: &C, t: f64) -> Result<f64, CurveError> {
    let j = CurveJets::new(c, t)?;
    let f = frenet_from_jets(&j)?;
    if f.tau.abs() <= j.inflection_eps() {
        return Err(CurveError::ZeroTorsion { t });
    }
    let r_kappa = j.kappa().recip();
    let r_tau = j.tau().recip();
    let inner = r_tau * j.dds(r_kappa);
    let value = (r_kappa / r_tau).val() + j.dds(inner).val();
    if !value.is_finite() {
        return Err(CurveError::NonFinite { t });
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub point: Vec3,
    pub direction: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Plane {
    pub point: Vec3,
    pub normal: Vec3,
}

impl Plane {
    /// Signed distance `(r - r_P) . n`.
    pub fn offset(&self, r: Vec3) -> f64 {
        (r - self.point).dot(&self.normal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetLinesPlanes {
    pub tangent_line: Line,
    pub normal_line: Line,
    pub binormal_line: Line,
    /// Spanned by T and N; normal B.
    pub osculating_plane: Plane,
    /// Spanned by T and B; normal N.
    pub rectifying_plane: Plane,
    /// Spanned by N and B; normal T.
    pub normal_plane: Plane,
}

pub fn frenet_lines_and_planes<C: ParametricCurve + ?Sized>(c: &C, t: f64) -> Result<FrenetLinesPlanes, CurveError> {
    let f = frenet(c, t)?;
    let p = f.position;
    let line = |d| Line { point: p, direction: d };
    let plane = |n| Plane { point: p, normal: n };
    Ok(FrenetLinesPlanes {
        tangent_line: line(f.tangent),
        normal_line: line(f.normal),
        binormal_line: line(f.binormal),
        osculating_plane: plane(f.binormal),
        rectifying_plane: plane(f.normal),
        normal_plane: plane(f.tangent),
    })
}

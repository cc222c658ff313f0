//! Rebuilding a curve from its curvature and torsion functions.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use super::{derivatives_at, CurveError, ParametricCurve};
use crate::expr::BoundExpr;
use crate::numerics::{solve_field, taylor_jets, JetField, OdeSpec, Scalar, StepControl, Trajectory, Vec3};

/// A real function of arc length that can be evaluated on jets.
pub trait ScalarField1 {
    fn eval<S: Scalar>(&self, s: S) -> S;
}

impl ScalarField1 for f64 {
    fn eval<S: Scalar>(&self, _s: S) -> S {
        S::constant(*self)
    }
}

impl ScalarField1 for BoundExpr {
    fn eval<S: Scalar>(&self, s: S) -> S {
        self.eval_unchecked(&[s])
    }
}

/// Curvature of a curve as a function of its parameter.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureField<C>(pub C);

impl<C: ParametricCurve> ScalarField1 for CurvatureField<C> {
    fn eval<S: Scalar>(&self, s: S) -> S {
        let [_, rd, rdd, _] = derivatives_at(&self.0, s);
        let v = rd.norm();
        rd.cross(&rdd).norm() / (v * v * v)
    }
}

/// Torsion of a curve as a function of its parameter.
#[derive(Debug, Clone, Copy)]
pub struct TorsionField<C>(pub C);

impl<C: ParametricCurve> ScalarField1 for TorsionField<C> {
    fn eval<S: Scalar>(&self, s: S) -> S {
        let [_, rd, rdd, rddd] = derivatives_at(&self.0, s);
        let w = rd.cross(&rdd);
        rd.dot(&rdd.cross(&rddd)) / w.norm_squared()
    }
}

/// Initial point and Frenet frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetSeed {
    pub point: Vec3,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
}

impl Default for FrenetSeed {
    fn default() -> Self {
        FrenetSeed {
            point: Vec3::zero(),
            tangent: Vec3::new(1.0, 0.0, 0.0),
            normal: Vec3::new(0.0, 1.0, 0.0),
            binormal: Vec3::new(0.0, 0.0, 1.0),
        }
    }
}

impl FrenetSeed {
    /// Largest deviation from an orthonormal right-handed frame.
    pub fn defect(&self) -> f64 {
        let (t, n, b) = (self.tangent, self.normal, self.binormal);
        [
            t.norm() - 1.0,
            n.norm() - 1.0,
            b.norm() - 1.0,
            t.dot(&n),
            n.dot(&b),
            b.dot(&t),
            t.cross(&n).dot(&b) - 1.0,
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
    }
}

struct FrenetSystem<'a, K, T> {
    kappa: &'a K,
    tau: &'a T,
}

impl<K: ScalarField1, T: ScalarField1> JetField for FrenetSystem<'_, K, T> {
    fn dim(&self) -> usize {
        12
    }
    fn eval<S: Scalar>(&self, s: S, y: &[S], dy: &mut [S]) {
        let k = self.kappa.eval(s);
        let tau = self.tau.eval(s);
        for i in 0..3 {
            let (t, n, b) = (y[3 + i], y[6 + i], y[9 + i]);
            dy[i] = t;
            dy[3 + i] = k * n;
            dy[6 + i] = -(k * t) + tau * b;
            dy[9 + i] = -(tau * n);
        }
    }
}

fn project_frame(y: &mut [f64]) {
    let t = Vec3::new(y[3], y[4], y[5]).normalized();
    let n0 = Vec3::new(y[6], y[7], y[8]);
    let n = (n0 - t * n0.dot(&t)).normalized();
    let b = t.cross(&n);
    y[3..6].copy_from_slice(&t.to_array());
    y[6..9].copy_from_slice(&n.to_array());
    y[9..12].copy_from_slice(&b.to_array());
}

/// Output of [`reconstruct_from_kappa_tau`]: the integrated Frenet system,
/// evaluable as a curve in its arc-length parameter.
#[derive(Debug, Clone)]
pub struct ReconstructedCurve<K, T> {
    kappa: K,
    tau: T,
    spec: OdeSpec,
    pub length: f64,
    pub trajectory: Trajectory,
}

impl<K: ScalarField1, T: ScalarField1> ReconstructedCurve<K, T> {
    fn system(&self) -> FrenetSystem<'_, K, T> {
        FrenetSystem {
            kappa: &self.kappa,
            tau: &self.tau,
        }
    }

    /// The 12-component state `(r, T, N, B)` at arc length `s`.
    pub fn state_at(&self, s: f64) -> Vec<f64> {
        let tr = &self.trajectory;
        let i = tr.t.partition_point(|&x| x <= s).clamp(1, tr.len()) - 1;
        if tr.t[i] == s {
            return tr.y[i].clone();
        }
        let observer = |_: f64, y: &mut [f64]| {
            project_frame(y);
            StepControl::Projected
        };
        match solve_field(&self.system(), &tr.y[i], (tr.t[i], s), &self.spec, observer) {
            Ok(t) => t.last_y().to_vec(),
            Err(_) => vec![f64::NAN; 12],
        }
    }

    /// Accepted integration samples `(s, r)`.
    pub fn samples(&self) -> Vec<(f64, Vec3)> {
        self.trajectory
            .t
            .iter()
            .zip(&self.trajectory.y)
            .map(|(&s, y)| (s, Vec3::new(y[0], y[1], y[2])))
            .collect()
    }
}

impl<K: ScalarField1, T: ScalarField1> ParametricCurve for ReconstructedCurve<K, T> {
    fn eval<S: Scalar>(&self, s: S) -> Vec3<S> {
        let s0 = s.value();
        let y0 = self.state_at(s0);
        let jets = taylor_jets(&self.system(), s0, &y0);
        let h = s - s0;
        let poly = |k: usize| {
            let c = jets[k].taylor();
            let mut acc = S::constant(c[4]);
            for i in (0..4).rev() {
                acc = acc * h + c[i];
            }
            acc
        };
        Vec3::new(poly(0), poly(1), poly(2))
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, self.length)
    }
}

/// Integrates `r' = T, T' = kappa N, N' = -kappa T + tau B, B' = -tau N`
/// over `[0, length]`, re-orthonormalizing the frame after every step.
pub fn reconstruct_from_kappa_tau<K: ScalarField1, T: ScalarField1>(
    kappa: K,
    tau: T,
    seed: FrenetSeed,
    length: f64,
    spec: &OdeSpec,
) -> Result<ReconstructedCurve<K, T>, CurveError> {
    let defect = seed.defect();
    if !(defect <= 1e-10) {
        return Err(CurveError::NonOrthonormalSeed { defect });
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(CurveError::InvalidInput(format!("length must be positive, got {length}")));
    }
    for i in 0..=64 {
        let s = length * i as f64 / 64.0;
        let k: f64 = kappa.eval(s);
        if !(k > 0.0) {
            return Err(CurveError::NonPositiveCurvature { s, kappa: k });
        }
    }
    let mut y0 = Vec::with_capacity(12);
    for v in [seed.point, seed.tangent, seed.normal, seed.binormal] {
        y0.extend_from_slice(&v.to_array());
    }
    let system = FrenetSystem {
        kappa: &kappa,
        tau: &tau,
    };
    let mut bad: Option<(f64, f64)> = None;
    let trajectory = solve_field(&system, &y0, (0.0, length), spec, |s, y| {
        let k: f64 = kappa.eval(s);
        if !(k > 0.0) {
            bad = Some((s, k));
            return StepControl::Stop;
        }
        project_frame(y);
        StepControl::Projected
    })?;
    if let Some((s, kappa)) = bad {
        return Err(CurveError::NonPositiveCurvature { s, kappa });
    }
    Ok(ReconstructedCurve {
        kappa,
        tau,
        spec: *spec,
        length,
        trajectory,
    })
}

/// Proper rigid motion `q = R p + t` best matching `from` onto `to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RigidAlignment {
    pub rotation: [[f64; 3]; 3],
    pub translation: Vec3,
    /// Root-mean-square distance after alignment.
    pub rms: f64,
}

impl RigidAlignment {
    pub fn apply(&self, p: Vec3) -> Vec3 {
        let r = &self.rotation;
        Vec3::new(
            r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z,
            r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z,
            r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z,
        ) + self.translation
    }
}

/// Least-squares rotation and translation (Kabsch, via SVD).
pub fn rigid_align(from: &[Vec3], to: &[Vec3]) -> Result<RigidAlignment, CurveError> {
    if from.len() != to.len() || from.len() < 3 {
        return Err(CurveError::InvalidInput("alignment needs two equal-length sets of at least 3 points".into()));
    }
    let n = from.len() as f64;
    let centroid = |pts: &[Vec3]| pts.iter().fold(Vec3::zero(), |acc, p| acc + *p) * (1.0 / n);
    let (ca, cb) = (centroid(from), centroid(to));
    let mut h = Matrix3::<f64>::zeros();
    for (p, q) in from.iter().zip(to) {
        let a = *p - ca;
        let b = *q - cb;
        h += Vector3::new(a.x, a.y, a.z) * Vector3::new(b.x, b.y, b.z).transpose();
    }
    let svd = h.svd(true, true);
    let (u, v_t) = (svd.u.expect("requested U"), svd.v_t.expect("requested V^T"));
    let v = v_t.transpose();
    let d = (v * u.transpose()).determinant().signum();
    let rot = v * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, d)) * u.transpose();
    let mut rotation = [[0.0; 3]; 3];
    for (i, row) in rotation.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = rot[(i, j)];
        }
    }
    let mut out = RigidAlignment {
        rotation,
        translation: Vec3::zero(),
        rms: 0.0,
    };
    out.translation = cb - out.apply(ca);
    out.rms = (from.iter().zip(to).map(|(p, q)| (out.apply(*p) - *q).norm_squared()).sum::<f64>() / n).sqrt();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::test_curves::Helix;
    use super::super::{frenet, LinearReparam};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_curvature_closes_into_a_circle() {
        let c = reconstruct_from_kappa_tau(0.5, 0.0, FrenetSeed::default(), 4.0 * PI, &OdeSpec::default()).unwrap();
        let end = c.eval(4.0 * PI);
        assert!(end.norm() <= 1e-6, "{end:?}");
        let mid = c.eval(2.0 * PI);
        assert!((mid.distance(&Vec3::new(0.0, 4.0, 0.0))) < 1e-7);
    }

    #[test]
    fn helix_round_trip() {
        let rate = 1.0 / 1.25f64.sqrt();
        let helix = LinearReparam::new(Helix { a: 1.0, b: 0.5 }, 0.0, rate, (0.0, 4.0 * PI));
        let f0 = frenet(&helix, 0.0).unwrap();
        let seed = FrenetSeed {
            point: f0.position,
            tangent: f0.tangent,
            normal: f0.normal,
            binormal: f0.binormal,
        };
        let c = reconstruct_from_kappa_tau(
            CurvatureField(helix),
            TorsionField(helix),
            FrenetSeed::default(),
            4.0 * PI,
            &OdeSpec::default(),
        )
        .unwrap();
        let ss: Vec<f64> = (0..=40).map(|i| 4.0 * PI * i as f64 / 40.0).collect();
        let from: Vec<Vec3> = ss.iter().map(|&s| c.eval(s)).collect();
        let to: Vec<Vec3> = ss.iter().map(|&s| helix.eval(s)).collect();
        let fit = rigid_align(&from, &to).unwrap();
        assert!(fit.rms <= 1e-5, "rms {}", fit.rms);
        for &s in &ss[1..] {
            let f = frenet(&c, s).unwrap();
            assert!((f.kappa - 0.8).abs() <= 1e-6 && (f.tau - 0.4).abs() <= 1e-6, "{f:?}");
        }
        // starting from the helix's own frame needs no alignment at all
        let direct = reconstruct_from_kappa_tau(0.8, 0.4, seed, 4.0 * PI, &OdeSpec::default()).unwrap();
        assert!(direct.eval(7.0).distance(&helix.eval(7.0)) < 1e-6);
    }

    #[test]
    fn rotated_seed_gives_congruent_trace() {
        let a = reconstruct_from_kappa_tau(0.7, 0.0, FrenetSeed::default(), 6.0, &OdeSpec::default()).unwrap();
        let (c, s) = (0.6f64.cos(), 0.6f64.sin());
        let seed = FrenetSeed {
            point: Vec3::new(1.0, 2.0, 3.0),
            tangent: Vec3::new(c, 0.0, s),
            normal: Vec3::new(0.0, 1.0, 0.0),
            binormal: Vec3::new(-s, 0.0, c),
        };
        let b = reconstruct_from_kappa_tau(0.7, 0.0, seed, 6.0, &OdeSpec::default()).unwrap();
        let ss: Vec<f64> = (0..=30).map(|i| 0.2 * i as f64).collect();
        let pa: Vec<Vec3> = ss.iter().map(|&x| a.eval(x)).collect();
        let pb: Vec<Vec3> = ss.iter().map(|&x| b.eval(x)).collect();
        assert!(rigid_align(&pa, &pb).unwrap().rms < 1e-7);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            reconstruct_from_kappa_tau(0.0, 0.0, FrenetSeed::default(), 1.0, &OdeSpec::default()),
            Err(CurveError::NonPositiveCurvature { .. })
        ));
        let skew = FrenetSeed {
            normal: Vec3::new(0.1, 1.0, 0.0),
            ..FrenetSeed::default()
        };
        assert!(matches!(
            reconstruct_from_kappa_tau(1.0, 0.0, skew, 1.0, &OdeSpec::default()),
            Err(CurveError::NonOrthonormalSeed { .. })
        ));
    }

    #[test]
    fn alignment_rejects_reflections() {
        let p = [Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0), Vec3::zero()];
        let q: Vec<Vec3> = p.iter().map(|v| Vec3::new(v.x, v.y, -v.z)).collect();
        assert!(rigid_align(&p, &q).unwrap().rms > 0.1);
    }
}

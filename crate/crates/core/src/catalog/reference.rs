use crate::numerics::Vec3;

/// Gaussian curvature of the central quadric `x²/A + y²/B + z²/C = 1` at a
/// point on it, where `A`, `B`, `C` carry the signs of the canonical form:
/// `K = 1 / (A B C (x²/A² + y²/B² + z²/C²)²)`.
pub fn quadric_gaussian_curvature(q: [f64; 3], x: Vec3) -> f64 {
    let s = x.x * x.x / (q[0] * q[0]) + x.y * x.y / (q[1] * q[1]) + x.z * x.z / (q[2] * q[2]);
    1.0 / (q[0] * q[1] * q[2] * s * s)
}

/// `(K, H)` of the graph `z = f(u, v)` with the upward normal, from
/// `grad = (f_u, f_v)` and `hess = (f_uu, f_uv, f_vv)`.
pub fn monge_curvatures(grad: [f64; 2], hess: [f64; 3]) -> (f64, f64) {
    let [fu, fv] = grad;
    let [fuu, fuv, fvv] = hess;
    let w = 1.0 + fu * fu + fv * fv;
    let k = (fuu * fvv - fuv * fuv) / (w * w);
    let h = ((1.0 + fv * fv) * fuu - 2.0 * fu * fv * fuv + (1.0 + fu * fu) * fvv) / (2.0 * w.powf(1.5));
    (k, h)
}

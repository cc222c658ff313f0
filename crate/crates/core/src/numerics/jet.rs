//! Truncated Taylor arithmetic.
//!
//! Coefficients are stored as Taylor coefficients (`f^(k)/k!`); the public
//! accessors return plain derivatives. A jet produced by differentiating
//! another jet loses its top order, and the lost coefficients are set to NaN,
//! so any result that depends on them is NaN instead of silently wrong.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::{powf_taylor, recip_taylor, Elementary, Scalar};

const FACT: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];

/// Value and derivatives up to order 4 of a function of one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet1<S = f64> {
    c: [S; 5],
}

impl<S: Scalar> Jet1<S> {
    pub const ORDER: usize = 4;

    pub fn constant(value: S) -> Self {
        let z = S::zero();
        Jet1 { c: [value, z, z, z, z] }
    }

    /// The identity seed: `t` itself, with unit first derivative.
    pub fn variable(value: S) -> Self {
        let z = S::zero();
        Jet1 { c: [value, S::one(), z, z, z] }
    }

    pub fn lift(value: S, is_variable: bool) -> Self {
        if is_variable {
            Self::variable(value)
        } else {
            Self::constant(value)
        }
    }

    /// Builds a jet from derivatives `d^k f`, `k = 0..=4`.
    pub fn from_derivatives(d: [S; 5]) -> Self {
        let mut c = d;
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = *ck / FACT[k];
        }
        Jet1 { c }
    }

    pub fn from_taylor(c: [S; 5]) -> Self {
        Jet1 { c }
    }

    pub fn taylor(&self) -> &[S; 5] {
        &self.c
    }

    pub fn val(&self) -> S {
        self.c[0]
    }

    /// `d^k f`.
    pub fn derivative(&self, k: usize) -> S {
        self.c[k] * FACT[k]
    }

    pub fn derivatives(&self) -> [S; 5] {
        let mut d = self.c;
        for (k, dk) in d.iter_mut().enumerate() {
            *dk = *dk * FACT[k];
        }
        d
    }

    /// The jet of `f'`; the top coefficient becomes undefined.
    pub fn differentiate(&self) -> Self {
        let mut c = [S::constant(f64::NAN); 5];
        for k in 0..4 {
            c[k] = self.c[k + 1] * (k as f64 + 1.0);
        }
        Jet1 { c }
    }

    /// Antiderivative with constant `c0`; the former top coefficient is dropped.
    pub fn integrate(&self, c0: S) -> Self {
        let mut c = [c0; 5];
        for k in 0..4 {
            c[k + 1] = self.c[k] / (k as f64 + 1.0);
        }
        Jet1 { c }
    }

    fn compose(self, g: [S; 5]) -> Self {
        let mut h = self;
        h.c[0] = S::zero();
        let mut acc = Jet1::constant(g[4]);
        for k in (0..4).rev() {
            acc = acc * h + Jet1::constant(g[k]);
        }
        acc
    }

    fn mul_jets(a: &Self, b: &Self) -> Self {
        let mut c = [S::zero(); 5];
        for (k, ck) in c.iter_mut().enumerate() {
            let mut s = a.c[0] * b.c[k];
            for i in 1..=k {
                s = s + a.c[i] * b.c[k - i];
            }
            *ck = s;
        }
        Jet1 { c }
    }

    fn map_coeffs(self, f: impl Fn(S) -> S) -> Self {
        Jet1 { c: self.c.map(f) }
    }

    fn zip_coeffs(self, other: Self, f: impl Fn(S, S) -> S) -> Self {
        let mut c = self.c;
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = f(*ck, other.c[k]);
        }
        Jet1 { c }
    }
}

impl From<f64> for Jet1<f64> {
    fn from(x: f64) -> Self {
        Jet1::constant(x)
    }
}

/// Partial derivatives of total order at most 3 of a function of two
/// parameters `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<S = f64> {
    c: [S; 10],
}

/// `(i, j)` exponents of each stored coefficient, in storage order.
const JET2_INDEX: [(usize, usize); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

const fn jet2_slot(i: usize, j: usize) -> usize {
    let n = i + j;
    n * (n + 1) / 2 + j
}

const JET2_PRODUCT_LEN: usize = 35;

/// `(out, a, b)` slot triples of the truncated Cauchy product.
const JET2_PRODUCT: [(u8, u8, u8); JET2_PRODUCT_LEN] = {
    let mut table = [(0u8, 0u8, 0u8); JET2_PRODUCT_LEN];
    let mut n = 0;
    let mut out = 0;
    while out < 10 {
        let (i, j) = JET2_INDEX[out];
        let mut p = 0;
        while p <= i {
            let mut q = 0;
            while q <= j {
                table[n] = (
                    out as u8,
                    jet2_slot(p, q) as u8,
                    jet2_slot(i - p, j - q) as u8,
                );
                n += 1;
                q += 1;
            }
            p += 1;
        }
        out += 1;
    }
    table
};

impl<S: Scalar> Jet2<S> {
    pub const ORDER: usize = 3;

    pub fn constant(value: S) -> Self {
        let mut c = [S::zero(); 10];
        c[0] = value;
        Jet2 { c }
    }

    /// Seed for the first parameter: `∂u = 1`.
    pub fn var_u(value: S) -> Self {
        let mut j = Self::constant(value);
        j.c[1] = S::one();
        j
    }

    /// Seed for the second parameter: `∂v = 1`.
    pub fn var_v(value: S) -> Self {
        let mut j = Self::constant(value);
        j.c[2] = S::one();
        j
    }

    pub fn val(&self) -> S {
        self.c[0]
    }

    /// `∂^(i+j) f / ∂u^i ∂v^j` for `i + j <= 3`.
    pub fn partial(&self, i: usize, j: usize) -> S {
        assert!(i + j <= 3, "partial of order {} exceeds jet order", i + j);
        self.c[jet2_slot(i, j)] * (FACT[i] * FACT[j])
    }

    pub fn du(&self) -> Self {
        self.shift(1, 0)
    }

    pub fn dv(&self) -> Self {
        self.shift(0, 1)
    }

    fn shift(&self, di: usize, dj: usize) -> Self {
        let mut c = [S::constant(f64::NAN); 10];
        for (slot, &(i, j)) in JET2_INDEX.iter().enumerate() {
            let (si, sj) = (i + di, j + dj);
            if si + sj <= 3 {
                let factor = if di == 1 { si } else { sj } as f64;
                c[slot] = self.c[jet2_slot(si, sj)] * factor;
            }
        }
        Jet2 { c }
    }

    fn compose(self, g: [S; 5]) -> Self {
        let mut h = self;
        h.c[0] = S::zero();
        let mut acc = Jet2::constant(g[3]);
        for k in (0..3).rev() {
            acc = acc * h + Jet2::constant(g[k]);
        }
        acc
    }

    fn mul_jets(a: &Self, b: &Self) -> Self {
        let mut c = [S::zero(); 10];
        let mut first = [true; 10];
        for &(o, p, q) in JET2_PRODUCT.iter() {
            let term = a.c[p as usize] * b.c[q as usize];
            let o = o as usize;
            if first[o] {
                c[o] = term;
                first[o] = false;
            } else {
                c[o] = c[o] + term;
            }
        }
        Jet2 { c }
    }

    fn map_coeffs(self, f: impl Fn(S) -> S) -> Self {
        Jet2 { c: self.c.map(f) }
    }

    fn zip_coeffs(self, other: Self, f: impl Fn(S, S) -> S) -> Self {
        let mut c = self.c;
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = f(*ck, other.c[k]);
        }
        Jet2 { c }
    }
}

macro_rules! jet_impls {
    ($jet:ident) => {
        impl<S: Scalar> Add for $jet<S> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                self.zip_coeffs(rhs, |a, b| a + b)
            }
        }

        impl<S: Scalar> Sub for $jet<S> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self.zip_coeffs(rhs, |a, b| a - b)
            }
        }

        impl<S: Scalar> Mul for $jet<S> {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                Self::mul_jets(&self, &rhs)
            }
        }

        impl<S: Scalar> Div for $jet<S> {
            type Output = Self;
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn div(self, rhs: Self) -> Self {
                self * rhs.recip()
            }
        }

        impl<S: Scalar> Neg for $jet<S> {
            type Output = Self;
            fn neg(self) -> Self {
                self.map_coeffs(|a| -a)
            }
        }

        impl<S: Scalar> Add<f64> for $jet<S> {
            type Output = Self;
            fn add(mut self, rhs: f64) -> Self {
                self.c[0] = self.c[0] + rhs;
                self
            }
        }

        impl<S: Scalar> Sub<f64> for $jet<S> {
            type Output = Self;
            fn sub(mut self, rhs: f64) -> Self {
                self.c[0] = self.c[0] - rhs;
                self
            }
        }

        impl<S: Scalar> Mul<f64> for $jet<S> {
            type Output = Self;
            fn mul(self, rhs: f64) -> Self {
                self.map_coeffs(|a| a * rhs)
            }
        }

        impl<S: Scalar> Div<f64> for $jet<S> {
            type Output = Self;
            fn div(self, rhs: f64) -> Self {
                self.map_coeffs(|a| a / rhs)
            }
        }

        impl<S: Scalar> Scalar for $jet<S> {
            fn constant(x: f64) -> Self {
                $jet::constant(S::constant(x))
            }
            fn value(&self) -> f64 {
                self.c[0].value()
            }
            fn sin(self) -> Self {
                self.compose(Elementary::Sin.taylor(self.c[0]))
            }
            fn cos(self) -> Self {
                self.compose(Elementary::Cos.taylor(self.c[0]))
            }
            fn tan(self) -> Self {
                self.compose(Elementary::Tan.taylor(self.c[0]))
            }
            fn exp(self) -> Self {
                self.compose(Elementary::Exp.taylor(self.c[0]))
            }
            fn ln(self) -> Self {
                self.compose(Elementary::Ln.taylor(self.c[0]))
            }
            fn sqrt(self) -> Self {
                self.compose(Elementary::Sqrt.taylor(self.c[0]))
            }
            fn sinh(self) -> Self {
                self.compose(Elementary::Sinh.taylor(self.c[0]))
            }
            fn cosh(self) -> Self {
                self.compose(Elementary::Cosh.taylor(self.c[0]))
            }
            fn tanh(self) -> Self {
                self.compose(Elementary::Tanh.taylor(self.c[0]))
            }
            fn asin(self) -> Self {
                self.compose(Elementary::Asin.taylor(self.c[0]))
            }
            fn acos(self) -> Self {
                self.compose(Elementary::Acos.taylor(self.c[0]))
            }
            fn atan(self) -> Self {
                self.compose(Elementary::Atan.taylor(self.c[0]))
            }
            fn recip(self) -> Self {
                self.compose(recip_taylor(self.c[0]))
            }
            fn powf(self, p: f64) -> Self {
                self.compose(powf_taylor(self.c[0], p))
            }
        }
    };
}

jet_impls!(Jet1);
jet_impls!(Jet2);

impl<S: Scalar> Jet1<S> {
    /// Applies a named elementary function, rejecting arguments outside its
    /// real domain.
    pub fn try_apply(self, op: Elementary) -> Result<Self, super::NumericsError> {
        let x = self.value();
        if op.in_domain(x) {
            Ok(op.apply(self))
        } else {
            Err(super::NumericsError::Domain {
                function: op.name(),
                value: x,
            })
        }
    }
}

impl<S: Scalar> Jet2<S> {
    pub fn try_apply(self, op: Elementary) -> Result<Self, super::NumericsError> {
        let x = self.value();
        if op.in_domain(x) {
            Ok(op.apply(self))
        } else {
            Err(super::NumericsError::Domain {
                function: op.name(),
                value: x,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn lift_seeds() {
        assert_eq!(Jet1::lift(3.0, true).derivatives(), [3.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(Jet1::lift(PI, false).derivatives(), [PI, 0.0, 0.0, 0.0, 0.0]);
        let t = Jet1::variable(3.0);
        assert_eq!((t * t).derivatives(), [9.0, 6.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn elementary_at_zero() {
        let t = Jet1::variable(0.0);
        let s = t.sin().derivatives();
        for (a, b) in s.iter().zip([0.0, 1.0, 0.0, -1.0, 0.0]) {
            assert!(close(*a, b, 1e-15));
        }
        let e = t.exp().derivatives();
        for a in e {
            assert!(close(a, 1.0, 1e-15));
        }
    }

    #[test]
    fn derivative_of_square_matches_central_difference() {
        let d = (Jet1::variable(3.0) * Jet1::variable(3.0)).derivative(1);
        let h = 1e-5;
        let fd = ((3.0 + h) * (3.0 + h) - (3.0 - h) * (3.0 - h)) / (2.0 * h);
        assert!((d - fd).abs() < 1e-8);
        assert_eq!(d, 6.0);
    }

    #[test]
    fn differentiate_poisons_top_order() {
        let t = Jet1::variable(0.5);
        let d = t.sin().differentiate();
        assert!(close(d.val(), 0.5f64.cos(), 1e-15));
        assert!(d.derivative(4).is_nan());
        let dd = d * d;
        assert!(dd.derivative(3).is_finite());
        assert!(dd.derivative(4).is_nan());
    }

    #[test]
    fn jet2_seeds_and_mixed_partials() {
        let u = Jet2::var_u(0.3);
        let v = Jet2::var_v(-0.7);
        assert_eq!(u.partial(1, 0), 1.0);
        assert_eq!(u.partial(0, 1), 0.0);
        let f = u * u * v; // u^2 v
        assert!(close(f.partial(2, 1), 2.0, 1e-15));
        assert!(close(f.partial(1, 1), 2.0 * 0.3, 1e-15));
        assert!(close(f.partial(2, 0), 2.0 * -0.7, 1e-15));
        let g = (u * v).sin();
        // ∂u∂v sin(uv) = cos(uv) - uv sin(uv)
        let uv: f64 = 0.3 * -0.7;
        assert!(close(g.partial(1, 1), uv.cos() - uv * uv.sin(), 1e-14));
        assert!(g.du().partial(0, 1) == g.partial(1, 1));
        assert!(g.du().partial(2, 1).is_nan());
    }

    #[test]
    fn nested_jets_compose() {
        // f(t) = sin(t)^2 along u = t, evaluated as Jet2<Jet1>.
        let t = Jet1::variable(0.4);
        let u = Jet2::var_u(t);
        let f = u.sin() * u.sin();
        // ∂u f = sin(2u); its t-derivative at 0.4 is 2cos(0.8)
        let fu = f.partial(1, 0);
        assert!(close(fu.val(), 0.8f64.sin(), 1e-15));
        assert!(close(fu.derivative(1), 2.0 * 0.8f64.cos(), 1e-14));
    }

    #[test]
    fn domain_errors() {
        assert!(Jet1::variable(-1.0).try_apply(Elementary::Ln).is_err());
        assert!(Jet1::variable(1.0).try_apply(Elementary::Ln).is_ok());
        assert!(Jet2::var_u(2.0).try_apply(Elementary::Asin).is_err());
    }

    #[test]
    fn powi_repeated_multiplication() {
        let t = Jet1::variable(2.0);
        let p = t.powi(3).derivatives();
        assert_eq!(p, [8.0, 12.0, 12.0, 6.0, 0.0]);
        let q = t.powi(-1).derivatives();
        assert!(close(q[1], -0.25, 1e-15));
    }
}

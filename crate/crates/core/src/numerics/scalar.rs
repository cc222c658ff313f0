//! The scalar abstraction shared by plain `f64` evaluation and jet evaluation.
//!
//! Every parametric map in the crate is written once, generically over
//! [`Scalar`], and then evaluated on `f64` (values), [`Jet1`](super::Jet1)
//! (derivatives along one parameter), [`Jet2`](super::Jet2) (partials in two
//! parameters) or nested jets such as `Jet2<Jet1>` (surface partials along a
//! moving point).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Elementary functions understood by jets and by the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Sinh,
    Cosh,
    Tanh,
    Asin,
    Acos,
    Atan,
}

impl Elementary {
    pub const ALL: [Elementary; 12] = [
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Tan,
        Elementary::Exp,
        Elementary::Ln,
        Elementary::Sqrt,
        Elementary::Sinh,
        Elementary::Cosh,
        Elementary::Tanh,
        Elementary::Asin,
        Elementary::Acos,
        Elementary::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Tan => "tan",
            Elementary::Exp => "exp",
            Elementary::Ln => "log",
            Elementary::Sqrt => "sqrt",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
            Elementary::Tanh => "tanh",
            Elementary::Asin => "asin",
            Elementary::Acos => "acos",
            Elementary::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Elementary> {
        match name {
            "ln" => Some(Elementary::Ln),
            _ => Elementary::ALL.iter().copied().find(|e| e.name() == name),
        }
    }

    /// Whether `x` lies in the real domain where the function and its
    /// derivatives are finite.
    pub fn in_domain(self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self {
            Elementary::Ln => x > 0.0,
            Elementary::Sqrt => x > 0.0,
            Elementary::Asin | Elementary::Acos => x > -1.0 && x < 1.0,
            Elementary::Tan => x.cos() != 0.0,
            _ => true,
        }
    }

    /// Applies the function to any scalar.
    pub fn apply<S: Scalar>(self, x: S) -> S {
        match self {
            Elementary::Sin => x.sin(),
            Elementary::Cos => x.cos(),
            Elementary::Tan => x.tan(),
            Elementary::Exp => x.exp(),
            Elementary::Ln => x.ln(),
            Elementary::Sqrt => x.sqrt(),
            Elementary::Sinh => x.sinh(),
            Elementary::Cosh => x.cosh(),
            Elementary::Tanh => x.tanh(),
            Elementary::Asin => x.asin(),
            Elementary::Acos => x.acos(),
            Elementary::Atan => x.atan(),
        }
    }

    /// Taylor coefficients `g^(k)(x)/k!`, `k = 0..=4`, of the function at `x`.
    pub fn taylor<S: Scalar>(self, x: S) -> [S; 5] {
        match self {
            Elementary::Sin => {
                let (s, c) = (x.sin(), x.cos());
                [s, c, -s / 2.0, -c / 6.0, s / 24.0]
            }
            Elementary::Cos => {
                let (s, c) = (x.sin(), x.cos());
                [c, -s, -c / 2.0, s / 6.0, c / 24.0]
            }
            Elementary::Tan => {
                let t = x.tan();
                let t2 = t * t;
                let sec2 = t2 + 1.0;
                [
                    t,
                    sec2,
                    t * sec2,
                    sec2 * (t2 * 6.0 + 2.0) / 6.0,
                    t * sec2 * (t2 * 3.0 + 2.0) / 3.0,
                ]
            }
            Elementary::Exp => {
                let e = x.exp();
                [e, e, e / 2.0, e / 6.0, e / 24.0]
            }
            Elementary::Ln => {
                let r = x.recip();
                let r2 = r * r;
                [x.ln(), r, -r2 / 2.0, r2 * r / 3.0, -(r2 * r2) / 4.0]
            }
            Elementary::Sqrt => {
                let s = x.sqrt();
                let r = s.recip();
                let r2 = r * r;
                let r3 = r2 * r;
                [s, r / 2.0, -r3 / 8.0, r3 * r2 / 16.0, -(r3 * r2 * r2) * (5.0 / 128.0)]
            }
            Elementary::Sinh => {
                let (s, c) = (x.sinh(), x.cosh());
                [s, c, s / 2.0, c / 6.0, s / 24.0]
            }
            Elementary::Cosh => {
                let (s, c) = (x.sinh(), x.cosh());
                [c, s, c / 2.0, s / 6.0, c / 24.0]
            }
            Elementary::Tanh => {
                let y = x.tanh();
                let y2 = y * y;
                let d1 = -y2 + 1.0;
                [
                    y,
                    d1,
                    -(y * d1),
                    d1 * (y2 * 6.0 - 2.0) / 6.0,
                    d1 * y * (-(y2 * 24.0) + 16.0) / 24.0,
                ]
            }
            Elementary::Atan => {
                let q = (x * x + 1.0).recip();
                let q2 = q * q;
                [
                    x.atan(),
                    q,
                    -(x * q2),
                    (x * x * 6.0 - 2.0) * q2 * q / 6.0,
                    x * (-(x * x) + 1.0) * q2 * q2,
                ]
            }
            Elementary::Asin | Elementary::Acos => {
                let w = (-(x * x) + 1.0).sqrt().recip();
                let w2 = w * w;
                let w3 = w2 * w;
                let w5 = w3 * w2;
                let c = [
                    w,
                    x * w3 / 2.0,
                    (x * x * 2.0 + 1.0) * w5 / 6.0,
                    x * (x * x * 2.0 + 3.0) * w5 * w2 / 8.0,
                ];
                if self == Elementary::Asin {
                    [x.asin(), c[0], c[1], c[2], c[3]]
                } else {
                    [x.acos(), -c[0], -c[1], -c[2], -c[3]]
                }
            }
        }
    }
}

/// Taylor coefficients of `x^p` for a constant real exponent.
pub fn powf_taylor<S: Scalar>(x: S, p: f64) -> [S; 5] {
    let mut out = [S::constant(0.0); 5];
    let mut binom = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = x.powf(p - k as f64) * binom;
        binom *= (p - k as f64) / (k as f64 + 1.0);
    }
    out
}

/// Taylor coefficients of `1/x`.
pub fn recip_taylor<S: Scalar>(x: S) -> [S; 5] {
    let r = x.recip();
    let r2 = r * r;
    [r, -r2, r2 * r, -(r2 * r2), r2 * r2 * r]
}

/// Number-like type closed under arithmetic and the elementary functions.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn constant(x: f64) -> Self;

    /// The plain value (the order-zero coefficient, recursively).
    fn value(&self) -> f64;

    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn asin(self) -> Self;
    fn acos(self) -> Self;
    fn atan(self) -> Self;
    fn recip(self) -> Self;
    fn powf(self, p: f64) -> Self;

    fn zero() -> Self {
        Self::constant(0.0)
    }

    fn one() -> Self {
        Self::constant(1.0)
    }

    /// Integer power by repeated multiplication.
    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// General power `self^p = exp(p ln self)`; requires a positive base.
    fn pow(self, p: Self) -> Self {
        (p * self.ln()).exp()
    }

    /// `atan2(self, x)` for the value, extended smoothly to jets where
    /// `(x, self)` stays away from the origin.
    fn atan2(self, x: Self) -> Self {
        let y = self;
        let (yv, xv) = (y.value(), x.value());
        let base = yv.atan2(xv);
        // Differentiate through whichever ratio is well-conditioned, then
        // shift the value to the principal branch of atan2.
        let smooth = if xv.abs() >= yv.abs() {
            (y / x).atan()
        } else {
            -(x / y).atan()
        };
        smooth + (base - smooth.value())
    }
}

impl Scalar for f64 {
    fn constant(x: f64) -> Self {
        x
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn tan(self) -> Self {
        f64::tan(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn asin(self) -> Self {
        f64::asin(self)
    }
    fn acos(self) -> Self {
        f64::acos(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
}

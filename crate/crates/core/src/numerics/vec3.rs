use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::jet::{Jet1, Jet2};
use super::scalar::Scalar;

/// A vector in Euclidean 3-space over any scalar type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3<S = f64> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Vec3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(S::zero(), S::zero(), S::zero())
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_squared(&self) -> S {
        self.dot(self)
    }

    pub fn norm(&self) -> S {
        self.norm_squared().sqrt()
    }

    pub fn scale(&self, k: S) -> Self {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn map<T>(&self, f: impl Fn(S) -> T) -> Vec3<T> {
        Vec3 {
            x: f(self.x),
            y: f(self.y),
            z: f(self.z),
        }
    }

    pub fn value(&self) -> Vec3<f64> {
        self.map(|c| c.value())
    }

    pub fn to_array(&self) -> [S; 3] {
        [self.x, self.y, self.z]
    }
}

impl Vec3<f64> {
    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    /// Unit vector in the same direction; NaN for the zero vector.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(1.0 / n)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn distance(&self, o: &Self) -> f64 {
        (*self - *o).norm()
    }
}

impl<S: Scalar> Vec3<Jet1<S>> {
    /// Componentwise derivative of a jet-valued vector.
    pub fn differentiate(&self) -> Self {
        self.map(|c| c.differentiate())
    }

    pub fn derivative(&self, k: usize) -> Vec3<S> {
        self.map(|c| c.derivative(k))
    }

    pub fn val(&self) -> Vec3<S> {
        self.map(|c| c.val())
    }
}

impl<S: Scalar> Vec3<Jet2<S>> {
    pub fn du(&self) -> Self {
        self.map(|c| c.du())
    }

    pub fn dv(&self) -> Self {
        self.map(|c| c.dv())
    }

    pub fn partial(&self, i: usize, j: usize) -> Vec3<S> {
        self.map(|c| c.partial(i, j))
    }

    pub fn val(&self) -> Vec3<S> {
        self.map(|c| c.val())
    }
}

impl<S: Scalar> Add for Vec3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<S: Scalar> Sub for Vec3<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<S: Scalar> Neg for Vec3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<S: Scalar> Mul<f64> for Vec3<S> {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Serialize for Vec3<f64> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        [self.x, self.y, self.z].serialize(s)
    }
}

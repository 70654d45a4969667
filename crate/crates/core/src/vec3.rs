use std::ops::{Add, Mul, Neg, Sub};

use crate::jet::{Jet, Scalar};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3<T = f64> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn splat(x: f64) -> Self {
        Vec3::new(T::from_f64(x), T::from_f64(x), T::from_f64(x))
    }

    pub fn zero() -> Self {
        Self::splat(0.0)
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn mul_scalar(&self, k: T) -> Self {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn div_scalar(&self, k: T) -> Self {
        Vec3::new(self.x / k, self.y / k, self.z / k)
    }

    pub fn normalized(&self) -> Self {
        self.div_scalar(self.norm())
    }

    pub fn value(&self) -> Vec3<f64> {
        Vec3::new(self.x.value(), self.y.value(), self.z.value())
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x.value(), self.y.value(), self.z.value()]
    }
}

impl<const N: usize> Vec3<Jet<N>> {
    pub fn deriv(&self) -> Self {
        Vec3::new(self.x.deriv(), self.y.deriv(), self.z.deriv())
    }

    pub fn constant(v: Vec3<f64>) -> Self {
        Vec3::new(Jet::constant(v.x), Jet::constant(v.y), Jet::constant(v.z))
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Vec3<f64>> for f64 {
    type Output = Vec3<f64>;
    fn mul(self, v: Vec3<f64>) -> Vec3<f64> {
        v.mul_scalar(self)
    }
}

impl<T: Scalar> From<[f64; 3]> for Vec3<T> {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(T::from_f64(a[0]), T::from_f64(a[1]), T::from_f64(a[2]))
    }
}

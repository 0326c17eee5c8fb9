//! Plane points and 2×2 matrices.
//!
//! Everything here is `Copy` and allocation-free; the 2×2 solve is done with
//! an explicit determinant (Cramer's rule).

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A state `(x, y)` in the plane. Also used for plane vectors (field values, gradients).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Plane vectors share the point representation.
pub type Vec2 = Point2;

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Returns `self` if both coordinates are finite, otherwise `NonFinitePoint`.
    pub fn finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinitePoint {
                x: self.x,
                y: self.y,
            })
        }
    }

    /// Maps a non-finite value to `EvaluationOverflow`.
    pub(crate) fn checked(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::EvaluationOverflow)
        }
    }

    pub fn dot(&self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.x, s * self.y)
    }

    /// Applies the constant skew matrix `K = [[0, 1], [-1, 0]]`.
    pub fn skew(&self) -> Self {
        Self::new(self.y, -self.x)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, rhs: Point2) -> Point2 {
        rhs.scale(self)
    }
}

/// Row-major 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);
    /// The skew matrix `[[0, 1], [-1, 0]]`.
    pub const SKEW: Mat2 = Mat2::new(0.0, 1.0, -1.0, 0.0);

    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn from_rows(r1: Vec2, r2: Vec2) -> Self {
        Self::new(r1.x, r1.y, r2.x, r2.y)
    }

    pub fn row1(&self) -> Vec2 {
        Vec2::new(self.m11, self.m12)
    }

    pub fn row2(&self) -> Vec2 {
        Vec2::new(self.m21, self.m22)
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.m11, s * self.m12, s * self.m21, s * self.m22)
    }

    pub fn is_finite(&self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.m11
            .abs()
            .max(self.m12.abs())
            .max(self.m21.abs())
            .max(self.m22.abs())
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m11 * v.x + self.m12 * v.y,
            self.m21 * v.x + self.m22 * v.y,
        )
    }

    /// `pᵀ M q`.
    pub fn bilinear(&self, p: Vec2, q: Vec2) -> f64 {
        p.dot(self.mul_vec(q))
    }

    /// Inverse, or `None` when `|det| <= tol`.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let det = self.det();
        if !(det.abs() > tol) {
            return None;
        }
        let inv = 1.0 / det;
        Some(Self::new(
            self.m22 * inv,
            -self.m12 * inv,
            -self.m21 * inv,
            self.m11 * inv,
        ))
    }

    /// Solves `M x = rhs` by Cramer's rule. `None` when `|det| <= tol`.
    pub fn solve(&self, rhs: Vec2, tol: f64) -> Option<Vec2> {
        let det = self.det();
        if !(det.abs() > tol) {
            return None;
        }
        Some(Vec2::new(
            (rhs.x * self.m22 - self.m12 * rhs.y) / det,
            (self.m11 * rhs.y - rhs.x * self.m21) / det,
        ))
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 + r.m11,
            self.m12 + r.m12,
            self.m21 + r.m21,
            self.m22 + r.m22,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 - r.m11,
            self.m12 - r.m12,
            self.m21 - r.m21,
            self.m22 - r.m22,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * r.m11 + self.m12 * r.m21,
            self.m11 * r.m12 + self.m12 * r.m22,
            self.m21 * r.m11 + self.m22 * r.m21,
            self.m21 * r.m12 + self.m22 * r.m22,
        )
    }
}

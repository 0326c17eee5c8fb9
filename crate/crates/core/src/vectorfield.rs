//! Planar quadratic vector fields `f(p) = (pᵀA₁p, pᵀA₂p) + Bp + c`.
//!
//! The quadratic coefficient matrices are always stored symmetric: any input
//! matrix `A` is replaced by `(A + Aᵀ)/2` at construction. The polarization
//! `Q̄(p, q) = (pᵀA₁q, pᵀA₂q)` is then the unique symmetric bilinear map with
//! `Q̄(p, p)` equal to the quadratic part of `f(p)`.

use crate::error::Result;
use crate::linalg::{Mat2, Point2, Vec2};

/// A quadratic vector field in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticField2 {
    quad: [Mat2; 2],
    lin: Mat2,
    constant: Vec2,
}

/// Structural report produced by [`QuadraticField2::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldDiagnostics {
    /// `max |A_i - A_iᵀ|` over both components; zero for every constructed field.
    pub asymmetry: f64,
    /// At least one coefficient is NaN or infinite.
    pub non_finite: bool,
    /// `B = 0` and `c = 0` exactly.
    pub homogeneous: bool,
}

impl FieldDiagnostics {
    pub fn is_ok(&self) -> bool {
        self.asymmetry == 0.0 && !self.non_finite
    }
}

fn symmetrize(a: Mat2) -> Mat2 {
    let off = 0.5 * (a.m12 + a.m21);
    Mat2::new(a.m11, off, off, a.m22)
}

impl QuadraticField2 {
    /// Builds a field from quadratic matrices (symmetrized), linear part and constant part.
    pub fn new(a1: Mat2, a2: Mat2, lin: Mat2, constant: Vec2) -> Self {
        Self {
            quad: [symmetrize(a1), symmetrize(a2)],
            lin,
            constant,
        }
    }

    /// A homogeneous quadratic field (`B = 0`, `c = 0`).
    pub fn homogeneous(a1: Mat2, a2: Mat2) -> Self {
        Self::new(a1, a2, Mat2::ZERO, Vec2::ORIGIN)
    }

    /// A purely linear field `f(p) = Bp`.
    pub fn linear(lin: Mat2) -> Self {
        Self::new(Mat2::ZERO, Mat2::ZERO, lin, Vec2::ORIGIN)
    }

    /// Builds a homogeneous field from monomial coefficients:
    /// component i is `xx[i]·x² + xy[i]·xy + yy[i]·y²`.
    pub fn from_monomials(xx: [f64; 2], xy: [f64; 2], yy: [f64; 2]) -> Self {
        let m = |i: usize| Mat2::new(xx[i], 0.5 * xy[i], 0.5 * xy[i], yy[i]);
        Self::homogeneous(m(0), m(1))
    }

    pub fn quad(&self) -> &[Mat2; 2] {
        &self.quad
    }

    pub fn lin(&self) -> Mat2 {
        self.lin
    }

    pub fn constant(&self) -> Vec2 {
        self.constant
    }

    /// `Q̄(p, q)`: component i is `pᵀA_i q`.
    pub fn polarize(&self, p: Point2, q: Point2) -> Result<Vec2> {
        p.finite()?;
        q.finite()?;
        self.polarize_unchecked(p, q).checked()
    }

    pub(crate) fn polarize_unchecked(&self, p: Point2, q: Point2) -> Vec2 {
        Vec2::new(self.quad[0].bilinear(p, q), self.quad[1].bilinear(p, q))
    }

    /// `f(p) = Q̄(p, p) + Bp + c`.
    pub fn eval(&self, p: Point2) -> Result<Vec2> {
        p.finite()?;
        (self.polarize_unchecked(p, p) + self.lin.mul_vec(p) + self.constant).checked()
    }

    /// Exact derivative of [`eval`](Self::eval): row i is `2(A_i p)ᵀ + B_i`.
    pub fn jacobian(&self, p: Point2) -> Result<Mat2> {
        p.finite()?;
        let r1 = self.quad[0].mul_vec(p).scale(2.0) + self.lin.row1();
        let r2 = self.quad[1].mul_vec(p).scale(2.0) + self.lin.row2();
        let j = Mat2::from_rows(r1, r2);
        if j.is_finite() {
            Ok(j)
        } else {
            Err(crate::Error::EvaluationOverflow)
        }
    }

    pub fn validate(&self) -> FieldDiagnostics {
        let asymmetry = self
            .quad
            .iter()
            .map(|a| (a.m12 - a.m21).abs())
            .fold(0.0, f64::max);
        let non_finite = !(self.quad.iter().all(Mat2::is_finite)
            && self.lin.is_finite()
            && self.constant.is_finite());
        let homogeneous = self.lin == Mat2::ZERO && self.constant == Vec2::ORIGIN;
        FieldDiagnostics {
            asymmetry,
            non_finite,
            homogeneous,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(2xy, -(4x² + 2y²))`, the canonical quartic family field.
    fn canonical() -> QuadraticField2 {
        QuadraticField2::from_monomials([0.0, -4.0], [2.0, 0.0], [0.0, -2.0])
    }

    #[test]
    fn eval_examples() {
        let f = canonical();
        assert_eq!(f.eval(Point2::new(1.0, 1.0)).unwrap(), Vec2::new(2.0, -6.0));
        assert_eq!(
            f.eval(Point2::new(2.0, 2.0)).unwrap(),
            Vec2::new(8.0, -24.0)
        );
        assert_eq!(f.eval(Point2::ORIGIN).unwrap(), Vec2::ORIGIN);
    }

    #[test]
    fn polarize_examples() {
        let f = canonical();
        assert_eq!(f.quad()[0], Mat2::new(0.0, 1.0, 1.0, 0.0));
        assert_eq!(f.quad()[1], Mat2::new(-4.0, 0.0, 0.0, -2.0));
        let v = f
            .polarize(Point2::new(1.0, 0.0), Point2::new(0.0, 1.0))
            .unwrap();
        assert_eq!(v, Vec2::new(1.0, 0.0));
        let z = f.polarize(Point2::new(0.3, -1.7), Point2::ORIGIN).unwrap();
        assert_eq!(z, Vec2::ORIGIN);
    }

    #[test]
    fn jacobian_examples() {
        let f = canonical();
        let j = f.jacobian(Point2::new(1.0, 1.0)).unwrap();
        assert_eq!(j, Mat2::new(2.0, 2.0, -8.0, -4.0));

        let b = Mat2::new(0.5, -1.0, 2.0, 0.25);
        let g = QuadraticField2::new(f.quad()[0], f.quad()[1], b, Vec2::ORIGIN);
        assert_eq!(g.jacobian(Point2::ORIGIN).unwrap(), b);
    }

    #[test]
    fn asymmetric_input_is_symmetrized() {
        let f = QuadraticField2::homogeneous(Mat2::new(1.0, 3.0, -1.0, 0.0), Mat2::ZERO);
        assert_eq!(f.quad()[0], Mat2::new(1.0, 1.0, 1.0, 0.0));
        assert_eq!(f.validate().asymmetry, 0.0);
    }

    #[test]
    fn validate_flags() {
        let d = canonical().validate();
        assert!(d.homogeneous && d.is_ok());

        let lin = QuadraticField2::linear(Mat2::SKEW).validate();
        assert!(!lin.homogeneous);

        let bad =
            QuadraticField2::new(Mat2::ZERO, Mat2::ZERO, Mat2::ZERO, Vec2::new(f64::NAN, 0.0));
        assert!(bad.validate().non_finite);
        assert!(!bad.validate().is_ok());
    }

    #[test]
    fn non_finite_input_rejected() {
        let f = canonical();
        assert!(matches!(
            f.eval(Point2::new(f64::NAN, 0.0)),
            Err(crate::Error::NonFinitePoint { .. })
        ));
        assert_eq!(
            f.eval(Point2::new(1e200, 1e200)),
            Err(crate::Error::EvaluationOverflow)
        );
    }
}

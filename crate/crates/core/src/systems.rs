//! The two integrable families of planar systems `ṗ = φ(p)·K∇H(p)`.
//!
//! * quartic: `H = L²Q` with `L = ax + by`, `Q = cx² + 2dxy + ey²`, `φ = 1/L`;
//! * sextic: `H = l₁l₂²l₃³` with `l₁ = ax + by`, `l₂ = cx + dy`, `l₃ = ex + fy`,
//!   `φ = 1/(l₂l₃²)`.
//!
//! In both cases `φ` cancels against a factor of `∇H`, so the vector field is
//! stored as a homogeneous quadratic polynomial and the Kahan step never
//! divides by a linear form.

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Point2, Vec2};
use crate::vectorfield::QuadraticField2;

/// Default magnitude below which a denominator factor counts as a pole.
pub const DEFAULT_POLE_TOL: f64 = 1e-12;

/// The linear form `u·x + v·y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearForm {
    pub u: f64,
    pub v: f64,
}

impl LinearForm {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn eval(&self, p: Point2) -> f64 {
        self.u * p.x + self.v * p.y
    }

    pub fn grad(&self) -> Vec2 {
        Vec2::new(self.u, self.v)
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0.0 && self.v == 0.0
    }

    /// Euclidean distance from `p` to the zero line of the form.
    pub fn distance(&self, p: Point2) -> f64 {
        self.eval(p).abs() / self.u.hypot(self.v)
    }

    /// `u·v' − v·u'`; zero iff the two forms are proportional.
    pub fn cross(&self, other: &LinearForm) -> f64 {
        self.u * other.v - self.v * other.u
    }
}

/// Symmetric matrix `S` with `pᵀSp = (g·p)(k·p)`.
fn product_form(g: Vec2, k: Vec2) -> Mat2 {
    let off = 0.5 * (g.x * k.y + g.y * k.x);
    Mat2::new(g.x * k.x, off, off, g.y * k.y)
}

/// Turns the quadratic forms `(V₁, V₂)` of a vector `v(p)` into the field `K v(p)`.
fn skew_field(v1: Mat2, v2: Mat2) -> QuadraticField2 {
    QuadraticField2::homogeneous(v2, v1.scale(-1.0))
}

fn all_finite(values: &[f64]) -> bool {
    values.iter().all(|v| v.is_finite())
}

/// Parameters of `H = (ax+by)²(cx²+2dxy+ey²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl QuarticParams {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        Self { a, b, c, d, e }
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    fn linear(&self) -> LinearForm {
        LinearForm::new(self.a, self.b)
    }

    /// Symmetric matrix of `Q`.
    fn quadric(&self) -> Mat2 {
        Mat2::new(self.c, self.d, self.d, self.e)
    }

    fn check(&self) -> Result<()> {
        if !all_finite(&self.as_array()) {
            return Err(Error::DegenerateParams(
                "quartic parameters must be finite".into(),
            ));
        }
        if self.a == 0.0 && self.b == 0.0 {
            return Err(Error::DegenerateParams(
                "quartic: (a, b) must be nonzero".into(),
            ));
        }
        if self.c == 0.0 && self.d == 0.0 && self.e == 0.0 {
            return Err(Error::DegenerateParams(
                "quartic: (c, d, e) must be nonzero".into(),
            ));
        }
        Ok(())
    }
}

/// Parameters of `H = (ax+by)(cx+dy)²(ex+fy)³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SexticParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl SexticParams {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self { a, b, c, d, e, f }
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn forms(&self) -> [LinearForm; 3] {
        [
            LinearForm::new(self.a, self.b),
            LinearForm::new(self.c, self.d),
            LinearForm::new(self.e, self.f),
        ]
    }

    /// `(ad − bc, cf − ed, eb − fa)`.
    pub fn cross_determinants(&self) -> [f64; 3] {
        [
            self.a * self.d - self.b * self.c,
            self.c * self.f - self.e * self.d,
            self.e * self.b - self.f * self.a,
        ]
    }

    fn check(&self) -> Result<()> {
        if !all_finite(&self.as_array()) {
            return Err(Error::DegenerateParams(
                "sextic parameters must be finite".into(),
            ));
        }
        for (name, form) in ["(a, b)", "(c, d)", "(e, f)"].iter().zip(self.forms()) {
            if form.is_zero() {
                return Err(Error::DegenerateParams(format!(
                    "sextic: {name} must be nonzero"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Quartic,
    Sextic,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Quartic => "quartic",
            Family::Sextic => "sextic",
        }
    }

    /// Number of real parameters the family takes.
    pub fn arity(&self) -> usize {
        match self {
            Family::Quartic => 5,
            Family::Sextic => 6,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quartic" => Ok(Family::Quartic),
            "sextic" => Ok(Family::Sextic),
            other => Err(Error::InvalidArgument(format!(
                "unknown family '{other}' (expected quartic or sextic)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyParams {
    Quartic(QuarticParams),
    Sextic(SexticParams),
}

impl FamilyParams {
    /// Builds parameters from a flat list, checking the arity against the family.
    pub fn from_slice(family: Family, values: &[f64]) -> Result<Self> {
        if values.len() != family.arity() {
            return Err(Error::InvalidArgument(format!(
                "{family} family expects {} parameters, got {}",
                family.arity(),
                values.len()
            )));
        }
        let v = values;
        Ok(match family {
            Family::Quartic => {
                FamilyParams::Quartic(QuarticParams::new(v[0], v[1], v[2], v[3], v[4]))
            }
            Family::Sextic => {
                FamilyParams::Sextic(SexticParams::new(v[0], v[1], v[2], v[3], v[4], v[5]))
            }
        })
    }

    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Quartic(_) => Family::Quartic,
            FamilyParams::Sextic(_) => Family::Sextic,
        }
    }
}

/// Quartic constants `D = ce − d²` and `E = 2abd − a²e − b²c`; independent of `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticConstants {
    pub big_d: f64,
    pub big_e: f64,
}

/// Sextic constants for a given step size `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SexticConstants {
    /// `h(ad − bc)`
    pub d12: f64,
    /// `h(cf − ed)`
    pub d23: f64,
    /// `h(eb − fa)`
    pub d31: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
    pub a6: f64,
    pub a7: f64,
}

impl SexticConstants {
    /// Derives `a₃ … a₇` from the scaled cross determinants.
    pub fn from_determinants(d12: f64, d23: f64, d31: f64) -> Self {
        Self {
            d12,
            d23,
            d31,
            a3: -9.0 * d23 * d23 / 4.0,
            a4: -d12 * d12 / 4.0,
            a5: -9.0 * d31 * d31 / 4.0,
            a6: -4.0 * d12 * d12,
            a7: 3.0 * d12 * d23 / 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InvariantConstants {
    Quartic(QuarticConstants),
    Sextic(SexticConstants),
}

impl InvariantConstants {
    /// Labeled values in a fixed order (`D, E` or `d12 … a7`).
    pub fn labeled(&self) -> Vec<(&'static str, f64)> {
        match self {
            InvariantConstants::Quartic(q) => vec![("D", q.big_d), ("E", q.big_e)],
            InvariantConstants::Sextic(s) => vec![
                ("d12", s.d12),
                ("d23", s.d23),
                ("d31", s.d31),
                ("a3", s.a3),
                ("a4", s.a4),
                ("a5", s.a5),
                ("a6", s.a6),
                ("a7", s.a7),
            ],
        }
    }
}

/// One instance of a family: vector field plus evaluators for `H`, `∇H`, `H̃` and the
/// invariant measure density.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    params: FamilyParams,
    field: QuadraticField2,
    pole_tol: f64,
    warnings: Vec<String>,
}

impl SystemSpec {
    pub fn build(params: FamilyParams) -> Result<Self> {
        match params {
            FamilyParams::Quartic(p) => Self::build_quartic(p),
            FamilyParams::Sextic(p) => Self::build_sextic(p),
        }
    }

    /// Field `K(2Q∇L + L∇Q)`, the cancelled form of `(1/L)·K∇(L²Q)`.
    pub fn build_quartic(params: QuarticParams) -> Result<Self> {
        params.check()?;
        let g = params.linear().grad();
        let q = params.quadric();
        // component n of 2Q∇L + L∇Q is 2gₙQ(p) + 2(g·p)(qₙ·p)
        let v1 = q.scale(2.0 * g.x) + product_form(g, q.row1()).scale(2.0);
        let v2 = q.scale(2.0 * g.y) + product_form(g, q.row2()).scale(2.0);
        Ok(Self {
            params: FamilyParams::Quartic(params),
            field: skew_field(v1, v2),
            pole_tol: DEFAULT_POLE_TOL,
            warnings: Vec::new(),
        })
    }

    /// Field `K(l₂l₃∇l₁ + 2l₁l₃∇l₂ + 3l₁l₂∇l₃)`, the cancelled form of
    /// `1/(l₂l₃²)·K∇(l₁l₂²l₃³)`.
    pub fn build_sextic(params: SexticParams) -> Result<Self> {
        params.check()?;
        let [g1, g2, g3] = params.forms().map(|l| l.grad());
        let s23 = product_form(g2, g3);
        let s13 = product_form(g1, g3);
        let s12 = product_form(g1, g2);
        let component =
            |n: fn(Vec2) -> f64| s23.scale(n(g1)) + s13.scale(2.0 * n(g2)) + s12.scale(3.0 * n(g3));
        let v1 = component(|g| g.x);
        let v2 = component(|g| g.y);

        let mut warnings = Vec::new();
        let labels = ["ad-bc", "cf-ed", "eb-fa"];
        for (label, det) in labels.iter().zip(params.cross_determinants()) {
            if det == 0.0 {
                warnings.push(format!(
                    "degenerate family: {label} = 0 (proportional linear forms)"
                ));
            }
        }
        Ok(Self {
            params: FamilyParams::Sextic(params),
            field: skew_field(v1, v2),
            pole_tol: DEFAULT_POLE_TOL,
            warnings,
        })
    }

    /// Replaces the pole tolerance used by `H̃` and the measure density.
    pub fn with_pole_tol(mut self, tol: f64) -> Self {
        self.pole_tol = tol;
        self
    }

    pub fn pole_tol(&self) -> f64 {
        self.pole_tol
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn field(&self) -> &QuadraticField2 {
        &self.field
    }

    /// Set when two of the sextic linear forms are proportional.
    pub fn is_degenerate(&self) -> bool {
        !self.warnings.is_empty()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Linear forms whose zero lines carry the singularities of `φ`, `H̃` and the
    /// measure. For the quartic family this includes the real factors of `Q`, if any.
    pub fn singular_lines(&self) -> Vec<LinearForm> {
        match &self.params {
            FamilyParams::Quartic(q) => {
                let mut lines = vec![q.linear()];
                lines.extend(real_factors(q.c, q.d, q.e));
                lines
            }
            FamilyParams::Sextic(s) => s.forms().to_vec(),
        }
    }

    /// Distance from `p` to the nearest singular line.
    pub fn singular_line_distance(&self, p: Point2) -> f64 {
        self.singular_lines()
            .iter()
            .map(|l| l.distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn hamiltonian(&self, p: Point2) -> Result<f64> {
        p.finite()?;
        let h = match &self.params {
            FamilyParams::Quartic(q) => {
                let l = q.linear().eval(p);
                l * l * q.quadric().bilinear(p, p)
            }
            FamilyParams::Sextic(s) => {
                let [l1, l2, l3] = s.forms().map(|l| l.eval(p));
                l1 * l2 * l2 * l3 * l3 * l3
            }
        };
        finite_value(h)
    }

    pub fn grad_hamiltonian(&self, p: Point2) -> Result<Vec2> {
        p.finite()?;
        let g = match &self.params {
            FamilyParams::Quartic(q) => {
                let lf = q.linear();
                let l = lf.eval(p);
                let qm = q.quadric();
                let qv = qm.bilinear(p, p);
                // 2LQ∇L + L²∇Q, ∇Q = 2·qm·p
                lf.grad().scale(2.0 * l * qv) + qm.mul_vec(p).scale(2.0 * l * l)
            }
            FamilyParams::Sextic(s) => {
                let [f1, f2, f3] = s.forms();
                let (l1, l2, l3) = (f1.eval(p), f2.eval(p), f3.eval(p));
                f1.grad().scale(l2 * l2 * l3 * l3 * l3)
                    + f2.grad().scale(2.0 * l1 * l2 * l3 * l3 * l3)
                    + f3.grad().scale(3.0 * l1 * l2 * l2 * l3 * l3)
            }
        };
        g.checked()
    }

    /// The scalar factor `φ`: `1/L` (quartic) or `1/(l₂l₃²)` (sextic).
    pub fn phi(&self, p: Point2) -> Result<f64> {
        p.finite()?;
        let den = match &self.params {
            FamilyParams::Quartic(q) => q.linear().eval(p),
            FamilyParams::Sextic(s) => {
                let [_, f2, f3] = s.forms();
                let l3 = f3.eval(p);
                f2.eval(p) * l3 * l3
            }
        };
        if !(den.abs() >= self.pole_tol) {
            return Err(Error::MeasureSingularity { denominator: den });
        }
        finite_value(1.0 / den)
    }

    pub fn invariant_constants(&self, h: f64) -> InvariantConstants {
        match &self.params {
            FamilyParams::Quartic(q) => InvariantConstants::Quartic(QuarticConstants {
                big_d: q.c * q.e - q.d * q.d,
                big_e: 2.0 * q.a * q.b * q.d - q.a * q.a * q.e - q.b * q.b * q.c,
            }),
            FamilyParams::Sextic(s) => {
                let [c12, c23, c31] = s.cross_determinants();
                InvariantConstants::Sextic(SexticConstants::from_determinants(
                    h * c12,
                    h * c23,
                    h * c31,
                ))
            }
        }
    }

    /// The modified Hamiltonian `H̃` conserved by the Kahan map with step `h`.
    pub fn modified_hamiltonian(&self, h: f64, p: Point2) -> Result<f64> {
        self.modified_hamiltonian_with(h, &self.invariant_constants(h), p)
    }

    /// `H̃` evaluated with explicitly supplied constants.
    ///
    /// * quartic: `H / (P₁P₂)`, `P₁ = 1 + h²DL² + h²EQ`, `P₂ = 1 + 9h²DL² + h²EQ`;
    /// * sextic: `H / (F₁F₂F₃)`, `F₁ = 1 + a₅l₂²`, `F₂ = 1 + a₃l₁² + a₄l₃² + a₇l₁l₃`,
    ///   `F₃ = 1 + a₅l₂² + a₆l₃²`.
    ///
    /// Fails with `PoleOfModifiedHamiltonian` if any factor is below the pole tolerance,
    /// and with `InvalidArgument` if the constants belong to the other family.
    pub fn modified_hamiltonian_with(
        &self,
        h: f64,
        constants: &InvariantConstants,
        p: Point2,
    ) -> Result<f64> {
        p.finite()?;
        if !h.is_finite() {
            return Err(Error::InvalidArgument("step size must be finite".into()));
        }
        let ham = self.hamiltonian(p)?;
        let factors: Vec<f64> = match (&self.params, constants) {
            (FamilyParams::Quartic(q), InvariantConstants::Quartic(k)) => {
                let l = q.linear().eval(p);
                let qv = q.quadric().bilinear(p, p);
                let h2 = h * h;
                vec![
                    1.0 + h2 * k.big_d * l * l + h2 * k.big_e * qv,
                    1.0 + 9.0 * h2 * k.big_d * l * l + h2 * k.big_e * qv,
                ]
            }
            (FamilyParams::Sextic(s), InvariantConstants::Sextic(k)) => {
                let [l1, l2, l3] = s.forms().map(|l| l.eval(p));
                vec![
                    1.0 + k.a5 * l2 * l2,
                    1.0 + k.a3 * l1 * l1 + k.a4 * l3 * l3 + k.a7 * l1 * l3,
                    1.0 + k.a5 * l2 * l2 + k.a6 * l3 * l3,
                ]
            }
            _ => {
                return Err(Error::InvalidArgument(
                    "invariant constants do not match the system family".into(),
                ))
            }
        };
        let mut den = 1.0;
        for factor in factors {
            if !(factor.abs() >= self.pole_tol) {
                return Err(Error::PoleOfModifiedHamiltonian { factor });
            }
            den *= factor;
        }
        finite_value(ham / den)
    }

    /// Density of the invariant measure: `1/(LQ)` or `1/(l₁l₂l₃)`.
    pub fn measure_density(&self, p: Point2) -> Result<f64> {
        p.finite()?;
        let den = match &self.params {
            FamilyParams::Quartic(q) => q.linear().eval(p) * q.quadric().bilinear(p, p),
            FamilyParams::Sextic(s) => {
                let [l1, l2, l3] = s.forms().map(|l| l.eval(p));
                l1 * l2 * l3
            }
        };
        if !(den.abs() >= self.pole_tol) {
            return Err(Error::MeasureSingularity { denominator: den });
        }
        finite_value(1.0 / den)
    }
}

fn finite_value(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::EvaluationOverflow)
    }
}

/// Real linear factors of `cx² + 2dxy + ey²`, empty when the form is definite.
fn real_factors(c: f64, d: f64, e: f64) -> Vec<LinearForm> {
    let disc = d * d - c * e;
    if disc < 0.0 {
        return Vec::new();
    }
    let root = disc.sqrt();
    let mut out = Vec::new();
    if c != 0.0 {
        // c(x - t₁y)(x - t₂y), tᵢ roots of ct² + 2dt + e
        for t in [(-d + root) / c, (-d - root) / c] {
            out.push(LinearForm::new(1.0, -t));
        }
    } else {
        // y(2dx + ey)
        out.push(LinearForm::new(0.0, 1.0));
        out.push(LinearForm::new(2.0 * d, e));
    }
    out.retain(|l| !l.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic_canonical() -> SystemSpec {
        SystemSpec::build_quartic(QuarticParams::new(1.0, 0.0, 1.0, 0.0, 1.0)).unwrap()
    }

    fn sextic_canonical() -> SystemSpec {
        SystemSpec::build_sextic(SexticParams::new(1.0, 0.0, 0.0, 1.0, 1.0, 1.0)).unwrap()
    }

    #[test]
    fn quartic_field_expansions() {
        let s = quartic_canonical();
        let expected = QuadraticField2::from_monomials([0.0, -4.0], [2.0, 0.0], [0.0, -2.0]);
        assert_eq!(s.field(), &expected);

        // L = y, Q = x² + y²: field (2x² + 4y², −2xy)
        let s2 = SystemSpec::build_quartic(QuarticParams::new(0.0, 1.0, 1.0, 0.0, 1.0)).unwrap();
        let expected = QuadraticField2::from_monomials([2.0, 0.0], [0.0, -2.0], [4.0, 0.0]);
        assert_eq!(s2.field(), &expected);
        assert!(s2.field().validate().homogeneous);
    }

    #[test]
    fn sextic_field_expansion() {
        let s = sextic_canonical();
        let expected = QuadraticField2::from_monomials([2.0, 0.0], [5.0, -4.0], [0.0, -1.0]);
        assert_eq!(s.field(), &expected);
        assert_eq!(
            s.field().eval(Point2::new(1.0, 1.0)).unwrap(),
            Vec2::new(7.0, -5.0)
        );
        assert_eq!(s.field().eval(Point2::ORIGIN).unwrap(), Vec2::ORIGIN);
        assert!(!s.is_degenerate());
    }

    #[test]
    fn hamiltonian_examples() {
        let q = quartic_canonical();
        let s = sextic_canonical();
        let one = Point2::new(1.0, 1.0);
        assert_eq!(q.hamiltonian(one).unwrap(), 2.0);
        assert_eq!(s.hamiltonian(one).unwrap(), 8.0);
        assert_eq!(q.hamiltonian(Point2::ORIGIN).unwrap(), 0.0);
        assert_eq!(s.hamiltonian(Point2::ORIGIN).unwrap(), 0.0);
    }

    #[test]
    fn gradient_examples() {
        let q = quartic_canonical();
        // ∇(x⁴ + x²y²) = (4x³ + 2xy², 2x²y)
        assert_eq!(
            q.grad_hamiltonian(Point2::new(1.0, 1.0)).unwrap(),
            Vec2::new(6.0, 2.0)
        );
        assert_eq!(q.grad_hamiltonian(Point2::ORIGIN).unwrap(), Vec2::ORIGIN);
        assert_eq!(
            sextic_canonical().grad_hamiltonian(Point2::ORIGIN).unwrap(),
            Vec2::ORIGIN
        );
    }

    #[test]
    fn constants_examples() {
        let q = quartic_canonical();
        let k = q.invariant_constants(0.1);
        assert_eq!(
            k,
            InvariantConstants::Quartic(QuarticConstants {
                big_d: 1.0,
                big_e: -1.0
            })
        );
        assert_eq!(q.invariant_constants(0.0), k);

        let s = sextic_canonical();
        let InvariantConstants::Sextic(k) = s.invariant_constants(0.1) else {
            panic!("wrong family")
        };
        let expected = [0.1, -0.1, -0.1, -0.0225, -0.0025, -0.0225, -0.04, -0.015];
        let got = [k.d12, k.d23, k.d31, k.a3, k.a4, k.a5, k.a6, k.a7];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-15, "{g} vs {e}");
        }
        let InvariantConstants::Sextic(z) = s.invariant_constants(0.0) else {
            panic!("wrong family")
        };
        assert!([z.d12, z.d23, z.d31, z.a3, z.a4, z.a5, z.a6, z.a7]
            .iter()
            .all(|v| *v == 0.0));
    }

    #[test]
    fn modified_hamiltonian_examples() {
        let q = quartic_canonical();
        let s = sextic_canonical();
        let one = Point2::new(1.0, 1.0);
        assert_eq!(
            q.modified_hamiltonian(0.0, one).unwrap(),
            q.hamiltonian(one).unwrap()
        );
        assert_eq!(
            s.modified_hamiltonian(0.0, one).unwrap(),
            s.hamiltonian(one).unwrap()
        );
        let expected = 2.0 / (0.99 * 1.07);
        assert!((q.modified_hamiltonian(0.1, one).unwrap() - expected).abs() < 1e-14);
        assert_eq!(q.modified_hamiltonian(0.1, Point2::ORIGIN).unwrap(), 0.0);
        assert_eq!(s.modified_hamiltonian(0.1, Point2::ORIGIN).unwrap(), 0.0);
    }

    #[test]
    fn modified_hamiltonian_pole() {
        let q = quartic_canonical();
        // P₁ = 1 − h²y² vanishes at y = 1/h
        let err = q
            .modified_hamiltonian(0.5, Point2::new(0.3, 2.0))
            .unwrap_err();
        assert!(matches!(err, Error::PoleOfModifiedHamiltonian { .. }));
    }

    #[test]
    fn mismatched_constants_rejected() {
        let q = quartic_canonical();
        let k = sextic_canonical().invariant_constants(0.1);
        assert!(matches!(
            q.modified_hamiltonian_with(0.1, &k, Point2::new(1.0, 1.0)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn measure_examples() {
        let one = Point2::new(1.0, 1.0);
        assert_eq!(quartic_canonical().measure_density(one).unwrap(), 0.5);
        assert_eq!(sextic_canonical().measure_density(one).unwrap(), 0.5);
        let err = quartic_canonical()
            .measure_density(Point2::new(0.0, 1.3))
            .unwrap_err();
        assert!(matches!(err, Error::MeasureSingularity { .. }));
    }

    #[test]
    fn degenerate_params_rejected() {
        assert!(matches!(
            SystemSpec::build_quartic(QuarticParams::new(0.0, 0.0, 1.0, 0.0, 1.0)),
            Err(Error::DegenerateParams(_))
        ));
        assert!(SystemSpec::build_quartic(QuarticParams::new(1.0, 0.0, 0.0, 0.0, 0.0)).is_err());
        assert!(SystemSpec::build_sextic(SexticParams::new(1.0, 0.0, 0.0, 0.0, 1.0, 1.0)).is_err());
        assert!(
            SystemSpec::build_quartic(QuarticParams::new(f64::NAN, 0.0, 1.0, 0.0, 1.0)).is_err()
        );
    }

    #[test]
    fn proportional_forms_warn() {
        let s = SystemSpec::build_sextic(SexticParams::new(1.0, 1.0, 2.0, 2.0, 1.0, -1.0)).unwrap();
        assert!(s.is_degenerate());
        assert_eq!(s.warnings().len(), 1);
    }

    #[test]
    fn arity_checked() {
        let err = FamilyParams::from_slice(Family::Quartic, &[1.0, 0.0, 1.0, 0.0]).unwrap_err();
        assert!(err.to_string().contains("expects 5"));
        assert!(FamilyParams::from_slice(Family::Sextic, &[1.0; 6]).is_ok());
    }

    #[test]
    fn indefinite_quadric_lines() {
        // Q = x² − y² = (x − y)(x + y)
        let s = SystemSpec::build_quartic(QuarticParams::new(1.0, 2.0, 1.0, 0.0, -1.0)).unwrap();
        assert_eq!(s.singular_lines().len(), 3);
        assert!(s.singular_line_distance(Point2::new(1.0, 1.0)) < 1e-15);
        assert!(s.singular_line_distance(Point2::new(1.0, -1.0)) < 1e-15);
        // Q = 2xy: c = 0 branch
        let s = SystemSpec::build_quartic(QuarticParams::new(1.0, 2.0, 0.0, 1.0, 0.0)).unwrap();
        assert!(s.singular_line_distance(Point2::new(0.0, 1.0)) < 1e-15);
        assert!(s.singular_line_distance(Point2::new(1.0, 0.0)) < 1e-15);
        assert_eq!(quartic_canonical().singular_lines().len(), 1);
    }
}

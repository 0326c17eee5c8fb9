#![allow(dead_code)]

use kahan_core::{
    kahan, Mat2, Point2, QuadraticField2, QuarticParams, SexticParams, StepConfig, SystemSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn quartic_canonical() -> SystemSpec {
    SystemSpec::build_quartic(QuarticParams::new(1.0, 0.0, 1.0, 0.0, 1.0)).unwrap()
}

pub fn sextic_canonical() -> SystemSpec {
    SystemSpec::build_sextic(SexticParams::new(1.0, 0.0, 0.0, 1.0, 1.0, 1.0)).unwrap()
}

fn draw(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-2.0..2.0)
}

/// Random quartic parameters in [-2, 2] with near-degenerate draws rejected.
pub fn random_quartic(rng: &mut impl Rng) -> SystemSpec {
    loop {
        let p = QuarticParams::new(draw(rng), draw(rng), draw(rng), draw(rng), draw(rng));
        if p.a.hypot(p.b) > 0.2 && (p.c.abs() + p.d.abs() + p.e.abs()) > 0.2 {
            return SystemSpec::build_quartic(p).unwrap();
        }
    }
}

/// Random sextic parameters in [-2, 2] with near-degenerate and near-proportional draws rejected.
pub fn random_sextic(rng: &mut impl Rng) -> SystemSpec {
    loop {
        let p = SexticParams::new(
            draw(rng),
            draw(rng),
            draw(rng),
            draw(rng),
            draw(rng),
            draw(rng),
        );
        let forms_ok = p.forms().iter().all(|l| l.u.hypot(l.v) > 0.2);
        let cross_ok = p.cross_determinants().iter().all(|d| d.abs() > 0.1);
        if forms_ok && cross_ok {
            return SystemSpec::build_sextic(p).unwrap();
        }
    }
}

pub fn random_point(rng: &mut impl Rng, half_width: f64) -> Point2 {
    Point2::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

/// Central finite-difference Jacobian of `g`.
pub fn fd_jacobian(g: impl Fn(Point2) -> Point2, p: Point2, step: f64) -> Mat2 {
    let dx = Point2::new(step, 0.0);
    let dy = Point2::new(0.0, step);
    let cx = (g(p + dx) - g(p - dx)).scale(0.5 / step);
    let cy = (g(p + dy) - g(p - dy)).scale(0.5 / step);
    Mat2::new(cx.x, cy.x, cx.y, cy.y)
}

/// `|det(I − (h/2)J_f(p))|`, the conditioning of the Kahan solve at `p`.
pub fn solve_det(field: &QuadraticField2, h: f64, p: Point2) -> f64 {
    (Mat2::IDENTITY - field.jacobian(p).unwrap().scale(0.5 * h))
        .det()
        .abs()
}

pub fn step(field: &QuadraticField2, h: f64, p: Point2) -> Point2 {
    kahan::step(field, &StepConfig::new(h).unwrap(), p).unwrap()
}

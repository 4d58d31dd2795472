use std::f64::consts::PI;

use num_complex::Complex64;

use super::cubic::cubic_roots;
use crate::error::{Error, Result};

/// `|Y|` of the branch points: `2^{1/3} / 3^{1/2}`.
pub fn corner_radius() -> f64 {
    2f64.cbrt() / 3f64.sqrt()
}

/// `±C e^{iπ/6}`, `±C e^{5iπ/6}`, ordered counter-clockwise from `arg = π/6`.
pub fn corner_points() -> [Complex64; 4] {
    let c = corner_radius();
    [PI / 6.0, 5.0 * PI / 6.0, -5.0 * PI / 6.0, -PI / 6.0].map(|a| Complex64::from_polar(c, a))
}

/// Points this close to a cut are rejected.
pub const CUT_MARGIN: f64 = 1e-6;

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let t = (((p - a) * ab.conj()).re / ab.norm_sqr()).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance from `Y` to the two crossing cut segments.
pub fn distance_to_cuts(y: Complex64) -> f64 {
    let [c1, c2, c3, c4] = corner_points();
    // c3 = -c1, c4 = -c2
    segment_distance(y, c3, c1).min(segment_distance(y, c4, c2))
}

/// Start radius and minimum number of radial steps.
pub const START_RADIUS: f64 = 50.0;
pub const MIN_STEPS: usize = 200;
const MAX_HALVINGS: u32 = 40;

/// Continues a root of the monic cubic with coefficients `coeffs(Y)` radially
/// from `|Y| = max(50, 2|Y|)`, where it starts from the root nearest to
/// `start(Y)`, in to `Y`.
fn track(
    y: Complex64,
    what: &'static str,
    coeffs: impl Fn(Complex64) -> [Complex64; 3],
    start: impl Fn(Complex64) -> Complex64,
) -> Result<Complex64> {
    if distance_to_cuts(y) < CUT_MARGIN {
        return Err(Error::BranchCut {
            what,
            re: y.re,
            im: y.im,
        });
    }
    let theta = y.arg();
    let r_end = y.norm();
    let r_start = START_RADIUS.max(2.0 * r_end);
    let at = |r: f64| Complex64::from_polar(r, theta);
    let nearest = |r: f64, prev: Complex64| -> (Complex64, f64, f64) {
        let [a, b, c] = coeffs(at(r));
        let mut roots = cubic_roots(a, b, c);
        roots.sort_by(|p, q| (p - prev).norm().total_cmp(&(q - prev).norm()));
        (roots[0], (roots[0] - prev).norm(), (roots[1] - prev).norm())
    };
    let (mut value, _, _) = nearest(r_start, start(at(r_start)));

    fn advance(
        nearest: &dyn Fn(f64, Complex64) -> (Complex64, f64, f64),
        r0: f64,
        r1: f64,
        prev: Complex64,
        depth: u32,
    ) -> Option<Complex64> {
        let (root, d1, d2) = nearest(r1, prev);
        if d1 < 0.25 * d2 {
            return Some(root);
        }
        if depth >= MAX_HALVINGS {
            return None;
        }
        let mid = (r0 * r1).sqrt();
        let half = advance(nearest, r0, mid, prev, depth + 1)?;
        advance(nearest, mid, r1, half, depth + 1)
    }

    let ratio = (r_end / r_start).powf(1.0 / MIN_STEPS as f64);
    let mut r = r_start;
    for k in 1..=MIN_STEPS {
        let next = if k == MIN_STEPS { r_end } else { r * ratio };
        value = advance(&nearest, r, next, value, 0).ok_or(Error::Numerical(format!(
            "{what}: branch tracking is ambiguous near Y = {}",
            at(next)
        )))?;
        r = next;
    }
    Ok(value)
}

/// Root of `s(s-1)² = -Y⁶` continued radially from `s ≈ -Y²` at infinity.
pub fn s_of_y(y: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    track(
        y,
        "s(Y)",
        |y| [-2.0 * one, one, y.powu(6)],
        |y| -y * y + 2.0 / 3.0,
    )
}

/// Root of `8U³ + 2U - Y³ = 0` continued radially from `U ≈ Y/2`.
pub fn equilibrium_u_complex(y: Complex64) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    track(
        y,
        "U(Y)",
        |y| [zero, Complex64::new(0.25, 0.0), -y.powu(3) / 8.0],
        |y| y / 2.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::spectral::spectral;

    #[test]
    fn real_axis_matches_spectral() {
        for y in [0.7, 1.0, 2.5] {
            let s = s_of_y(Complex64::new(y, 0.0)).unwrap();
            let expect = spectral(y * y * y).unwrap().s;
            assert!(
                (s.re - expect).abs() < 1e-10 && s.im.abs() < 1e-10,
                "{s} {expect}"
            );
        }
    }

    #[test]
    fn imaginary_axis_is_real_above_one() {
        for t in [0.1, 0.5, 1.0, 3.0] {
            let s = s_of_y(Complex64::new(0.0, t)).unwrap();
            assert!(s.re > 1.0 && s.im.abs() < 1e-9, "{s}");
        }
    }

    #[test]
    fn cuts_are_rejected() {
        let p = corner_points()[0] * 0.5;
        assert!(matches!(s_of_y(p), Err(Error::BranchCut { .. })));
        assert!(s_of_y(Complex64::new(0.0, 0.0)).is_err());
    }
}

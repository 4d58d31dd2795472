use num_complex::Complex64;

fn cbrt(z: Complex64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return z;
    }
    Complex64::from_polar(z.norm().cbrt(), z.arg() / 3.0)
}

/// Roots of the monic cubic `z³ + a z² + b z + c`, each polished by Newton
/// steps. Order is unspecified.
pub fn cubic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    // z = w - a/3 gives w³ + p w + q = 0
    let a3 = a / 3.0;
    let p = b - a * a3;
    let q = 2.0 * a3 * a3 * a3 - a3 * b + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let c1 = -q / 2.0 + disc;
    let c2 = -q / 2.0 - disc;
    let big = if c1.norm() >= c2.norm() { c1 } else { c2 };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let mut roots = [Complex64::new(0.0, 0.0); 3];
    let u0 = cbrt(big);
    for (k, r) in roots.iter_mut().enumerate() {
        let u = u0 * omega.powu(k as u32);
        let w = if u.norm() == 0.0 {
            u
        } else {
            u - p / (3.0 * u)
        };
        *r = w - a3;
    }
    for r in &mut roots {
        for _ in 0..3 {
            let f = ((*r + a) * *r + b) * *r + c;
            let df = (3.0 * *r + 2.0 * a) * *r + b;
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    roots
}

/// The real root of `8U³ + 2U - y = 0` (unique for real `y`).
pub fn equilibrium_u_real(y: f64) -> f64 {
    // U³ + U/4 - y/8 = 0
    let p = 0.25;
    let q = -y / 8.0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u = (-q / 2.0 + disc).cbrt() + (-q / 2.0 - disc).cbrt();
    for _ in 0..3 {
        let f = (8.0 * u * u + 2.0) * u - y;
        let df = 24.0 * u * u + 2.0;
        u -= f / df;
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_known_cubic() {
        // (z-1)(z-2)(z+3) = z³ - 7z + 6
        let c = |x: f64| Complex64::new(x, 0.0);
        let mut r: Vec<f64> = cubic_roots(c(0.0), c(-7.0), c(6.0))
            .iter()
            .map(|z| z.re)
            .collect();
        r.sort_by(f64::total_cmp);
        for (x, e) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((x - e).abs() < 1e-13);
        }
    }

    #[test]
    fn equilibrium_value() {
        let u = equilibrium_u_real(1.0);
        assert!((8.0 * u * u * u + 2.0 * u - 1.0).abs() < 1e-15);
        assert!((u - 0.3411).abs() < 1e-4);
        assert_eq!(equilibrium_u_real(0.0), 0.0);
    }
}

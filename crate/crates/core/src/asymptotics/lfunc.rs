use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default Gauss–Legendre node count per integral.
pub const DEFAULT_NODES: usize = 200;

/// Agreement required between the `K`- and `2K`-node results.
pub const QUADRATURE_TOL: f64 = 1e-10;

type RuleCache = Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>;

fn rule(nodes: usize) -> Arc<Vec<(f64, f64)>> {
    static RULES: OnceLock<RuleCache> = OnceLock::new();
    let map = RULES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = map.lock().unwrap();
    map.entry(nodes)
        .or_insert_with(|| {
            let n = NonZeroUsize::new(nodes).expect("at least one node");
            Arc::new(GaussLegendre::new(n).as_node_weight_pairs().to_vec())
        })
        .clone()
}

/// `∫_a^b f` by `nodes`-point Gauss–Legendre.
fn integrate(nodes: usize, a: f64, b: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    rule(nodes)
        .iter()
        .map(|&(x, w)| f(mid + half * x) * w)
        .sum::<Complex64>()
        * half
}

fn principal_sqrt(mut w: Complex64) -> Complex64 {
    // approach the negative axis from above, as the principal branch does
    if w.im == 0.0 {
        w.im = 0.0;
    }
    w.sqrt()
}

/// The two straight-line integrals whose combination is `L(s)`.
///
/// First path `η = is(1 - sin²θ)`: the endpoint singularities cancel against
/// the Jacobian and the integrand is smooth in `θ`. Second path `η = i d u²`
/// removes the inverse square root at `η = 0`.
fn integrals(s: Complex64, nodes: usize) -> (Complex64, Complex64) {
    let i = Complex64::new(0.0, 1.0);
    let d = (1.0 - s) / 2.0;
    let bracket = |eta: Complex64| 2.0 + (eta - i * d) / (eta - i * s);

    let first = integrate(nodes, 0.0, FRAC_PI_2, |theta| {
        let sn = theta.sin();
        let t = sn * sn;
        let eta = i * s * (1.0 - t);
        // (-(η - is)/η)^{1/2} = tan θ; dη = -is · 2 sin θ cos θ dθ
        bracket(eta) * (-i * s) * (2.0 * sn * sn)
    });

    let second = if d.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        integrate(nodes, 0.0, 1.0, |u| {
            let eta = i * d * (u * u);
            let root = principal_sqrt((eta - i * s) / eta);
            // dη = 2 i d u du
            bracket(eta) * root * (2.0 * i * d * u)
        })
    };
    (first, second)
}

fn l_with(s: Complex64, nodes: usize) -> f64 {
    let (a, b) = integrals(s, nodes);
    (a - Complex64::new(0.0, 1.0) * b).re
}

/// `L(s)`, with a `K` versus `2K` node consistency check.
pub fn l_of_s(s: Complex64, nodes: usize) -> Result<f64> {
    if s.norm() == 0.0 {
        return Err(Error::Domain("L(s) is undefined at s = 0".into()));
    }
    let coarse = l_with(s, nodes);
    let fine = l_with(s, 2 * nodes);
    if !fine.is_finite() || (coarse - fine).abs() > QUADRATURE_TOL * (1.0 + fine.abs()) {
        return Err(Error::Numerical(format!(
            "quadrature for L({s}) did not settle: {coarse:e} vs {fine:e}"
        )));
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_on_unit_interval_part() {
        for s in [1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0] {
            let l = l_of_s(Complex64::new(s, 0.0), DEFAULT_NODES).unwrap();
            assert!(l.abs() < 1e-8, "L({s}) = {l}");
        }
    }
}

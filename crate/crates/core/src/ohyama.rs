//! Ohyama polynomials `R_n` with `u_n = R_{n+1} R_{n-1} / R_n²`, their zeros,
//! and containment of the rescaled zeros in the bow-tie region.

use rayon::prelude::*;
use rug::Float;

use crate::asymptotics::{boundary::SegmentKind, BoundaryCurve};
use crate::backlund::Lattice;
use crate::error::{Error, Result};
use crate::exactfield::{complex_roots, BigComplex, LaurentPolynomial, RationalFunction};

/// `R_0..=R_N` from the seeds `R_0 = 1`, `R_1 = ζ`.
#[derive(Clone, Debug)]
pub struct OhyamaSequence {
    pub polynomials: Vec<LaurentPolynomial>,
}

impl OhyamaSequence {
    pub fn seeds() -> [LaurentPolynomial; 2] {
        [LaurentPolynomial::one(), LaurentPolynomial::zeta()]
    }

    pub fn get(&self, n: usize) -> Option<&LaurentPolynomial> {
        self.polynomials.get(n)
    }

    pub fn n_max(&self) -> usize {
        self.polynomials.len() - 1
    }

    /// `u_n · R_n² == R_{n+1} · R_{n-1}` for `1 <= n < N`.
    pub fn product_identity_holds(&self, lattice: &mut Lattice, n: usize) -> Result<bool> {
        if n == 0 || n + 1 > self.n_max() {
            return Err(Error::Domain(format!(
                "product identity needs 1 <= n < {}",
                self.n_max()
            )));
        }
        let u = &lattice.solution(n as i64)?.u.value;
        let rn = RationalFunction::from(self.polynomials[n].clone());
        let lhs = &(u * &rn) * &rn;
        let rhs = RationalFunction::from(&self.polynomials[n + 1] * &self.polynomials[n - 1]);
        Ok(lhs == rhs)
    }
}

/// Builds `R_0..=R_{n_max}` by exact division. A nonzero remainder (a
/// non-polynomial `R_n`) is reported as [`Error::NotDivisible`].
pub fn ohyama_sequence(lattice: &mut Lattice, n_max: usize) -> Result<OhyamaSequence> {
    let mut polys: Vec<LaurentPolynomial> = OhyamaSequence::seeds().to_vec();
    for n in 1..n_max {
        let u = lattice.solution(n as i64)?.u.value.clone();
        let (num, den) = u.into_parts();
        let rn2 = polys[n].pow(2);
        // R_{n+1} = num · R_n² / (den · R_{n-1})
        let top = &num * &rn2;
        let bottom = &den * &polys[n - 1];
        let next = top.exact_divide(&bottom)?;
        if !next.is_polynomial() {
            return Err(Error::NotDivisible);
        }
        polys.push(next);
    }
    polys.truncate(n_max + 1);
    Ok(OhyamaSequence { polynomials: polys })
}

/// Zeros of `R_n` in the `ζ`-plane and rescaled to `Y = ζ / √n`.
#[derive(Clone, Debug)]
pub struct RootMap {
    pub n: usize,
    pub roots: Vec<(f64, f64)>,
    pub scaled_roots: Vec<(f64, f64)>,
    pub residuals: Vec<f64>,
    /// `Σ|c_k||ζ|^k` at each root.
    pub scales: Vec<f64>,
}

impl RootMap {
    pub fn max_scaled_modulus(&self) -> f64 {
        self.scaled_roots
            .iter()
            .map(|(a, b)| a.hypot(*b))
            .fold(0.0, f64::max)
    }
}

pub fn root_map(seq: &OhyamaSequence, n: usize, precision: u32) -> Result<RootMap> {
    let r = seq
        .get(n)
        .ok_or_else(|| Error::Domain(format!("R_{n} has not been computed")))?;
    let set = complex_roots(r, precision)?;
    let inv_sqrt = if n == 0 {
        Float::with_val(precision, 1)
    } else {
        Float::with_val(precision, n).sqrt().recip()
    };
    let scaled: Vec<(f64, f64)> = set
        .roots
        .iter()
        .map(|z: &BigComplex| z.scale(&inv_sqrt).to_f64())
        .collect();
    Ok(RootMap {
        n,
        roots: set.to_f64(),
        scaled_roots: scaled,
        residuals: set.residuals,
        scales: set.scales,
    })
}

/// Root maps for several `n` in parallel, in the order given.
pub fn root_maps(seq: &OhyamaSequence, ns: &[usize], precision: u32) -> Result<Vec<RootMap>> {
    ns.par_iter()
        .map(|&n| root_map(seq, n, precision))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentReport {
    pub n: usize,
    pub dilation: f64,
    pub inside: usize,
    pub outside: usize,
    pub max_modulus: f64,
}

impl ContainmentReport {
    pub fn all_inside(&self) -> bool {
        self.outside == 0
    }
}

/// Even-odd test against closed polygons. Points on an edge count as inside.
pub fn point_in_polygons(pt: (f64, f64), polygons: &[Vec<(f64, f64)>]) -> bool {
    const EDGE: f64 = 1e-12;
    let (px, py) = pt;
    let mut inside = false;
    for poly in polygons {
        let m = poly.len();
        for i in 0..m {
            let (x1, y1) = poly[i];
            let (x2, y2) = poly[(i + 1) % m];
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len2 = dx * dx + dy * dy;
            let t = if len2 > 0.0 {
                (((px - x1) * dx + (py - y1) * dy) / len2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            if (px - x1 - t * dx).hypot(py - y1 - t * dy) <= EDGE {
                return true;
            }
            if (y1 > py) != (y2 > py) {
                let xc = x1 + (py - y1) / (y2 - y1) * dx;
                if px < xc {
                    inside = !inside;
                }
            }
        }
    }
    inside
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Closed polygons bounding the bow-tie: the bounded arcs joined with the
/// branch-cut segments through the origin.
pub fn bowtie_polygons(curve: &BoundaryCurve) -> Vec<Vec<(f64, f64)>> {
    curve
        .segments
        .iter()
        .filter(|s| s.kind == SegmentKind::CurvedArc)
        .map(|arc| {
            // each bounded arc runs between two adjacent corners; close it
            // through those corners and the origin
            let nearest = |p: (f64, f64)| {
                curve
                    .corner_points
                    .iter()
                    .copied()
                    .min_by(|a, b| dist(*a, p).total_cmp(&dist(*b, p)))
                    .unwrap()
            };
            let first = nearest(arc.points[0]);
            let last = nearest(arc.points[arc.points.len() - 1]);
            let mut poly = vec![first];
            poly.extend(arc.points.iter().copied());
            poly.push(last);
            poly.push((0.0, 0.0));
            poly
        })
        .collect()
}

/// Counts the scaled zeros of `R_n` that lie in the bow-tie dilated about the
/// origin by `dilation` (a point `Y` is tested as `Y / dilation`).
pub fn bowtie_containment(
    map: &RootMap,
    curve: &BoundaryCurve,
    dilation: f64,
) -> ContainmentReport {
    let polys = bowtie_polygons(curve);
    let mut inside = 0;
    for &(a, b) in &map.scaled_roots {
        let p = (a / dilation, b / dilation);
        if (p.0 == 0.0 && p.1 == 0.0) || point_in_polygons(p, &polys) {
            inside += 1;
        }
    }
    ContainmentReport {
        n: map.n,
        dilation,
        inside,
        outside: map.scaled_roots.len() - inside,
        max_modulus: map.max_scaled_modulus(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GaussianRational;

    #[test]
    fn first_polynomials() {
        let mut l = Lattice::default();
        let seq = ohyama_sequence(&mut l, 4).unwrap();
        let q = GaussianRational::ratio;
        let r2 = LaurentPolynomial::from_coeffs(1, &[q(-1, 6), q(0, 1), q(1, 2)]);
        assert_eq!(seq.polynomials[2], r2);
        let r3 = LaurentPolynomial::from_terms([(6, q(1, 8)), (4, q(-1, 6)), (2, q(5, 72))]);
        assert_eq!(seq.polynomials[3], r3);
        for n in 1..4 {
            assert!(seq.product_identity_holds(&mut l, n).unwrap());
        }
    }

    #[test]
    fn polygon_test() {
        let square = vec![vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]];
        assert!(point_in_polygons((0.5, 0.5), &square));
        assert!(point_in_polygons((1.0, 0.5), &square));
        assert!(!point_in_polygons((1.5, 0.5), &square));
    }
}

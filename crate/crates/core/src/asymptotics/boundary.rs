use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use super::branch::{corner_points, s_of_y};
use super::lfunc::l_of_s;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    /// Zero level of `L(s(Y))` bounding the bow-tie.
    CurvedArc,
    /// Straight branch cut from the origin to a corner point.
    BranchCutEdge,
    /// Unbounded zero-level arc outside the bow-tie.
    PhantomUnboundedArc,
}

impl SegmentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SegmentKind::CurvedArc => "curved_arc",
            SegmentKind::BranchCutEdge => "branch_cut_edge",
            SegmentKind::PhantomUnboundedArc => "phantom_unbounded_arc",
        }
    }
}

impl fmt::Display for SegmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCurve {
    pub resolution: usize,
    /// The first-quadrant grid covers `[0, extent]²`.
    pub extent: f64,
    pub segments: Vec<Segment>,
    pub corner_points: [(f64, f64); 4],
}

/// Side length of the sampled first-quadrant square.
pub const DEFAULT_EXTENT: f64 = 1.0;
pub const MIN_RESOLUTION: usize = 64;

impl BoundaryCurve {
    pub fn grid_step(&self) -> f64 {
        self.extent / self.resolution as f64
    }

    pub fn segments_of(&self, kind: SegmentKind) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(move |s| s.kind == kind)
    }

    /// Smallest distance from `p` to a vertex of a segment of `kind`.
    pub fn distance_to(&self, kind: SegmentKind, p: (f64, f64)) -> f64 {
        self.segments_of(kind)
            .flat_map(|s| s.points.iter())
            .map(|q| (q.0 - p.0).hypot(q.1 - p.1))
            .fold(f64::INFINITY, f64::min)
    }

    /// Points where bounded arcs meet the positive real axis.
    pub fn positive_real_crossings(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for seg in self.segments_of(SegmentKind::CurvedArc) {
            for w in seg.points.windows(2) {
                let (a, b) = (w[0], w[1]);
                if a.1 == 0.0 && a.0 > 0.0 {
                    out.push(a.0);
                } else if a.1 * b.1 < 0.0 {
                    let t = a.1 / (a.1 - b.1);
                    let x = a.0 + t * (b.0 - a.0);
                    if x > 0.0 {
                        out.push(x);
                    }
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }
}

type EdgeKey = (u8, usize, usize);

/// A polyline and the grid edges its vertices lie on.
type Contour = (Vec<(f64, f64)>, Vec<EdgeKey>);

/// Marching squares on the zero level of `values` (node `(i, j)` at
/// `(i·h, j·h)`); cells with a non-finite corner or with `masked` set are
/// skipped. Returns polylines as chains of edge crossings.
fn zero_contours(
    n: usize,
    h: f64,
    values: &[Vec<f64>],
    masked: impl Fn(usize, usize) -> bool,
) -> Vec<Contour> {
    let v = |i: usize, j: usize| values[i][j];
    let pos = |x: f64| x >= 0.0;
    let crossing = |key: EdgeKey| -> Option<(f64, f64)> {
        let (dir, i, j) = key;
        let (a, b, (i2, j2)) = if dir == 0 {
            (v(i, j), v(i + 1, j), (i + 1, j))
        } else {
            (v(i, j), v(i, j + 1), (i, j + 1))
        };
        if !(a.is_finite() && b.is_finite()) || pos(a) == pos(b) {
            return None;
        }
        let t = a / (a - b);
        let (x0, y0) = (i as f64 * h, j as f64 * h);
        let (x1, y1) = (i2 as f64 * h, j2 as f64 * h);
        Some((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
    };

    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let corners = [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)];
            if masked(i, j) || corners.iter().any(|c| !c.is_finite()) {
                continue;
            }
            // bottom, right, top, left
            let edges: [EdgeKey; 4] = [(0, i, j), (1, i + 1, j), (0, i, j + 1), (1, i, j)];
            let hits: Vec<EdgeKey> = edges
                .into_iter()
                .filter(|&e| crossing(e).is_some())
                .collect();
            match hits.len() {
                2 => segments.push((hits[0], hits[1])),
                4 => {
                    let centre = corners.iter().sum::<f64>() / 4.0;
                    // pair each edge with the neighbour that shares the corner
                    // whose sign differs from the centre
                    if pos(centre) == pos(corners[0]) {
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }

    let mut adjacency: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        adjacency.entry(*a).or_default().push(k);
        adjacency.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    // start from open ends first so open chains come out whole
    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.sort_by_key(|&k| {
        let (a, b) = segments[k];
        let open = adjacency[&a].len() == 1 || adjacency[&b].len() == 1;
        (!open, k)
    });
    for start in order {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let (first, mut tail) = if adjacency[&a].len() == 1 {
            (a, b)
        } else {
            (b, a)
        };
        let mut keys = vec![first, tail];
        loop {
            let next = adjacency[&tail].iter().copied().find(|&k| !used[k]);
            let Some(k) = next else { break };
            used[k] = true;
            let (p, q) = segments[k];
            tail = if p == tail { q } else { p };
            keys.push(tail);
        }
        let pts = keys.iter().map(|&k| crossing(k).unwrap()).collect();
        out.push((pts, keys));
    }
    out
}

/// True when the closed cell `[x0, x0+h] × [y0, y0+h]` meets the first-quadrant
/// cut from the origin to `C e^{iπ/6}`.
fn cell_meets_cut(x0: f64, y0: f64, h: f64) -> bool {
    let end = corner_points()[0];
    let slope = end.im / end.re;
    let (xa, xb) = (x0.max(0.0), (x0 + h).min(end.re));
    if xa > xb {
        return false;
    }
    let (ya, yb) = (slope * xa, slope * xb);
    yb >= y0 && ya <= y0 + h
}

/// `L(s(Y))`, or NaN where it is undefined or unreliable.
pub fn level_function(y: Complex64, nodes: usize) -> f64 {
    s_of_y(y).and_then(|s| l_of_s(s, nodes)).unwrap_or(f64::NAN)
}

fn conj(p: &[(f64, f64)]) -> Vec<(f64, f64)> {
    p.iter().map(|&(a, b)| (a, -b)).collect()
}

fn negate(p: &[(f64, f64)]) -> Vec<(f64, f64)> {
    p.iter().map(|&(a, b)| (-a, -b)).collect()
}

/// Boundary of the bow-tie and the remaining zero-level arcs of `L(s(Y))`.
pub fn boundary_curve(resolution: usize, nodes: usize) -> Result<BoundaryCurve> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::Domain(format!(
            "resolution must be at least {MIN_RESOLUTION}"
        )));
    }
    let n = resolution;
    let extent = DEFAULT_EXTENT;
    let h = extent / n as f64;
    let values: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|i| {
            (0..=n)
                .map(|j| level_function(Complex64::new(i as f64 * h, j as f64 * h), nodes))
                .collect()
        })
        .collect();
    let contours = zero_contours(n, h, &values, |i, j| {
        cell_meets_cut(i as f64 * h, j as f64 * h, h)
    });

    let corner = corner_points()[0];
    let corner = (corner.re, corner.im);
    let dist = |p: (f64, f64)| (p.0 - corner.0).hypot(p.1 - corner.1);
    let on_outer = |k: &EdgeKey| {
        let (dir, i, j) = *k;
        (dir == 1 && i == n) || (dir == 0 && j == n)
    };
    let mut bounded: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut unbounded: Vec<Vec<(f64, f64)>> = Vec::new();
    for (mut pts, keys) in contours {
        if pts.len() < 2 {
            continue;
        }
        // orient from the end nearest the corner
        if dist(pts[pts.len() - 1]) < dist(pts[0]) {
            pts.reverse();
        }
        if keys.iter().any(on_outer) {
            unbounded.push(pts);
        } else {
            bounded.push(pts);
        }
    }
    if bounded.is_empty() {
        return Err(Error::Numerical(format!(
            "no bounded zero-level arc found at resolution {resolution}"
        )));
    }

    let mut segments = Vec::new();
    for c in corner_points() {
        segments.push(Segment {
            kind: SegmentKind::BranchCutEdge,
            points: vec![(0.0, 0.0), (c.re, c.im)],
        });
    }
    for arc in &bounded {
        // close through the real axis with the mirror image
        let mut right = arc.clone();
        let mirrored: Vec<(f64, f64)> = conj(arc).into_iter().rev().collect();
        let skip = usize::from(arc.last().map(|p| p.1 == 0.0).unwrap_or(false));
        right.extend(mirrored.into_iter().skip(skip));
        segments.push(Segment {
            kind: SegmentKind::CurvedArc,
            points: negate(&right),
        });
        segments.push(Segment {
            kind: SegmentKind::CurvedArc,
            points: right,
        });
    }
    for arc in &unbounded {
        for pts in [arc.clone(), conj(arc), negate(arc), negate(&conj(arc))] {
            segments.push(Segment {
                kind: SegmentKind::PhantomUnboundedArc,
                points: pts,
            });
        }
    }
    Ok(BoundaryCurve {
        resolution,
        extent,
        segments,
        corner_points: corner_points().map(|z| (z.re, z.im)),
    })
}

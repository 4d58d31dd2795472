use d7_algebraic::backlund::Lattice;
use d7_algebraic::exactfield::{GaussianRational, LaurentPolynomial};
use d7_algebraic::ohyama::{ohyama_sequence, point_in_polygons, root_map};

fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

#[test]
fn low_order_polynomials() {
    let mut l = Lattice::default();
    let seq = ohyama_sequence(&mut l, 3).unwrap();
    assert_eq!(seq.polynomials[0], LaurentPolynomial::one());
    assert_eq!(seq.polynomials[1], LaurentPolynomial::zeta());
    let r3 = LaurentPolynomial::from_terms([(6, q(1, 8)), (4, q(-1, 6)), (2, q(5, 72))]);
    assert_eq!(seq.polynomials[3], r3);
}

#[test]
fn degrees_and_parity() {
    let mut l = Lattice::default();
    let seq = ohyama_sequence(&mut l, 12).unwrap();
    for (n, r) in seq.polynomials.iter().enumerate() {
        assert_eq!(r.degree().unwrap(), n * (n + 1) / 2, "deg R_{n}");
        assert!(r.is_real());
        // R_n(-ζ) = ±R_n(ζ) according to the parity of its degree
        let sign = if (n * (n + 1) / 2) % 2 == 0 {
            r.clone()
        } else {
            -r
        };
        assert_eq!(r.reflect(), sign, "parity of R_{n}");
    }
}

#[test]
fn zeros_of_r2() {
    let mut l = Lattice::default();
    let seq = ohyama_sequence(&mut l, 2).unwrap();
    let map = root_map(&seq, 2, 128).unwrap();
    let r = 1.0 / 3f64.sqrt();
    let expect = [(-r, 0.0), (0.0, 0.0), (r, 0.0)];
    for (got, want) in map.roots.iter().zip(expect) {
        assert!(
            (got.0 - want.0).abs() < 1e-15 && got.1 == want.1,
            "{:?}",
            map.roots
        );
    }
    assert!((map.scaled_roots[2].0 - r / 2f64.sqrt()).abs() < 1e-15);
}

#[test]
fn zeros_are_accurate_and_conjugate_closed() {
    let mut l = Lattice::default();
    let seq = ohyama_sequence(&mut l, 12).unwrap();
    let map = root_map(&seq, 12, 256).unwrap();
    assert_eq!(map.roots.len(), 78);
    for (r, s) in map.residuals.iter().zip(&map.scales) {
        let rel = if *s > 0.0 { r / s } else { *r };
        assert!(rel < 1e-60, "relative residual {rel}");
    }
    for &(a, b) in &map.roots {
        let partner = map
            .roots
            .iter()
            .any(|&(c, d)| (a - c).abs() < 1e-40 && (b + d).abs() < 1e-40);
        assert!(partner, "no conjugate for {:?}", (a, b));
    }
}

#[test]
fn polygon_membership() {
    let square = vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let polys = vec![square];
    assert!(point_in_polygons((0.5, 0.5), &polys));
    assert!(!point_in_polygons((1.5, 0.5), &polys));
    assert!(point_in_polygons((1.0, 0.5), &polys));
}

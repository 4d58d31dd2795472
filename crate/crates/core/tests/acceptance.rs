//! Acceptance criteria 1 to 11. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::time::Instant;

use num_complex::Complex64;

use d7_algebraic::asymptotics::spectral::re_h_at_double_root;
use d7_algebraic::asymptotics::{
    boundary_curve, compare_exact_vs_asymptotic, corner_points, critical_y, equilibrium_u_real,
    l_of_s, spectral, BoundaryCurve, ComparePoint, SegmentKind, DEFAULT_NODES,
};
use d7_algebraic::backlund::{
    b_constant, check_symmetries, lax_residuals, ode_residual, phi_prime_residual, series_from_ode,
    Component, Lattice,
};
use d7_algebraic::exactfield::{GaussianRational, LaurentPolynomial, RationalFunction};
use d7_algebraic::ohyama::{bowtie_containment, ohyama_sequence, root_map, OhyamaSequence};
use d7_algebraic::Error;

type Outcome = Result<String, String>;

const RESOLUTION: usize = 128;
const ROOT_PRECISION: u32 = 256;
const Y_C_REFERENCE: f64 = 0.29177;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Negative root of `s(s-1)² + y² = 0` by plain bisection.
fn oracle_s(y: f64) -> f64 {
    let f = |s: f64| s * (s - 1.0) * (s - 1.0) + y * y;
    let (mut lo, mut hi) = (-1.0 - y, 0.0);
    while f(lo) > 0.0 {
        lo *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Real root of `8U³ + 2U - y = 0` by bisection.
fn oracle_u(y: f64) -> f64 {
    let f = |u: f64| 8.0 * u * u * u + 2.0 * u - y;
    let (mut lo, mut hi) = (0.0, y.max(1.0));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn exact_suite(lattice: &mut Lattice) -> Outcome {
    let start = Instant::now();
    let states = lattice.range(-20, 20).map_err(err)?;
    let i = RationalFunction::constant(GaussianRational::i());
    for s in &states {
        let n = s.n;
        ensure(
            ode_residual(s).is_zero(),
            format!("ode residual at n = {n}"),
        )?;
        for (k, r) in lax_residuals(s).iter().enumerate() {
            ensure(r.is_zero(), format!("lax residual {} at n = {n}", k + 1))?;
        }
        ensure(b_constant(s) == i, format!("b constant at n = {n}"))?;
        ensure(
            phi_prime_residual(s).is_zero(),
            format!("phase residual at n = {n}"),
        )?;
        let sym = check_symmetries(s);
        ensure(
            sym.real_coefficients,
            format!("real coefficients at n = {n}"),
        )?;
        ensure(sym.odd, format!("odd symmetry at n = {n}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 60.0, format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} states, all identities exact, {secs:.1} s",
        states.len()
    ))
}

fn first_nonzero(
    terms: Vec<(i64, GaussianRational)>,
    count: usize,
) -> Vec<(i64, GaussianRational)> {
    terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .take(count)
        .collect()
}

fn series_oracle(lattice: &mut Lattice) -> Outcome {
    const WANT: usize = 10;
    const WINDOW: usize = 40;
    let mut counts = Vec::new();
    for n in [1i64, 2, 3, 5, 8] {
        let u = lattice.solution(n).map_err(err)?.u.value.clone();
        let series = series_from_ode(n, WINDOW - 1);
        let odd: Vec<usize> = (1..series.coefficients.len())
            .step_by(2)
            .filter(|&j| !series.coefficients[j].is_zero())
            .collect();
        ensure(
            odd.is_empty(),
            format!("odd coefficients {odd:?} nonzero at n = {n}"),
        )?;
        let expansion = u.expand_at_infinity(WINDOW);
        let a = first_nonzero(expansion.clone(), WANT);
        let b = first_nonzero(series.u_terms(), WANT);
        ensure(
            a == b,
            format!("first nonzero coefficients differ at n = {n}"),
        )?;
        ensure(
            expansion == series.u_terms(),
            format!("{WINDOW}-exponent windows differ at n = {n}"),
        )?;
        if a.len() < WANT {
            // fewer nonzero terms only when u_n is itself a Laurent polynomial
            ensure(
                u.as_laurent().is_some(),
                format!("only {} nonzero terms at n = {n}", a.len()),
            )?;
        }
        counts.push(format!("n={n}:{}", a.len()));
    }
    Ok(format!(
        "windows of {WINDOW} exponents agree, nonzero terms compared [{}]; odd terms vanish",
        counts.join(" ")
    ))
}

fn inverse_pairs(lattice: &mut Lattice) -> Outcome {
    let states = lattice.range(-19, 19).map_err(err)?;
    for s in &states {
        let up = s.step_up().map_err(err)?;
        ensure(
            &up.step_down().map_err(err)? == s,
            format!("down(up(s)) != s at n = {}", s.n),
        )?;
        let down = s.step_down().map_err(err)?;
        ensure(
            &down.step_up().map_err(err)? == s,
            format!("up(down(s)) != s at n = {}", s.n),
        )?;
    }
    Ok(format!("{} states round-trip exactly", states.len()))
}

fn ohyama_check(lattice: &mut Lattice) -> Result<(OhyamaSequence, String), String> {
    let seq = ohyama_sequence(lattice, 20).map_err(err)?;
    for n in 1..=19 {
        ensure(
            seq.product_identity_holds(lattice, n).map_err(err)?,
            format!("u_n R_n^2 != R_(n+1) R_(n-1) at n = {n}"),
        )?;
    }
    let q = GaussianRational::ratio;
    let r2 = LaurentPolynomial::from_terms([(3, q(1, 2)), (1, q(-1, 6))]);
    ensure(
        seq.polynomials[2] == r2,
        format!("R_2 = {}", seq.polynomials[2]),
    )?;
    let degrees: Vec<usize> = [10, 20]
        .iter()
        .map(|&k| seq.polynomials[k].degree().unwrap())
        .collect();
    Ok((
        seq,
        format!("R_0..R_20 polynomial, product identity for 1..19, deg R_10, R_20 = {degrees:?}"),
    ))
}

fn containment(seq: &OhyamaSequence, curve: &BoundaryCurve) -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut max20 = 0.0;
    for (n, dilation) in [(10usize, 1.25), (20, 1.15)] {
        let map = root_map(seq, n, ROOT_PRECISION).map_err(err)?;
        let report = bowtie_containment(&map, curve, dilation);
        ensure(
            report.all_inside(),
            format!(
                "{} of {} roots of R_{n} outside the bow-tie x{dilation}",
                report.outside,
                map.roots.len()
            ),
        )?;
        notes.push(format!(
            "R_{n}: {}/{} inside x{dilation}",
            report.inside,
            map.roots.len()
        ));
        if n == 20 {
            max20 = report.max_modulus;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let summary = format!("{}; max |Y| = {max20:.6}; {secs:.1} s", notes.join(", "));
    ensure(secs <= 120.0, format!("{summary}: over the time budget"))?;
    ensure(
        (0.70..=0.90).contains(&max20),
        format!("{summary}: max |Y| outside [0.70, 0.90]"),
    )?;
    Ok(summary)
}

fn critical_threshold() -> Outcome {
    let yc = critical_y(1e-10).map_err(err)?;
    ensure((yc - Y_C_REFERENCE).abs() <= 1e-4, format!("y_c = {yc}"))?;
    let above = re_h_at_double_root(0.4).map_err(err)?;
    let below = re_h_at_double_root(0.291).map_err(err)?;
    ensure(above > 0.0, format!("Re h at y = 0.4 is {above}"))?;
    ensure(below < 0.0, format!("Re h at y = 0.291 is {below}"))?;
    Ok(format!(
        "y_c = {yc:.10}; Re h = {above:+.6} at 0.4, {below:+.6} at 0.291"
    ))
}

fn l_interval() -> Outcome {
    let mut worst: f64 = 0.0;
    for s in [1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0] {
        let l = l_of_s(Complex64::new(s, 0.0), DEFAULT_NODES).map_err(err)?;
        ensure(l.abs() <= 1e-8, format!("L({s}) = {l}"))?;
        worst = worst.max(l.abs());
    }
    let s04 = spectral(0.4).map_err(err)?.s;
    let l = l_of_s(Complex64::new(s04, 0.0), DEFAULT_NODES).map_err(err)?;
    ensure(l > 0.0, format!("L(s(0.4)) = {l}"))?;
    Ok(format!(
        "max |L| on [1/3, 1] samples = {worst:.2e}; L(s(0.4)) = {l:.6}"
    ))
}

fn equilibrium() -> Outcome {
    let mut worst: f64 = 0.0;
    for y in [0.5, 1.0, 2.0, 10.0] {
        let sd = spectral(y).map_err(err)?;
        let u = equilibrium_u_real(y);
        let gap = (sd.u_limit() - u).abs();
        ensure(
            gap <= 1e-12,
            format!("|1/2 sqrt(-s) - U| = {gap:e} at y = {y}"),
        )?;
        // independent oracles for both sides
        ensure(
            (sd.s - oracle_s(y)).abs() <= 1e-12,
            format!("s({y}) = {} vs {}", sd.s, oracle_s(y)),
        )?;
        ensure(
            (u - oracle_u(y)).abs() <= 1e-12,
            format!("U({y}) = {u} vs {}", oracle_u(y)),
        )?;
        worst = worst.max(gap);
    }
    let radius = 2f64.cbrt() / 3f64.sqrt();
    let oracle = (4.0f64 / 27.0).powf(1.0 / 6.0);
    ensure((radius - oracle).abs() <= 1e-14, "corner modulus formula")?;
    for c in corner_points() {
        ensure(
            (c.norm() - radius).abs() <= 1e-10,
            format!("corner modulus {}", c.norm()),
        )?;
    }
    Ok(format!("max gap {worst:.1e}; corner modulus {radius:.10}"))
}

fn convergence(lattice: &mut Lattice) -> Outcome {
    let mut notes = Vec::new();
    for point in [ComparePoint::Real(1.0), ComparePoint::Imaginary(1.2)] {
        let table = compare_exact_vs_asymptotic(lattice, point, &[4, 8, 16], ROOT_PRECISION)
            .map_err(err)?;
        let e: Vec<f64> = table.rows.iter().map(|r| r.abs_error).collect();
        ensure(
            e[1] < e[0] && e[2] < e[1],
            format!("{point:?}: errors {e:?} not decreasing"),
        )?;
        let ratios = [e[1] / e[0], e[2] / e[1]];
        ensure(
            ratios.iter().all(|&r| r <= 0.75),
            format!("{point:?}: ratios {ratios:?}"),
        )?;
        if let ComparePoint::Imaginary(_) = point {
            for r in &table.rows {
                ensure(
                    r.exact.re == 0.0,
                    format!("exact value {} not purely imaginary", r.exact),
                )?;
                ensure(
                    r.asymptotic.re.abs() <= 1e-12 * r.asymptotic.norm(),
                    "U(1.2i) not imaginary",
                )?;
            }
        }
        notes.push(format!(
            "{point:?} ratios {:.3}, {:.3}",
            ratios[0], ratios[1]
        ));
    }
    Ok(notes.join("; "))
}

fn boundary_check(curve: &BoundaryCurve) -> Outcome {
    let tol = 2.0 / curve.resolution as f64;
    for &c in &curve.corner_points {
        let d = curve.distance_to(SegmentKind::CurvedArc, c);
        ensure(d <= tol, format!("bounded arc misses corner {c:?} by {d}"))?;
    }
    let target = critical_y(1e-12).map_err(err)?.cbrt();
    let crossings = curve.positive_real_crossings();
    ensure(
        crossings.len() == 1,
        format!("positive real crossings {crossings:?}"),
    )?;
    let x = crossings[0];
    ensure(
        (x - target).abs() <= 5e-3,
        format!("crossing {x} vs {target}"),
    )?;
    let points: Vec<(f64, f64)> = curve
        .segments
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .collect();
    let near = |p: (f64, f64)| points.iter().any(|q| (q.0 - p.0).hypot(q.1 - p.1) <= tol);
    for &(a, b) in &points {
        ensure(
            near((-a, -b)),
            format!("no partner for {:?} under Y -> -Y", (a, b)),
        )?;
        ensure(
            near((a, -b)),
            format!("no partner for {:?} under Y -> Y*", (a, b)),
        )?;
    }
    Ok(format!(
        "resolution {}; crossing {x:.6} (y_c^(1/3) = {target:.6}); {} points symmetric",
        curve.resolution,
        points.len()
    ))
}

fn negative_controls() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("report.csv");
    let out = out.to_str().unwrap();
    let clean = d7_algebraic::cli::run(["d7", "validate", "--n-max", "2", "--out", out]);
    ensure(clean == 0, format!("clean validate exited {clean}"))?;
    for n in [-2, 1] {
        for c in Component::ALL {
            let fault = format!("{n}:{}", c.name());
            let code = d7_algebraic::cli::run([
                "d7",
                "validate",
                "--n-max",
                "2",
                "--inject-fault",
                &fault,
                "--out",
                out,
            ]);
            ensure(code == 1, format!("fault {fault} exited {code}"))?;
        }
    }
    let num = LaurentPolynomial::from_integers(0, &[1, 0, 1]);
    let den = LaurentPolynomial::from_integers(0, &[-1, 1]);
    ensure(
        num.exact_divide(&den) == Err(Error::NotDivisible),
        "exact_divide(z^2+1, z-1) did not fail",
    )?;
    Ok("8 injected faults exit 1; clean run exits 0; exact_divide refuses".into())
}

fn main() {
    let mut lattice = Lattice::default();
    let boundary = boundary_curve(RESOLUTION, DEFAULT_NODES);
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "exact solution suite", exact_suite(&mut lattice)));
    results.push((2, "series cross-oracle", series_oracle(&mut lattice)));
    results.push((3, "inverse pairs", inverse_pairs(&mut lattice)));
    let seq = ohyama_check(&mut lattice);
    results.push((
        4,
        "ohyama polynomials",
        seq.as_ref().map(|s| s.1.clone()).map_err(Clone::clone),
    ));
    let c5 = match (&seq, &boundary) {
        (Ok((seq, _)), Ok(curve)) => containment(seq, curve),
        (Err(e), _) => Err(format!("no polynomials: {e}")),
        (_, Err(e)) => Err(format!("no boundary: {e}")),
    };
    results.push((5, "bow-tie containment", c5));
    results.push((6, "critical threshold", critical_threshold()));
    results.push((7, "L(s) interval", l_interval()));
    results.push((8, "equilibrium consistency", equilibrium()));
    results.push((9, "asymptotic convergence", convergence(&mut lattice)));
    let c10 = boundary
        .as_ref()
        .map_err(|e| e.to_string())
        .and_then(boundary_check);
    results.push((10, "boundary curve", c10));
    results.push((11, "negative controls", negative_controls()));

    let mut failed = 0;
    for (k, name, outcome) in &results {
        match outcome {
            Ok(note) => println!("criterion {k:>2} PASS  {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Command-line frontend. Every command produces one table with a metadata
//! header, written as CSV or JSON to stdout or atomically to `--out`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::asymptotics::{
    boundary_curve, compare_exact_vs_asymptotic, critical_y, s_of_y, spectral, ComparePoint,
    DEFAULT_NODES,
};
use crate::backlund::{validate_states, Component, Lattice, DEFAULT_MAX_INDEX};
use crate::error::{Error, Result};
use crate::exactfield::{GaussianRational, RationalFunction, DEFAULT_PRECISION};
use crate::ohyama::{ohyama_sequence, root_map};

/// Environment variable overriding the default working precision in bits.
pub const PRECISION_ENV: &str = "D7_PRECISION_BITS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "d7",
    version,
    about = "Algebraic solutions of Painlevé-III (D7) and their large-n limit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Working precision in bits for floating-point evaluation.
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u32).range(64..))]
    pub precision_bits: u32,
    /// Largest |n| the lattice may build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_INDEX)]
    pub max_index: i64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Exact coefficients of u_n (and E, P, Q with --full).
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        full: bool,
    },
    /// Exact identity checks for all |n| <= n_max.
    Validate {
        #[arg(long)]
        n_max: i64,
        /// Perturb one component before checking, as `N:COMPONENT`.
        #[arg(long, hide = true, allow_hyphen_values = true)]
        inject_fault: Option<String>,
    },
    /// Zeros of the Ohyama polynomial R_n.
    Roots {
        #[arg(long)]
        n: usize,
    },
    /// Zero-level curves bounding the bow-tie region.
    Boundary {
        #[arg(long, default_value_t = 128)]
        resolution: usize,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Scaled exact solutions against their large-n limit.
    Compare {
        /// Real point y > y_c.
        #[arg(long, conflicts_with = "t", required_unless_present = "t")]
        y: Option<f64>,
        /// Imaginary-axis point Y = i·t.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<i64>,
    },
    /// The critical value y_c.
    Critical {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Validate { .. } => "validate",
            Command::Roots { .. } => "roots",
            Command::Boundary { .. } => "boundary",
            Command::Compare { .. } => "compare",
            Command::Critical { .. } => "critical",
        }
    }

    fn realizes(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "exact rational solution u_n(zeta) with x = zeta^3",
            Command::Validate { .. } => "exact ODE, Lax, phase and symmetry identities",
            Command::Roots { .. } => "zeros of R_n, rescaled Y = zeta/sqrt(n)",
            Command::Boundary { .. } => "zero level of L(s(Y)) in the Y-plane",
            Command::Compare { .. } => "n^(-1/2) u_n(n^(3/2) Y^3) against U(Y)",
            Command::Critical { .. } => "critical value y_c of the real-axis limit",
        }
    }
}

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or_else(|| Value::String(format_float(*v))),
            Cell::Text(s) => json!(s),
        }
    }
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Document {
    fn new(columns: &[&'static str]) -> Self {
        Document {
            metadata: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        for (k, v) in &self.metadata {
            writeln!(buf, "# {k}: {v}").map_err(io_err)?;
        }
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))
                .map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| Error::Output(e.to_string()))
    }

    fn render_json(&self) -> Result<Vec<u8>> {
        let metadata: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "metadata": metadata, "columns": self.columns, "rows": rows });
        let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| Error::Output(e.to_string()))?;
        out.push(b'\n');
        Ok(out)
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Output(e.to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Output(e.to_string())
}

/// Result of a command: the table plus the exit code it implies.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub document: Document,
    pub exit_code: i32,
}

fn rational_cells(c: &GaussianRational) -> [Cell; 4] {
    let (re, im) = (c.re(), c.im());
    [
        Cell::Text(re.numer().to_string()),
        Cell::Text(re.denom().to_string()),
        Cell::Text(im.numer().to_string()),
        Cell::Text(im.denom().to_string()),
    ]
}

fn push_rational(doc: &mut Document, name: &str, f: &RationalFunction) {
    for (part, poly) in [("num", f.numerator()), ("den", f.denominator())] {
        for (k, c) in poly.terms() {
            let mut row = vec![Cell::Text(format!("{name}.{part}")), Cell::Int(k)];
            row.extend(rational_cells(&c));
            doc.rows.push(row);
        }
    }
}

fn parse_fault(spec: &str) -> Result<(i64, Component)> {
    let (n, c) = spec
        .split_once(':')
        .ok_or_else(|| Error::Domain(format!("fault must look like N:COMPONENT, got {spec:?}")))?;
    let n = n
        .parse()
        .map_err(|_| Error::Domain(format!("bad fault index {n:?}")))?;
    let c = c
        .parse()
        .map_err(|_| Error::Domain(format!("bad fault component {c:?}")))?;
    Ok((n, c))
}

fn solve(lattice: &mut Lattice, n: i64, full: bool) -> Result<Document> {
    let s = lattice.solution(n)?;
    let mut doc = Document::new(&["role", "exponent", "re_num", "re_den", "im_num", "im_den"]);
    doc.meta("n", n);
    let components: &[Component] = if full {
        &Component::ALL
    } else {
        &[Component::U]
    };
    for &c in components {
        let w = s.component(c);
        doc.meta(&format!("weight.{}", c.name()), w.weight);
        push_rational(&mut doc, c.name(), &w.value);
    }
    Ok(doc)
}

fn validate(lattice: &mut Lattice, n_max: i64, fault: Option<&str>) -> Result<Outcome> {
    if n_max < 0 {
        return Err(Error::Domain(format!(
            "n-max must be non-negative, got {n_max}"
        )));
    }
    let fault = fault.map(parse_fault).transpose()?;
    let mut states = lattice.range(-n_max, n_max)?;
    if let Some((n, c)) = fault {
        let slot = states
            .iter_mut()
            .find(|s| s.n == n)
            .ok_or_else(|| Error::Domain(format!("fault index {n} outside the validated range")))?;
        *slot = slot.perturbed(c);
    }
    let checks = validate_states(&states);
    let mut doc = Document::new(&["n", "identity", "passed"]);
    doc.meta("n_max", n_max);
    if let Some((n, c)) = fault {
        doc.meta("injected_fault", format!("{n}:{}", c.name()));
    }
    let first = checks.iter().find(|c| !c.passed);
    match first {
        Some(c) => doc.meta("first_failure", format!("{} at n = {}", c.identity, c.n)),
        None => doc.meta("first_failure", "none"),
    }
    doc.meta(
        "checks_passed",
        format!(
            "{}/{}",
            checks.iter().filter(|c| c.passed).count(),
            checks.len()
        ),
    );
    for c in &checks {
        doc.rows.push(vec![
            Cell::Int(c.n),
            Cell::Text(c.identity.into()),
            Cell::Text(c.passed.to_string()),
        ]);
    }
    Ok(Outcome {
        document: doc,
        exit_code: if first.is_some() { 1 } else { 0 },
    })
}

fn roots(lattice: &mut Lattice, n: usize, precision: u32) -> Result<Document> {
    if n < 1 {
        return Err(Error::Domain("roots needs n >= 1".into()));
    }
    let seq = ohyama_sequence(lattice, n.max(2))?;
    let map = root_map(&seq, n, precision)?;
    let mut doc = Document::new(&["n", "re_zeta", "im_zeta", "re_Y", "im_Y", "residual"]);
    doc.meta("n", n);
    doc.meta("degree", map.roots.len());
    doc.meta("residual", "|R_n(zeta)| / sum |c_k| |zeta|^k");
    for k in 0..map.roots.len() {
        let rel = if map.scales[k] > 0.0 {
            map.residuals[k] / map.scales[k]
        } else {
            map.residuals[k]
        };
        let (z, y) = (map.roots[k], map.scaled_roots[k]);
        doc.rows.push(vec![
            Cell::Int(n as i64),
            Cell::Float(z.0),
            Cell::Float(z.1),
            Cell::Float(y.0),
            Cell::Float(y.1),
            Cell::Float(rel),
        ]);
    }
    Ok(doc)
}

fn boundary(resolution: usize, nodes: usize) -> Result<Document> {
    let curve = boundary_curve(resolution, nodes)?;
    let mut doc = Document::new(&["segment_id", "kind", "re_Y", "im_Y"]);
    doc.meta("resolution", resolution);
    doc.meta("extent", format_float(curve.extent));
    doc.meta("quadrature_nodes", nodes);
    for (id, seg) in curve.segments.iter().enumerate() {
        for &(a, b) in &seg.points {
            doc.rows.push(vec![
                Cell::Int(id as i64),
                Cell::Text(seg.kind.to_string()),
                Cell::Float(a),
                Cell::Float(b),
            ]);
        }
    }
    let base = curve.segments.len();
    for (k, &(a, b)) in curve.corner_points.iter().enumerate() {
        doc.rows.push(vec![
            Cell::Int((base + k) as i64),
            Cell::Text("corner".into()),
            Cell::Float(a),
            Cell::Float(b),
        ]);
    }
    Ok(doc)
}

fn compare(
    lattice: &mut Lattice,
    point: ComparePoint,
    ns: &[i64],
    precision: u32,
) -> Result<Document> {
    let table = compare_exact_vs_asymptotic(lattice, point, ns, precision)?;
    let mut doc = Document::new(&["n", "exact_re", "exact_im", "asymptotic", "abs_error"]);
    let imaginary = matches!(point, ComparePoint::Imaginary(_));
    match point {
        ComparePoint::Real(y) => {
            let sd = spectral(y)?;
            doc.meta("y", format_float(y));
            doc.meta("s", format_float(sd.s));
            doc.meta("asymptotic", "U(y), real");
        }
        ComparePoint::Imaginary(t) => {
            let s = s_of_y(Complex64::new(0.0, t))?;
            doc.meta("Y", format!("{}i", format_float(t)));
            doc.meta(
                "s",
                format!("{} {}", format_float(s.re), format_float(s.im)),
            );
            doc.meta("asymptotic", "Im U(Y), U purely imaginary");
        }
    }
    if let Some(r) = table.rows.first() {
        doc.meta(
            "U",
            format!(
                "{} {}",
                format_float(r.asymptotic.re),
                format_float(r.asymptotic.im)
            ),
        );
    }
    for r in &table.rows {
        let asym = if imaginary {
            r.asymptotic.im
        } else {
            r.asymptotic.re
        };
        doc.rows.push(vec![
            Cell::Int(r.n),
            Cell::Float(r.exact.re),
            Cell::Float(r.exact.im),
            Cell::Float(asym),
            Cell::Float(r.abs_error),
        ]);
    }
    Ok(doc)
}

fn critical(tol: f64) -> Result<Document> {
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(Error::Domain(format!(
            "tolerance must lie in (0, 1e-2), got {tol}"
        )));
    }
    let yc = critical_y(tol)?;
    let sd = spectral(yc)?;
    let mut doc = Document::new(&["y_c", "s", "d"]);
    doc.meta("tol", format_float(tol));
    doc.rows
        .push(vec![Cell::Float(yc), Cell::Float(sd.s), Cell::Float(sd.d)]);
    Ok(doc)
}

/// Runs a parsed command without writing anything.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let p = cli.common.precision_bits;
    let mut lattice = Lattice::new(cli.common.max_index);
    let mut outcome = match &cli.command {
        Command::Solve { n, full } => plain(solve(&mut lattice, *n, *full)?),
        Command::Validate {
            n_max,
            inject_fault,
        } => {
            if *n_max > cli.common.max_index {
                return Err(Error::Budget {
                    requested: *n_max,
                    limit: cli.common.max_index,
                });
            }
            validate(&mut lattice, *n_max, inject_fault.as_deref())?
        }
        Command::Roots { n } => plain(roots(&mut lattice, *n, p)?),
        Command::Boundary { resolution, nodes } => plain(boundary(*resolution, *nodes)?),
        Command::Compare { y, t, n_list } => {
            let point = match (y, t) {
                (Some(y), _) => ComparePoint::Real(*y),
                (None, Some(t)) => ComparePoint::Imaginary(*t),
                (None, None) => return Err(Error::Domain("compare needs --y or --t".into())),
            };
            plain(compare(&mut lattice, point, n_list, p)?)
        }
        Command::Critical { tol } => plain(critical(*tol)?),
    };
    let mut header = vec![
        ("command".to_string(), cli.command.name().to_string()),
        ("config".to_string(), format!("{:?}", cli.command)),
        (
            "format".to_string(),
            format!("{:?}", cli.common.format).to_lowercase(),
        ),
        ("precision_bits".to_string(), p.to_string()),
        ("max_index".to_string(), cli.common.max_index.to_string()),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("realizes".to_string(), cli.command.realizes().to_string()),
    ];
    header.append(&mut outcome.document.metadata);
    outcome.document.metadata = header;
    Ok(outcome)
}

fn plain(document: Document) -> Outcome {
    Outcome {
        document,
        exit_code: 0,
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// Parses `args`, runs the command, writes the output, and returns the exit
/// code. Usage errors exit 1.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let command_line = argv
        .iter()
        .map(|a| a.to_string_lossy())
        .collect::<Vec<_>>()
        .join(" ");
    let result = execute(&cli).and_then(|mut outcome| {
        outcome
            .document
            .metadata
            .insert(0, ("command_line".into(), command_line));
        let bytes = outcome.document.render(cli.common.format)?;
        match &cli.common.out {
            Some(path) => write_atomic(path, &bytes)?,
            None => std::io::stdout().write_all(&bytes).map_err(io_err)?,
        }
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => {
            if code != 0 {
                eprintln!("d7: validation failed; see the report");
            }
            code
        }
        Err(e) => {
            eprintln!("d7: {e}");
            e.exit_code()
        }
    }
}

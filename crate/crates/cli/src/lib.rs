//! The `flatvol` command line: volumes, verification suites, h(φ) sweeps and
//! genus tables, written as JSON or CSV.
//!
//! Exit codes: 0 success, 1 verification failure or non-convergence,
//! 2 invalid input, 3 I/O failure.

pub mod angle;
pub mod args;
pub mod output;
pub mod verify;

use std::f64::consts::PI;
use std::fmt;

use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use flatvol_core::triangle::{h_hyperbolic_series, h_of, l_of_phi, Curvature, TriangleSpec, MAX_SERIES_K};
use flatvol_core::volumes::{
    riemannian_vol_nonorientable, vol_m_from_r, vol_r, vol_r_crosscap, vol_r_klein, vol_r_orientable, Convention,
    NormalizationDescriptor, SeriesOptions, SurfaceKind, SurfaceSpec, VolumeResult,
};
use flatvol_core::{Error, GroupElement, GroupKind, GroupModel, Normalization};

pub use args::{Cli, Command};
use args::{Common, HphiArgs, NormalizationArg, OutputFormat, Suite, TableArgs, TriangleArgs, VerifyArgs, VolumeArgs};
use output::{csv_table, num, opt, opt_num, Envelope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NonConvergent { .. }) => EXIT_FAILED,
            CliError::Core(_) | CliError::Usage(_) => EXIT_INVALID,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "invalid arguments: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Rendered output plus whether every check passed.
pub struct Rendered {
    pub content: String,
    pub ok: bool,
}

/// Parse, run and report; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("flatvol: {e}");
            e.exit_code()
        }
    }
}

/// Execute a parsed command on a pool of `--jobs` threads and write the output.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let common = cli.command.common();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs as usize)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", common.jobs)))?;
    let rendered = pool.install(|| render(&cli.command))?;
    output::emit(&rendered.content, common.out.as_deref()).map_err(|e| {
        let target = common.out.as_ref().map_or("stdout".to_string(), |p| p.display().to_string());
        CliError::Io(format!("{target}: {e}"))
    })?;
    Ok(if rendered.ok { EXIT_OK } else { EXIT_FAILED })
}

/// Compute a command's output without writing it.
pub fn render(cmd: &Command) -> Result<Rendered, CliError> {
    match cmd {
        Command::Volume(a) => volume(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Hphi(a) => hphi(a),
        Command::Table(a) => table(a),
    }
}

fn finish<T: Serialize>(
    common: &Common,
    command: &str,
    normalization: serde_json::Value,
    truncation: Option<u64>,
    tolerance: Option<f64>,
    result: T,
    csv: impl FnOnce() -> Result<String, csv::Error>,
    ok: bool,
) -> Result<Rendered, CliError> {
    let content = match common.output {
        OutputFormat::Json => output::json(&Envelope {
            tool: output::TOOL,
            version: output::VERSION,
            command,
            seed: common.seed,
            normalization,
            truncation,
            tolerance,
            result,
        })
        .map_err(|e| CliError::Io(e.to_string()))?,
        OutputFormat::Csv => csv().map_err(|e| CliError::Io(e.to_string()))?,
    };
    Ok(Rendered { content, ok })
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("plain data serializes")
}

// ---------------------------------------------------------------------------
// Models and holonomies
// ---------------------------------------------------------------------------

/// The model in the measure that `--normalization` asks for. Witten values
/// are computed in the default measure (counting for finite groups, unit
/// otherwise) and rescaled afterwards.
fn model_for(group: &str, norm: Option<NormalizationArg>) -> Result<GroupModel, CliError> {
    let model = GroupModel::by_name(group)?;
    Ok(match norm {
        Some(NormalizationArg::Counting) => model.with_normalization(Normalization::Counting)?,
        Some(NormalizationArg::Unit) => model.with_normalization(Normalization::Unit)?,
        Some(NormalizationArg::Witten) | None => model,
    })
}

fn convert(v: VolumeResult, norm: Option<NormalizationArg>) -> Result<VolumeResult, CliError> {
    match norm {
        Some(n) => Ok(v.in_convention(n.into())?),
        None => Ok(v),
    }
}

fn holonomy(model: &GroupModel, label: Option<&str>, theta: Option<f64>, flag: &str) -> Result<Option<GroupElement>, CliError> {
    match (model.kind(), label, theta) {
        (_, Some(_), Some(_)) => usage(format!("give either --{flag} or the matching --theta, not both")),
        (GroupKind::Finite, Some(l), None) => Ok(Some(model.class_element(l)?)),
        (GroupKind::Finite, None, Some(_)) => usage(format!(
            "{} is finite; boundary holonomies are class labels (--{flag})",
            model.name()
        )),
        (_, Some(_), None) => usage(format!("{} is continuous; boundary holonomies are angles (--theta)", model.name())),
        (_, None, Some(t)) => Ok(Some(model.angle_element(t)?)),
        (_, None, None) => Ok(None),
    }
}

fn triangle(t: &TriangleArgs, phi: f64) -> Result<TriangleSpec, CliError> {
    let curvature: Curvature = t.curvature.into();
    match (t.b, t.side) {
        (Some(b), None) if curvature == Curvature::Hyperbolic => Ok(TriangleSpec::hyperbolic_from_base(phi, b)?),
        (Some(_), None) => usage("--b fixes the side through the hyperbolic relation only; use --side"),
        (None, Some(side)) => Ok(TriangleSpec::new(curvature, phi, side)?),
        _ => usage("give --b (hyperbolic) or --side"),
    }
}

// ---------------------------------------------------------------------------
// volume
// ---------------------------------------------------------------------------

fn volume(a: &VolumeArgs) -> Result<Rendered, CliError> {
    let model = model_for(&a.group, a.normalization)?;
    let s1 = holonomy(&model, a.holonomy.as_deref(), a.theta, "holonomy")?;
    let s2 = holonomy(&model, a.holonomy2.as_deref(), a.theta2, "holonomy2")?;
    if a.cross_caps > 0 && (s1.is_some() || s2.is_some()) {
        return usage("surfaces with cross-caps are closed; drop the holonomy flags");
    }
    if s2.is_some() && s1.is_none() {
        return usage("--holonomy2/--theta2 needs a first boundary holonomy");
    }
    let boundaries: Vec<GroupElement> = if a.cross_caps > 0 {
        Vec::new()
    } else {
        [Some(s1.unwrap_or_else(|| model.identity())), s2].into_iter().flatten().collect()
    };
    let surface = SurfaceSpec {
        genus: a.genus,
        cross_caps: a.cross_caps,
        boundaries,
    };
    surface.validate()?;
    let opts = SeriesOptions {
        truncation: a.trunc,
        abel: a.abel,
    };
    if !a.phi.is_empty() && a.phi.len() != a.cross_caps as usize {
        return usage(format!("{} --phi angle(s) given for {} cross-cap(s)", a.phi.len(), a.cross_caps));
    }
    if a.phi.is_empty() && (a.triangle.b.is_some() || a.triangle.side.is_some()) {
        return usage("--b/--side describe cross-cap triangles and need --phi");
    }
    if a.moduli && (a.cross_caps > 0 || surface.boundaries.len() != 1) {
        return usage("--moduli needs exactly one boundary component");
    }
    let v = if a.phi.is_empty() {
        vol_r(&model, &surface, &opts)?
    } else {
        let tris = a.phi.iter().map(|&p| triangle(&a.triangle, p)).collect::<Result<Vec<_>, _>>()?;
        riemannian_vol_nonorientable(&model, a.genus, &tris, &opts, a.tol)?
    };
    let v = if a.moduli { vol_m_from_r(&model, &v, &surface.boundaries[0])? } else { v };
    let v = convert(v, a.normalization)?;

    #[derive(Serialize)]
    struct Out<'a> {
        group: &'a str,
        cross_caps: u8,
        moduli: bool,
        #[serde(flatten)]
        volume: &'a VolumeResult,
    }
    let out = Out {
        group: model.name(),
        cross_caps: a.cross_caps,
        moduli: a.moduli,
        volume: &v,
    };
    let tol = (!a.phi.is_empty()).then_some(a.tol);
    finish(
        &a.common,
        "volume",
        to_json(&v.normalization),
        Some(v.truncation),
        tol,
        &out,
        || {
            csv_table(
                &[
                    "group",
                    "surface",
                    "genus",
                    "cross_caps",
                    "moduli",
                    "value",
                    "exact",
                    "truncation",
                    "tail_bound",
                    "convention",
                    "two_pi_exponent",
                    "witten_prefactor",
                    "flags",
                ],
                &[vec![
                    model.name().to_string(),
                    surface_name(v.surface).into(),
                    v.genus.to_string(),
                    a.cross_caps.to_string(),
                    a.moduli.to_string(),
                    num(v.value),
                    v.exact.to_string(),
                    v.truncation.to_string(),
                    num(v.tail_bound),
                    convention_name(v.normalization.convention).into(),
                    v.normalization.two_pi_exponent.to_string(),
                    num(v.normalization.witten_prefactor),
                    v.flags.join("; "),
                ]],
            )
        },
        true,
    )
}

fn surface_name(s: SurfaceKind) -> &'static str {
    match s {
        SurfaceKind::Orientable => "orientable",
        SurfaceKind::TwoBoundaries => "two_boundaries",
        SurfaceKind::Crosscap => "crosscap",
        SurfaceKind::Klein => "klein",
    }
}

fn convention_name(c: Convention) -> &'static str {
    match c {
        Convention::Counting => "counting",
        Convention::Unit => "unit",
        Convention::Witten => "witten",
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn verify_cmd(a: &VerifyArgs) -> Result<Rendered, CliError> {
    if a.samples < flatvol_core::oracle::MIN_SAMPLES {
        return usage(format!("--samples must be at least {}", flatvol_core::oracle::MIN_SAMPLES));
    }
    if !(a.tol > 0.0) {
        return usage("--tol must be positive");
    }
    let want = |s: Suite| a.suite == s || a.suite == Suite::All;
    let mut checks = Vec::new();
    if want(Suite::Finite) {
        checks.extend(verify::finite_suite(&a.groups, a.max_genus)?);
    }
    if want(Suite::Su2) {
        checks.extend(verify::su2_suite(&verify::Su2Options {
            samples: a.samples,
            seed: a.common.seed,
            glue_truncation: a.trunc,
        })?);
    }
    if want(Suite::Geometry) {
        checks.extend(verify::geometry_suite(a.tol)?);
    }
    let summary = verify::Summary::of(&checks);

    #[derive(Serialize)]
    struct Out<'a> {
        summary: verify::Summary,
        checks: &'a [verify::Check],
    }
    let norm = json!({ "finite": "counting", "continuous": "unit" });
    finish(
        &a.common,
        "verify",
        norm,
        Some(a.trunc),
        Some(a.tol),
        Out {
            summary,
            checks: &checks,
        },
        || {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    let r = &c.report;
                    vec![
                        c.suite.to_string(),
                        c.subject.clone(),
                        r.identity_name.clone(),
                        num(r.residual),
                        num(r.tolerance),
                        to_json(&r.status).as_str().unwrap_or_default().to_string(),
                        to_json(&r.method).as_str().unwrap_or_default().to_string(),
                        r.samples_or_order.to_string(),
                        opt_num(r.stderr),
                        opt(r.seed),
                    ]
                })
                .collect();
            csv_table(
                &[
                    "suite",
                    "subject",
                    "identity",
                    "residual",
                    "tolerance",
                    "status",
                    "method",
                    "samples_or_order",
                    "stderr",
                    "seed",
                ],
                &rows,
            )
        },
        summary.failed == 0,
    )
}

// ---------------------------------------------------------------------------
// hphi
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct HRow {
    pub phi: f64,
    pub k: f64,
    #[serde(rename = "L")]
    pub side: f64,
    pub h: f64,
    pub kh: f64,
    #[serde(rename = "H_su2")]
    pub h_su2: f64,
    /// Closed-form value when k is an integer (hyperbolic only).
    pub h_series: Option<f64>,
}

/// Integer k = π/φ within 1e-9, if any.
fn integer_k(phi: f64) -> Option<u32> {
    let k = PI / phi;
    let r = k.round();
    ((k - r).abs() < 1e-9 && r >= 1.0 && r <= MAX_SERIES_K as f64).then_some(r as u32)
}

fn h_row(t: &TriangleArgs, phi: f64, tol: f64) -> Result<HRow, CliError> {
    let spec = triangle(t, phi)?;
    let h = h_of(&spec, tol)?;
    let k = spec.k();
    let kh = k * h;
    let h_series = match (spec.curvature, integer_k(phi)) {
        (Curvature::Hyperbolic, Some(ki)) => Some(h_hyperbolic_series(ki, spec.side)?),
        _ => None,
    };
    Ok(HRow {
        phi,
        k,
        side: spec.side,
        h,
        kh,
        h_su2: kh.powf(1.5),
        h_series,
    })
}

fn hphi(a: &HphiArgs) -> Result<Rendered, CliError> {
    let phis = match &a.phi_grid {
        Some(g) => g.points(),
        None if !a.phi.is_empty() => a.phi.clone(),
        None => return usage("give --phi-grid start:stop:step or --phi"),
    };
    if !(a.tol > 0.0) {
        return usage("--tol must be positive");
    }
    if let Some(b) = a.triangle.b {
        // Validate once so a bad b is reported as input, not per row.
        l_of_phi(b, PI / 2.0)?;
    }
    let rows = phis
        .par_iter()
        .map(|&p| h_row(&a.triangle, p, a.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let norm = json!({
        "convention": "unit",
        "H_group": "su2",
        "H_exponent": 1.5,
        "curvature": to_json(&Curvature::from(a.triangle.curvature)),
        "b": a.triangle.b,
        "L": a.triangle.side,
    });
    finish(
        &a.common,
        "hphi",
        norm,
        None,
        Some(a.tol),
        &rows,
        || {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        num(r.phi),
                        num(r.k),
                        num(r.h),
                        num(r.kh),
                        num(r.h_su2),
                        num(r.side),
                        opt_num(r.h_series),
                    ]
                })
                .collect();
            csv_table(&["phi", "k", "h", "kh", "H_su2", "L", "h_series"], &body)
        },
        true,
    )
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub genus: u32,
    pub surface: SurfaceKind,
    pub holonomy: Option<String>,
    pub value: Option<f64>,
    pub exact: bool,
    pub truncation: u64,
    pub tail_bound: Option<f64>,
    pub two_pi_exponent: i64,
    pub note: String,
}

fn table_row(
    model: &GroupModel,
    norm: Option<NormalizationArg>,
    genus: u32,
    surface: SurfaceKind,
    holonomy: Option<(String, GroupElement)>,
    opts: &SeriesOptions,
) -> Result<TableRow, CliError> {
    let r = match (&holonomy, surface) {
        (Some((_, s)), _) => vol_r_orientable(model, genus, s, opts),
        (None, SurfaceKind::Crosscap) => vol_r_crosscap(model, genus, opts),
        (None, _) => vol_r_klein(model, genus, opts),
    };
    let exponent = NormalizationDescriptor::new(model, surface, genus).two_pi_exponent;
    let label = holonomy.map(|(l, _)| l);
    match r {
        Ok(v) => {
            let v = convert(v, norm)?;
            Ok(TableRow {
                genus,
                surface,
                holonomy: label,
                value: Some(v.value),
                exact: v.exact,
                truncation: v.truncation,
                tail_bound: Some(v.tail_bound),
                two_pi_exponent: exponent,
                note: v.flags.join("; "),
            })
        }
        // Divergent or Abel-only cells stay in the table with the reason.
        Err(e @ (Error::Divergent(_) | Error::Domain(_))) => Ok(TableRow {
            genus,
            surface,
            holonomy: label,
            value: None,
            exact: false,
            truncation: 0,
            tail_bound: None,
            two_pi_exponent: exponent,
            note: e.to_string(),
        }),
        Err(e) => Err(e.into()),
    }
}

fn table(a: &TableArgs) -> Result<Rendered, CliError> {
    let model = model_for(&a.group, a.normalization)?;
    let holonomies: Vec<(String, GroupElement)> = match model.as_finite() {
        Some(g) => {
            if !a.theta.is_empty() {
                return usage(format!("{} is finite; --theta does not apply", model.name()));
            }
            g.classes()
                .iter()
                .map(|c| (c.label.clone(), GroupElement::Finite(c.representative)))
                .collect()
        }
        None => {
            let thetas = if a.theta.is_empty() { vec![0.0, PI / 2.0, PI] } else { a.theta.clone() };
            thetas
                .into_iter()
                .map(|t| Ok((t.to_string(), model.angle_element(t)?)))
                .collect::<Result<_, Error>>()?
        }
    };
    let opts = SeriesOptions {
        truncation: a.trunc,
        abel: a.abel,
    };
    let mut cells: Vec<(u32, SurfaceKind, Option<(String, GroupElement)>)> = Vec::new();
    for genus in 0..=a.max_genus {
        for h in &holonomies {
            cells.push((genus, SurfaceKind::Orientable, Some(h.clone())));
        }
        cells.push((genus, SurfaceKind::Crosscap, None));
        cells.push((genus, SurfaceKind::Klein, None));
    }
    let rows = cells
        .into_par_iter()
        .map(|(g, s, h)| table_row(&model, a.normalization, g, s, h, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let mut norm = to_json(&NormalizationDescriptor::new(&model, SurfaceKind::Orientable, 0));
    if let (Some(n), Some(obj)) = (a.normalization, norm.as_object_mut()) {
        obj.insert("convention".into(), to_json(&Convention::from(n)));
    }
    if let Some(obj) = norm.as_object_mut() {
        // The (2π) exponent varies per row; see each row's two_pi_exponent.
        obj.remove("two_pi_exponent");
        obj.remove("witten_prefactor");
    }

    #[derive(Serialize)]
    struct Out<'a> {
        group: &'a str,
        rows: &'a [TableRow],
    }
    finish(
        &a.common,
        "table",
        norm,
        a.trunc,
        None,
        Out {
            group: model.name(),
            rows: &rows,
        },
        || {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.genus.to_string(),
                        surface_name(r.surface).into(),
                        r.holonomy.clone().unwrap_or_default(),
                        opt_num(r.value),
                        r.exact.to_string(),
                        r.truncation.to_string(),
                        opt_num(r.tail_bound),
                        r.two_pi_exponent.to_string(),
                        r.note.clone(),
                    ]
                })
                .collect();
            csv_table(
                &[
                    "genus",
                    "surface",
                    "holonomy",
                    "value",
                    "exact",
                    "truncation",
                    "tail_bound",
                    "two_pi_exponent",
                    "note",
                ],
                &body,
            )
        },
        true,
    )
}

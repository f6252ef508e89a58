//! Verification suites behind `flatvol verify`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use flatvol_core::group::su2;
use flatvol_core::identities::{
    self, check_commutator, check_commutator_quadrature, check_convolution, check_selfdual, check_square, check_weyl,
    IdentityReport, McOptions, Method, Status,
};
use flatvol_core::mc::derive_seed;
use flatvol_core::oracle::{self, PushforwardWord};
use flatvol_core::triangle::{
    dirichlet_energy, h_euclidean, h_hyperbolic_quad, h_hyperbolic_series, h_of, harmonic_residual, l_of_phi,
    spherical_endpoint_residuals, tau_of_phi, Curvature, HarmonicField, HarmonicGrid, TriangleSpec,
};
use flatvol_core::volumes::{
    glue_check, vol_r_crosscap, vol_r_klein, vol_r_orientable, vol_r_two_boundaries, SeriesOptions, VolumeResult,
};
use flatvol_core::{Error, GroupElement, GroupModel, Result};

/// Largest MC standard error for which the SU(2) suite issues a verdict.
pub const MC_MAX_STDERR: f64 = 1e-2;
/// Pre-rounding residual allowed for Frobenius–Schur quadrature.
pub const FS_TOL: f64 = 1e-6;
/// Appendix-series vs quadrature agreement.
pub const SERIES_TOL: f64 = 1e-9;
pub const LAW_OF_COSINES_TOL: f64 = 1e-10;
pub const TAU_TOL: f64 = 1e-12;
pub const EUCLID_ANCHOR_TOL: f64 = 1e-10;
pub const ENDPOINT_TOL: f64 = 1e-12;
/// Grid-halving ratio of a second-order residual must lie in 4 ± this.
pub const HARMONIC_RATIO_SLACK: f64 = 0.5;
pub const KLEIN_ANCHOR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub subject: String,
    #[serde(flatten)]
    pub report: IdentityReport,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(checks: &[Check]) -> Self {
        let mut s = Summary {
            total: checks.len(),
            ..Default::default()
        };
        for c in checks {
            match c.report.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }
}

fn check(suite: &'static str, subject: &str, name: String, mut report: IdentityReport) -> Check {
    report.identity_name = name;
    Check {
        suite,
        subject: subject.to_string(),
        report,
    }
}

fn combined(name: &str, reports: &[IdentityReport]) -> IdentityReport {
    IdentityReport::combine(name, reports).unwrap_or_else(|| IdentityReport::deterministic(name, 0.0, 0.0, Method::ExactSum, 0))
}

/// Exact agreement of a counting-measure volume with a brute-force count.
fn count_report(name: &str, v: &VolumeResult, count: u64, scanned: u64) -> IdentityReport {
    let mut r = IdentityReport::deterministic(name, (v.value - count as f64).abs(), 0.0, Method::ExactSum, scanned);
    if !v.exact {
        r.passed = false;
        r.status = Status::Fail;
    }
    r
}

/// A non-convergence is a failed check, not an aborted run.
fn or_failed(name: &str, r: Result<IdentityReport>) -> Result<IdentityReport> {
    match r {
        Err(Error::NonConvergent { residual, .. }) => {
            let mut rep = IdentityReport::deterministic(name, residual, 0.0, Method::Quadrature, 0);
            rep.passed = false;
            rep.status = Status::Fail;
            Ok(rep)
        }
        other => other,
    }
}

/// Identities plus brute-force agreement for one finite group, ℓ ≤ max_genus.
pub fn finite_group(name: &str, max_genus: u32) -> Result<Vec<Check>> {
    let model = GroupModel::by_name(name)?;
    let g = model
        .as_finite()
        .ok_or_else(|| Error::Domain(format!("{name} is not a finite group")))?
        .clone();
    let subject = model.name().to_string();
    let mut out: Vec<Check> = identities::finite_suite(&model)?
        .into_iter()
        .map(|r| {
            let n = r.identity_name.clone();
            check("finite", &subject, n, r)
        })
        .collect();

    let classes: Vec<GroupElement> = g.classes().iter().map(|c| GroupElement::Finite(c.representative)).collect();
    let e = model.identity();
    let opts = SeriesOptions::default();
    for l in 0..=max_genus {
        let mut orient = Vec::new();
        for s in &classes {
            let v = vol_r_orientable(&model, l, s, &opts)?;
            let c = oracle::count_surface_tuples(&model, l, s)?;
            orient.push(count_report("", &v, c.count, c.tuples_scanned));
        }
        out.push(check("finite", &subject, format!("orientable_count l={l}"), combined("", &orient)));

        let v = vol_r_crosscap(&model, l, &opts)?;
        let c = oracle::count_crosscap_tuples(&model, l, &e)?;
        out.push(check("finite", &subject, format!("crosscap_count l={l}"), count_report("", &v, c.count, c.tuples_scanned)));

        let v = vol_r_klein(&model, l, &opts)?;
        let c = oracle::count_klein_tuples(&model, l, &e)?;
        out.push(check("finite", &subject, format!("klein_count l={l}"), count_report("", &v, c.count, c.tuples_scanned)));
        let c = oracle::count_two_crosscap_tuples(&model, l, &e)?;
        out.push(check(
            "finite",
            &subject,
            format!("two_crosscap_count l={l}"),
            count_report("", &v, c.count, c.tuples_scanned),
        ));

        let mut two = Vec::new();
        for s1 in &classes {
            for s2 in &classes {
                let v = vol_r_two_boundaries(&model, l, s1, s2, &opts)?;
                let c = oracle::count_two_boundary_tuples(&model, l, s1, s2)?;
                two.push(count_report("", &v, c.count, c.tuples_scanned));
            }
        }
        out.push(check("finite", &subject, format!("two_boundary_count l={l}"), combined("", &two)));

        if l >= 1 {
            let glue = classes
                .iter()
                .map(|h| glue_check(&model, l, h, 0))
                .collect::<Result<Vec<_>>>()?;
            out.push(check("finite", &subject, format!("genus_gluing l={l}"), combined("", &glue)));
        }
    }
    Ok(out)
}

pub fn finite_suite(groups: &[String], max_genus: u32) -> Result<Vec<Check>> {
    let per_group = groups
        .par_iter()
        .map(|g| finite_group(g, max_genus))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_group.into_iter().flatten().collect())
}

/// SU(2) options for the Monte-Carlo parts of the suite.
#[derive(Debug, Clone, Copy)]
pub struct Su2Options {
    pub samples: u64,
    pub seed: u64,
    pub glue_truncation: u64,
}

pub fn su2_suite(o: &Su2Options) -> Result<Vec<Check>> {
    let model = GroupModel::su2();
    let subject = "su2";
    let mut out = Vec::new();
    let irreps = model.list_irreps(11)?;
    let mc = |index: u64| McOptions {
        samples: o.samples,
        seed: derive_seed(o.seed, index),
        max_stderr: MC_MAX_STDERR,
    };

    for irrep in &irreps {
        let (v, evals) = model.fs_integral(irrep)?;
        let target = if irrep.index % 2 == 0 { 1.0 } else { -1.0 };
        let r = IdentityReport::deterministic("", (v.re - target).abs() + v.im.abs(), FS_TOL, Method::Quadrature, evals as u64);
        out.push(check("su2", subject, format!("frobenius_schur n={}", irrep.index), r));
    }

    let angles = [0.3, 1.0, 2.5, PI];
    let mut conv = Vec::new();
    let mut sq = Vec::new();
    let mut sd = Vec::new();
    let mut comm = Vec::new();
    for irrep in &irreps {
        for &t in &angles {
            conv.push(check_convolution(&model, irrep, &model.angle_element(t)?)?);
        }
        sq.push(check_square(&model, irrep)?);
        sd.push(check_selfdual(&model, irrep)?);
        for (a, b) in [(0.4, 1.1), (1.0, 2.0), (2.9, 0.2)] {
            comm.push(check_commutator_quadrature(
                &model,
                irrep,
                &model.angle_element(a)?,
                &model.angle_element(b)?,
            )?);
        }
    }
    out.push(check("su2", subject, "convolution".into(), combined("", &conv)));
    out.push(check("su2", subject, "square".into(), combined("", &sq)));
    out.push(check("su2", subject, "self_dual".into(), combined("", &sd)));
    out.push(check("su2", subject, "commutator".into(), combined("", &comm)));

    let a = model.angle_element(0.7)?;
    let b = model.angle_element(1.9)?;
    out.push(check(
        "su2",
        subject,
        "commutator_mc n=2".into(),
        check_commutator(&model, &irreps[2], &a, &b, &mc(0))?,
    ));
    out.push(check("su2", subject, "weyl_mc f=theta".into(), check_weyl(&model, |t| t, &mc(1))?));

    // Pushforwards of Haar measure under word maps, tested on characters.
    let m = &model;
    let chi = |n: u64| move |g: &GroupElement| su2::character(n, m.su2_angle(g).expect("SU(2) element"));
    let est = oracle::mc_pushforward_expect(&model, &PushforwardWord::Square, chi(3), o.samples, mc(2).seed)?;
    out.push(check(
        "su2",
        subject,
        "pushforward_square n=3".into(),
        IdentityReport::monte_carlo("", &est, -1.0, MC_MAX_STDERR),
    ));
    let est = oracle::mc_pushforward_expect(&model, &PushforwardWord::Klein, chi(2), o.samples, mc(3).seed)?;
    out.push(check(
        "su2",
        subject,
        "pushforward_klein n=2".into(),
        IdentityReport::monte_carlo("", &est, 1.0 / 3.0, MC_MAX_STDERR),
    ));
    let h_angle = 1.2;
    let h = model.angle_element(h_angle)?;
    let est = oracle::mc_pushforward_expect(&model, &PushforwardWord::CommutatorH(h), chi(1), o.samples, mc(4).seed)?;
    out.push(check(
        "su2",
        subject,
        "pushforward_commutator n=1".into(),
        IdentityReport::monte_carlo("", &est, su2::character(1, h_angle) / 4.0, MC_MAX_STDERR),
    ));

    let h = model.angle_element(PI / 3.0)?;
    let glue = or_failed("", glue_check(&model, 2, &h, o.glue_truncation))?;
    out.push(check("su2", subject, "genus_gluing l=2".into(), glue));

    let k = vol_r_klein(&model, 1, &SeriesOptions::truncated(10_000))?;
    let r = IdentityReport::deterministic("", (k.value - PI * PI / 6.0).abs(), KLEIN_ANCHOR_TOL, Method::ExactSum, k.truncation);
    out.push(check("su2", subject, "klein_anchor l=1".into(), r));
    let c = vol_r_crosscap(&model, 1, &SeriesOptions::default())?;
    let r = IdentityReport::deterministic("", (c.value - std::f64::consts::LN_2).abs(), KLEIN_ANCHOR_TOL, Method::ExactSum, c.truncation);
    out.push(check("su2", subject, "crosscap_anchor l=1".into(), r));
    Ok(out)
}

/// Hyperbolic law of cosines for the isosceles triangle (L, L, φ), as a
/// relative residual on cosh b.
pub fn law_of_cosines_residual(b: f64, phi: f64, side: f64) -> f64 {
    let rhs = side.cosh().powi(2) - side.sinh().powi(2) * phi.cos();
    (rhs - b.cosh()).abs() / b.cosh()
}

/// The 20 × 20 (b, φ) grid: b ∈ {0.15, …, 3}, φ ∈ {π/20, …, π}.
pub fn geometry_grid() -> Vec<(f64, f64)> {
    (1..=20)
        .flat_map(|i| (1..=20).map(move |j| (0.15 * i as f64, PI * j as f64 / 20.0)))
        .collect()
}

pub fn geometry_suite(tol: f64) -> Result<Vec<Check>> {
    let subject = "triangle";
    let mut out = Vec::new();

    let mut dual = Vec::new();
    for k in 2..=6u32 {
        for b in [0.5, 1.0, 2.0] {
            let phi = PI / k as f64;
            let side = l_of_phi(b, phi)?;
            let s = h_hyperbolic_series(k, side)?;
            let q = h_hyperbolic_quad(phi, side, tol)?;
            dual.push(IdentityReport::deterministic("", (s - q).abs(), SERIES_TOL, Method::Quadrature, k as u64));
        }
    }
    out.push(check("geometry", subject, "series_vs_quadrature".into(), combined("", &dual)));

    let grid = geometry_grid();
    let mut loc = Vec::new();
    let mut tau = Vec::new();
    for &(b, phi) in &grid {
        let side = l_of_phi(b, phi)?;
        loc.push(IdentityReport::deterministic(
            "",
            law_of_cosines_residual(b, phi, side),
            LAW_OF_COSINES_TOL,
            Method::ExactSum,
            grid.len() as u64,
        ));
        tau.push(IdentityReport::deterministic(
            "",
            (tau_of_phi(b, phi)? - (side / 2.0).tanh()).abs(),
            TAU_TOL,
            Method::ExactSum,
            grid.len() as u64,
        ));
    }
    out.push(check("geometry", subject, "side_vs_law_of_cosines".into(), combined("", &loc)));
    out.push(check("geometry", subject, "tau_vs_tanh".into(), combined("", &tau)));

    let h = h_euclidean(PI / 2.0, 1.0, tol)?;
    out.push(check(
        "geometry",
        subject,
        "euclidean_anchor".into(),
        IdentityReport::deterministic("", (h - 4.0 / 3.0).abs(), EUCLID_ANCHOR_TOL, Method::Quadrature, 1),
    ));

    let mut ends = Vec::new();
    for phi in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, PI] {
        for side in [0.3, 0.8, 1.2] {
            let (r0, r1) = spherical_endpoint_residuals(phi, side)?;
            ends.push(IdentityReport::deterministic("", r0.max(r1), ENDPOINT_TOL, Method::ExactSum, 2));
        }
    }
    out.push(check("geometry", subject, "spherical_endpoints".into(), combined("", &ends)));

    for k in 1..=6u32 {
        let f = HarmonicField::new(k as f64, Curvature::Hyperbolic);
        let coarse = harmonic_residual(&f, &HarmonicGrid::standard(k as f64, 0.02))?;
        let fine = harmonic_residual(&f, &HarmonicGrid::standard(k as f64, 0.01))?;
        let ratio = coarse / fine;
        out.push(check(
            "geometry",
            subject,
            format!("harmonic_ratio k={k}"),
            IdentityReport::deterministic("", (ratio - 4.0).abs(), HARMONIC_RATIO_SLACK, Method::ExactSum, 2),
        ));
    }

    let mut energy = Vec::new();
    for (curv, phi, side) in [
        (Curvature::Hyperbolic, PI / 3.0, 1.0),
        (Curvature::Euclidean, PI / 2.0, 1.0),
        (Curvature::Spherical, PI / 4.0, 0.7),
    ] {
        let spec = TriangleSpec::new(curv, phi, side)?;
        let kh = spec.k() * h_of(&spec, tol)?;
        let e = dirichlet_energy(&spec, tol)?;
        energy.push(IdentityReport::deterministic("", (e - kh).abs() / kh, 1e-8, Method::Quadrature, 1));
    }
    out.push(check("geometry", subject, "energy_vs_kh".into(), combined("", &energy)));
    Ok(out)
}

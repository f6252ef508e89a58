//! Acceptance criteria 1–9. Each criterion prints one PASS/FAIL line with its
//! runtime against the budget; the test fails if any line is FAIL.
//!
//! Run with `cargo test -p flatvol-cli --test acceptance -- --nocapture`.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use flatvol_cli::verify;
use flatvol_core::group::su2;
use flatvol_core::identities::{
    check_commutator, check_commutator_quadrature, check_convolution, check_selfdual, check_square, check_weyl,
    finite_suite, seed_sweep, IdentityReport, McOptions,
};
use flatvol_core::oracle::{self, PushforwardWord};
use flatvol_core::triangle::{
    h_euclidean, h_hyperbolic_quad, h_hyperbolic_series, harmonic_residual, l_of_phi, spherical_endpoint_residuals,
    tau_of_phi, Curvature, HarmonicField, HarmonicGrid,
};
use flatvol_core::volumes::{
    glue_check, vol_r_crosscap, vol_r_klein, vol_r_orientable, vol_r_two_boundaries, SeriesOptions,
};
use flatvol_core::{GroupElement, GroupModel};

const FINITE: [&str; 4] = ["s3", "d4", "q8", "z6"];

type Outcome = Result<String, String>;

struct Line {
    id: u8,
    passed: bool,
}

fn criterion(id: u8, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> Line {
    let start = Instant::now();
    let outcome = f();
    let took = start.elapsed();
    let in_budget = took <= budget;
    let passed = outcome.is_ok() && in_budget;
    let detail = match &outcome {
        Ok(d) => d.clone(),
        Err(e) => e.clone(),
    };
    let over = if in_budget { "" } else { " OVER BUDGET" };
    println!(
        "{} criterion {id}: {name} [{:.2} s / {} s{over}] {detail}",
        if passed { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        budget.as_secs()
    );
    Line { id, passed }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// 1. Character sums equal brute-force counts, integer for integer.
fn finite_exactness() -> Outcome {
    let opts = SeriesOptions::default();
    let mut compared = 0usize;
    for name in FINITE {
        let m = GroupModel::by_name(name).map_err(e)?;
        let g = m.as_finite().unwrap().clone();
        let classes: Vec<GroupElement> = g.classes().iter().map(|c| GroupElement::Finite(c.representative)).collect();
        let id = m.identity();
        for l in 0..=2u32 {
            for s in &classes {
                let v = vol_r_orientable(&m, l, s, &opts).map_err(e)?;
                let c = oracle::count_surface_tuples(&m, l, s).map_err(e)?.count;
                ensure(v.exact && v.value == c as f64, || format!("{name} orientable l={l}: {} vs {c}", v.value))?;
                for s2 in &classes {
                    let v = vol_r_two_boundaries(&m, l, s, s2, &opts).map_err(e)?;
                    let c = oracle::count_two_boundary_tuples(&m, l, s, s2).map_err(e)?.count;
                    ensure(v.exact && v.value == c as f64, || format!("{name} two boundaries l={l}"))?;
                    compared += 1;
                }
                compared += 1;
            }
            let v = vol_r_crosscap(&m, l, &opts).map_err(e)?;
            let c = oracle::count_crosscap_tuples(&m, l, &id).map_err(e)?.count;
            ensure(v.exact && v.value == c as f64, || format!("{name} crosscap l={l}: {} vs {c}", v.value))?;
            let v = vol_r_klein(&m, l, &opts).map_err(e)?;
            let c = oracle::count_klein_tuples(&m, l, &id).map_err(e)?.count;
            let c2 = oracle::count_two_crosscap_tuples(&m, l, &id).map_err(e)?.count;
            ensure(v.exact && v.value == c as f64 && c == c2, || format!("{name} klein l={l}: {} vs {c}/{c2}", v.value))?;
            compared += 3;
        }
    }
    let s3 = GroupModel::by_name("s3").map_err(e)?;
    let cl = |l: &str| s3.class_element(l).unwrap();
    let id = s3.identity();
    let anchors = [
        (vol_r_orientable(&s3, 1, &id, &opts), 18.0, "l=1 s=e"),
        (vol_r_orientable(&s3, 1, &cl("transposition"), &opts), 0.0, "l=1 transposition"),
        (vol_r_orientable(&s3, 1, &cl("3cycle"), &opts), 9.0, "l=1 3cycle"),
        (vol_r_crosscap(&s3, 1, &opts), 90.0, "crosscap l=1"),
        (vol_r_klein(&s3, 0, &opts), 18.0, "klein l=0"),
        (vol_r_two_boundaries(&s3, 1, &id, &id, &opts), 108.0, "two boundaries l=1"),
        (vol_r_orientable(&s3, 2, &id, &opts), 486.0, "l=2 s=e"),
    ];
    for (v, want, what) in anchors {
        let v = v.map_err(e)?;
        ensure(v.value == want, || format!("S3 anchor {what}: {} vs {want}", v.value))?;
    }
    Ok(format!("{compared} exact comparisons, 7 S3 anchors"))
}

/// 2. Genus gluing: finite exact, SU(2) ℓ=2 at truncation 500.
fn gluing() -> Outcome {
    for name in FINITE {
        let m = GroupModel::by_name(name).map_err(e)?;
        let g = m.as_finite().unwrap().clone();
        for l in 1..=2 {
            for c in g.classes() {
                let r = glue_check(&m, l, &GroupElement::Finite(c.representative), 0).map_err(e)?;
                ensure(r.residual == 0.0, || format!("{name} l={l} {}: residual {}", c.label, r.residual))?;
            }
        }
    }
    let m = GroupModel::su2();
    let mut worst: f64 = 0.0;
    for theta in [0.4, PI / 3.0, 1.0, 2.2, 3.0] {
        let r = glue_check(&m, 2, &m.angle_element(theta).map_err(e)?, 500).map_err(e)?;
        ensure(r.residual < 1e-8, || format!("SU(2) θ={theta}: residual {:e}", r.residual))?;
        worst = worst.max(r.residual);
    }
    Ok(format!("finite exact; SU(2) max residual {worst:.2e} < 1e-8"))
}

fn sweep(label: &str, check: impl Fn(u64) -> flatvol_core::Result<IdentityReport>) -> Result<String, String> {
    let s = seed_sweep(100, 95, 2024, check).map_err(e)?;
    ensure(s.accepted(), || format!("{label}: {}/100 within 3σ ({} inconclusive)", s.passed, s.inconclusive))?;
    Ok(format!("{label} {}/100", s.passed))
}

/// 3. Identity suite: exact on finite groups, < 1e-8 by quadrature on
/// SU(2), and MC within 3σ on ≥ 95 of 100 seeds at 10⁶ samples.
fn identity_suite() -> Outcome {
    for name in FINITE {
        let m = GroupModel::by_name(name).map_err(e)?;
        for r in finite_suite(&m).map_err(e)? {
            ensure(r.residual < 1e-12, || format!("{name} {}: {:e}", r.identity_name, r.residual))?;
        }
    }
    let m = GroupModel::su2();
    let irreps = m.list_irreps(11).map_err(e)?;
    let mut worst: f64 = 0.0;
    for a in &irreps {
        let mut reports = vec![check_square(&m, a).map_err(e)?, check_selfdual(&m, a).map_err(e)?];
        for t in [0.3, 1.0, 2.5, PI] {
            reports.push(check_convolution(&m, a, &m.angle_element(t).map_err(e)?).map_err(e)?);
        }
        for (x, y) in [(0.4, 1.1), (1.0, 2.0), (2.9, 0.2)] {
            let (x, y) = (m.angle_element(x).map_err(e)?, m.angle_element(y).map_err(e)?);
            reports.push(check_commutator_quadrature(&m, a, &x, &y).map_err(e)?);
        }
        for r in reports {
            ensure(r.residual < 1e-8, || format!("SU(2) n={} {}: {:e}", a.index, r.identity_name, r.residual))?;
            worst = worst.max(r.residual);
        }
    }
    let samples = 1_000_000;
    let mc = |seed| McOptions {
        samples,
        seed,
        max_stderr: verify::MC_MAX_STDERR,
    };
    let (x, y) = (m.angle_element(0.7).map_err(e)?, m.angle_element(1.9).map_err(e)?);
    let mut sweeps = vec![
        sweep("commutator", |s| check_commutator(&m, &irreps[2], &x, &y, &mc(s)))?,
        sweep("weyl", |s| check_weyl(&m, |t| t * t.cos(), &mc(s)))?,
    ];
    let push = |word: PushforwardWord, n: u64, target: f64| {
        let m = &m;
        move |s: u64| {
            let f = |g: &GroupElement| su2::character(n, m.su2_angle(g).expect("SU(2) element"));
            let est = oracle::mc_pushforward_expect(m, &word, f, samples, s)?;
            Ok(IdentityReport::monte_carlo("pushforward", &est, target, verify::MC_MAX_STDERR))
        }
    };
    sweeps.push(sweep("square", push(PushforwardWord::Square, 3, -1.0))?);
    sweeps.push(sweep("klein", push(PushforwardWord::Klein, 2, 1.0 / 3.0))?);
    let h = 1.2;
    let word = PushforwardWord::CommutatorH(m.angle_element(h).map_err(e)?);
    sweeps.push(sweep("commutator_word", push(word, 1, su2::character(1, h) / 4.0))?);
    Ok(format!("finite exact; SU(2) quadrature max {worst:.1e}; MC {}", sweeps.join(", ")))
}

/// 4. Frobenius–Schur indicators.
fn frobenius_schur() -> Outcome {
    let m = GroupModel::su2();
    let mut worst: f64 = 0.0;
    for a in m.list_irreps(11).map_err(e)? {
        let want = if a.index % 2 == 0 { 1.0 } else { -1.0 };
        let (v, _) = m.fs_integral(&a).map_err(e)?;
        let res = (v.re - want).abs() + v.im.abs();
        ensure(res < 1e-6, || format!("SU(2) n={}: residual {res:e}", a.index))?;
        ensure(m.frobenius_schur(&a).map_err(e)? as f64 == want, || format!("SU(2) n={} rounds wrong", a.index))?;
        worst = worst.max(res);
    }
    let s3 = GroupModel::by_name("s3").map_err(e)?;
    for a in s3.list_irreps(3).map_err(e)? {
        ensure(s3.frobenius_schur(&a).map_err(e)? == 1, || "S3 indicator not +1".into())?;
    }
    let q8 = GroupModel::by_name("q8").map_err(e)?;
    let mut minus = 0;
    for a in q8.list_irreps(5).map_err(e)? {
        if q8.frobenius_schur(&a).map_err(e)? == -1 {
            minus += 1;
        }
    }
    ensure(minus == 1, || format!("Q8 has {minus} quaternionic irreps"))?;
    Ok(format!("SU(2) n≤10 max residual {worst:.1e}; S3 all +1; Q8 one −1"))
}

/// 5. Closed-form series vs quadrature.
fn appendix_series() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 2..=6u32 {
        for b in [0.5, 1.0, 2.0] {
            let phi = PI / k as f64;
            let side = l_of_phi(b, phi).map_err(e)?;
            let d = (h_hyperbolic_series(k, side).map_err(e)? - h_hyperbolic_quad(phi, side, 1e-13).map_err(e)?).abs();
            ensure(d < 1e-9, || format!("k={k} b={b}: {d:e}"))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("max |series − quad| = {worst:.1e} < 1e-9"))
}

/// 6. Side length, τ, Euclidean anchor, spherical endpoints.
fn geometry() -> Outcome {
    let (mut loc, mut tau): (f64, f64) = (0.0, 0.0);
    for (b, phi) in verify::geometry_grid() {
        let side = l_of_phi(b, phi).map_err(e)?;
        loc = loc.max(verify::law_of_cosines_residual(b, phi, side));
        tau = tau.max((tau_of_phi(b, phi).map_err(e)? - (side / 2.0).tanh()).abs());
    }
    ensure(loc < 1e-10, || format!("law of cosines residual {loc:e}"))?;
    ensure(tau < 1e-12, || format!("τ residual {tau:e}"))?;
    let anchor = (h_euclidean(PI / 2.0, 1.0, 1e-13).map_err(e)? - 4.0 / 3.0).abs();
    ensure(anchor < 1e-10, || format!("Euclidean anchor off by {anchor:e}"))?;
    let mut ends: f64 = 0.0;
    for phi in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, PI] {
        for side in [0.3, 0.8, 1.2, 1.5] {
            let (a, b) = spherical_endpoint_residuals(phi, side).map_err(e)?;
            ends = ends.max(a).max(b);
        }
    }
    ensure(ends < 1e-12, || format!("spherical endpoint residual {ends:e}"))?;
    Ok(format!(
        "20×20 grid: law of cosines {loc:.1e}, τ {tau:.1e}; anchor {anchor:.1e}; endpoints {ends:.1e}"
    ))
}

/// 7. Second-order convergence of the harmonic residual.
fn harmonicity() -> Outcome {
    let mut ratios = Vec::new();
    for k in 1..=6 {
        let f = HarmonicField::new(k as f64, Curvature::Hyperbolic);
        let coarse = harmonic_residual(&f, &HarmonicGrid::standard(k as f64, 0.02)).map_err(e)?;
        let fine = harmonic_residual(&f, &HarmonicGrid::standard(k as f64, 0.01)).map_err(e)?;
        let r = coarse / fine;
        ensure((3.5..=4.5).contains(&r), || format!("k={k}: ratio {r}"))?;
        ratios.push(format!("{r:.3}"));
    }
    Ok(format!("ratios k=1..6: {}", ratios.join(", ")))
}

/// 8. SU(2) Klein bottle ℓ=1 against a direct 10⁸-term sum.
fn klein_anchor() -> Outcome {
    let n = 100_000_000u64;
    // Smallest terms first.
    let reference: f64 = (1..=n).rev().map(|m| 1.0 / (m as f64 * m as f64)).sum::<f64>() + 1.0 / n as f64;
    let v = vol_r_klein(&GroupModel::su2(), 1, &SeriesOptions::truncated(10_000)).map_err(e)?;
    let d = (v.value - reference).abs();
    ensure(d < 1e-6, || format!("value {} vs reference {reference}: {d:e}", v.value))?;
    Ok(format!(
        "value {:.15} vs direct sum {reference:.15}: |Δ| = {d:.1e}; reference − π²/6 = {:.1e}",
        v.value,
        reference - PI * PI / 6.0
    ))
}

/// 9. Byte-identical CLI output across runs and worker counts.
fn determinism() -> Outcome {
    let cases: [&[&str]; 9] = [
        &["volume", "--group", "s3", "--genus", "1", "--holonomy", "e", "--normalization", "counting"],
        &["volume", "--group", "su2", "--genus", "2", "--theta", "pi/3", "--normalization", "witten"],
        &["volume", "--group", "su2", "--genus", "1", "--cross-caps", "1", "--phi", "pi/3", "--b", "1"],
        &["verify", "--suite", "finite", "--groups", "s3,d4,q8,z6", "--max-genus", "2"],
        &["verify", "--suite", "su2", "--seed", "17"],
        &["verify", "--suite", "geometry", "--output", "csv"],
        &["hphi", "--curvature", "hyperbolic", "--b", "2", "--phi-grid", "0.2:3.0:0.1", "--output", "csv"],
        &["table", "--group", "q8", "--output", "csv"],
        &["table", "--group", "su2", "--abel", "--seed", "3"],
    ];
    for args in cases {
        let run = |jobs: &str| {
            let out = Command::new(env!("CARGO_BIN_EXE_flatvol"))
                .args(args)
                .args(["--jobs", jobs])
                .output()
                .map_err(e)?;
            ensure(out.status.success(), || format!("{args:?} exited with {:?}", out.status.code()))?;
            Ok::<_, String>(out.stdout)
        };
        let a = run("1")?;
        ensure(a == run("1")?, || format!("{args:?}: two runs differ"))?;
        ensure(a == run("8")?, || format!("{args:?}: --jobs 1 vs 8 differ"))?;
    }
    Ok(format!("{} invocations × 3 runs byte-identical", cases.len()))
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let lines = [
        criterion(1, "finite-group exactness", s(60), finite_exactness),
        criterion(2, "genus gluing", s(30), gluing),
        criterion(3, "identity suite", s(300), identity_suite),
        criterion(4, "Frobenius–Schur", s(10), frobenius_schur),
        criterion(5, "closed-form h vs quadrature", s(10), appendix_series),
        criterion(6, "geometry identities", s(10), geometry),
        criterion(7, "harmonicity", s(10), harmonicity),
        criterion(8, "SU(2) Klein-bottle anchor", s(5), klein_anchor),
        criterion(9, "CLI determinism", s(300), determinism),
    ];
    let failed: Vec<u8> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

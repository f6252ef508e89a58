//! Named checks of the character identities behind the volume formulas.
//!
//! * delta:        Σ_α dim α·χ_α(s) = |G|·[s = e]
//! * convolution:  ∫ χ_α(hg)χ_α(g⁻¹) dg = (Vol G/dim α)·χ_α(h)
//! * commutator:   ∫ χ_α(A u B u⁻¹) du = (Vol G/dim α)·χ_α(A)χ_α(B)
//! * square:       ∫ χ_α(g²) dg = f_α·Vol G
//! * self-dual:    ∫ χ_α(g)² dg = Vol G·[α = ᾱ]
//! * Weyl:         Haar average of a class function = Weyl-density quadrature
//!
//! Finite groups are summed exactly. SU(2) integrals of non-class functions
//! are reduced to low-dimensional polynomial integrals that Gauss rules
//! integrate exactly; Monte-Carlo variants report a three-state outcome.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::group::{su2, GroupElement, GroupKind, GroupModel, Irrep};
use crate::mc::{self, McEstimate};
use crate::quadrature::{gauss_legendre, NeumaierSum, QuadOptions};

/// Residual allowed for exact finite sums (floating-point characters).
pub const EXACT_TOL: f64 = 1e-12;
/// Residual allowed for SU(2) quadrature checks.
pub const QUAD_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactSum,
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Monte-Carlo noise too large to decide.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_name: String,
    /// Max-norm residual over the tested inputs.
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub status: Status,
    pub method: Method,
    /// Sample count (Monte Carlo) or quadrature order / terms summed.
    pub samples_or_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl IdentityReport {
    /// Deterministic check: pass iff residual ≤ tolerance.
    pub fn deterministic(name: impl Into<String>, residual: f64, tolerance: f64, method: Method, order: u64) -> Self {
        let passed = residual <= tolerance;
        Self {
            identity_name: name.into(),
            residual,
            tolerance,
            passed,
            status: if passed { Status::Pass } else { Status::Fail },
            method,
            samples_or_order: order,
            stderr: None,
            seed: None,
        }
    }

    /// Monte-Carlo check at 3σ; inconclusive when stderr exceeds `max_stderr`.
    pub fn monte_carlo(name: impl Into<String>, est: &McEstimate, target: f64, max_stderr: f64) -> Self {
        let residual = (est.value - target).abs();
        let tolerance = 3.0 * est.stderr;
        let passed = residual <= tolerance;
        let status = if est.stderr > max_stderr {
            Status::Inconclusive
        } else if passed {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            identity_name: name.into(),
            residual,
            tolerance,
            passed,
            status,
            method: Method::MonteCarlo,
            samples_or_order: est.samples,
            stderr: Some(est.stderr),
            seed: Some(est.seed),
        }
    }

    /// Merge reports of one identity over several inputs (max residual;
    /// worst status wins).
    pub fn combine(name: impl Into<String>, reports: &[IdentityReport]) -> Option<Self> {
        let worst = reports.iter().max_by(|a, b| {
            let ka = (a.status == Status::Fail, a.status == Status::Inconclusive, a.residual);
            let kb = (b.status == Status::Fail, b.status == Status::Inconclusive, b.residual);
            ka.partial_cmp(&kb).expect("finite residuals")
        })?;
        let mut out = worst.clone();
        out.identity_name = name.into();
        out.residual = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
        out.samples_or_order = reports.iter().map(|r| r.samples_or_order).max().unwrap_or(0);
        Some(out)
    }
}

/// Sampling parameters for Monte-Carlo checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McOptions {
    pub samples: u64,
    pub seed: u64,
    /// Largest standard error for which a verdict is issued.
    pub max_stderr: f64,
}

impl Default for McOptions {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: 0,
            max_stderr: 1e-2,
        }
    }
}

fn finite_elements(model: &GroupModel) -> Result<Vec<GroupElement>> {
    let g = model.require_finite("exact summation")?;
    Ok((0..g.order()).map(GroupElement::Finite).collect())
}

fn chi(model: &GroupModel, irrep: &Irrep, g: &GroupElement) -> Complex64 {
    model.character(irrep, g).expect("irrep and element of one model")
}

/// Σ_α dim α·χ_α(s) = |G|·[s = e], max over all s. Finite groups only.
pub fn check_delta(model: &GroupModel) -> Result<IdentityReport> {
    let g = model.require_finite("the delta identity")?;
    let irreps = model.list_irreps(g.order().min(g.irrep_count()))?;
    let mut residual: f64 = 0.0;
    for s in 0..g.order() {
        let el = GroupElement::Finite(s);
        let sum: Complex64 = irreps.iter().map(|a| a.dim as f64 * chi(model, a, &el)).sum();
        let target = if s == g.identity() { g.order() as f64 } else { 0.0 };
        residual = residual.max((sum - target).norm());
    }
    Ok(IdentityReport::deterministic(
        "delta",
        residual,
        EXACT_TOL,
        Method::ExactSum,
        irreps.len() as u64,
    ))
}

/// J_n(θ) = ∫_{SU(2)} χ_n(h g) χ_n(g⁻¹) dg for h of class angle θ and all
/// n < n_max, under the unit measure.
///
/// With g = (w, x, y, z) and h = cos θ + i sin θ, the integrand is
/// U_n(w cos θ − x sin θ)·U_n(w), and (w, x) is uniform on the unit disk. In
/// polar coordinates the integrand is a polynomial of degree ≤ 2n, so
/// Gauss–Legendre in r (n_max + 1 nodes) times the trapezoid rule in angle
/// (2 n_max + 1 nodes) is exact. Returns the values and the node count.
pub fn su2_convolution_integrals(theta: f64, n_max: usize) -> (Vec<f64>, u64) {
    if n_max == 0 {
        return (Vec::new(), 0);
    }
    let nr = n_max + 1;
    let na = 2 * n_max + 1;
    let (xs, ws) = gauss_legendre(nr);
    let (c, s) = (theta.cos(), theta.sin());
    let rows: Vec<Vec<f64>> = xs
        .par_iter()
        .zip(ws.par_iter())
        .map(|(&x, &w)| {
            let r = 0.5 * (x + 1.0);
            let weight = 0.5 * w * r * (2.0 * PI / na as f64) / PI;
            let mut acc = vec![NeumaierSum::default(); n_max];
            for j in 0..na {
                let psi = 2.0 * PI * j as f64 / na as f64;
                let (pw, px) = (r * psi.cos(), r * psi.sin());
                let a = pw * c - px * s;
                let (mut ua0, mut ua1) = (1.0, 2.0 * a);
                let (mut ub0, mut ub1) = (1.0, 2.0 * pw);
                for (n, slot) in acc.iter_mut().enumerate() {
                    if n > 0 {
                        (ua0, ua1) = (ua1, 2.0 * a * ua1 - ua0);
                        (ub0, ub1) = (ub1, 2.0 * pw * ub1 - ub0);
                    }
                    slot.add(ua0 * ub0);
                }
            }
            acc.into_iter().map(|v| v.value() * weight).collect()
        })
        .collect();
    let mut out = vec![NeumaierSum::default(); n_max];
    for row in rows {
        for (o, v) in out.iter_mut().zip(row) {
            o.add(v);
        }
    }
    (out.into_iter().map(|v| v.value()).collect(), (nr * na) as u64)
}

/// (1/2)∫_{−1}^{1} U_n(cos α cos β − sin α sin β·t) dt, which equals
/// ∫ χ_n(A u B u⁻¹) du for class angles α, β (the axis of uBu⁻¹ is uniform
/// on S², and the projection of a uniform unit vector on a fixed axis is
/// uniform on [−1, 1]). The integrand is a degree-n polynomial in t, so
/// ⌈(n+1)/2⌉ Gauss–Legendre nodes are exact.
pub fn su2_commutator_integral(n: u64, alpha: f64, beta: f64) -> (f64, u64) {
    let nodes = (n as usize + 2) / 2 + 1;
    let (xs, ws) = gauss_legendre(nodes);
    let (p, q) = (alpha.cos() * beta.cos(), alpha.sin() * beta.sin());
    let mut s = NeumaierSum::default();
    for (t, w) in xs.iter().zip(&ws) {
        let x = (p - q * t).clamp(-1.0, 1.0);
        s.add(w * su2::character(n, x.acos()));
    }
    (0.5 * s.value(), nodes as u64)
}

fn su2_index(irrep: &Irrep) -> Result<u64> {
    u64::try_from(irrep.index).or_else(|_| domain("SU(2) irreps have nonnegative index"))
}

/// ∫ χ_α(hg)χ_α(g⁻¹) dg = (Vol G/dim α)·χ_α(h).
pub fn check_convolution(model: &GroupModel, irrep: &Irrep, h: &GroupElement) -> Result<IdentityReport> {
    model.validate(h)?;
    let rhs = chi(model, irrep, h) * (model.vol_g() / irrep.dim as f64);
    let name = "convolution";
    match model.kind() {
        GroupKind::Finite => {
            let els = finite_elements(model)?;
            let n = els.len() as f64;
            let lhs: Complex64 = els
                .iter()
                .map(|g| {
                    let hg = model.mul(h, g).expect("same group");
                    chi(model, irrep, &hg) * chi(model, irrep, &model.inv(g).expect("same group"))
                })
                .sum::<Complex64>()
                * (model.vol_g() / n);
            Ok(IdentityReport::deterministic(name, (lhs - rhs).norm(), EXACT_TOL, Method::ExactSum, els.len() as u64))
        }
        GroupKind::Su2 => {
            let n = su2_index(irrep)?;
            let theta = model.su2_angle(h)?;
            let (j, order) = su2_convolution_integrals(theta, n as usize + 1);
            let lhs = j[n as usize] * model.vol_g();
            Ok(IdentityReport::deterministic(name, (lhs - rhs.re).abs(), QUAD_TOL, Method::Quadrature, order))
        }
        GroupKind::U1 => {
            // Abelian: the integrand is a function of g alone.
            let opts = QuadOptions::with_tol(1e-13);
            let (lhs, evals) = model.haar_integral(
                |g| {
                    let hg = model.mul(h, g).expect("same group");
                    chi(model, irrep, &hg) * chi(model, irrep, &model.inv(g).expect("same group"))
                },
                &opts,
            )?;
            Ok(IdentityReport::deterministic(name, (lhs - rhs).norm(), QUAD_TOL, Method::Quadrature, evals as u64))
        }
    }
}

/// ∫ χ_α(A u B u⁻¹) du = (Vol G/dim α)·χ_α(A)χ_α(B). Exact for finite and
/// U(1) groups; Monte Carlo over u for SU(2).
pub fn check_commutator(
    model: &GroupModel,
    irrep: &Irrep,
    a: &GroupElement,
    b: &GroupElement,
    mc_opts: &McOptions,
) -> Result<IdentityReport> {
    model.validate(a)?;
    model.validate(b)?;
    let dim = irrep.dim as f64;
    let rhs = chi(model, irrep, a) * chi(model, irrep, b) * (model.vol_g() / dim);
    let name = "commutator";
    let word = |u: &GroupElement| -> GroupElement {
        let ub = model.mul(u, b).expect("same group");
        let ubu = model.mul(&ub, &model.inv(u).expect("same group")).expect("same group");
        model.mul(a, &ubu).expect("same group")
    };
    match model.kind() {
        GroupKind::Finite => {
            let els = finite_elements(model)?;
            let n = els.len() as f64;
            let lhs: Complex64 = els.iter().map(|u| chi(model, irrep, &word(u))).sum::<Complex64>() * (model.vol_g() / n);
            Ok(IdentityReport::deterministic(name, (lhs - rhs).norm(), EXACT_TOL, Method::ExactSum, els.len() as u64))
        }
        GroupKind::U1 => {
            // u B u⁻¹ = B in an abelian group.
            let lhs = chi(model, irrep, &word(&model.identity())) * model.vol_g();
            Ok(IdentityReport::deterministic(name, (lhs - rhs).norm(), EXACT_TOL, Method::ExactSum, 1))
        }
        GroupKind::Su2 => {
            let est = mc::estimate(mc_opts.samples, mc_opts.seed, |rng| {
                let u = model.sample_haar(rng);
                chi(model, irrep, &word(&u)).re * model.vol_g()
            });
            Ok(IdentityReport::monte_carlo(name, &est, rhs.re, mc_opts.max_stderr))
        }
    }
}

/// Deterministic SU(2) variant of [`check_commutator`] via the exact
/// one-dimensional reduction [`su2_commutator_integral`].
pub fn check_commutator_quadrature(
    model: &GroupModel,
    irrep: &Irrep,
    a: &GroupElement,
    b: &GroupElement,
) -> Result<IdentityReport> {
    if model.kind() != GroupKind::Su2 {
        return domain("the quadrature commutator check is SU(2)-only");
    }
    let n = su2_index(irrep)?;
    let (alpha, beta) = (model.su2_angle(a)?, model.su2_angle(b)?);
    let (lhs, order) = su2_commutator_integral(n, alpha, beta);
    let rhs = su2::character(n, alpha) * su2::character(n, beta) / irrep.dim as f64;
    Ok(IdentityReport::deterministic(
        "commutator",
        ((lhs - rhs) * model.vol_g()).abs(),
        QUAD_TOL,
        Method::Quadrature,
        order,
    ))
}

fn class_integral<F>(model: &GroupModel, f: F) -> Result<(Complex64, Method, u64)>
where
    F: Fn(&GroupElement) -> Complex64,
{
    let opts = QuadOptions::with_tol(1e-13);
    let (v, evals) = model.haar_integral(f, &opts)?;
    Ok(match model.kind() {
        GroupKind::Finite => (v, Method::ExactSum, model.as_finite().map_or(0, |g| g.order() as u64)),
        _ => (v, Method::Quadrature, evals as u64),
    })
}

fn tolerance_for(method: Method) -> f64 {
    match method {
        Method::ExactSum => EXACT_TOL,
        _ => QUAD_TOL,
    }
}

/// ∫ χ_α(g²) dg = f_α·Vol G, with f_α taken from the irrep record.
pub fn check_square(model: &GroupModel, irrep: &Irrep) -> Result<IdentityReport> {
    let (lhs, method, order) = class_integral(model, |g| {
        chi(model, irrep, &model.mul(g, g).expect("same group"))
    })?;
    let rhs = irrep.fs_indicator as f64 * model.vol_g();
    let residual = (lhs - rhs).norm();
    Ok(IdentityReport::deterministic("square", residual, tolerance_for(method), method, order))
}

/// ∫ χ_α(g)χ_α(g) dg = Vol G·[α = ᾱ].
pub fn check_selfdual(model: &GroupModel, irrep: &Irrep) -> Result<IdentityReport> {
    let (lhs, method, order) = class_integral(model, |g| {
        let c = chi(model, irrep, g);
        c * c
    })?;
    let rhs = if model.is_self_dual(irrep)? { model.vol_g() } else { 0.0 };
    let residual = (lhs - rhs).norm();
    Ok(IdentityReport::deterministic("self_dual", residual, tolerance_for(method), method, order))
}

/// Haar Monte-Carlo average of a class function f(θ) against the Weyl
/// quadrature (2/π)∫₀^π sin²θ f(θ) dθ. SU(2) only.
pub fn check_weyl<F>(model: &GroupModel, f: F, mc_opts: &McOptions) -> Result<IdentityReport>
where
    F: Fn(f64) -> f64 + Sync,
{
    if model.kind() != GroupKind::Su2 {
        return domain("the Weyl check is SU(2)-only");
    }
    let opts = QuadOptions::with_tol(1e-13);
    let quad = model.haar_expect(|g| f(model.su2_angle(g).expect("SU(2) element")), &opts)? / model.vol_g();
    let est = mc::estimate(mc_opts.samples, mc_opts.seed, |rng| {
        let g = model.sample_haar(rng);
        f(model.su2_angle(&g).expect("SU(2) element"))
    });
    Ok(IdentityReport::monte_carlo("weyl", &est, quad, mc_opts.max_stderr))
}

/// Outcome of repeating a Monte-Carlo check over independent seeds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedSweep {
    pub runs: u32,
    pub passed: u32,
    pub inconclusive: u32,
    pub required: u32,
}

impl SeedSweep {
    pub fn accepted(&self) -> bool {
        self.passed >= self.required
    }
}

/// Run `check` for `runs` seeds derived from `root_seed`; accepted when at
/// least `required` pass.
pub fn seed_sweep<F>(runs: u32, required: u32, root_seed: u64, check: F) -> Result<SeedSweep>
where
    F: Fn(u64) -> Result<IdentityReport>,
{
    let mut out = SeedSweep {
        runs,
        passed: 0,
        inconclusive: 0,
        required,
    };
    for i in 0..runs {
        let r = check(mc::derive_seed(root_seed, i as u64))?;
        match r.status {
            Status::Pass => out.passed += 1,
            Status::Inconclusive => out.inconclusive += 1,
            Status::Fail => {}
        }
    }
    Ok(out)
}

/// All deterministic identity checks on a finite group, each aggregated over
/// every irrep and every element (pair) as its max residual.
pub fn finite_suite(model: &GroupModel) -> Result<Vec<IdentityReport>> {
    let g = model.require_finite("the finite suite")?;
    let irreps = model.list_irreps(g.irrep_count())?;
    let els = finite_elements(model)?;
    let mc_opts = McOptions::default();
    let mut conv = Vec::new();
    let mut comm = Vec::new();
    let mut sq = Vec::new();
    let mut sd = Vec::new();
    for a in &irreps {
        for h in &els {
            conv.push(check_convolution(model, a, h)?);
        }
        for c1 in g.classes() {
            for c2 in g.classes() {
                let (x, y) = (GroupElement::Finite(c1.representative), GroupElement::Finite(c2.representative));
                comm.push(check_commutator(model, a, &x, &y, &mc_opts)?);
            }
        }
        sq.push(check_square(model, a)?);
        sd.push(check_selfdual(model, a)?);
    }
    let mut out = vec![check_delta(model)?];
    for (name, v) in [("convolution", conv), ("commutator", comm), ("square", sq), ("self_dual", sd)] {
        out.extend(IdentityReport::combine(name, &v));
    }
    Ok(out)
}

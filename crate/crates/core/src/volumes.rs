//! Character-sum volumes of representation varieties.
//!
//! Each formula is evaluated as a normalized core, (power of Vol G) × Σ_α(…),
//! over all irreps α:
//!
//! | surface                        | core                                          |
//! |--------------------------------|-----------------------------------------------|
//! | genus ℓ, one boundary s        | Vol(G)^{2ℓ−1} Σ χ_α(s)/dim^{2ℓ−1}             |
//! | genus ℓ, boundaries s₁, s₂     | Vol(G)^{2ℓ} Σ χ_α(s₁)χ_α(s₂)/dim^{2ℓ}          |
//! | genus ℓ # one cross-cap        | Vol(G)^{2ℓ} Σ f_α/dim^{2ℓ−1}                   |
//! | genus ℓ # Klein bottle         | Vol(G)^{2ℓ+1} Σ_{α=ᾱ} 1/dim^{2ℓ}               |
//!
//! Central and (2π)-power constants are not folded in; they are reported in
//! the [`NormalizationDescriptor`] and applied by [`VolumeResult::to_witten`].

use serde::{Deserialize, Serialize};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::group::{su2, su2_irrep, GroupElement, GroupKind, GroupModel, Normalization};
use crate::identities::{su2_convolution_integrals, IdentityReport, Method, EXACT_TOL, QUAD_TOL};
use crate::oracle;
use crate::series::{abel_sum, power_tail_bound, sum_series, SeriesValue, Shape};
use crate::triangle::{h_factor, TriangleSpec};

/// Tolerance for recognizing a finite-group count as an integer.
const INTEGER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Counting,
    Unit,
    /// Unit/counting core times #Z(G)/(2π)^E.
    Witten,
}

impl From<Normalization> for Convention {
    fn from(n: Normalization) -> Self {
        match n {
            Normalization::Counting => Convention::Counting,
            Normalization::Unit => Convention::Unit,
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "counting" => Ok(Self::Counting),
            "unit" => Ok(Self::Unit),
            "witten" => Ok(Self::Witten),
            _ => domain(format!("unknown normalization {s:?}")),
        }
    }
}

/// Which formula produced a value; fixes the (2π) exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    Orientable,
    TwoBoundaries,
    Crosscap,
    Klein,
}

/// Everything needed to move between measure conventions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationDescriptor {
    pub convention: Convention,
    pub vol_g: f64,
    pub vol_t: f64,
    /// `None` when the center is infinite (U(1)).
    pub center_order: Option<u64>,
    pub group_dim: u32,
    pub torus_dim: u32,
    /// E in the Witten prefactor #Z(G)/(2π)^E.
    pub two_pi_exponent: i64,
    pub witten_prefactor: f64,
}

impl NormalizationDescriptor {
    pub fn new(model: &GroupModel, kind: SurfaceKind, genus: u32) -> Self {
        let (g, t, l) = (model.group_dim() as i64, model.torus_dim() as i64, genus as i64);
        let two_pi_exponent = match kind {
            SurfaceKind::Orientable => (2 * l - 1) * g - t,
            SurfaceKind::TwoBoundaries => 2 * l * g - 2 * t,
            SurfaceKind::Crosscap => (2 * l - 1) * g,
            SurfaceKind::Klein => 2 * l * g,
        };
        let center = model.center_order().unwrap_or(1) as f64;
        Self {
            convention: model.normalization().into(),
            vol_g: model.vol_g(),
            vol_t: model.vol_t(),
            center_order: model.center_order(),
            group_dim: model.group_dim(),
            torus_dim: model.torus_dim(),
            two_pi_exponent,
            witten_prefactor: center / (2.0 * std::f64::consts::PI).powi(two_pi_exponent as i32),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub value: f64,
    /// Irreps summed (or series terms evaluated).
    pub truncation: u64,
    pub tail_bound: f64,
    pub normalization: NormalizationDescriptor,
    /// Exact integer count (finite group, counting measure).
    pub exact: bool,
    pub surface: SurfaceKind,
    pub genus: u32,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
}

impl VolumeResult {
    /// Apply #Z(G)/(2π)^E.
    pub fn to_witten(&self) -> Self {
        let mut out = self.clone();
        if out.normalization.convention == Convention::Witten {
            return out;
        }
        let f = out.normalization.witten_prefactor;
        out.value *= f;
        out.tail_bound *= f.abs();
        out.exact = false;
        out.normalization.convention = Convention::Witten;
        if out.normalization.center_order.is_none() {
            out.flags.push("center is infinite; #Z(G) taken as 1".into());
        }
        out
    }

    /// Convert to the requested convention; `Counting`/`Unit` must match the
    /// model the value was computed under.
    pub fn in_convention(&self, convention: Convention) -> Result<Self> {
        match convention {
            Convention::Witten => Ok(self.to_witten()),
            c if c == self.normalization.convention => Ok(self.clone()),
            c => domain(format!(
                "value was computed under {:?}; rebuild the model with {c:?} normalization",
                self.normalization.convention
            )),
        }
    }
}

/// Series controls for continuous groups.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SeriesOptions {
    /// Terms to sum; `None` picks the default truncation.
    pub truncation: Option<u64>,
    /// Allow Abel summation of conditionally convergent series.
    pub abel: bool,
}

impl SeriesOptions {
    pub fn truncated(n: u64) -> Self {
        Self {
            truncation: Some(n),
            abel: false,
        }
    }
}

/// Genus, cross-caps and boundary holonomies of a surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub cross_caps: u8,
    pub boundaries: Vec<GroupElement>,
}

impl SurfaceSpec {
    pub fn validate(&self) -> Result<()> {
        if self.cross_caps > 2 {
            return domain("at most two cross-caps are supported");
        }
        if self.boundaries.len() > 2 {
            return domain("at most two boundary components are supported");
        }
        if self.cross_caps > 0 && !self.boundaries.is_empty() {
            return domain("nonorientable surfaces are closed here; drop the boundary holonomies");
        }
        if self.cross_caps == 0 && self.boundaries.is_empty() {
            return domain("closed orientable surfaces need a boundary holonomy (use s = e for finite groups)");
        }
        Ok(())
    }
}

/// Dispatch on the surface type.
pub fn vol_r(model: &GroupModel, surface: &SurfaceSpec, opts: &SeriesOptions) -> Result<VolumeResult> {
    surface.validate()?;
    let l = surface.genus;
    match (surface.cross_caps, surface.boundaries.as_slice()) {
        (0, [s]) => vol_r_orientable(model, l, s, opts),
        (0, [s1, s2]) => vol_r_two_boundaries(model, l, s1, s2, opts),
        (1, []) => vol_r_crosscap(model, l, opts),
        (2, []) => vol_r_klein(model, l, opts),
        _ => unreachable!("validated above"),
    }
}

fn result(model: &GroupModel, kind: SurfaceKind, genus: u32) -> VolumeResult {
    VolumeResult {
        value: 0.0,
        truncation: 0,
        tail_bound: 0.0,
        normalization: NormalizationDescriptor::new(model, kind, genus),
        exact: false,
        surface: kind,
        genus,
        flags: Vec::new(),
    }
}

/// Exact finite sum Vol(G)^{vol_power}·Σ_α term(α).
fn finite_sum<F>(model: &GroupModel, kind: SurfaceKind, genus: u32, vol_power: i32, term: F) -> Result<VolumeResult>
where
    F: Fn(usize, f64) -> Complex64,
{
    let g = model.require_finite("exact summation")?;
    let total: Complex64 = (0..g.irrep_count()).map(|a| term(a, g.dim(a) as f64)).sum();
    let v = total * model.vol_g().powi(vol_power);
    let mut out = result(model, kind, genus);
    out.truncation = g.irrep_count() as u64;
    out.value = v.re;
    if v.im.abs() > INTEGER_TOL * v.re.abs().max(1.0) {
        out.flags.push(format!("imaginary part {:.3e} discarded", v.im));
    }
    if model.normalization() == Normalization::Counting {
        let r = v.re.round();
        if (v.re - r).abs() <= INTEGER_TOL && v.im.abs() <= INTEGER_TOL && r >= 0.0 {
            out.value = r;
            out.exact = true;
        } else {
            out.flags.push("character sum is not a nonnegative integer".into());
        }
    }
    Ok(out)
}

fn finite_index(s: &GroupElement) -> Result<usize> {
    match s {
        GroupElement::Finite(i) => Ok(*i),
        _ => domain("expected a finite-group element"),
    }
}

/// Fill a result from a series evaluation, honouring the Abel flag when the
/// series is only conditionally convergent.
fn su2_series<F>(
    mut out: VolumeResult,
    term: F,
    shape: Shape,
    q: f64,
    scale: f64,
    opts: &SeriesOptions,
    conditional: bool,
) -> Result<VolumeResult>
where
    F: Fn(u64) -> f64,
{
    if conditional {
        if !opts.abel {
            return domain("series is only conditionally convergent; enable Abel summation to evaluate it");
        }
        let (v, err, terms) = abel_sum(&term)?;
        out.value = v * scale;
        out.tail_bound = err * scale;
        out.truncation = terms;
        out.flags.push("abel-summed".into());
        return Ok(out);
    }
    let SeriesValue {
        value,
        tail_bound,
        truncation,
        ..
    } = sum_series(term, shape, q, opts.truncation)?;
    out.value = value * scale;
    out.tail_bound = tail_bound * scale;
    out.truncation = truncation;
    if opts.truncation.is_none() && tail_bound >= crate::series::DEFAULT_TAIL_TARGET {
        out.flags.push(format!("tail bound {tail_bound:.3e} above target at the truncation cap"));
    }
    Ok(out)
}

/// |χₙ(θ)| ≤ min(n+1, 1/|sin θ|); `None` when θ ∈ {0, π} where χ is ±(n+1).
fn su2_inverse_sine(theta: f64) -> Option<f64> {
    let s = theta.sin().abs();
    (s > 1e-300 && theta.rem_euclid(std::f64::consts::PI) != 0.0).then(|| 1.0 / s)
}

/// Sign pattern of χₙ at a central class: +1 at θ = 0, (−1)ⁿ at θ = π.
fn central_is_alternating(theta: f64) -> bool {
    theta.cos() < 0.0
}

/// Vol R(Σ_ℓ, s): genus ℓ with one boundary of holonomy s.
pub fn vol_r_orientable(model: &GroupModel, genus: u32, s: &GroupElement, opts: &SeriesOptions) -> Result<VolumeResult> {
    model.validate(s)?;
    let kind = SurfaceKind::Orientable;
    let p = 2 * genus as i32 - 1;
    match model.kind() {
        GroupKind::Finite => {
            let g = model.require_finite("")?;
            let i = finite_index(s)?;
            finite_sum(model, kind, genus, p, |a, d| g.character(a, i) / d.powi(p))
        }
        GroupKind::Su2 => {
            if genus == 0 {
                return domain("genus 0 on SU(2) is a delta distribution");
            }
            let theta = model.su2_angle(s)?;
            let term = move |m: u64| su2::character(m - 1, theta) / (m as f64).powi(p);
            let scale = model.vol_g().powi(p);
            let out = result(model, kind, genus);
            match su2_inverse_sine(theta) {
                None => {
                    // χ = ±m: Σ ±m^{1−p}.
                    let shape = if central_is_alternating(theta) {
                        Shape::Alternating { coeff: 1.0 }
                    } else {
                        Shape::Constant { coeff: 1.0 }
                    };
                    if genus == 1 && !central_is_alternating(theta) {
                        return Err(Error::Divergent("Σ χₙ(e)/(n+1) diverges".into()));
                    }
                    su2_series(out, term, shape, (p - 1) as f64, scale, opts, genus == 1)
                }
                Some(inv_sin) => {
                    let shape = Shape::Oscillating {
                        bounds: [(inv_sin, p as f64), (1.0, (p - 1) as f64), (f64::INFINITY, 0.0)],
                    };
                    su2_series(out, term, shape, p as f64, scale, opts, genus == 1)
                }
            }
        }
        GroupKind::U1 => Err(Error::Divergent(
            "U(1) weight sum Σ e^{ikθ} does not converge".into(),
        )),
    }
}

/// Vol R with two boundaries of holonomies s₁, s₂.
pub fn vol_r_two_boundaries(
    model: &GroupModel,
    genus: u32,
    s1: &GroupElement,
    s2: &GroupElement,
    opts: &SeriesOptions,
) -> Result<VolumeResult> {
    model.validate(s1)?;
    model.validate(s2)?;
    let kind = SurfaceKind::TwoBoundaries;
    let p = 2 * genus as i32;
    match model.kind() {
        GroupKind::Finite => {
            let g = model.require_finite("")?;
            let (i, j) = (finite_index(s1)?, finite_index(s2)?);
            finite_sum(model, kind, genus, p, |a, d| g.character(a, i) * g.character(a, j) / d.powi(p))
        }
        GroupKind::Su2 => {
            if genus == 0 {
                return domain("genus 0 with two boundaries is a delta distribution on SU(2)");
            }
            let (t1, t2) = (model.su2_angle(s1)?, model.su2_angle(s2)?);
            let term = move |m: u64| su2::character(m - 1, t1) * su2::character(m - 1, t2) / (m as f64).powi(p);
            let scale = model.vol_g().powi(p);
            let out = result(model, kind, genus);
            match (su2_inverse_sine(t1), su2_inverse_sine(t2)) {
                (None, None) => {
                    let shape = if central_is_alternating(t1) != central_is_alternating(t2) {
                        Shape::Alternating { coeff: 1.0 }
                    } else {
                        Shape::Constant { coeff: 1.0 }
                    };
                    let q = (p - 2) as f64;
                    if q <= 0.0 && matches!(shape, Shape::Constant { .. }) {
                        return Err(Error::Divergent("Σ χ(s₁)χ(s₂)/(n+1)² diverges for central s₁, s₂".into()));
                    }
                    su2_series(out, term, shape, q, scale, opts, q <= 0.0)
                }
                (a, b) => {
                    let (a, b) = (a.unwrap_or(f64::INFINITY), b.unwrap_or(f64::INFINITY));
                    let shape = Shape::Oscillating {
                        bounds: [(a * b, p as f64), (a.min(b), (p - 1) as f64), (1.0, (p - 2) as f64)],
                    };
                    // Absolute convergence needs some bound with exponent > 1.
                    let absolute = (a * b).is_finite() || (p - 1 > 1 && a.min(b).is_finite()) || p - 2 > 1;
                    su2_series(out, term, shape, p as f64, scale, opts, !absolute)
                }
            }
        }
        GroupKind::U1 => Err(Error::Divergent(
            "U(1) weight sum Σ e^{ik(θ₁+θ₂)} does not converge".into(),
        )),
    }
}

/// Vol R(Σ_ℓ # P): one cross-cap.
pub fn vol_r_crosscap(model: &GroupModel, genus: u32, opts: &SeriesOptions) -> Result<VolumeResult> {
    let kind = SurfaceKind::Crosscap;
    let p = 2 * genus as i32 - 1;
    let vol_power = 2 * genus as i32;
    match model.kind() {
        GroupKind::Finite => {
            let g = model.require_finite("")?;
            finite_sum(model, kind, genus, vol_power, |a, d| g.frobenius_schur(a) / d.powi(p))
        }
        GroupKind::Su2 => {
            if genus == 0 {
                return Err(Error::Divergent("Σ f_n (n+1) diverges for SU(2)".into()));
            }
            let term = |m: u64| su2_irrep(m - 1).fs_indicator as f64 / (m as f64).powi(p);
            let out = result(model, kind, genus);
            su2_series(
                out,
                term,
                Shape::Alternating { coeff: 1.0 },
                p as f64,
                model.vol_g().powi(vol_power),
                opts,
                false,
            )
        }
        GroupKind::U1 => {
            // Only the trivial weight has a real (indeed symmetric) form.
            let mut out = result(model, kind, genus);
            out.value = model.vol_g().powi(vol_power);
            out.truncation = 1;
            out.flags.push("only the trivial weight contributes".into());
            Ok(out)
        }
    }
}

/// Vol R(Σ_ℓ # K): Klein-bottle handle (two cross-caps).
pub fn vol_r_klein(model: &GroupModel, genus: u32, opts: &SeriesOptions) -> Result<VolumeResult> {
    let kind = SurfaceKind::Klein;
    let p = 2 * genus as i32;
    let vol_power = 2 * genus as i32 + 1;
    match model.kind() {
        GroupKind::Finite => {
            let g = model.require_finite("")?;
            finite_sum(model, kind, genus, vol_power, |a, d| {
                let self_dual = (0..g.order()).all(|x| g.character(a, x).im.abs() < 1e-12);
                Complex64::new(if self_dual { 1.0 / d.powi(p) } else { 0.0 }, 0.0)
            })
        }
        GroupKind::Su2 => {
            if genus == 0 {
                return Err(Error::Divergent("Σ 1 over SU(2) irreps diverges".into()));
            }
            let term = |m: u64| 1.0 / (m as f64).powi(p);
            let out = result(model, kind, genus);
            su2_series(
                out,
                term,
                Shape::Constant { coeff: 1.0 },
                p as f64,
                model.vol_g().powi(vol_power),
                opts,
                false,
            )
        }
        GroupKind::U1 => {
            let mut out = result(model, kind, genus);
            out.value = model.vol_g().powi(vol_power);
            out.truncation = 1;
            out.flags.push("only the trivial weight is self-dual".into());
            Ok(out)
        }
    }
}

/// Vol M from Vol R: multiply by √F(s)/Vol T (continuous) or |C(s)|/|G|
/// (finite). For central s on a continuous group F(s) = 0; the result is 0
/// and flagged.
pub fn vol_m_from_r(model: &GroupModel, vol_r: &VolumeResult, s: &GroupElement) -> Result<VolumeResult> {
    model.validate(s)?;
    let mut out = vol_r.clone();
    let factor = match model.kind() {
        GroupKind::Finite => model.conj_class_volume(s)? / model.vol_g(),
        _ => {
            let f = model.conj_class_volume(s)?;
            if f == 0.0 {
                out.flags.push("central holonomy: F(s) = 0".into());
            }
            f.sqrt() / model.vol_t()
        }
    };
    out.value *= factor;
    out.tail_bound *= factor;
    if out.exact {
        let r = out.value.round();
        if (out.value - r).abs() <= INTEGER_TOL {
            out.value = r;
        } else {
            out.exact = false;
        }
    }
    Ok(out)
}

/// Genus recursion: Vol R(Σ_{ℓ+1}, h) against the glued expression.
///
/// Finite groups (counting measure): Σ_s Vol R(Σ_ℓ, s)·#{(g₁,g₂): [g₁,g₂] = s⁻¹h},
/// with the pair counts from brute-force enumeration.
///
/// SU(2): Σₙ (n+1)^{1−2ℓ}·(1/(n+1))·∫χₙ(hg)χₙ(g⁻¹)dg, the integral by the
/// exact disk rule, against Σₙ χₙ(h)/(n+1)^{2ℓ+1}, both over n < trunc.
pub fn glue_check(model: &GroupModel, genus: u32, h: &GroupElement, truncation: u64) -> Result<IdentityReport> {
    if genus == 0 {
        return domain("glue_check needs ℓ ≥ 1");
    }
    model.validate(h)?;
    match model.kind() {
        GroupKind::Finite => {
            let counting = model.clone().with_normalization(Normalization::Counting)?;
            let g = counting.require_finite("")?;
            let opts = SeriesOptions::default();
            let direct = vol_r_orientable(&counting, genus + 1, h, &opts)?.value;
            let hi = finite_index(h)?;
            let mut glued = 0.0;
            for s in 0..g.order() {
                let v = vol_r_orientable(&counting, genus, &GroupElement::Finite(s), &opts)?.value;
                if v == 0.0 {
                    continue;
                }
                let target = GroupElement::Finite(g.mul(g.inv(s), hi));
                glued += v * oracle::count_surface_tuples(&counting, 1, &target)?.count as f64;
            }
            Ok(IdentityReport::deterministic(
                "genus_gluing",
                (direct - glued).abs(),
                EXACT_TOL,
                Method::ExactSum,
                g.order() as u64,
            ))
        }
        GroupKind::Su2 => {
            if truncation == 0 {
                return domain("truncation must be at least 1");
            }
            let theta = model.su2_angle(h)?;
            let n_max = truncation as usize;
            let p = 2 * genus as i32 + 1;
            // |χₙ(h)|/(n+1)^p ≤ min(1/|sin θ|·m^{-p}, m^{1-p}) bounds the omitted tail.
            let bound = su2_inverse_sine(theta)
                .map(|c| c * power_tail_bound(p as f64, truncation))
                .unwrap_or(f64::INFINITY)
                .min(power_tail_bound((p - 1) as f64, truncation));
            let (j, order) = su2_convolution_integrals(theta, n_max);
            let mut direct = crate::quadrature::NeumaierSum::default();
            let mut glued = crate::quadrature::NeumaierSum::default();
            for (n, jn) in j.iter().enumerate() {
                let m = (n + 1) as f64;
                direct.add(su2::character(n as u64, theta) / m.powi(p));
                glued.add(jn / m.powi(p - 1));
            }
            let scale = model.vol_g().powi(2 * genus as i32 + 1);
            let residual = (direct.value() - glued.value()).abs() * scale;
            if bound * scale > QUAD_TOL {
                return Err(Error::NonConvergent {
                    what: format!("genus gluing at truncation {truncation} (tail bound {bound:.3e})"),
                    estimate: direct.value() * scale,
                    residual,
                });
            }
            Ok(IdentityReport::deterministic(
                "genus_gluing",
                residual,
                QUAD_TOL,
                Method::Quadrature,
                order,
            ))
        }
        GroupKind::U1 => domain("genus gluing is implemented for finite groups and SU(2)"),
    }
}

/// Character-sum volume of Σ_ℓ with one or two cross-caps, times the metric
/// factors H(φᵢ) of the given triangles.
pub fn riemannian_vol_nonorientable(
    model: &GroupModel,
    genus: u32,
    triangles: &[TriangleSpec],
    opts: &SeriesOptions,
    tol: f64,
) -> Result<VolumeResult> {
    let mut out = match triangles.len() {
        1 => vol_r_crosscap(model, genus, opts)?,
        2 => vol_r_klein(model, genus, opts)?,
        n => return domain(format!("one or two triangles expected, got {n}")),
    };
    let mut factor = 1.0;
    for t in triangles {
        factor *= h_factor(t, model.group_dim(), tol)?;
    }
    out.value *= factor;
    out.tail_bound *= factor;
    if factor != 1.0 {
        out.exact = false;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn s3() -> GroupModel {
        GroupModel::by_name("s3").unwrap()
    }

    #[test]
    fn s3_anchor_values() {
        let g = s3();
        let o = SeriesOptions::default();
        let e = g.identity();
        let t = g.class_element("transposition").unwrap();
        let c = g.class_element("3cycle").unwrap();
        let v = vol_r_orientable(&g, 1, &e, &o).unwrap();
        assert!(v.exact);
        assert_eq!(v.value, 18.0);
        assert_eq!(vol_r_orientable(&g, 1, &t, &o).unwrap().value, 0.0);
        assert_eq!(vol_r_orientable(&g, 1, &c, &o).unwrap().value, 9.0);
        assert_eq!(vol_r_orientable(&g, 2, &e, &o).unwrap().value, 486.0);
        assert_eq!(vol_r_two_boundaries(&g, 1, &e, &e, &o).unwrap().value, 108.0);
        assert_eq!(vol_r_crosscap(&g, 0, &o).unwrap().value, 4.0);
        assert_eq!(vol_r_crosscap(&g, 1, &o).unwrap().value, 90.0);
        assert_eq!(vol_r_klein(&g, 0, &o).unwrap().value, 18.0);
        let z3 = GroupModel::by_name("z3").unwrap();
        assert_eq!(vol_r_klein(&z3, 0, &o).unwrap().value, 3.0);
        let z2 = GroupModel::by_name("z2").unwrap();
        assert_eq!(vol_r_crosscap(&z2, 0, &o).unwrap().value, 2.0);
    }

    #[test]
    fn vol_m_examples() {
        let g = s3();
        let c = g.class_element("3cycle").unwrap();
        let r = vol_r_orientable(&g, 1, &c, &SeriesOptions::default()).unwrap();
        let m = vol_m_from_r(&g, &r, &c).unwrap();
        assert_eq!(m.value, 3.0);
        assert!(m.exact);

        let su2 = GroupModel::su2();
        let s = su2.angle_element(PI / 2.0).unwrap();
        let r = vol_r_orientable(&su2, 2, &s, &SeriesOptions::default()).unwrap();
        let m = vol_m_from_r(&su2, &r, &s).unwrap();
        assert!((m.value - 2.0 * r.value).abs() < 1e-15);
        let e = su2.identity();
        let r = vol_r_orientable(&su2, 2, &e, &SeriesOptions::default()).unwrap();
        let m = vol_m_from_r(&su2, &r, &e).unwrap();
        assert_eq!(m.value, 0.0);
        assert!(m.flags.iter().any(|f| f.contains("F(s) = 0")));
    }

    #[test]
    fn su2_klein_genus_one_is_zeta_two() {
        let g = GroupModel::su2();
        let v = vol_r_klein(&g, 1, &SeriesOptions::truncated(10_000)).unwrap();
        assert!((v.value - PI * PI / 6.0).abs() < 1e-12);
        assert!(v.tail_bound < 1e-12);
    }

    #[test]
    fn su2_crosscap_genus_one_is_ln2() {
        let g = GroupModel::su2();
        let v = vol_r_crosscap(&g, 1, &SeriesOptions::default()).unwrap();
        assert!((v.value - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn su2_orientable_genus_one_needs_abel() {
        let g = GroupModel::su2();
        let s = g.angle_element(1.0).unwrap();
        assert!(matches!(
            vol_r_orientable(&g, 1, &s, &SeriesOptions::default()),
            Err(Error::Domain(_))
        ));
        let opts = SeriesOptions {
            truncation: None,
            abel: true,
        };
        let v = vol_r_orientable(&g, 1, &s, &opts).unwrap();
        // Σ sin(mθ)/(m sin θ) = (π − θ)/(2 sin θ).
        let expect = (PI - 1.0) / (2.0 * 1f64.sin());
        assert!((v.value - expect).abs() < 1e-9);
        assert!(matches!(
            vol_r_orientable(&g, 1, &g.identity(), &opts),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn su2_two_boundaries_quarter_turn() {
        // χₙ(π/2)² = 1 for even n, 0 for odd n: Σ_{m odd} 1/m² = π²/8.
        let g = GroupModel::su2();
        let s = g.angle_element(PI / 2.0).unwrap();
        let v = vol_r_two_boundaries(&g, 1, &s, &s, &SeriesOptions::truncated(10_000)).unwrap();
        assert!((v.value - PI * PI / 8.0).abs() <= v.tail_bound);
        assert!(v.tail_bound < 2e-4);
    }

    #[test]
    fn divergent_cases() {
        let g = GroupModel::su2();
        let o = SeriesOptions::default();
        assert!(matches!(vol_r_klein(&g, 0, &o), Err(Error::Divergent(_))));
        assert!(matches!(vol_r_crosscap(&g, 0, &o), Err(Error::Divergent(_))));
        let u1 = GroupModel::u1();
        assert!(matches!(vol_r_orientable(&u1, 2, &u1.identity(), &o), Err(Error::Divergent(_))));
        assert_eq!(vol_r_klein(&u1, 1, &o).unwrap().value, 1.0);
    }

    #[test]
    fn witten_prefactor() {
        let g = GroupModel::su2();
        let v = vol_r_klein(&g, 1, &SeriesOptions::default()).unwrap();
        assert_eq!(v.normalization.two_pi_exponent, 6);
        let w = v.to_witten();
        assert!((w.value - 2.0 * v.value / (2.0 * PI).powi(6)).abs() < 1e-15);
        assert_eq!(w.normalization.convention, Convention::Witten);
    }

    #[test]
    fn glue_finite_and_su2() {
        let g = s3();
        let r = glue_check(&g, 1, &g.identity(), 0).unwrap();
        assert!(r.passed && r.residual == 0.0);
        let su2 = GroupModel::su2();
        let h = su2.angle_element(1.0).unwrap();
        let r = glue_check(&su2, 2, &h, 500).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(glue_check(&su2, 1, &h, 5).is_err());
    }

    #[test]
    fn nonorientable_with_metric_factor() {
        let g = s3();
        let t = TriangleSpec::hyperbolic_from_base(PI / 3.0, 2.0).unwrap();
        let v = riemannian_vol_nonorientable(&g, 1, &[t], &SeriesOptions::default(), 1e-12).unwrap();
        assert_eq!(v.value, 90.0);
        let su2 = GroupModel::su2();
        let base = vol_r_crosscap(&su2, 1, &SeriesOptions::default()).unwrap();
        let v = riemannian_vol_nonorientable(&su2, 1, &[t], &SeriesOptions::default(), 1e-12).unwrap();
        let h = crate::triangle::h_hyperbolic_series(3, t.side).unwrap();
        assert!((v.value - base.value * (3.0 * h).powf(1.5)).abs() < 1e-10);
    }
}

//! Metric coefficient of the cross-cap direction, from the harmonic field
//! ξ = τ(ρ)^k cos kσ on an isosceles geodesic triangle with apex angle φ.
//!
//! In geodesic polar coordinates (ρ, σ) about the apex, ds² = dρ² + g₂₂(ρ)dσ²
//! and u = ln τ solves du/dρ = 1/√g₂₂:
//!
//! | curvature  | g₂₂      | τ(ρ)        | third side γ₃                               |
//! |------------|----------|-------------|---------------------------------------------|
//! | hyperbolic | sinh²ρ   | tanh(ρ/2)   | tanh ρ·cos(σ−φ/2) = tanh L·cos(φ/2)         |
//! | euclidean  | ρ²       | ρ           | ρ·cos(σ−φ/2) = L                            |
//! | spherical  | sin²ρ    | tan(ρ/2)    | cot ρ = cot L·cos(σ−φ/2)/cos(φ/2)           |
//!
//! The norm of dξ is k·h(φ) with h = ∫₀^{φ/2} τ(γ₃(σ))^{2k} dσ, and the
//! volume multiplier is H(φ) = (k·h)^{dim G/2}.

mod series;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, QuadOptions};

pub use series::{h_hyperbolic_series, MAX_SERIES_K};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Curvature {
    Hyperbolic,
    Euclidean,
    Spherical,
}

impl std::str::FromStr for Curvature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hyperbolic" => Ok(Self::Hyperbolic),
            "euclidean" | "flat" => Ok(Self::Euclidean),
            "spherical" => Ok(Self::Spherical),
            _ => domain(format!("unknown curvature {s:?}")),
        }
    }
}

/// Isosceles geodesic triangle with apex angle φ and equal sides of length
/// L. For the Euclidean model L is the apex-to-base distance, matching the
/// γ₃ equation in the table above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleSpec {
    pub curvature: Curvature,
    pub phi: f64,
    #[serde(rename = "L")]
    pub side: f64,
    /// Base length, when the triangle was built from (b, φ).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

impl TriangleSpec {
    pub fn new(curvature: Curvature, phi: f64, side: f64) -> Result<Self> {
        let spec = Self {
            curvature,
            phi,
            side,
            b: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Hyperbolic triangle with base length b; L follows from φ.
    pub fn hyperbolic_from_base(phi: f64, b: f64) -> Result<Self> {
        let side = l_of_phi(b, phi)?;
        let mut spec = Self::new(Curvature::Hyperbolic, phi, side)?;
        spec.b = Some(b);
        Ok(spec)
    }

    /// k = π/φ.
    pub fn k(&self) -> f64 {
        PI / self.phi
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.phi > 0.0 && self.phi <= PI) {
            return domain(format!("apex angle must lie in (0, π], got {}", self.phi));
        }
        if !(self.side > 0.0 && self.side.is_finite()) {
            return domain(format!("side length must be positive, got {}", self.side));
        }
        if self.curvature == Curvature::Spherical && self.side >= PI / 2.0 {
            return domain(format!("spherical side length must be below π/2, got {}", self.side));
        }
        Ok(())
    }

    /// Radial coordinate of γ₃ at polar angle σ.
    pub fn rho_boundary(&self, sigma: f64) -> f64 {
        let c = (sigma - self.phi / 2.0).cos();
        let half = (self.phi / 2.0).cos();
        match self.curvature {
            Curvature::Hyperbolic => (self.side.tanh() * half / c).atanh(),
            Curvature::Euclidean => self.side / c,
            Curvature::Spherical => (half * self.side.tan()).atan2(c),
        }
    }

    /// τ(γ₃(σ)), evaluated without forming ρ where that loses accuracy.
    pub fn tau_boundary(&self, sigma: f64) -> f64 {
        let c = (sigma - self.phi / 2.0).cos();
        match self.curvature {
            Curvature::Hyperbolic => {
                let l = (self.phi / 2.0).cos() * self.side.tanh();
                if l == 0.0 {
                    return 0.0;
                }
                // t − √(t²−1) = 1/(t + √(t²−1)), t = cos(σ−φ/2)/l.
                let t = c / l;
                1.0 / (t + ((t - 1.0) * (t + 1.0)).sqrt())
            }
            Curvature::Euclidean => self.side / c,
            Curvature::Spherical => {
                let y = (self.phi / 2.0).cos() * self.side.tan();
                y / ((c * c + y * y).sqrt() + c)
            }
        }
    }
}

/// u(ρ) = ∫ dρ/√g₂₂ in closed form: ln tanh(ρ/2), ln ρ, ln tan(ρ/2).
pub fn u_of_rho(curvature: Curvature, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return domain(format!("ρ must be positive, got {rho}"));
    }
    Ok(match curvature {
        Curvature::Hyperbolic => (rho / 2.0).tanh().ln(),
        Curvature::Euclidean => rho.ln(),
        Curvature::Spherical => {
            if rho >= PI {
                return domain(format!("spherical ρ must be below π, got {rho}"));
            }
            (rho / 2.0).tan().ln()
        }
    })
}

/// 1/√g₂₂(t) − 1/t, with series near t = 0.
fn inverse_metric_excess(curvature: Curvature, t: f64) -> f64 {
    let t2 = t * t;
    match curvature {
        Curvature::Euclidean => 0.0,
        Curvature::Hyperbolic if t < 1e-3 => -t / 6.0 + 7.0 * t * t2 / 360.0,
        Curvature::Spherical if t < 1e-3 => t / 6.0 + 7.0 * t * t2 / 360.0,
        Curvature::Hyperbolic => 1.0 / t.sinh() - 1.0 / t,
        Curvature::Spherical => 1.0 / t.sin() - 1.0 / t,
    }
}

/// u(ρ) by quadrature: ln(c·ρ) + ∫₀^ρ (1/√g₂₂ − 1/t) dt, where c = 1/2 for
/// the curved models (τ ~ ρ/2 at the apex) and 1 for the flat one.
pub fn u_of_rho_numeric(curvature: Curvature, rho: f64, tol: f64) -> Result<f64> {
    u_of_rho(curvature, rho)?;
    let c = if curvature == Curvature::Euclidean { 1.0 } else { 0.5 };
    let q = integrate(|t| inverse_metric_excess(curvature, t), 0.0, rho, &QuadOptions::with_tol(tol))?;
    Ok((c * rho).ln() + q.value)
}

/// Harmonic field Y·τ^k·cos kσ; in (u, σ) coordinates Y·e^{ku}cos kσ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicField {
    pub k: f64,
    pub y_norm: f64,
    pub curvature: Curvature,
}

impl HarmonicField {
    pub fn new(k: f64, curvature: Curvature) -> Self {
        Self {
            k,
            y_norm: 1.0,
            curvature,
        }
    }

    pub fn eval(&self, u: f64, sigma: f64) -> f64 {
        self.y_norm * (self.k * u).exp() * (self.k * sigma).cos()
    }
}

/// Rectangular (u, σ) lattice with uniform spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicGrid {
    pub u_min: f64,
    pub u_max: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub spacing: f64,
}

impl HarmonicGrid {
    /// u ∈ [−1, 0], σ ∈ [0, π/k] (σ ∈ [0, 1] when k = 0).
    pub fn standard(k: f64, spacing: f64) -> Self {
        Self {
            u_min: -1.0,
            u_max: 0.0,
            sigma_min: 0.0,
            sigma_max: if k > 0.0 { PI / k } else { 1.0 },
            spacing,
        }
    }
}

/// Max over interior nodes of the five-point Laplacian ξ_uu + ξ_σσ.
pub fn harmonic_residual(field: &HarmonicField, grid: &HarmonicGrid) -> Result<f64> {
    let h = grid.spacing;
    if !(h > 0.0) {
        return domain("grid spacing must be positive");
    }
    let nu = ((grid.u_max - grid.u_min) / h).round() as usize;
    let ns = ((grid.sigma_max - grid.sigma_min) / h).round() as usize;
    if nu < 2 || ns < 2 {
        return domain("grid needs at least one interior node in each direction");
    }
    let mut worst: f64 = 0.0;
    for i in 1..nu {
        let u = grid.u_min + i as f64 * h;
        for j in 1..ns {
            let s = grid.sigma_min + j as f64 * h;
            let lap = field.eval(u + h, s) + field.eval(u - h, s) + field.eval(u, s + h) + field.eval(u, s - h)
                - 4.0 * field.eval(u, s);
            worst = worst.max((lap / (h * h)).abs());
        }
    }
    Ok(worst)
}

/// Side length L of the hyperbolic isosceles triangle with base b and apex
/// angle φ: cosh²L = (cosh b − cos φ)/(1 − cos φ), evaluated as
/// sinh L = sinh(b/2)/sin(φ/2).
pub fn l_of_phi(b: f64, phi: f64) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return domain(format!("base length must be positive, got {b}"));
    }
    if !(phi > 0.0 && phi <= PI) {
        return domain(format!("apex angle must lie in (0, π], got {phi}"));
    }
    Ok(((b / 2.0).sinh() / (phi / 2.0).sin()).asinh())
}

/// τ = tanh(L/2) from τ² = (√X − 1)/(√X + 1), X = (cosh b − cos φ)/(1 − cos φ).
pub fn tau_of_phi(b: f64, phi: f64) -> Result<f64> {
    l_of_phi(b, phi)?;
    // X − 1 = sinh²(b/2)/sin²(φ/2); √X − 1 = (X − 1)/(√X + 1).
    let r = (b / 2.0).sinh() / (phi / 2.0).sin();
    let sqrt_x = (1.0 + r * r).sqrt();
    Ok(r / (sqrt_x + 1.0))
}

fn quad(f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: tol,
        max_evals: 400_000,
    };
    Ok(integrate(f, a, b, &opts)?.value)
}

/// h(φ) for the hyperbolic triangle: after x = cos ψ the integral of
/// (x/l − √((x/l)²−1))^{2k} dx/√(1−x²) over [cos(φ/2), 1] becomes a smooth
/// integral over ψ ∈ [0, φ/2].
pub fn h_hyperbolic_quad(phi: f64, side: f64, tol: f64) -> Result<f64> {
    let spec = TriangleSpec::new(Curvature::Hyperbolic, phi, side)?;
    let two_k = 2.0 * spec.k();
    // σ = φ/2 − ψ.
    quad(|psi| spec.tau_boundary(phi / 2.0 - psi).powf(two_k), 0.0, phi / 2.0, tol)
}

/// h(φ) = L^{2k}∫₀^{φ/2} sec^{2k}σ dσ; diverges at φ = π.
pub fn h_euclidean(phi: f64, side: f64, tol: f64) -> Result<f64> {
    let spec = TriangleSpec::new(Curvature::Euclidean, phi, side)?;
    if phi >= PI {
        return Err(Error::Divergent("∫₀^{π/2} sec²σ dσ diverges at φ = π".into()));
    }
    let two_k = 2.0 * spec.k();
    let v = quad(|s| (1.0 / s.cos()).powf(two_k), 0.0, phi / 2.0, tol)?;
    Ok(side.powf(two_k) * v)
}

/// Integer-k closed form: ∫₀^a sec^{2k} = Σ_{j<k} C(k−1, j) tan^{2j+1}a/(2j+1).
pub fn h_euclidean_closed(k: u32, side: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::Divergent("Euclidean h requires φ < π (k ≥ 2)".into()));
    }
    let t = (PI / (2.0 * k as f64)).tan();
    let mut binom = 1.0;
    let mut sum = 0.0;
    for j in 0..k {
        sum += binom * t.powi(2 * j as i32 + 1) / (2 * j + 1) as f64;
        binom = binom * (k - 1 - j) as f64 / (j + 1) as f64;
    }
    Ok(side.powi(2 * k as i32) * sum)
}

/// h(φ) = ∫₀^{φ/2} tan(ρ(σ)/2)^{2k} dσ along the great circle
/// cot ρ = cot L·cos(σ−φ/2)/cos(φ/2).
pub fn h_spherical(phi: f64, side: f64, tol: f64) -> Result<f64> {
    let spec = TriangleSpec::new(Curvature::Spherical, phi, side)?;
    let two_k = 2.0 * spec.k();
    quad(|s| spec.tau_boundary(s).powf(two_k), 0.0, phi / 2.0, tol)
}

/// |ρ(0) − L| and |ρ(φ) − L| for the spherical γ₃.
pub fn spherical_endpoint_residuals(phi: f64, side: f64) -> Result<(f64, f64)> {
    let spec = TriangleSpec::new(Curvature::Spherical, phi, side)?;
    Ok((
        (spec.rho_boundary(0.0) - side).abs(),
        (spec.rho_boundary(phi) - side).abs(),
    ))
}

/// h dispatched on the curvature model.
pub fn h_of(spec: &TriangleSpec, tol: f64) -> Result<f64> {
    spec.validate()?;
    match spec.curvature {
        Curvature::Hyperbolic => h_hyperbolic_quad(spec.phi, spec.side, tol),
        Curvature::Euclidean => h_euclidean(spec.phi, spec.side, tol),
        Curvature::Spherical => h_spherical(spec.phi, spec.side, tol),
    }
}

/// H(φ) = (k·h)^{group_dim/2}; identically 1 for finite groups.
pub fn h_factor(spec: &TriangleSpec, group_dim: u32, tol: f64) -> Result<f64> {
    spec.validate()?;
    if group_dim == 0 {
        return Ok(1.0);
    }
    let kh = spec.k() * h_of(spec, tol)?;
    Ok(kh.powf(group_dim as f64 / 2.0))
}

/// Dirichlet energy ∫∫ |dξ|² dA of ξ = τ^k cos kσ over the triangle,
/// computed in the original (ρ, σ) metric: the integrand is
/// k²τ^{2k}/√g₂₂ dρ dσ. Conformal invariance of the energy makes this equal
/// to k·h computed in (u, σ) coordinates.
pub fn dirichlet_energy(spec: &TriangleSpec, tol: f64) -> Result<f64> {
    spec.validate()?;
    let k = spec.k();
    if spec.curvature == Curvature::Euclidean && spec.phi >= PI {
        return Err(Error::Divergent("Euclidean energy diverges at φ = π".into()));
    }
    let density = |rho: f64| -> f64 {
        let (tau, g) = match spec.curvature {
            Curvature::Hyperbolic => ((rho / 2.0).tanh(), rho.sinh()),
            Curvature::Euclidean => (rho, rho),
            Curvature::Spherical => ((rho / 2.0).tan(), rho.sin()),
        };
        if rho == 0.0 {
            return 0.0;
        }
        k * k * tau.powf(2.0 * k) / g
    };
    let inner_tol = tol * 0.1;
    let mut failure = None;
    let outer = quad(
        |sigma| {
            let top = spec.rho_boundary(sigma);
            match quad(density, 0.0, top, inner_tol) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        spec.phi,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    outer
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_anchors() {
        assert_eq!(u_of_rho(Curvature::Euclidean, 1.0).unwrap(), 0.0);
        assert!(u_of_rho(Curvature::Spherical, PI / 2.0).unwrap().abs() < 1e-15);
        let h = u_of_rho(Curvature::Hyperbolic, 2.0).unwrap();
        assert!((h - 1f64.tanh().ln()).abs() < 1e-15);
        assert!(u_of_rho(Curvature::Hyperbolic, 0.0).is_err());
        assert!(u_of_rho(Curvature::Spherical, 3.5).is_err());
    }

    #[test]
    fn u_closed_form_matches_quadrature() {
        for c in [Curvature::Hyperbolic, Curvature::Euclidean, Curvature::Spherical] {
            for rho in [1e-4, 0.1, 1.0, 2.0, 3.0] {
                let a = u_of_rho(c, rho).unwrap();
                let b = u_of_rho_numeric(c, rho, 1e-13).unwrap();
                assert!((a - b).abs() < 1e-10, "{c:?} ρ={rho}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn lphi_anchor_and_law_of_cosines() {
        let l = l_of_phi(2.0, PI / 2.0).unwrap();
        // acosh(√cosh 2) = 1.2813847…; commonly quoted as ≈ 1.2814.
        assert!((l - 1.281_384_715_336).abs() < 1e-11);
        assert!((l - 1.28142).abs() < 1e-4);
        assert!((l.cosh().powi(2) - 2f64.cosh()).abs() < 1e-12);
        let t = tau_of_phi(2.0, PI / 2.0).unwrap();
        assert!((t - 0.565_370_786_836).abs() < 1e-11);
        assert!((t - 0.56536).abs() < 1e-4);
        assert!((t - (l / 2.0).tanh()).abs() < 1e-15);
        // φ → π: L → b/2.
        assert!((l_of_phi(1.3, PI).unwrap() - 0.65).abs() < 1e-15);
    }

    #[test]
    fn euclidean_anchor_and_scaling() {
        let h = h_euclidean(PI / 2.0, 1.0, 1e-13).unwrap();
        assert!((h - 4.0 / 3.0).abs() < 1e-12);
        assert!((h_euclidean_closed(2, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-14);
        let h2 = h_euclidean(PI / 2.0, 1.5, 1e-13).unwrap();
        assert!((h2 - 1.5f64.powi(4) * h).abs() < 1e-11);
        assert!(matches!(h_euclidean(PI, 1.0, 1e-10), Err(Error::Divergent(_))));
        for k in 2..8 {
            let a = h_euclidean(PI / k as f64, 0.7, 1e-13).unwrap();
            let b = h_euclidean_closed(k, 0.7).unwrap();
            assert!((a - b).abs() < 1e-12 * b.max(1.0), "k={k}");
        }
    }

    #[test]
    fn spherical_geodesic_endpoints() {
        for phi in [0.3, 1.0, PI / 2.0, 2.5] {
            for l in [0.1, 0.5, 1.2] {
                let (a, b) = spherical_endpoint_residuals(phi, l).unwrap();
                assert!(a < 1e-12 && b < 1e-12);
                let spec = TriangleSpec::new(Curvature::Spherical, phi, l).unwrap();
                assert!(spec.rho_boundary(phi / 2.0) < l);
            }
        }
    }

    #[test]
    fn hyperbolic_bounds_and_limits() {
        for phi in [0.4, 1.0, PI / 3.0, 2.9] {
            let h = h_hyperbolic_quad(phi, 1.0, 1e-12).unwrap();
            assert!(h > 0.0 && h < phi / 2.0);
        }
        assert!(h_hyperbolic_quad(1.0, 1e-6, 1e-12).unwrap() < 1e-10);
    }

    #[test]
    fn energy_equals_k_h() {
        let specs = [
            TriangleSpec::hyperbolic_from_base(PI / 3.0, 2.0).unwrap(),
            TriangleSpec::new(Curvature::Euclidean, PI / 2.0, 0.8).unwrap(),
            TriangleSpec::new(Curvature::Spherical, 1.1, 0.6).unwrap(),
        ];
        for s in specs {
            let e = dirichlet_energy(&s, 1e-10).unwrap();
            let kh = s.k() * h_of(&s, 1e-12).unwrap();
            assert!((e - kh).abs() < 1e-8 * kh.max(1.0), "{s:?}: {e} vs {kh}");
        }
    }

    #[test]
    fn harmonic_second_order() {
        for k in 1..=6 {
            let f = HarmonicField::new(k as f64, Curvature::Hyperbolic);
            let r1 = harmonic_residual(&f, &HarmonicGrid::standard(k as f64, 0.02)).unwrap();
            let r2 = harmonic_residual(&f, &HarmonicGrid::standard(k as f64, 0.01)).unwrap();
            let ratio = r1 / r2;
            assert!((3.5..=4.5).contains(&ratio), "k={k}: {ratio}");
        }
        let zero = HarmonicField::new(0.0, Curvature::Euclidean);
        assert_eq!(harmonic_residual(&zero, &HarmonicGrid::standard(0.0, 0.1)).unwrap(), 0.0);
    }

    #[test]
    fn h_factor_trivial_cases() {
        let s = TriangleSpec::hyperbolic_from_base(PI / 3.0, 2.0).unwrap();
        assert_eq!(h_factor(&s, 0, 1e-12).unwrap(), 1.0);
        let h = h_of(&s, 1e-12).unwrap();
        let hf = h_factor(&s, 3, 1e-12).unwrap();
        assert!((hf - (3.0 * h).powf(1.5)).abs() < 1e-14);
    }
}

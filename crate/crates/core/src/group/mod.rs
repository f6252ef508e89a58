//! Uniform access to the group-theoretic inputs of the volume formulas:
//! irreducible characters, Haar integration of class functions,
//! Frobenius–Schur indicators, conjugacy-class volumes and Haar sampling.

pub mod finite;
pub mod su2;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{self, QuadOptions};
pub use finite::{ConjugacyClass, FiniteGroup};
pub use su2::Quaternion;

/// Measure convention for Haar volumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Counting measure on a finite group: Vol(G) = |G|.
    Counting,
    /// Probability measure: Vol(G) = Vol(T) = 1.
    Unit,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normalization::Counting => f.write_str("counting"),
            Normalization::Unit => f.write_str("unit"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Finite,
    Su2,
    U1,
}

#[derive(Debug, Clone)]
enum Structure {
    Finite(FiniteGroup),
    Su2,
    U1,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GroupElement {
    /// Index into the finite group's element list.
    Finite(usize),
    Su2(Quaternion),
    /// Angle in [0, 2π).
    U1(f64),
}

/// One irreducible representation. For SU(2) `index` is n (dimension n+1);
/// for U(1) it is the weight; for finite groups it is the character-table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irrep {
    pub index: i64,
    pub dim: u64,
    pub fs_indicator: i8,
}

/// Immutable group model; share freely across threads.
#[derive(Debug, Clone)]
pub struct GroupModel {
    name: String,
    structure: Structure,
    normalization: Normalization,
}

impl GroupModel {
    /// A finite group under counting measure.
    pub fn finite(group: FiniteGroup) -> Self {
        Self {
            name: group.name().to_string(),
            structure: Structure::Finite(group),
            normalization: Normalization::Counting,
        }
    }

    pub fn su2() -> Self {
        Self {
            name: "su2".into(),
            structure: Structure::Su2,
            normalization: Normalization::Unit,
        }
    }

    pub fn u1() -> Self {
        Self {
            name: "u1".into(),
            structure: Structure::U1,
            normalization: Normalization::Unit,
        }
    }

    /// Resolve a model by name: `su2`, `u1`, `s3`, `d4`, `q8`, `z<n>`.
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let g = match lower.as_str() {
            "su2" => return Ok(Self::su2()),
            "u1" => return Ok(Self::u1()),
            "s3" => finite::s3()?,
            "d4" => finite::d4()?,
            "q8" => finite::q8()?,
            other => match other.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if n >= 1 => finite::cyclic(n)?,
                _ => return domain(format!("unknown group {name:?}")),
            },
        };
        Ok(Self::finite(g))
    }

    /// Same group under another measure convention. Counting is only
    /// meaningful for finite groups.
    pub fn with_normalization(mut self, normalization: Normalization) -> Result<Self> {
        if normalization == Normalization::Counting && self.kind() != GroupKind::Finite {
            return domain("counting normalization requires a finite group");
        }
        self.normalization = normalization;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        match self.structure {
            Structure::Finite(_) => GroupKind::Finite,
            Structure::Su2 => GroupKind::Su2,
            Structure::U1 => GroupKind::U1,
        }
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match &self.structure {
            Structure::Finite(g) => Some(g),
            _ => None,
        }
    }

    pub(crate) fn require_finite(&self, op: &str) -> Result<&FiniteGroup> {
        self.as_finite()
            .ok_or_else(|| Error::Domain(format!("{op} requires a finite group, got {}", self.name)))
    }

    /// Dimension of G as a manifold.
    pub fn group_dim(&self) -> u32 {
        match self.structure {
            Structure::Finite(_) => 0,
            Structure::Su2 => 3,
            Structure::U1 => 1,
        }
    }

    /// Dimension of the maximal torus.
    pub fn torus_dim(&self) -> u32 {
        match self.structure {
            Structure::Finite(_) => 0,
            Structure::Su2 | Structure::U1 => 1,
        }
    }

    /// Order of the center; `None` when the center is not finite (U(1)).
    pub fn center_order(&self) -> Option<u64> {
        match &self.structure {
            Structure::Finite(g) => {
                Some(g.classes().iter().filter(|c| c.size == 1).count() as u64)
            }
            Structure::Su2 => Some(2),
            Structure::U1 => None,
        }
    }

    /// Total Haar volume under the active normalization.
    pub fn vol_g(&self) -> f64 {
        match (&self.structure, self.normalization) {
            (Structure::Finite(g), Normalization::Counting) => g.order() as f64,
            _ => 1.0,
        }
    }

    /// Maximal-torus volume. Finite groups have a trivial torus; the shipped
    /// continuous models use unit volume.
    pub fn vol_t(&self) -> f64 {
        1.0
    }

    /// Number of irreducible representations, if finite.
    pub fn irrep_total(&self) -> Option<usize> {
        self.as_finite().map(FiniteGroup::irrep_count)
    }

    pub fn identity(&self) -> GroupElement {
        match &self.structure {
            Structure::Finite(g) => GroupElement::Finite(g.identity()),
            Structure::Su2 => GroupElement::Su2(Quaternion::IDENTITY),
            Structure::U1 => GroupElement::U1(0.0),
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        match (&self.structure, a, b) {
            (Structure::Finite(g), GroupElement::Finite(x), GroupElement::Finite(y)) => {
                Ok(GroupElement::Finite(g.mul(*x, *y)))
            }
            (Structure::Su2, GroupElement::Su2(x), GroupElement::Su2(y)) => Ok(GroupElement::Su2(*x * *y)),
            (Structure::U1, GroupElement::U1(x), GroupElement::U1(y)) => {
                Ok(GroupElement::U1((x + y).rem_euclid(2.0 * PI)))
            }
            _ => Err(self.mismatch()),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        match (&self.structure, a) {
            (Structure::Finite(g), GroupElement::Finite(x)) => Ok(GroupElement::Finite(g.inv(*x))),
            (Structure::Su2, GroupElement::Su2(x)) => Ok(GroupElement::Su2(x.inv())),
            (Structure::U1, GroupElement::U1(x)) => Ok(GroupElement::U1((-x).rem_euclid(2.0 * PI))),
            _ => Err(self.mismatch()),
        }
    }

    pub fn conjugate(&self, k: &GroupElement, g: &GroupElement) -> Result<GroupElement> {
        self.mul(&self.mul(k, g)?, &self.inv(k)?)
    }

    fn mismatch(&self) -> Error {
        Error::Domain(format!("element does not belong to {}", self.name))
    }

    /// Check that `g` is a valid element of this model.
    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        match (&self.structure, g) {
            (Structure::Finite(f), GroupElement::Finite(i)) if *i < f.order() => Ok(()),
            (Structure::Su2, GroupElement::Su2(q)) if (q.norm() - 1.0).abs() < 1e-12 => Ok(()),
            (Structure::U1, GroupElement::U1(t)) if t.is_finite() => Ok(()),
            _ => Err(self.mismatch()),
        }
    }

    /// Class representative with the given label (finite groups).
    pub fn class_element(&self, label: &str) -> Result<GroupElement> {
        let g = self.require_finite("class lookup")?;
        g.class_by_label(label)
            .map(|c| GroupElement::Finite(c.representative))
            .ok_or_else(|| {
                let known: Vec<&str> = g.classes().iter().map(|c| c.label.as_str()).collect();
                Error::Domain(format!("{} has no class {label:?} (known: {})", self.name, known.join(", ")))
            })
    }

    /// Torus element with the given angle (SU(2) class angle, or U(1) angle).
    pub fn angle_element(&self, theta: f64) -> Result<GroupElement> {
        match self.structure {
            Structure::Su2 => Ok(GroupElement::Su2(Quaternion::from_angle(theta))),
            Structure::U1 => Ok(GroupElement::U1(theta.rem_euclid(2.0 * PI))),
            Structure::Finite(_) => domain("angles parametrize continuous groups only"),
        }
    }

    /// SU(2) class angle in [0, π].
    pub fn su2_angle(&self, g: &GroupElement) -> Result<f64> {
        match g {
            GroupElement::Su2(q) => Ok(q.class_angle()),
            _ => domain("expected an SU(2) element"),
        }
    }

    /// The first `count` irreps, sorted by (dim, index). U(1) weights are
    /// interleaved 0, 1, −1, 2, −2, …
    pub fn list_irreps(&self, count: usize) -> Result<Vec<Irrep>> {
        if count == 0 {
            return domain("irrep count must be at least 1");
        }
        match &self.structure {
            Structure::Finite(g) => {
                if count > g.irrep_count() {
                    return domain(format!(
                        "{} has {} irreps, {count} requested",
                        self.name,
                        g.irrep_count()
                    ));
                }
                Ok((0..count)
                    .map(|i| Irrep {
                        index: i as i64,
                        dim: g.dim(i),
                        fs_indicator: g.frobenius_schur(i).re.round() as i8,
                    })
                    .collect())
            }
            Structure::Su2 => Ok((0..count as u64).map(su2_irrep).collect()),
            Structure::U1 => Ok((0..count).map(|i| u1_irrep(u1_weight(i))).collect()),
        }
    }

    pub fn character(&self, irrep: &Irrep, g: &GroupElement) -> Result<Complex64> {
        match (&self.structure, g) {
            (Structure::Finite(f), GroupElement::Finite(i)) if *i < f.order() => {
                let row = usize::try_from(irrep.index)
                    .ok()
                    .filter(|&r| r < f.irrep_count())
                    .ok_or_else(|| Error::Domain(format!("{} has no irrep {}", self.name, irrep.index)))?;
                Ok(f.character(row, *i))
            }
            (Structure::Su2, GroupElement::Su2(q)) => {
                let n = su2_index(irrep)?;
                Ok(Complex64::new(su2::character(n, q.class_angle()), 0.0))
            }
            (Structure::U1, GroupElement::U1(t)) => Ok(Complex64::from_polar(1.0, irrep.index as f64 * t)),
            _ => Err(self.mismatch()),
        }
    }

    /// ∫_G f dg under the active normalization, for a class function f.
    ///
    /// Finite groups sum exactly; SU(2) uses the Weyl reduction
    /// (2/π)∫₀^π sin²θ f(θ) dθ and U(1) the circle average, both by adaptive
    /// quadrature. Returns the integral and the number of integrand
    /// evaluations (0 for finite groups).
    pub fn haar_integral<F>(&self, f: F, opts: &QuadOptions) -> Result<(Complex64, usize)>
    where
        F: Fn(&GroupElement) -> Complex64,
    {
        match &self.structure {
            Structure::Finite(g) => {
                let sum: Complex64 = (0..g.order()).map(|i| f(&GroupElement::Finite(i))).sum();
                Ok((sum * (self.vol_g() / g.order() as f64), 0))
            }
            Structure::Su2 => {
                let weight = |t: f64| su2::weyl_density(t);
                let at = |t: f64| f(&GroupElement::Su2(Quaternion::from_angle(t)));
                let re = quadrature::integrate(|t| weight(t) * at(t).re, 0.0, PI, opts)?;
                let im = quadrature::integrate(|t| weight(t) * at(t).im, 0.0, PI, opts)?;
                Ok((Complex64::new(re.value, im.value) * self.vol_g(), re.evals + im.evals))
            }
            Structure::U1 => {
                let at = |t: f64| f(&GroupElement::U1(t));
                let re = quadrature::integrate(|t| at(t).re, 0.0, 2.0 * PI, opts)?;
                let im = quadrature::integrate(|t| at(t).im, 0.0, 2.0 * PI, opts)?;
                let scale = self.vol_g() / (2.0 * PI);
                Ok((Complex64::new(re.value, im.value) * scale, re.evals + im.evals))
            }
        }
    }

    /// Real part of [`Self::haar_integral`], for real class functions.
    pub fn haar_expect<F>(&self, f: F, opts: &QuadOptions) -> Result<f64>
    where
        F: Fn(&GroupElement) -> f64,
    {
        self.haar_integral(|g| Complex64::new(f(g), 0.0), opts).map(|(v, _)| v.re)
    }

    /// Frobenius–Schur indicator (1/Vol G)∫ χ(g²) dg, rounded to {−1, 0, 1}.
    /// The unrounded value must lie within 1e-6 of the integer.
    pub fn frobenius_schur(&self, irrep: &Irrep) -> Result<i8> {
        let (value, _) = self.fs_integral(irrep)?;
        let rounded = value.re.round();
        let residual = (value - Complex64::new(rounded, 0.0)).norm();
        if residual > 1e-6 || !(-1.0..=1.0).contains(&rounded) {
            return Err(Error::NonConvergent {
                what: format!("Frobenius–Schur indicator of irrep {}", irrep.index),
                estimate: value.re,
                residual,
            });
        }
        Ok(rounded as i8)
    }

    /// Unrounded (1/Vol G)∫ χ(g²) dg and the evaluation count.
    pub fn fs_integral(&self, irrep: &Irrep) -> Result<(Complex64, usize)> {
        let opts = QuadOptions::with_tol(1e-13);
        let (v, evals) = self.haar_integral(
            |g| {
                let sq = self.mul(g, g).expect("same group");
                self.character(irrep, &sq).expect("valid irrep")
            },
            &opts,
        )?;
        Ok((v / self.vol_g(), evals))
    }

    /// Volume weight of the conjugacy class through `s`: 4 sin²θ for SU(2),
    /// 1 for U(1), and |C(s)|·Vol(G)/|G| for finite groups (the class size
    /// under counting measure).
    pub fn conj_class_volume(&self, s: &GroupElement) -> Result<f64> {
        self.validate(s)?;
        match (&self.structure, s) {
            (Structure::Finite(g), GroupElement::Finite(i)) => {
                let size = g.classes()[g.class_of(*i)].size as f64;
                Ok(size * self.vol_g() / g.order() as f64)
            }
            (Structure::Su2, GroupElement::Su2(q)) => Ok(su2::class_weight(q.class_angle())),
            (Structure::U1, _) => Ok(1.0),
            _ => Err(self.mismatch()),
        }
    }

    /// Haar-uniform random element.
    pub fn sample_haar<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        match &self.structure {
            Structure::Finite(g) => GroupElement::Finite(rng.gen_range(0..g.order())),
            Structure::Su2 => GroupElement::Su2(Quaternion::sample(rng)),
            Structure::U1 => GroupElement::U1(rng.gen_range(0.0..2.0 * PI)),
        }
    }

    /// Whether the irrep's character is real-valued (α ≅ ᾱ).
    pub fn is_self_dual(&self, irrep: &Irrep) -> Result<bool> {
        match &self.structure {
            Structure::Finite(g) => {
                let row = irrep.index as usize;
                Ok((0..g.order()).all(|i| g.character(row, i).im.abs() < 1e-12))
            }
            Structure::Su2 => Ok(true),
            Structure::U1 => Ok(irrep.index == 0),
        }
    }
}

pub(crate) fn su2_irrep(n: u64) -> Irrep {
    Irrep {
        index: n as i64,
        dim: n + 1,
        fs_indicator: if n % 2 == 0 { 1 } else { -1 },
    }
}

fn su2_index(irrep: &Irrep) -> Result<u64> {
    u64::try_from(irrep.index).or_else(|_| domain("SU(2) irreps have nonnegative index"))
}

/// i-th U(1) weight in the order 0, 1, −1, 2, −2, …
pub(crate) fn u1_weight(i: usize) -> i64 {
    let k = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        k
    } else {
        -k
    }
}

fn u1_irrep(weight: i64) -> Irrep {
    Irrep {
        index: weight,
        dim: 1,
        fs_indicator: i8::from(weight == 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn models() -> Vec<GroupModel> {
        ["s3", "d4", "q8", "z6", "z3", "su2", "u1"]
            .iter()
            .map(|n| GroupModel::by_name(n).unwrap())
            .collect()
    }

    #[test]
    fn list_irreps_examples() {
        let su2 = GroupModel::su2();
        let dims: Vec<u64> = su2.list_irreps(3).unwrap().iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![1, 2, 3]);

        let s3 = GroupModel::by_name("s3").unwrap();
        let dims: Vec<u64> = s3.list_irreps(3).unwrap().iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        assert!(matches!(s3.list_irreps(4), Err(Error::Domain(_))));

        let u1 = GroupModel::u1();
        let ws: Vec<i64> = u1.list_irreps(5).unwrap().iter().map(|r| r.index).collect();
        assert_eq!(ws, vec![0, 1, -1, 2, -2]);
        assert!(u1.list_irreps(3).unwrap().iter().all(|r| r.dim == 1));
        assert!(su2.list_irreps(0).is_err());
    }

    #[test]
    fn invariants_of_model_constants() {
        let su2 = GroupModel::su2();
        assert_eq!(su2.vol_g(), 1.0);
        assert_eq!(su2.vol_t(), 1.0);
        assert_eq!(su2.group_dim(), 3);
        assert_eq!(su2.torus_dim(), 1);
        assert_eq!(su2.center_order(), Some(2));
        let s3 = GroupModel::by_name("s3").unwrap();
        assert_eq!(s3.vol_g(), 6.0);
        assert_eq!(s3.center_order(), Some(1));
        assert_eq!(GroupModel::by_name("q8").unwrap().center_order(), Some(2));
        assert_eq!(GroupModel::by_name("z6").unwrap().center_order(), Some(6));
        assert!(GroupModel::su2().with_normalization(Normalization::Counting).is_err());
        assert!(GroupModel::by_name("a5").is_err());
    }

    #[test]
    fn character_examples() {
        let su2 = GroupModel::su2();
        let v1 = su2.list_irreps(2).unwrap()[1];
        let g = su2.angle_element(PI / 3.0).unwrap();
        assert!((su2.character(&v1, &g).unwrap().re - 1.0).abs() < 1e-14);
        let v4 = su2.list_irreps(5).unwrap()[4];
        assert_eq!(su2.character(&v4, &su2.identity()).unwrap().re, 5.0);

        let s3 = GroupModel::by_name("s3").unwrap();
        let std = s3.list_irreps(3).unwrap()[2];
        let t = s3.class_element("transposition").unwrap();
        assert_eq!(s3.character(&std, &t).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn character_at_identity_is_dim_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in models() {
            let count = m.irrep_total().unwrap_or(10);
            for irrep in m.list_irreps(count).unwrap() {
                assert_eq!(m.character(&irrep, &m.identity()).unwrap(), Complex64::new(irrep.dim as f64, 0.0));
                for _ in 0..50 {
                    let g = m.sample_haar(&mut rng);
                    assert!(m.character(&irrep, &g).unwrap().norm() <= irrep.dim as f64 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn orthonormality_first_ten_irreps() {
        let opts = QuadOptions::with_tol(1e-13);
        for m in models() {
            let count = m.irrep_total().unwrap_or(10).min(10);
            let irreps = m.list_irreps(count).unwrap();
            for a in &irreps {
                for b in &irreps {
                    let (v, _) = m
                        .haar_integral(
                            |g| m.character(a, g).unwrap() * m.character(b, g).unwrap().conj(),
                            &opts,
                        )
                        .unwrap();
                    let expect = if a == b { m.vol_g() } else { 0.0 };
                    assert!(
                        (v - Complex64::new(expect, 0.0)).norm() < 1e-9,
                        "{} {a:?} {b:?}: {v}",
                        m.name()
                    );
                }
            }
        }
    }

    #[test]
    fn class_function_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in models() {
            let count = m.irrep_total().unwrap_or(6).min(6);
            let irreps = m.list_irreps(count).unwrap();
            for _ in 0..100 {
                let g = m.sample_haar(&mut rng);
                let h = m.sample_haar(&mut rng);
                let c = m.conjugate(&h, &g).unwrap();
                for r in &irreps {
                    let d = (m.character(r, &g).unwrap() - m.character(r, &c).unwrap()).norm();
                    let tol = if m.kind() == GroupKind::Finite { 0.0 } else { 1e-12 };
                    assert!(d <= tol, "{} {r:?}: {d}", m.name());
                }
            }
        }
    }

    #[test]
    fn haar_expect_examples() {
        let su2 = GroupModel::su2();
        let opts = QuadOptions::with_tol(1e-13);
        assert!((su2.haar_expect(|_| 1.0, &opts).unwrap() - 1.0).abs() < 1e-13);
        let theta = |g: &GroupElement| su2.su2_angle(g).unwrap();
        let chi = |n: u64, g: &GroupElement| su2::character(n, theta(g));
        assert!((su2.haar_expect(|g| chi(1, g) * chi(1, g), &opts).unwrap() - 1.0).abs() < 1e-12);
        for (a, b) in [(0, 1), (1, 3), (2, 5), (4, 9)] {
            assert!(su2.haar_expect(|g| chi(a, g) * chi(b, g), &opts).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn frobenius_schur_examples() {
        let su2 = GroupModel::su2();
        for irrep in su2.list_irreps(11).unwrap() {
            let expect = if irrep.index % 2 == 0 { 1 } else { -1 };
            assert_eq!(su2.frobenius_schur(&irrep).unwrap(), expect);
            assert_eq!(irrep.fs_indicator, expect);
        }
        let s3 = GroupModel::by_name("s3").unwrap();
        for irrep in s3.list_irreps(3).unwrap() {
            assert_eq!(s3.frobenius_schur(&irrep).unwrap(), 1);
        }
        let q8 = GroupModel::by_name("q8").unwrap();
        let fs: Vec<i8> = q8
            .list_irreps(5)
            .unwrap()
            .iter()
            .map(|r| q8.frobenius_schur(r).unwrap())
            .collect();
        assert_eq!(fs.iter().filter(|&&f| f == -1).count(), 1);
        assert_eq!(fs[4], -1);
        let z3 = GroupModel::by_name("z3").unwrap();
        let fs: Vec<i8> = z3
            .list_irreps(3)
            .unwrap()
            .iter()
            .map(|r| z3.frobenius_schur(r).unwrap())
            .collect();
        assert_eq!(fs, vec![1, 0, 0]);
        let u1 = GroupModel::u1();
        let fs: Vec<i8> = u1
            .list_irreps(3)
            .unwrap()
            .iter()
            .map(|r| u1.frobenius_schur(r).unwrap())
            .collect();
        assert_eq!(fs, vec![1, 0, 0]);
    }

    #[test]
    fn conj_class_volume_examples() {
        let su2 = GroupModel::su2();
        let s = su2.angle_element(PI / 2.0).unwrap();
        assert!((su2.conj_class_volume(&s).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(su2.conj_class_volume(&su2.identity()).unwrap(), 0.0);
        let s3 = GroupModel::by_name("s3").unwrap();
        let t = s3.class_element("transposition").unwrap();
        assert_eq!(s3.conj_class_volume(&t).unwrap(), 3.0);
        assert_eq!(s3.conj_class_volume(&s3.identity()).unwrap(), 1.0);
    }

    #[test]
    fn sampling_is_seeded_and_in_range() {
        let s3 = GroupModel::by_name("s3").unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| s3.sample_haar(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
        assert!(draw(9).iter().all(|g| matches!(g, GroupElement::Finite(i) if *i < 6)));
    }

    #[test]
    fn sum_of_fs_times_dim_counts_involutions() {
        for name in ["s3", "d4", "q8", "z6", "z5"] {
            let m = GroupModel::by_name(name).unwrap();
            let g = m.as_finite().unwrap();
            let irreps = m.list_irreps(g.irrep_count()).unwrap();
            let lhs: i64 = irreps.iter().map(|r| r.fs_indicator as i64 * r.dim as i64).sum();
            let roots = (0..g.order()).filter(|&x| g.mul(x, x) == g.identity()).count() as i64;
            assert_eq!(lhs, roots, "{name}");
        }
    }
}

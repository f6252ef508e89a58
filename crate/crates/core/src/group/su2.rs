//! SU(2) as unit quaternions. Conjugacy classes are labelled by the rotation
//! angle θ ∈ [0, π], with eigenvalues e^{±iθ}.

use std::f64::consts::PI;
use std::ops::Mul;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Self = Self {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Torus representative exp(iθσ₃) of the class with angle θ.
    pub fn from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin(), 0.0, 0.0)
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Inverse of a unit quaternion.
    pub fn inv(&self) -> Self {
        self.conj()
    }

    /// Class angle θ ∈ [0, π]; `atan2` keeps it accurate near both ends.
    pub fn class_angle(&self) -> f64 {
        let v = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        v.atan2(self.w)
    }

    /// Haar-uniform sample: four independent normals, normalized.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q = Self::new(
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            );
            let n = q.norm();
            if n > 1e-150 {
                return Self::new(q.w / n, q.x / n, q.y / n, q.z / n);
            }
        }
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

/// χₙ(θ) = sin((n+1)θ)/sin θ, valid for any real θ.
///
/// θ is reduced to jπ + δ with |δ| ≤ π/2; near the removable singularities
/// (|(n+1)δ| small) a Taylor expansion replaces the quotient.
pub fn character(n: u64, theta: f64) -> f64 {
    let m = (n + 1) as f64;
    let j = (theta / PI).round();
    let delta = theta - j * PI;
    let sign = if (j as i64).rem_euclid(2) == 1 && n % 2 == 1 { -1.0 } else { 1.0 };
    let md = m * delta;
    let core = if delta.sin().abs() < 1e-4 && md.abs() < 1e-3 {
        let d2 = delta * delta;
        let m2 = m * m;
        m * (1.0 - (m2 - 1.0) * d2 / 6.0 + (3.0 * m2 * m2 - 10.0 * m2 + 7.0) * d2 * d2 / 360.0)
    } else {
        md.sin() / delta.sin()
    };
    sign * core
}

/// Weyl density on [0, π] for the unit-volume Haar measure: (2/π) sin²θ.
pub fn weyl_density(theta: f64) -> f64 {
    let s = theta.sin();
    2.0 / PI * s * s
}

/// F(s) = 4 sin²θ, the volume weight of the conjugacy class of angle θ.
pub fn class_weight(theta: f64) -> f64 {
    let s = theta.sin();
    4.0 * s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn character_anchors() {
        assert!((character(1, PI / 3.0) - 1.0).abs() < 1e-15);
        assert_eq!(character(4, 0.0), 5.0);
        assert_eq!(character(3, PI), -4.0);
        assert_eq!(character(4, PI), 5.0);
        assert_eq!(character(0, 1.234), 1.0);
    }

    #[test]
    fn character_is_continuous_through_singularities() {
        for n in [1u64, 2, 7, 30] {
            for base in [0.0, PI, 2.0 * PI] {
                for eps in [1e-9, 1e-6, 3e-4, 2e-3] {
                    let direct = ((n + 1) as f64 * (base + eps)).sin() / (base + eps).sin();
                    let ours = character(n, base + eps);
                    assert!(
                        (direct - ours).abs() < 1e-6 * (n + 1) as f64,
                        "n={n} base={base} eps={eps}: {direct} vs {ours}"
                    );
                }
            }
        }
    }

    #[test]
    fn chebyshev_recurrence_agrees() {
        let theta: f64 = 0.731;
        let x = theta.cos();
        let (mut u0, mut u1) = (1.0, 2.0 * x);
        assert!((character(0, theta) - u0).abs() < 1e-14);
        for n in 1..40u64 {
            assert!((character(n, theta) - u1).abs() < 1e-12);
            let u2 = 2.0 * x * u1 - u0;
            u0 = u1;
            u1 = u2;
        }
    }

    #[test]
    fn class_angle_of_torus_element() {
        for theta in [0.0, 1e-9, 0.3, 1.5, PI - 1e-9, PI] {
            let q = Quaternion::from_angle(theta);
            assert!((q.class_angle() - theta).abs() < 1e-12);
        }
    }

    #[test]
    fn samples_have_unit_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            assert!((Quaternion::sample(&mut rng).norm() - 1.0).abs() < 1e-12);
        }
    }
}

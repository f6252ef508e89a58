//! Truncated evaluation of Σ_{m≥1} a_m with a certified remainder.
//!
//! Every SU(2) volume is such a sum with m = n + 1 = dim Vₙ. The terms fall
//! into three shapes:
//!
//! * `Constant`: a_m = c·m^{-q}. The tail is a Hurwitz-zeta tail, added back
//!   by Euler–Maclaurin; the bound is the first omitted correction.
//! * `Alternating`: a_m = c·(−1)^{m−1}·m^{-q}. The tail is summed by the
//!   Boole (Euler) formula.
//! * `Oscillating`: |a_m| ≤ C·m^{-q} with no sign structure; the tail is not
//!   estimated and the bound is C·Σ_{m>N} m^{-q}.
//!
//! Reported bounds also carry a floating-point rounding allowance so that two
//! truncations of the same series never differ by more than the bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::NeumaierSum;

/// Target remainder for automatically chosen truncations.
pub const DEFAULT_TAIL_TARGET: f64 = 1e-10;
/// Hard cap on automatically chosen truncations.
pub const MAX_TRUNCATION: u64 = 1_000_000;
const MIN_TRUNCATION: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Constant { coeff: f64 },
    Alternating { coeff: f64 },
    /// Every listed (C, q) satisfies |a_m| ≤ C·m^{-q}.
    Oscillating { bounds: [(f64, f64); 3] },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub partial_sum: f64,
    pub tail_estimate: f64,
    pub tail_bound: f64,
    pub truncation: u64,
}

/// Σ_{m>n} m^{-q} ≤ ∫_n^∞ x^{-q} dx, for q > 1 and n ≥ 1.
pub fn power_tail_bound(q: f64, n: u64) -> f64 {
    if q <= 1.0 {
        return f64::INFINITY;
    }
    (n as f64).powf(1.0 - q) / (q - 1.0)
}

/// Rising factorial q(q+1)…(q+k−1).
fn rising(q: f64, k: u32) -> f64 {
    (0..k).map(|i| q + i as f64).product()
}

/// Euler–Maclaurin estimate of Σ_{m≥a} m^{-q} and a bound on its error.
pub fn hurwitz_tail(q: f64, a: u64) -> (f64, f64) {
    const B: [f64; 4] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];
    let a = a as f64;
    let mut s = a.powf(1.0 - q) / (q - 1.0) + 0.5 * a.powf(-q);
    let mut fact = 1.0;
    for (j, b) in B.iter().enumerate().take(3) {
        let k = 2 * (j as u32 + 1);
        fact *= (k - 1) as f64 * k as f64;
        s += b / fact * rising(q, k - 1) * a.powf(-q - (k - 1) as f64);
    }
    fact *= 7.0 * 8.0;
    let err = 2.0 * (B[3] / fact * rising(q, 7) * a.powf(-q - 7.0)).abs();
    (s, err)
}

/// Boole summation of Σ_{k≥0} (−1)^k (a+k)^{-q} and a bound on its error.
pub fn alternating_tail(q: f64, a: u64) -> (f64, f64) {
    // Taylor coefficients of 1/(1+e^D) at odd orders ≥ 1.
    const C: [(u32, f64); 4] = [
        (1, -1.0 / 4.0),
        (3, 1.0 / 48.0),
        (5, -1.0 / 480.0),
        (7, 17.0 / 80640.0),
    ];
    let a = a as f64;
    let deriv = |k: u32| -> f64 {
        // d^k/dx^k x^{-q} = (−1)^k q(q+1)…(q+k−1) x^{-q-k}
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sign * rising(q, k) * a.powf(-q - k as f64)
    };
    let mut s = 0.5 * a.powf(-q);
    for (k, c) in C {
        s += c * deriv(k);
    }
    let err = 2.0 * (31.0 / 1_451_520.0 * deriv(9)).abs();
    (s, err)
}

impl Shape {
    /// Convergence exponent used to decide whether the tail can be bounded.
    fn check(&self) -> Result<()> {
        let ok = match *self {
            Shape::Constant { coeff } => coeff == 0.0,
            Shape::Alternating { coeff } => coeff == 0.0,
            Shape::Oscillating { .. } => false,
        };
        if ok {
            return Ok(());
        }
        match *self {
            Shape::Constant { .. } => Ok(()),
            Shape::Alternating { .. } => Ok(()),
            Shape::Oscillating { bounds } => {
                if bounds.iter().any(|&(c, q)| c.is_finite() && q > 1.0) {
                    Ok(())
                } else {
                    Err(Error::Divergent(
                        "series is not absolutely convergent; no tail bound available".into(),
                    ))
                }
            }
        }
    }

    /// (tail estimate, truncation remainder bound) after n terms.
    fn tail(&self, q: f64, n: u64) -> (f64, f64) {
        match *self {
            Shape::Constant { coeff } => {
                let (t, e) = hurwitz_tail(q, n + 1);
                (coeff * t, coeff.abs() * e)
            }
            Shape::Alternating { coeff } => {
                let (t, e) = alternating_tail(q, n + 1);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                (sign * coeff * t, coeff.abs() * e)
            }
            Shape::Oscillating { bounds } => {
                let b = bounds
                    .iter()
                    .map(|&(c, q)| c * power_tail_bound(q, n))
                    .fold(f64::INFINITY, f64::min);
                (0.0, b)
            }
        }
    }
}

/// Evaluate Σ_{m≥1} term(m), where `q` is the power in the `Constant` and
/// `Alternating` shapes (ignored for `Oscillating`).
///
/// `truncation = None` picks the smallest N ≥ 64 whose remainder bound is
/// below [`DEFAULT_TAIL_TARGET`], capped at [`MAX_TRUNCATION`].
pub fn sum_series<F>(term: F, shape: Shape, q: f64, truncation: Option<u64>) -> Result<SeriesValue>
where
    F: Fn(u64) -> f64,
{
    shape.check()?;
    match shape {
        Shape::Constant { coeff } if coeff != 0.0 && q <= 1.0 => {
            return Err(Error::Divergent(format!("Σ m^-{q} diverges")));
        }
        Shape::Alternating { coeff } if coeff != 0.0 && q <= 0.0 => {
            return Err(Error::Divergent(format!("alternating Σ m^{} diverges", -q)));
        }
        _ => {}
    }
    let n = match truncation {
        Some(0) => return Err(Error::Domain("truncation must be at least 1".into())),
        Some(n) => n,
        None => {
            let mut n = MIN_TRUNCATION;
            while n < MAX_TRUNCATION && shape.tail(q, n).1 >= DEFAULT_TAIL_TARGET {
                n *= 2;
            }
            n.min(MAX_TRUNCATION)
        }
    };

    let mut sum = NeumaierSum::default();
    let mut abs_sum = 0.0;
    for m in 1..=n {
        let a = term(m);
        sum.add(a);
        // Terms built from sin(mθ) carry absolute argument error ~ m·ε.
        abs_sum += a.abs() * (1.0 + (m as f64).log2());
    }
    let partial = sum.value();
    let (tail_estimate, remainder) = shape.tail(q, n);
    let value = partial + tail_estimate;
    let rounding = 8.0 * f64::EPSILON * (abs_sum + tail_estimate.abs() + value.abs());
    Ok(SeriesValue {
        value,
        partial_sum: partial,
        tail_estimate,
        tail_bound: remainder + rounding,
        truncation: n,
    })
}

/// Abel sum lim_{r→1⁻} Σ_{m≥1} r^m a_m, by Richardson extrapolation in
/// (1 − r) over r = 1 − 2^{-j}. Returns (value, error estimate, terms used).
pub fn abel_sum<F>(term: F) -> Result<(f64, f64, u64)>
where
    F: Fn(u64) -> f64,
{
    const LEVELS: usize = 11;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(LEVELS);
    let mut terms = 0;
    for level in 0..LEVELS {
        let h = 0.5f64.powi(4 + level as i32);
        let r = 1.0 - h;
        // r^M < 1e-18 once M > 41.5/h.
        let m_max = (42.0 / h).ceil() as u64;
        let mut s = NeumaierSum::default();
        let mut w = 1.0;
        for m in 1..=m_max {
            w *= r;
            s.add(w * term(m));
        }
        terms += m_max;
        let mut row = vec![s.value()];
        for k in 1..=level {
            let factor = 2f64.powi(k as i32);
            let prev = table[level - 1][k - 1];
            let cur = row[k - 1];
            row.push(cur + (cur - prev) / (factor - 1.0));
        }
        table.push(row);
    }
    let last = &table[LEVELS - 1];
    let prev = &table[LEVELS - 2];
    let value = last[LEVELS - 1];
    let err = (value - prev[LEVELS - 2]).abs() + 16.0 * f64::EPSILON * value.abs();
    if !value.is_finite() || err > 1e-6 * value.abs().max(1.0) {
        return Err(Error::NonConvergent {
            what: "Abel summation".into(),
            estimate: value,
            residual: err,
        });
    }
    Ok((value, err, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn zeta_two_with_tail_correction() {
        let v = sum_series(|m| 1.0 / (m * m) as f64, Shape::Constant { coeff: 1.0 }, 2.0, Some(100)).unwrap();
        assert!((v.value - PI * PI / 6.0).abs() < 1e-15 + v.tail_bound);
        assert!(v.tail_bound < 1e-14);
        assert!((v.partial_sum - PI * PI / 6.0).abs() > 9e-3);
    }

    #[test]
    fn eta_one_is_ln2() {
        let v = sum_series(
            |m| if m % 2 == 1 { 1.0 / m as f64 } else { -1.0 / m as f64 },
            Shape::Alternating { coeff: 1.0 },
            1.0,
            Some(50),
        )
        .unwrap();
        assert!((v.value - LN_2).abs() < 1e-14, "{}", v.value - LN_2);
        let v = sum_series(
            |m| if m % 2 == 1 { 1.0 / m as f64 } else { -1.0 / m as f64 },
            Shape::Alternating { coeff: 1.0 },
            1.0,
            Some(51),
        )
        .unwrap();
        assert!((v.value - LN_2).abs() < 1e-14);
    }

    #[test]
    fn hurwitz_tail_against_direct_sum() {
        for q in [2.0, 3.0, 4.5] {
            let direct: f64 = (10..2_000_000u64).rev().map(|m| (m as f64).powf(-q)).sum();
            let rest = power_tail_bound(q, 1_999_999);
            let (t, e) = hurwitz_tail(q, 10);
            assert!((t - direct).abs() < e + rest + 1e-15, "q={q}");
        }
    }

    #[test]
    fn oscillating_bound_is_honest() {
        // Σ sin(m)/m³ = (π² − 3π + 2)/12 for θ = 1 (Bernoulli polynomial form).
        let theta: f64 = 1.0;
        let exact = theta * (PI - theta) * (2.0 * PI - theta) / 12.0;
        let shape = Shape::Oscillating {
            bounds: [(1.0, 3.0), (f64::INFINITY, 0.0), (f64::INFINITY, 0.0)],
        };
        for n in [10u64, 100, 1000] {
            let v = sum_series(|m| (m as f64 * theta).sin() / (m as f64).powi(3), shape, 3.0, Some(n)).unwrap();
            assert!((v.value - exact).abs() <= v.tail_bound);
            let v2 = sum_series(|m| (m as f64 * theta).sin() / (m as f64).powi(3), shape, 3.0, Some(2 * n))
                .unwrap();
            assert!((v2.value - v.value).abs() <= v.tail_bound);
        }
    }

    #[test]
    fn automatic_truncation_meets_target() {
        let shape = Shape::Oscillating {
            bounds: [(1.0, 3.0), (f64::INFINITY, 0.0), (f64::INFINITY, 0.0)],
        };
        let v = sum_series(|m| (m as f64).sin() / (m as f64).powi(3), shape, 3.0, None).unwrap();
        assert!(v.tail_bound < 1e-10);
        assert!(v.truncation <= MAX_TRUNCATION);
    }

    #[test]
    fn divergent_series_rejected() {
        assert!(matches!(
            sum_series(|_| 1.0, Shape::Constant { coeff: 1.0 }, 0.0, Some(10)),
            Err(Error::Divergent(_))
        ));
        let shape = Shape::Oscillating {
            bounds: [(1.0, 1.0), (f64::INFINITY, 0.0), (f64::INFINITY, 0.0)],
        };
        assert!(matches!(
            sum_series(|m| (m as f64).sin() / m as f64, shape, 1.0, Some(10)),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn abel_sum_of_sine_series() {
        // Σ sin(mθ)/m = (π − θ)/2 on (0, 2π).
        for theta in [0.3f64, 1.0, 2.5] {
            let (v, err, _) = abel_sum(|m| (m as f64 * theta).sin() / m as f64).unwrap();
            assert!((v - (PI - theta) / 2.0).abs() < 1e-9, "θ={theta}: {v}");
            assert!(err < 1e-8);
        }
        // Grandi: 1 − 1 + 1 − … = 1/2.
        let (v, _, _) = abel_sum(|m| if m % 2 == 1 { 1.0 } else { -1.0 }).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }
}

//! Closed-form evaluation of the hyperbolic h(φ) for φ = π/k, k a positive
//! integer.
//!
//! Expanding (X − √(X²−1))^{2k}, X = x/l, by the binomial theorem splits the
//! integral into even and odd parts:
//!
//! S₁ = Σ_{s=0}^{k} Σ_{r=0}^{k−s} C(2k,2s)·C(k−s,r)·(−1)^{k−s−r}·l^{−2(s+r)}·I_{s+r}(φ/2)
//!
//! S₂ = −l^{−2k} Σ_{s=0}^{k−1} C(2k,2s+1) Σ_{t≤s} Σ_{r≤t} C(s,t)·C(t,r)·(−1)^{t+r}
//!        · m^{2(k−s)+2t}·I_{k−s+r}(θ_m)
//!
//! with m² = 1 − l², θ_m = arcsin(sin(φ/2)/m) and
//! I_n(a) = ∫₀^a cos^{2n}θ dθ = C(2n,n)·a/4ⁿ + 2^{1−2n} Σ_{p<n} C(2n,p)·sin(2(n−p)a)/(2(n−p)).
//!
//! The terms alternate and cancel by many orders of magnitude, so the sums
//! run in binary floating point with a wide mantissa.

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::error::{domain, Error, Result};

/// Largest k accepted; beyond this the coefficient growth is not worth the
/// precision cost.
pub const MAX_SERIES_K: u32 = 20;

const PREC: usize = 448;
const RM: RoundingMode = RoundingMode::ToEven;

struct Ctx {
    cc: Consts,
}

impl Ctx {
    fn new() -> Result<Self> {
        let cc = Consts::new().map_err(|e| Error::Construction(format!("extended precision constants: {e:?}")))?;
        Ok(Self { cc })
    }

    fn int(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, PREC)
    }

    fn f(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, PREC)
    }

    fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(PREC, RM, &mut self.cc)
    }
}

fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, PREC, RM)
}

fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, PREC, RM)
}

fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.div(b, PREC, RM)
}

fn to_f64(x: &BigFloat) -> Result<f64> {
    let s = x.to_string();
    s.parse::<f64>()
        .map_err(|_| Error::Construction(format!("cannot convert {s} to f64")))
}

/// Binomial table C(n, j) for n ≤ max.
fn binomials(max: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![1u64]];
    for n in 1..=max {
        let prev = &t[n - 1];
        let mut row = vec![1u64; n + 1];
        for j in 1..n {
            row[j] = prev[j - 1] + prev[j];
        }
        t.push(row);
    }
    t
}

/// I_n(a) for n = 0..=n_max.
fn cos_power_integrals(ctx: &mut Ctx, binom: &[Vec<u64>], a: &BigFloat, n_max: usize) -> Vec<BigFloat> {
    // sin(2j·a) for j = 1..=n_max
    let sines: Vec<BigFloat> = (1..=n_max)
        .map(|j| {
            let arg = mul(&ctx.int(2 * j as u64), a);
            ctx.sin(&arg)
        })
        .collect();
    (0..=n_max)
        .map(|n| {
            let four_n = BigFloat::from_u64(1, PREC).mul(&ctx.int(4).powi(n, PREC, RM), PREC, RM);
            let mut s = div(&mul(&ctx.int(binom[2 * n][n]), a), &four_n);
            if n > 0 {
                let mut osc = BigFloat::from_u64(0, PREC);
                for p in 0..n {
                    let j = n - p;
                    let term = div(&mul(&ctx.int(binom[2 * n][p]), &sines[j - 1]), &ctx.int(2 * j as u64));
                    osc = add(&osc, &term);
                }
                // 2^{1−2n} = 2/4ⁿ
                s = add(&s, &div(&mul(&ctx.int(2), &osc), &four_n));
            }
            s
        })
        .collect()
}

/// h(π/k) for the hyperbolic triangle with side length L, by the finite
/// double/triple sums above.
pub fn h_hyperbolic_series(k: u32, side: f64) -> Result<f64> {
    if k == 0 || k > MAX_SERIES_K {
        return domain(format!("series needs an integer k in 1..={MAX_SERIES_K}, got {k}"));
    }
    if !(side > 0.0 && side.is_finite()) {
        return domain(format!("side length must be positive, got {side}"));
    }
    if k == 1 {
        // φ = π: cos(φ/2) = 0 makes l = 0 and the integrand vanishes.
        return Ok(0.0);
    }
    let mut ctx = Ctx::new()?;
    let ku = k as usize;
    let binom = binomials(2 * ku);

    let pi = ctx.cc.pi(PREC, RM);
    let half_phi = div(&pi, &ctx.int(2 * k as u64));
    let cos_half = half_phi.cos(PREC, RM, &mut ctx.cc);
    let sin_half = ctx.sin(&half_phi);
    let tanh_l = ctx.f(side).tanh(PREC, RM, &mut ctx.cc);
    let l = mul(&cos_half, &tanh_l);
    let l2 = mul(&l, &l);
    let one = ctx.int(1);
    let m2 = one.sub(&l2, PREC, RM);
    let m = m2.sqrt(PREC, RM);
    let theta_m = div(&sin_half, &m).asin(PREC, RM, &mut ctx.cc);

    let i_half = cos_power_integrals(&mut ctx, &binom, &half_phi, ku);
    let i_theta = cos_power_integrals(&mut ctx, &binom, &theta_m, ku);
    let inv_l2 = div(&one, &l2);
    let inv_l2_pow: Vec<BigFloat> = (0..=ku).map(|j| inv_l2.powi(j, PREC, RM)).collect();
    let m2_pow: Vec<BigFloat> = (0..=ku).map(|j| m2.powi(j, PREC, RM)).collect();

    let signed = |v: BigFloat, negative: bool| if negative { v.neg() } else { v };

    let mut s1 = BigFloat::from_u64(0, PREC);
    for s in 0..=ku {
        for r in 0..=(ku - s) {
            let c = binom[2 * ku][2 * s] * binom[ku - s][r];
            let term = mul(&mul(&ctx.int(c), &inv_l2_pow[s + r]), &i_half[s + r]);
            s1 = add(&s1, &signed(term, (ku - s - r) % 2 == 1));
        }
    }

    let mut s2 = BigFloat::from_u64(0, PREC);
    for s in 0..ku {
        for t in 0..=s {
            for r in 0..=t {
                let c = binom[2 * ku][2 * s + 1] * binom[s][t] * binom[t][r];
                let term = mul(&mul(&ctx.int(c), &m2_pow[ku - s + t]), &i_theta[ku - s + r]);
                s2 = add(&s2, &signed(term, (t + r) % 2 == 1));
            }
        }
    }
    let s2 = mul(&s2, &inv_l2_pow[ku]).neg();
    to_f64(&add(&s1, &s2))
}

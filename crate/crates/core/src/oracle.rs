//! Character-free oracles for representation varieties.
//!
//! Finite groups: naive enumeration of every tuple, checking a relator word.
//! No class-algebra shortcuts are used; agreement with the character sums in
//! [`crate::volumes`] is therefore an independent check.
//!
//! Continuous groups: Monte-Carlo expectation of a class function pushed
//! forward along a word map.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::group::{FiniteGroup, GroupElement, GroupModel};
use crate::mc::{self, McEstimate};

/// Default cap on the number of tuples scanned.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Word appended after the commutator product ∏ᵢ[aᵢ, bᵢ].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// Nothing: ∏[aᵢ,bᵢ] = s.
    None,
    /// One cross-cap: ∏[aᵢ,bᵢ]·g² = s.
    Square,
    /// Klein handle: ∏[aᵢ,bᵢ]·g₁g₂g₁⁻¹g₂ = s.
    Klein,
    /// Two cross-caps: ∏[aᵢ,bᵢ]·g₁²g₂² = s.
    TwoSquares,
    /// Second boundary with holonomy s₂ (an element index): ∏[aᵢ,bᵢ]·t s₂⁻¹ t⁻¹ = s,
    /// i.e. ∏[aᵢ,bᵢ] = s·t s₂ t⁻¹.
    Boundary(usize),
}

impl Tail {
    fn arity(self) -> usize {
        match self {
            Tail::None => 0,
            Tail::Square | Tail::Boundary(_) => 1,
            Tail::Klein | Tail::TwoSquares => 2,
        }
    }

    fn eval(self, g: &FiniteGroup, x: &[usize]) -> usize {
        match self {
            Tail::None => g.identity(),
            Tail::Square => g.mul(x[0], x[0]),
            Tail::Klein => {
                let (a, b) = (x[0], x[1]);
                g.mul(g.mul(g.mul(a, b), g.inv(a)), b)
            }
            Tail::TwoSquares => g.mul(g.mul(x[0], x[0]), g.mul(x[1], x[1])),
            Tail::Boundary(s2) => g.conjugate(x[0], g.inv(s2)),
        }
    }

    fn describe(self, g: &FiniteGroup) -> String {
        match self {
            Tail::None => String::new(),
            Tail::Square => "·g²".into(),
            Tail::Klein => "·g₁g₂g₁⁻¹g₂".into(),
            Tail::TwoSquares => "·g₁²g₂²".into(),
            Tail::Boundary(s2) => format!("·t({})⁻¹t⁻¹", g.element_label(s2)),
        }
    }
}

/// Descriptor of the counted word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub genus: u32,
    pub tail: Tail,
    pub target: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub count: u64,
    pub tuples_scanned: u64,
    pub relator: Relator,
}

fn finite_index(model: &GroupModel, s: &GroupElement) -> Result<usize> {
    model.validate(s)?;
    match s {
        GroupElement::Finite(i) => Ok(*i),
        _ => domain("expected a finite-group element"),
    }
}

/// Count tuples (a₁,b₁,…,a_ℓ,b_ℓ, tail variables) with
/// ∏[aᵢ,bᵢ]·tail = s, scanning at most `budget` tuples.
pub fn count_word(model: &GroupModel, genus: u32, tail: Tail, s: &GroupElement, budget: u64) -> Result<CountResult> {
    let g = model.require_finite("tuple enumeration")?;
    let target = finite_index(model, s)?;
    if let Tail::Boundary(s2) = tail {
        if s2 >= g.order() {
            return domain("second boundary holonomy out of range");
        }
    }
    let len = 2 * genus as usize + tail.arity();
    let n = g.order();
    let needed = (n as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::Budget { needed, budget });
    }
    let total = needed as u64;
    let comm_len = 2 * genus as usize;

    let scan = |first: Option<usize>| -> u64 {
        // Odometer over the remaining slots; the first slot is pinned when
        // the scan is partitioned across workers.
        let free = if first.is_some() { len - 1 } else { len };
        let mut x = vec![0usize; len];
        if let Some(f) = first {
            x[0] = f;
        }
        let offset = len - free;
        let mut hits = 0u64;
        loop {
            let mut p = g.identity();
            for i in 0..genus as usize {
                p = g.mul(p, g.commutator(x[2 * i], x[2 * i + 1]));
            }
            p = g.mul(p, tail.eval(g, &x[comm_len..]));
            if p == target {
                hits += 1;
            }
            let mut i = len;
            loop {
                if i == offset {
                    return hits;
                }
                i -= 1;
                x[i] += 1;
                if x[i] < n {
                    break;
                }
                x[i] = 0;
            }
        }
    };
    let count = if len == 0 {
        scan(None)
    } else {
        (0..n).into_par_iter().map(|f| scan(Some(f))).sum()
    };

    let mut word: String = (1..=genus).map(|i| format!("[a{i},b{i}]")).collect();
    word.push_str(&tail.describe(g));
    if word.is_empty() {
        word.push('e');
    }
    Ok(CountResult {
        count,
        tuples_scanned: total,
        relator: Relator {
            genus,
            tail,
            target: g.element_label(target).to_string(),
            word,
        },
    })
}

/// #{(a₁..b_ℓ): ∏[aᵢ,bᵢ] = s}.
pub fn count_surface_tuples(model: &GroupModel, genus: u32, s: &GroupElement) -> Result<CountResult> {
    count_word(model, genus, Tail::None, s, DEFAULT_BUDGET)
}

/// #{g: g² = s}.
pub fn count_square_roots(model: &GroupModel, s: &GroupElement) -> Result<CountResult> {
    count_word(model, 0, Tail::Square, s, DEFAULT_BUDGET)
}

/// #{(g₁,g₂): g₁g₂g₁⁻¹g₂ = s}.
pub fn count_klein_pairs(model: &GroupModel, s: &GroupElement) -> Result<CountResult> {
    count_word(model, 0, Tail::Klein, s, DEFAULT_BUDGET)
}

/// #{(a₁..b_ℓ, g): ∏[aᵢ,bᵢ]·g² = s}.
pub fn count_crosscap_tuples(model: &GroupModel, genus: u32, s: &GroupElement) -> Result<CountResult> {
    count_word(model, genus, Tail::Square, s, DEFAULT_BUDGET)
}

/// #{(a₁..b_ℓ, g₁, g₂): ∏[aᵢ,bᵢ]·g₁g₂g₁⁻¹g₂ = s}.
pub fn count_klein_tuples(model: &GroupModel, genus: u32, s: &GroupElement) -> Result<CountResult> {
    count_word(model, genus, Tail::Klein, s, DEFAULT_BUDGET)
}

/// #{(a₁..b_ℓ, g₁, g₂): ∏[aᵢ,bᵢ]·g₁²g₂² = s}.
pub fn count_two_crosscap_tuples(model: &GroupModel, genus: u32, s: &GroupElement) -> Result<CountResult> {
    count_word(model, genus, Tail::TwoSquares, s, DEFAULT_BUDGET)
}

/// #{(a₁..b_ℓ, t): ∏[aᵢ,bᵢ] = s₁·t s₂ t⁻¹}.
pub fn count_two_boundary_tuples(
    model: &GroupModel,
    genus: u32,
    s1: &GroupElement,
    s2: &GroupElement,
) -> Result<CountResult> {
    let s2 = finite_index(model, s2)?;
    count_word(model, genus, Tail::Boundary(s2), s1, DEFAULT_BUDGET)
}

/// Word map whose Haar pushforward is sampled.
#[derive(Debug, Clone, PartialEq)]
pub enum PushforwardWord {
    /// (g₁, g₂) ↦ h·g₁g₂g₁⁻¹g₂⁻¹.
    CommutatorH(GroupElement),
    /// g ↦ g².
    Square,
    /// (g₁, g₂) ↦ g₁g₂g₁⁻¹g₂.
    Klein,
}

/// Minimum sample count accepted by [`mc_pushforward_expect`].
pub const MIN_SAMPLES: u64 = 1_000;

/// Monte-Carlo estimate of E[f(word(g…))] with gᵢ Haar-distributed.
pub fn mc_pushforward_expect<F>(
    model: &GroupModel,
    word: &PushforwardWord,
    f: F,
    samples: u64,
    seed: u64,
) -> Result<McEstimate>
where
    F: Fn(&GroupElement) -> f64 + Sync,
{
    if samples < MIN_SAMPLES {
        return domain(format!("at least {MIN_SAMPLES} samples required, got {samples}"));
    }
    if let PushforwardWord::CommutatorH(h) = word {
        model.validate(h)?;
    }
    let mul = |a: &GroupElement, b: &GroupElement| model.mul(a, b).expect("elements of one group");
    let inv = |a: &GroupElement| model.inv(a).expect("element of the group");
    Ok(mc::estimate(samples, seed, |rng| {
        let image = match word {
            PushforwardWord::Square => {
                let g = model.sample_haar(rng);
                mul(&g, &g)
            }
            PushforwardWord::Klein => {
                let a = model.sample_haar(rng);
                let b = model.sample_haar(rng);
                mul(&mul(&mul(&a, &b), &inv(&a)), &b)
            }
            PushforwardWord::CommutatorH(h) => {
                let a = model.sample_haar(rng);
                let b = model.sample_haar(rng);
                let c = mul(&mul(&a, &b), &mul(&inv(&a), &inv(&b)));
                mul(h, &c)
            }
        };
        f(&image)
    }))
}

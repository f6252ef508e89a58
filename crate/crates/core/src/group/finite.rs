//! Finite groups as Cayley tables, with character tables supplied as closed
//! formulas on a concrete element representation and validated on
//! construction.

use std::collections::HashMap;
use std::hash::Hash;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for the construction-time character checks.
const TABLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyClass {
    pub label: String,
    pub representative: usize,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    identity: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    element_labels: Vec<String>,
    /// `characters[irrep][class]`, irreps sorted by (dim, construction index).
    characters: Vec<Vec<Complex64>>,
    dims: Vec<u64>,
}

/// One character given as a formula on the concrete elements.
pub type CharacterFn<'a, T> = Box<dyn Fn(&T) -> Complex64 + 'a>;

impl FiniteGroup {
    /// Build from an explicit element list, a multiplication, per-element
    /// labels and the full set of irreducible characters. Fails unless the
    /// characters are class functions, orthonormal, and as many as classes.
    pub fn from_elements<T, M, L>(
        name: &str,
        elements: Vec<T>,
        mul: M,
        class_label: L,
        characters: Vec<CharacterFn<'_, T>>,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let order = elements.len();
        if order == 0 {
            return Err(Error::Construction(format!("{name}: empty element list")));
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        if index.len() != order {
            return Err(Error::Construction(format!("{name}: duplicate elements")));
        }

        let mut table = vec![0usize; order * order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = mul(a, b);
                table[i * order + j] = *index
                    .get(&c)
                    .ok_or_else(|| Error::Construction(format!("{name}: not closed under multiplication")))?;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] == g && table[g * order + e] == g))
            .ok_or_else(|| Error::Construction(format!("{name}: no identity")))?;

        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            let invs: Vec<usize> = (0..order).filter(|&h| table[g * order + h] == identity).collect();
            if invs.len() != 1 || table[invs[0] * order + g] != identity {
                return Err(Error::Construction(format!("{name}: element {g} lacks a unique inverse")));
            }
            inverse[g] = invs[0];
        }

        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    if table[ab * order + c] != table[a * order + table[b * order + c]] {
                        return Err(Error::Construction(format!("{name}: multiplication not associative")));
                    }
                }
            }
        }

        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for g in 0..order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut size = 0;
            for k in 0..order {
                let c = table[table[k * order + g] * order + inverse[k]];
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    size += 1;
                }
            }
            classes.push(ConjugacyClass {
                label: class_label(&elements[g]),
                representative: g,
                size,
            });
        }
        let mut seen = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            if let Some(prev) = seen.insert(c.label.clone(), i) {
                return Err(Error::Construction(format!(
                    "{name}: classes {prev} and {i} share label {:?}",
                    c.label
                )));
            }
        }

        if characters.len() != classes.len() {
            return Err(Error::Construction(format!(
                "{name}: {} characters for {} classes",
                characters.len(),
                classes.len()
            )));
        }

        let mut rows = Vec::with_capacity(characters.len());
        for (ci, chi) in characters.iter().enumerate() {
            let values: Vec<Complex64> = elements.iter().map(|g| chi(g)).collect();
            for g in 0..order {
                let rep = classes[class_of[g]].representative;
                if (values[g] - values[rep]).norm() > TABLE_TOL {
                    return Err(Error::Construction(format!("{name}: character {ci} is not a class function")));
                }
            }
            let dim = values[identity].re.round();
            if dim < 1.0 || (values[identity] - Complex64::new(dim, 0.0)).norm() > TABLE_TOL {
                return Err(Error::Construction(format!("{name}: character {ci} has bad degree")));
            }
            let row: Vec<Complex64> = classes.iter().map(|c| values[c.representative]).collect();
            rows.push((dim as u64, ci, row));
        }
        rows.sort_by_key(|(dim, ci, _)| (*dim, *ci));

        let group = Self {
            name: name.to_string(),
            order,
            identity,
            table,
            inverse,
            class_of,
            element_labels: elements.iter().map(&class_label).collect(),
            dims: rows.iter().map(|r| r.0).collect(),
            characters: rows.into_iter().map(|r| r.2).collect(),
            classes,
        };
        group.validate_orthogonality()?;
        Ok(group)
    }

    fn validate_orthogonality(&self) -> Result<()> {
        let n = self.characters.len();
        for a in 0..n {
            for b in 0..n {
                let inner: Complex64 = self
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(c, cl)| self.characters[a][c] * self.characters[b][c].conj() * cl.size as f64)
                    .sum::<Complex64>()
                    / self.order as f64;
                let expect = if a == b { 1.0 } else { 0.0 };
                if (inner - expect).norm() > 1e-10 {
                    return Err(Error::Construction(format!(
                        "{}: characters {a},{b} fail orthonormality ({inner})",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, k: usize, g: usize) -> usize {
        self.mul(self.mul(k, g), self.inv(k))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_by_label(&self, label: &str) -> Option<&ConjugacyClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    pub fn element_label(&self, g: usize) -> &str {
        &self.element_labels[g]
    }

    pub fn irrep_count(&self) -> usize {
        self.characters.len()
    }

    pub fn dim(&self, irrep: usize) -> u64 {
        self.dims[irrep]
    }

    pub fn character(&self, irrep: usize, g: usize) -> Complex64 {
        self.characters[irrep][self.class_of[g]]
    }

    /// Exact Frobenius–Schur indicator: the average of χ(g²).
    pub fn frobenius_schur(&self, irrep: usize) -> Complex64 {
        (0..self.order)
            .map(|g| self.character(irrep, self.mul(g, g)))
            .sum::<Complex64>()
            / self.order as f64
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }
}

// ---------------------------------------------------------------------------
// Shipped groups
// ---------------------------------------------------------------------------

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Cyclic group Z/n, written additively.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Construction("Z/0 is not finite".into()));
    }
    let chars: Vec<CharacterFn<'_, usize>> = (0..n)
        .map(|j| {
            Box::new(move |g: &usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j * g % n) as f64 / n as f64))
                as CharacterFn<'_, usize>
        })
        .collect();
    FiniteGroup::from_elements(
        &format!("z{n}"),
        (0..n).collect(),
        |a, b| (a + b) % n,
        |g| if *g == 0 { "e".to_string() } else { g.to_string() },
        chars,
    )
}

type Perm3 = [u8; 3];

fn perm_sign(p: &Perm3) -> f64 {
    let mut inversions = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn fixed_points(p: &Perm3) -> usize {
    (0..3).filter(|&i| p[i] as usize == i).count()
}

/// Symmetric group on three letters.
pub fn s3() -> Result<FiniteGroup> {
    let elements: Vec<Perm3> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let chars: Vec<CharacterFn<'_, Perm3>> = vec![
        Box::new(|_| real(1.0)),
        Box::new(|p| real(perm_sign(p))),
        // Standard representation: permutation character minus trivial.
        Box::new(|p| real(fixed_points(p) as f64 - 1.0)),
    ];
    FiniteGroup::from_elements(
        "s3",
        elements,
        |a, b| [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]],
        |p| match fixed_points(p) {
            3 => "e".into(),
            1 => "transposition".into(),
            _ => "3cycle".into(),
        },
        chars,
    )
}

type Mat2 = [[i8; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0i8; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn is_diagonal(m: &Mat2) -> bool {
    m[0][1] == 0 && m[1][0] == 0
}

/// Dihedral group of order 8, as the signed 2×2 permutation matrices.
pub fn d4() -> Result<FiniteGroup> {
    let mut elements = Vec::new();
    for &(a, b) in &[(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        elements.push([[a, 0], [0, b]]);
        elements.push([[0, a], [b, 0]]);
    }
    let det = |m: &Mat2| (m[0][0] * m[1][1] - m[0][1] * m[1][0]) as f64;
    let diag_sign = |m: &Mat2| if is_diagonal(m) { 1.0 } else { -1.0 };
    let chars: Vec<CharacterFn<'_, Mat2>> = vec![
        Box::new(|_| real(1.0)),
        Box::new(move |m| real(det(m))),
        Box::new(move |m| real(diag_sign(m))),
        Box::new(move |m| real(det(m) * diag_sign(m))),
        Box::new(|m| real((m[0][0] + m[1][1]) as f64)),
    ];
    FiniteGroup::from_elements(
        "d4",
        elements,
        mat_mul,
        |m| {
            let trace = m[0][0] + m[1][1];
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            match (is_diagonal(m), det, trace) {
                (true, 1, 2) => "e".into(),
                (true, 1, -2) => "r2".into(),
                (false, 1, _) => "r".into(),
                (true, -1, _) => "s".into(),
                _ => "d".into(),
            }
        },
        chars,
    )
}

type Quat = [i8; 4];

fn quat_mul(a: &Quat, b: &Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// Quaternion group {±1, ±i, ±j, ±k}.
pub fn q8() -> Result<FiniteGroup> {
    let mut elements = Vec::new();
    for axis in 0..4 {
        for sign in [1i8, -1] {
            let mut q = [0i8; 4];
            q[axis] = sign;
            elements.push(q);
        }
    }
    // Image in Q8/{±1} ≅ (Z/2)²: i ↦ (1,0), j ↦ (0,1), k ↦ (1,1).
    let klein = |q: &Quat| -> (u8, u8) {
        match (q[1] != 0, q[2] != 0, q[3] != 0) {
            (true, _, _) => (1, 0),
            (_, true, _) => (0, 1),
            (_, _, true) => (1, 1),
            _ => (0, 0),
        }
    };
    let lin = move |a: u8, b: u8| {
        move |q: &Quat| {
            let (x, y) = klein(q);
            real(if (a * x + b * y) % 2 == 0 { 1.0 } else { -1.0 })
        }
    };
    let chars: Vec<CharacterFn<'_, Quat>> = vec![
        Box::new(lin(0, 0)),
        Box::new(lin(1, 0)),
        Box::new(lin(0, 1)),
        Box::new(lin(1, 1)),
        // Restriction of the defining SU(2) representation: trace = 2·Re q.
        Box::new(|q| real(2.0 * q[0] as f64)),
    ];
    FiniteGroup::from_elements(
        "q8",
        elements,
        quat_mul,
        |q| match (q[0], q[1] != 0, q[2] != 0) {
            (1, _, _) => "e".into(),
            (-1, _, _) => "-1".into(),
            (_, true, _) => "i".into(),
            (_, _, true) => "j".into(),
            _ => "k".into(),
        },
        chars,
    )
}

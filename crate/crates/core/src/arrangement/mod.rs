//! Arrangements of hyperplanes through the origin, their rank-2 lattice
//! and the numerical invariants derived from it.

pub mod catalog;
pub mod eisenstein;
pub mod lattice;
pub mod parse;

pub use catalog::{catalog_lookup, CatalogEntry, CATALOG_NAMES};
pub use eisenstein::Eis;
pub use lattice::{mobius_poincare, Flat, Lattice, LatticeSummary, Shape};
pub use parse::{parse_arrangement, parse_polynomial};

use crate::error::{Error, Result};
use eisenstein::proportional;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// An ordered list of linear forms in `dim` variables. All indices used
/// elsewhere refer to this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<Vec<Eis>>,
    labels: Vec<String>,
}

impl Arrangement {
    pub fn new(forms: Vec<Vec<Eis>>) -> Result<Self> {
        let labels = forms.iter().map(|f| form_to_string(f)).collect();
        Self::with_labels(forms, labels)
    }

    pub fn with_labels(forms: Vec<Vec<Eis>>, labels: Vec<String>) -> Result<Self> {
        let dim = forms.first().map_or(0, |f| f.len());
        if forms.is_empty() {
            return Err(Error::Parse("an arrangement needs at least one form".into()));
        }
        if labels.len() != forms.len() {
            return Err(Error::Parse("one label per form required".into()));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.len() != dim {
                return Err(Error::DimensionMismatch { index: i, found: f.len(), expected: dim });
            }
            if f.iter().all(|c| c.is_zero()) {
                return Err(Error::ZeroForm(i));
            }
            if let Some(j) = (0..i).find(|&j| proportional(&forms[j], f)) {
                return Err(Error::DuplicateHyperplane(j, i));
            }
        }
        Ok(Arrangement { dim, forms, labels })
    }

    /// Build from integer coefficient rows.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&c| Eis::from(c)).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.forms.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[Vec<Eis>] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &[Eis] {
        &self.forms[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_real(&self) -> bool {
        self.forms.iter().flatten().all(|c| c.is_real())
    }

    /// Dimension of the span of the forms.
    pub fn rank(&self) -> usize {
        lattice::greedy_span(&self.forms).len()
    }

    pub fn delete_hyperplane(&self, h: usize) -> Result<Self> {
        if h >= self.n() {
            return Err(Error::IndexOutOfRange(h));
        }
        if self.n() < 2 {
            return Err(Error::Precondition("cannot delete the only hyperplane".into()));
        }
        let rest: Vec<usize> = (0..self.n()).filter(|&i| i != h).collect();
        self.sub_arrangement(&rest)
    }

    /// Restrict to the hyperplanes with the given indices, in that order.
    pub fn sub_arrangement(&self, idx: &[usize]) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        Ok(Arrangement {
            dim: self.dim,
            forms: idx.iter().map(|&i| self.forms[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
        })
    }

    /// Reorder hyperplanes: position k of the result is hyperplane perm[k].
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n()];
        if perm.len() != self.n() || perm.iter().any(|&i| i >= self.n() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Precondition("not a permutation".into()));
        }
        self.sub_arrangement(perm)
    }

    /// Apply a linear change of coordinates: each form f becomes f·T.
    pub fn transform(&self, t: &[Vec<Eis>]) -> Result<Self> {
        let forms = self
            .forms
            .iter()
            .map(|f| (0..t[0].len()).map(|j| f.iter().zip(t).fold(Eis::ZERO, |acc, (&c, row)| acc + c * row[j])).collect())
            .collect();
        Arrangement::with_labels(forms, self.labels.clone())
    }

    /// Deterministic generic plane section of an arrangement in dimension
    /// above three: restrict to a seeded pseudorandom 3-dimensional
    /// subspace, re-drawn until the rank-2 flats are preserved.
    pub fn generic_section(&self, seed: u64) -> Result<Self> {
        if self.dim <= 3 {
            return Ok(self.clone());
        }
        let target = lattice::flat_sets(&self.forms);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let s: Vec<Vec<Eis>> = (0..self.dim)
                .map(|_| (0..3).map(|_| Eis::from(rng.gen_range(-9..=9))).collect())
                .collect();
            let Ok(cut) = self.transform(&s) else { continue };
            if lattice::flat_sets(&cut.forms) == target {
                return Ok(cut);
            }
        }
        Err(Error::Precondition("no generic section found".into()))
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, form) in self.forms.iter().enumerate() {
            write!(f, "({})", form_to_string(form))?;
            if i + 1 < self.n() {
                write!(f, "·")?;
            }
        }
        Ok(())
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];

/// Render a linear form such as `x-y+2z` (variables z0.. above three).
pub fn form_to_string(form: &[Eis]) -> String {
    let name = |i: usize| if form.len() <= 3 { VARS[i].to_string() } else { format!("z{i}") };
    let mut s = String::new();
    for (i, &c) in form.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = if c == Eis::ONE {
            name(i)
        } else if c == -Eis::ONE {
            format!("-{}", name(i))
        } else if c.is_real() {
            format!("{}{}", c.a, name(i))
        } else {
            format!("{c}{}", name(i))
        };
        if !s.is_empty() && !body.starts_with('-') {
            s.push('+');
        }
        s.push_str(&body);
    }
    s
}

/// Positive integer weights on the hyperplanes, with gcd one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicity(Vec<u64>);

impl Multiplicity {
    pub fn new(m: Vec<u64>, n: usize) -> Result<Self> {
        if m.len() != n {
            return Err(Error::Multiplicity(format!("expected {n} entries, got {}", m.len())));
        }
        if m.contains(&0) {
            return Err(Error::Multiplicity("entries must be positive".into()));
        }
        let g = m.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::NonPrimitiveMultiplicity(g));
        }
        Ok(Multiplicity(m))
    }

    pub fn ones(n: usize) -> Self {
        Multiplicity(vec![1; n])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// N = Σ m_H, the degree of the defining polynomial.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.iter().all(|&x| x == 1)
    }
}

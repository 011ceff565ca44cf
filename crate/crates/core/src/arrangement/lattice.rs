use super::eisenstein::{coplanar, cross, dot, Eis};
use super::Arrangement;
use crate::error::{Error, Result};
use crate::scalar::field::QOmega;
use crate::scalar::linalg::{independent_rows, Matrix};

/// A rank-2 flat: for a line arrangement, a point where two or more lines
/// meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub id: usize,
    /// Sorted indices of the hyperplanes through the flat.
    pub lines: Vec<usize>,
    pub mobius: i64,
    /// Projective coordinates (only for planes in three variables).
    pub point: Option<[Eis; 3]>,
}

impl Flat {
    pub fn size(&self) -> usize {
        self.lines.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.lines.binary_search(&h).is_ok()
    }
}

/// Indices of a maximal independent subset of the forms, chosen greedily.
pub fn greedy_span(forms: &[Vec<Eis>]) -> Vec<usize> {
    let cols = forms.first().map_or(0, |r| r.len());
    let rows = forms
        .iter()
        .map(|r| r.iter().map(|c| QOmega::from_parts(c.a, c.b)).collect())
        .collect();
    independent_rows(&QOmega, &Matrix::new(rows, cols))
}

/// The hyperplane sets of all rank-2 flats in canonical order, for forms
/// in any number of variables.
pub fn flat_sets(forms: &[Vec<Eis>]) -> Vec<Vec<usize>> {
    let n = forms.len();
    let mut assigned = vec![vec![false; n]; n];
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if assigned[i][j] {
                continue;
            }
            let members: Vec<usize> = (0..n)
                .filter(|&k| k == i || k == j || coplanar(&forms[i], &forms[j], &forms[k]))
                .collect();
            for &a in &members {
                for &b in &members {
                    assigned[a][b] = true;
                }
            }
            out.push(members);
        }
    }
    sort_flats(&mut out);
    out
}

fn sort_flats(sets: &mut [Vec<usize>]) {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
}

/// Rank-2 part of the intersection lattice.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    flats: Vec<Flat>,
    /// flat id for each unordered pair, row-major n×n (diagonal unused)
    pair_flat: Vec<usize>,
}

impl Lattice {
    /// Flats of an arrangement in two or three variables.
    pub fn new(a: &Arrangement) -> Result<Self> {
        let n = a.n();
        let sets: Vec<(Vec<usize>, Option<[Eis; 3]>)> = match a.dim() {
            3 => {
                let mut assigned = vec![false; n * n];
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if assigned[i * n + j] {
                            continue;
                        }
                        let p = cross(a.form(i), a.form(j));
                        let members: Vec<usize> =
                            (0..n).filter(|&k| dot(a.form(k), &p).is_zero()).collect();
                        for &x in &members {
                            for &y in &members {
                                assigned[x * n + y] = true;
                            }
                        }
                        out.push((members, Some(p)));
                    }
                }
                out
            }
            1 | 2 if n >= 2 => vec![((0..n).collect(), None)],
            1 | 2 => Vec::new(),
            d => return Err(Error::UnsupportedRank(d)),
        };
        let mut sets = sets;
        sets.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        let flats: Vec<Flat> = sets
            .into_iter()
            .enumerate()
            .map(|(id, (lines, point))| Flat { id, mobius: lines.len() as i64 - 1, lines, point })
            .collect();
        let mut pair_flat = vec![usize::MAX; n * n];
        for fl in &flats {
            for &x in &fl.lines {
                for &y in &fl.lines {
                    if x != y {
                        pair_flat[x * n + y] = fl.id;
                    }
                }
            }
        }
        Ok(Lattice { n, flats, pair_flat })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Id of the flat containing hyperplanes i ≠ j.
    pub fn flat_of(&self, i: usize, j: usize) -> usize {
        debug_assert_ne!(i, j);
        self.pair_flat[i * self.n + j]
    }

    /// Flats of multiplicity at least three.
    pub fn multiple_points(&self) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(|f| f.size() >= 3)
    }

    /// Ids of the flats containing hyperplane h.
    pub fn flats_through(&self, h: usize) -> Vec<usize> {
        self.flats.iter().filter(|f| f.contains(h)).map(|f| f.id).collect()
    }

    /// Σ μ(X) over rank-2 flats, which is b₂(M).
    pub fn b2(&self) -> i64 {
        self.flats.iter().map(|f| f.mobius).sum()
    }

    /// Sizes of the flats, largest first.
    pub fn flat_sizes(&self) -> Vec<usize> {
        self.flats.iter().map(Flat::size).collect()
    }

    pub fn shape(&self) -> Shape {
        let n = self.n;
        if n <= 1 || self.flats.iter().any(|f| f.size() == n) {
            Shape::Pencil
        } else if n == 3 || self.flats.iter().filter(|f| f.size() == n - 1).count() == 1 {
            // three lines in general position also count
            Shape::NearPencil
        } else if self.flats.iter().all(|f| f.size() == 2) {
            Shape::GenericPosition
        } else {
            Shape::Other
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Pencil,
    NearPencil,
    GenericPosition,
    Other,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Pencil => "pencil",
            Shape::NearPencil => "near-pencil",
            Shape::GenericPosition => "generic-position",
            Shape::Other => "other",
        }
    }
}

/// Möbius and Poincaré data of a central arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSummary {
    pub n: usize,
    pub rank: usize,
    pub essential: bool,
    /// μ of the center when it has rank three.
    pub mu_center: Option<i64>,
    /// Coefficients of Poin(M, t), lowest degree first.
    pub poincare_m: Vec<i64>,
    /// Coefficients of Poin(U, t) = Poin(M, t) / (1 + t).
    pub poincare_u: Vec<i64>,
    pub euler_u: i64,
}

impl LatticeSummary {
    pub fn b1_u(&self) -> i64 {
        self.poincare_u.get(1).copied().unwrap_or(0)
    }

    pub fn b2_u(&self) -> i64 {
        self.poincare_u.get(2).copied().unwrap_or(0)
    }
}

pub fn mobius_poincare(a: &Arrangement, lat: &Lattice) -> LatticeSummary {
    let n = a.n() as i64;
    let rank = a.rank();
    let b2 = lat.b2();
    let (poincare_m, mu_center) = match rank {
        1 => (vec![1, 1], None),
        2 => (vec![1, n, n - 1], None),
        _ => {
            let b3 = 1 - n + b2;
            (vec![1, n, b2, b3], Some(-b3))
        }
    };
    // divide by 1 + t
    let mut poincare_u = Vec::with_capacity(poincare_m.len() - 1);
    let mut carry = 0;
    for &c in &poincare_m[..poincare_m.len() - 1] {
        carry = c - carry;
        poincare_u.push(carry);
    }
    let euler_u = poincare_u.iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -c }).sum();
    LatticeSummary { n: a.n(), rank, essential: rank == a.dim(), mu_center, poincare_m, poincare_u, euler_u }
}

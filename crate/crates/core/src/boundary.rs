//! Boundary manifold of a line arrangement: the plumbing graph, the
//! doubled cohomology ring, a commutator-relators presentation of π₁,
//! the Alexander polynomial, and the boundary of the Milnor fiber.

use crate::arrangement::{mobius_poincare, Arrangement, Lattice, Shape};
use crate::braid::{commutator, conjugate, inverse, letter_gen, reduce, GroupPresentation, PresentationKind, Word};
use crate::error::{Error, Result};
use crate::jump::LaurentPoly;
use crate::milnor::{abelian_cover_monodromy, integral_cover_homology, CyclicCoverSpec, IntegralH1};
use crate::os::OsDegree2;
use crate::scalar::charpoly::FactoredCharPoly;
use crate::scalar::field::{divisors, Field, Fq};
use crate::scalar::linalg::{coordinates_in_rref, rank, rref, Matrix};
use crate::scalar::roots::find_cyclotomic_prime;
use num_integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Line(usize),
    /// A point of multiplicity at least three.
    Point { flat: usize, lines: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Self-intersection of the corresponding curve after blowing up.
    pub weight: i64,
}

impl Vertex {
    /// Lines whose meridians multiply to t_v.
    pub fn support(&self) -> Vec<usize> {
        match &self.kind {
            VertexKind::Line(i) => vec![*i],
            VertexKind::Point { lines, .. } => lines.clone(),
        }
    }
}

/// The weighted plumbing graph. Line vertices come first (by index), then
/// point vertices (by flat id). Edges are oriented i → j for transverse
/// lines i < j and J → i for incidences, listed in lexicographic order of
/// their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryGraph {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub in_tree: Vec<bool>,
    pub root: usize,
}

pub fn build_graph(a: &Arrangement) -> Result<BoundaryGraph> {
    if a.dim() != 3 {
        return Err(Error::UnsupportedRank(a.dim()));
    }
    let lat = Lattice::new(a)?;
    let n = a.n();
    let points: Vec<_> = lat.multiple_points().collect();
    let mut vertices: Vec<Vertex> = (0..n)
        .map(|i| Vertex {
            kind: VertexKind::Line(i),
            weight: 1 - points.iter().filter(|p| p.contains(i)).count() as i64,
        })
        .collect();
    vertices.extend(points.iter().map(|p| Vertex {
        kind: VertexKind::Point { flat: p.id, lines: p.lines.clone() },
        weight: -1,
    }));
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if lat.flats()[lat.flat_of(i, j)].size() == 2 {
                edges.push((i, j));
            }
        }
    }
    for (k, p) in points.iter().enumerate() {
        edges.extend(p.lines.iter().map(|&i| (n + k, i)));
    }
    edges.sort_by_key(|&(u, v)| (u.min(v), u.max(v)));
    let mut g = BoundaryGraph { n, vertices, in_tree: vec![false; edges.len()], edges, root: 0 };
    g.set_root(0)?;
    Ok(g)
}

impl BoundaryGraph {
    /// Rebuild the spanning tree by breadth-first search from `root`,
    /// visiting neighbours in increasing order.
    pub fn set_root(&mut self, root: usize) -> Result<()> {
        if root >= self.vertices.len() {
            return Err(Error::IndexOutOfRange(root));
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut in_tree = vec![false; self.edges.len()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            let mut nbrs: Vec<(usize, usize)> = self.incident(v).map(|(e, w)| (w, e)).collect();
            nbrs.sort();
            for (w, e) in nbrs {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Precondition("boundary graph is disconnected".into()));
        }
        self.root = root;
        self.in_tree = in_tree;
        Ok(())
    }

    /// (edge index, other endpoint) for edges at v.
    fn incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().enumerate().filter_map(move |(e, &(a, b))| {
            if a == v {
                Some((e, b))
            } else if b == v {
                Some((e, a))
            } else {
                None
            }
        })
    }

    pub fn r(&self) -> usize {
        self.vertices.len() - self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident(v).count()
    }

    /// Number of independent cycles.
    pub fn cycle_count(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// Edges outside the tree, in edge order; the k-th carries y_{k+1}.
    pub fn non_tree_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| !self.in_tree[e]).collect()
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.vertices[v].kind {
            VertexKind::Line(i) => format!("v{}", i + 1),
            VertexKind::Point { lines, .. } => {
                format!("v{}", lines.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("_"))
            }
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph boundary {\n");
        for v in 0..self.vertices.len() {
            let _ = writeln!(s, "  {} [weight={}];", self.vertex_name(v), self.vertices[v].weight);
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let style = if self.in_tree[e] { " [style=dashed]" } else { "" };
            let _ = writeln!(s, "  {} -- {}{};", self.vertex_name(a), self.vertex_name(b), style);
        }
        s.push_str("}\n");
        s
    }
}

/// Poin(∂U, t) = Poin(U, t) + t^{2d−1} Poin(U, 1/t) for planes in ℂ^{d+1}.
pub fn poincare_boundary(a: &Arrangement) -> Result<Vec<i64>> {
    let lat = Lattice::new(a)?;
    let pu = mobius_poincare(a, &lat).poincare_u;
    let top = 2 * (a.dim() - 1) - 1;
    let mut out = vec![0i64; top + 1];
    for (k, &c) in pu.iter().enumerate() {
        out[k] += c;
        out[top - k] += c;
    }
    Ok(out)
}

/// Raw and simplified presentations of π₁(∂U).
#[derive(Clone, Debug)]
pub struct WestlundPresentation {
    pub raw: GroupPresentation,
    pub simplified: std::result::Result<GroupPresentation, Error>,
}

/// Presentation from the plumbing graph: generators x_v per vertex and
/// y_k per non-tree edge, the edge commutators [x_i, x_j^{u_ij}], and one
/// product relator ∏_j x_j^{u_ij} per vertex.
pub fn westlund_presentation(g: &BoundaryGraph) -> WestlundPresentation {
    let nv = g.vertices.len();
    let loops = g.non_tree_edges();
    let x = |v: usize| vec![v as i32 + 1];
    // u_ab as a conjugating word; None when a and b are not adjacent
    let u = |a: usize, b: usize| -> Option<Word> {
        let e = g.edges.iter().position(|&(p, q)| (p, q) == (a, b) || (p, q) == (b, a))?;
        Some(match loops.iter().position(|&l| l == e) {
            None => Vec::new(),
            Some(k) => {
                let y = (nv + k) as i32 + 1;
                if g.edges[e] == (a, b) {
                    vec![y]
                } else {
                    vec![-y]
                }
            }
        })
    };
    let mut relators: Vec<Word> = Vec::new();
    let mut tree_commutators = Vec::new();
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if g.in_tree[e] {
            tree_commutators.push(relators.len());
        }
        relators.push(commutator(&x(a), &conjugate(&x(b), &u(a, b).expect("edge"))));
    }
    for i in 0..nv {
        let mut w = Word::new();
        for j in 0..nv {
            if j == i {
                let wi = g.vertices[i].weight;
                let letter = if wi >= 0 { i as i32 + 1 } else { -(i as i32 + 1) };
                w.extend(std::iter::repeat_n(letter, wi.unsigned_abs() as usize));
            } else if let Some(c) = u(i, j) {
                w.extend(conjugate(&x(j), &c));
            }
        }
        relators.push(reduce(&w));
    }
    let mut names: Vec<String> = (0..nv).map(|v| format!("x{}", v + 1)).collect();
    names.extend((0..loops.len()).map(|k| format!("y{}", k + 1)));
    let raw = GroupPresentation { names, relators, kind: PresentationKind::Boundary, boundary_word: None };
    let simplified = simplify(g, &raw, &tree_commutators);
    WestlundPresentation { raw, simplified }
}

/// Drop the tree-edge commutators (each follows from the product relator
/// at its lower endpoint together with the edges further from the root),
/// then eliminate the point generators and x_n by Tietze moves.
fn simplify(g: &BoundaryGraph, raw: &GroupPresentation, tree_commutators: &[usize]) -> Result<GroupPresentation> {
    let nv = g.vertices.len();
    let edge_count = g.edges.len();
    let mut rels: Vec<(Option<usize>, Word)> = raw
        .relators
        .iter()
        .enumerate()
        .filter(|(i, _)| !tree_commutators.contains(i))
        .map(|(i, r)| (i.checked_sub(edge_count), r.clone()))
        .collect();
    let mut targets: Vec<usize> = (g.n..nv).collect();
    if g.n > 0 {
        targets.push(g.n - 1);
    }
    for t in targets {
        let letter = t as i32 + 1;
        let occurs = |w: &Word| w.iter().filter(|l| l.abs() == letter).count();
        let pick = rels
            .iter()
            .position(|(v, w)| *v == Some(t) && occurs(w) == 1)
            .or_else(|| rels.iter().position(|(_, w)| occurs(w) == 1))
            .ok_or_else(|| Error::SimplificationFailure(format!("no relator solves for x{}", t + 1)))?;
        let (_, w) = rels.remove(pick);
        let at = w.iter().position(|l| l.abs() == letter).expect("occurs");
        let (before, after) = (&w[..at], &w[at + 1..]);
        let value = if w[at] > 0 {
            reduce(&[inverse(before), inverse(after)].concat())
        } else {
            reduce(&[after, before].concat())
        };
        let mut images: Vec<Word> = (0..raw.gens()).map(|k| vec![k as i32 + 1]).collect();
        images[t] = value;
        for (_, r) in rels.iter_mut() {
            *r = cyclic_reduce(&crate::braid::substitute(r, &images));
        }
        rels.retain(|(_, r)| !r.is_empty());
    }
    // renumber x1..x_{n−1}, y1..y_s
    let keep: Vec<usize> = (0..g.n.saturating_sub(1)).chain(nv..raw.gens()).collect();
    let mut map = vec![0i32; raw.gens()];
    for (new, &old) in keep.iter().enumerate() {
        map[old] = new as i32 + 1;
    }
    let mut relators = Vec::new();
    for (_, r) in rels {
        let mut w = Word::with_capacity(r.len());
        for &l in &r {
            let m = map[letter_gen(l)];
            if m == 0 {
                return Err(Error::SimplificationFailure("eliminated generator survived".into()));
            }
            w.push(m * l.signum());
        }
        relators.push(w);
    }
    let names: Vec<String> = keep.iter().map(|&k| raw.names[k].clone()).collect();
    let p = GroupPresentation { names, relators, kind: PresentationKind::Boundary, boundary_word: None };
    if !p.is_commutator_relators() {
        return Err(Error::SimplificationFailure("relators are not commutators".into()));
    }
    Ok(p)
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderFactor {
    pub vertex: usize,
    /// t_v is the product of t_i over these lines.
    pub support: Vec<usize>,
    /// d_v − 2; negative values belong to the denominator.
    pub exponent: i64,
}

/// Δ_{∂U} = ∏_v (t_v − 1)^{d_v − 2} in t_1..t_n, with ∏ t_i = 1 understood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryAlexander {
    pub n: usize,
    pub factors: Vec<AlexanderFactor>,
}

impl BoundaryAlexander {
    pub fn numerator(&self) -> impl Iterator<Item = &AlexanderFactor> {
        self.factors.iter().filter(|f| f.exponent > 0)
    }

    pub fn denominator(&self) -> impl Iterator<Item = &AlexanderFactor> {
        self.factors.iter().filter(|f| f.exponent < 0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator().next().is_none()
    }

    /// Codimension-one subtori {t_v = 1}, one per vertex of degree ≥ 3.
    pub fn v1_components(&self) -> Vec<Vec<usize>> {
        self.numerator().map(|f| f.support.clone()).collect()
    }

    /// Expanded numerator in t_1..t_n.
    pub fn expand_numerator(&self) -> LaurentPoly {
        let mut acc = LaurentPoly([(vec![0i64; self.n], 1i64)].into_iter().collect());
        for f in self.numerator() {
            let mut mono = vec![0i64; self.n];
            f.support.iter().for_each(|&i| mono[i] = 1);
            for _ in 0..f.exponent {
                let mut next = std::collections::BTreeMap::new();
                for (m, c) in &acc.0 {
                    let shifted: Vec<i64> = m.iter().zip(&mono).map(|(a, b)| a + b).collect();
                    *next.entry(shifted).or_insert(0) += c;
                    *next.entry(m.clone()).or_insert(0) -= c;
                }
                next.retain(|_, c| *c != 0);
                acc = LaurentPoly(next);
            }
        }
        acc
    }
}

impl std::fmt::Display for BoundaryAlexander {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let render = |f: &AlexanderFactor, e: i64| {
            let t: String = f.support.iter().map(|i| format!("t{}", i + 1)).collect();
            if e == 1 {
                format!("({t}-1)")
            } else {
                format!("({t}-1)^{e}")
            }
        };
        let num: Vec<String> = self.numerator().map(|f| render(f, f.exponent)).collect();
        let den: Vec<String> = self.denominator().map(|f| render(f, -f.exponent)).collect();
        let num = if num.is_empty() { "1".to_string() } else { num.join("") };
        if den.is_empty() {
            write!(out, "{num}")
        } else {
            write!(out, "{num} / {}", den.join(""))
        }
    }
}

pub fn alexander_boundary(g: &BoundaryGraph) -> BoundaryAlexander {
    let factors = (0..g.vertices.len())
        .map(|v| AlexanderFactor { vertex: v, support: g.vertices[v].support(), exponent: g.degree(v) as i64 - 2 })
        .filter(|f| f.exponent != 0)
        .collect();
    BoundaryAlexander { n: g.n, factors }
}

/// H*(∂U) = A ⊕ Ǎ for A = H*(U), over a field.
///
/// Basis order: 1; α_i (A¹), β′_k (Ǎ²); β_k (A²), α′_i (Ǎ¹); ω.
#[derive(Clone, Debug)]
pub struct DoubledRing<F: Field> {
    field: F,
    n1: usize,
    m: usize,
    /// α_i α_j = Σ_k mu[i][j][k] β_k
    mu: Vec<Vec<Vec<F::Elem>>>,
}

pub fn doubled_ring<F: Field + Clone>(field: F, lat: &Lattice) -> DoubledRing<F> {
    let os = OsDegree2::new(field.clone(), lat);
    let n = lat.n();
    let n1 = n.saturating_sub(1);
    let alpha = |k: usize| -> Vec<F::Elem> {
        (0..n)
            .map(|i| {
                if i == k {
                    field.one()
                } else if i == n - 1 {
                    field.from_i64(-1)
                } else {
                    field.zero()
                }
            })
            .collect()
    };
    let products: Vec<Vec<Vec<F::Elem>>> =
        (0..n1).map(|i| (0..n1).map(|j| os.wedge(&alpha(i), &alpha(j))).collect()).collect();
    let mut span = Matrix::new(products.iter().flatten().cloned().collect(), os.dim2());
    let pivots = rref(&field, &mut span);
    let mu = products
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| coordinates_in_rref(&field, &span, &pivots, v).expect("product lies in A²(U)"))
                .collect()
        })
        .collect();
    DoubledRing { field, n1, m: pivots.len(), mu }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    One,
    Alpha(usize),
    BetaDual(usize),
    Beta(usize),
    AlphaDual(usize),
    Omega,
}

impl<F: Field> DoubledRing<F> {
    pub fn dims(&self) -> [usize; 4] {
        [1, self.n1 + self.m, self.m + self.n1, 1]
    }

    pub fn total(&self) -> usize {
        2 + 2 * (self.n1 + self.m)
    }

    fn slot(&self, idx: usize) -> Slot {
        let (n1, m) = (self.n1, self.m);
        match idx {
            0 => Slot::One,
            i if i <= n1 => Slot::Alpha(i - 1),
            i if i <= n1 + m => Slot::BetaDual(i - 1 - n1),
            i if i <= n1 + 2 * m => Slot::Beta(i - 1 - n1 - m),
            i if i <= 2 * (n1 + m) => Slot::AlphaDual(i - 1 - n1 - 2 * m),
            _ => Slot::Omega,
        }
    }

    fn index(&self, s: Slot) -> usize {
        let (n1, m) = (self.n1, self.m);
        match s {
            Slot::One => 0,
            Slot::Alpha(i) => 1 + i,
            Slot::BetaDual(k) => 1 + n1 + k,
            Slot::Beta(k) => 1 + n1 + m + k,
            Slot::AlphaDual(i) => 1 + n1 + 2 * m + i,
            Slot::Omega => 1 + 2 * (n1 + m),
        }
    }

    pub fn degree(&self, idx: usize) -> usize {
        match self.slot(idx) {
            Slot::One => 0,
            Slot::Alpha(_) | Slot::BetaDual(_) => 1,
            Slot::Beta(_) | Slot::AlphaDual(_) => 2,
            Slot::Omega => 3,
        }
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, a: usize, b: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.total()];
        let (sa, sb) = (self.slot(a), self.slot(b));
        match (sa, sb) {
            (Slot::One, _) => out[b] = f.one(),
            (_, Slot::One) => out[a] = f.one(),
            (Slot::Alpha(i), Slot::Alpha(j)) => {
                for k in 0..self.m {
                    out[self.index(Slot::Beta(k))] = self.mu[i][j][k].clone();
                }
            }
            (Slot::Alpha(j), Slot::BetaDual(k)) | (Slot::BetaDual(k), Slot::Alpha(j)) => {
                let sign = matches!(sa, Slot::Alpha(_));
                for i in 0..self.n1 {
                    let c = &self.mu[i][j][k];
                    out[self.index(Slot::AlphaDual(i))] = if sign { c.clone() } else { f.neg(c) };
                }
            }
            (Slot::Alpha(i), Slot::AlphaDual(j))
            | (Slot::AlphaDual(j), Slot::Alpha(i))
            | (Slot::BetaDual(i), Slot::Beta(j))
            | (Slot::Beta(j), Slot::BetaDual(i))
                if i == j => {
                    out[self.index(Slot::Omega)] = f.one();
                }
            _ => {}
        }
        out
    }

    pub fn mul(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.total()];
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                let c = f.mul(x, y);
                for (o, p) in out.iter_mut().zip(self.mul_basis(a, b)) {
                    if !f.is_zero(&p) {
                        *o = f.add(o, &f.mul(&c, &p));
                    }
                }
            }
        }
        out
    }

    /// Associativity and graded commutativity on all basis triples.
    pub fn verify_axioms(&self) -> bool {
        let f = &self.field;
        let t = self.total();
        let table: Vec<Vec<Vec<F::Elem>>> = (0..t).map(|a| (0..t).map(|b| self.mul_basis(a, b)).collect()).collect();
        // (Σ_k u_k e_k) · e_c
        let times = |u: &[F::Elem], c: usize| -> Vec<F::Elem> {
            let mut out = vec![f.zero(); t];
            for (k, x) in u.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
                for (o, p) in out.iter_mut().zip(&table[k][c]) {
                    *o = f.add(o, &f.mul(x, p));
                }
            }
            out
        };
        let times_left = |a: usize, u: &[F::Elem]| -> Vec<F::Elem> {
            let mut out = vec![f.zero(); t];
            for (k, x) in u.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
                for (o, p) in out.iter_mut().zip(&table[a][k]) {
                    *o = f.add(o, &f.mul(x, p));
                }
            }
            out
        };
        for a in 0..t {
            for b in 0..t {
                let odd = self.degree(a) * self.degree(b) % 2 == 1;
                let commutes = table[a][b].iter().zip(&table[b][a]).all(|(x, y)| if odd { *x == f.neg(y) } else { x == y });
                if !commutes {
                    return false;
                }
                for c in 0..t {
                    if times(&table[a][b], c) != times_left(a, &table[b][c]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of the pairing Â¹ × Â² → Â³ = ⟨ω⟩, columns in the dual
    /// order α′_i, β_k.
    pub fn pairing_matrix(&self) -> Matrix<F::Elem> {
        let d1 = self.dims()[1];
        let w = self.index(Slot::Omega);
        let cols: Vec<usize> = (0..self.n1)
            .map(|i| self.index(Slot::AlphaDual(i)))
            .chain((0..self.m).map(|k| self.index(Slot::Beta(k))))
            .collect();
        let rows = (1..=d1).map(|a| cols.iter().map(|&b| self.mul_basis(a, b)[w].clone()).collect()).collect();
        Matrix::new(rows, d1)
    }

    /// dim H¹(Â, a·) for a ∈ Â¹ given by its d₁ coordinates.
    pub fn h1_depth(&self, a: &[F::Elem]) -> Result<usize> {
        let f = &self.field;
        let d1 = self.dims()[1];
        if a.len() != d1 {
            return Err(Error::DimensionMismatch { index: 0, found: a.len(), expected: d1 });
        }
        let mut full = vec![f.zero(); self.total()];
        full[1..=d1].clone_from_slice(a);
        let rows: Vec<Vec<F::Elem>> = (1..=d1)
            .map(|b| {
                let mut e = vec![f.zero(); self.total()];
                e[b] = f.one();
                self.mul(&full, &e)[d1 + 1..=2 * d1].to_vec()
            })
            .collect();
        let r = rank(f, &Matrix::new(rows, d1));
        let nonzero = usize::from(a.iter().any(|x| !f.is_zero(x)));
        Ok(d1 - r - nonzero)
    }

    /// Membership of a nonzero class in R¹_s; the zero class is reported
    /// as a non-member.
    pub fn is_resonant(&self, a: &[F::Elem], s: usize) -> Result<bool> {
        let depth = self.h1_depth(a)?;
        Ok(a.iter().any(|x| !self.field.is_zero(x)) && depth >= s)
    }
}

/// Invariants of the boundary ∂F of the Milnor fiber.
#[derive(Clone, Debug)]
pub struct BoundaryMilnor {
    pub cover: CyclicCoverSpec,
    /// ∏_X (t − 1)(t^{gcd(μ(X)+1, n)} − 1)^{μ(X)−1}
    pub charpoly: FactoredCharPoly,
    pub b1: usize,
    /// Same polynomial from the depths of the cover's characters.
    pub charpoly_from_cover: FactoredCharPoly,
    pub integral_h1: Option<IntegralH1>,
}

pub fn bdf_closed_form(lat: &Lattice) -> (FactoredCharPoly, usize) {
    let n = lat.n() as u64;
    let mut pairs = Vec::new();
    let mut b1 = 0usize;
    for fl in lat.flats() {
        let mu = fl.mobius as u64;
        let g = gcd(mu + 1, n);
        pairs.push((1, 1));
        for d in divisors(g) {
            pairs.push((d, (mu - 1) as u32));
        }
        b1 += 1 + ((mu - 1) * g) as usize;
    }
    (FactoredCharPoly::from_cyclotomic(&pairs), b1)
}

pub fn bdf_invariants(a: &Arrangement, max_columns: usize) -> Result<BoundaryMilnor> {
    let lat = Lattice::new(a)?;
    let g = build_graph(a)?;
    let p = westlund_presentation(&g).simplified?;
    let n = a.n() as u64;
    let chi: Vec<u64> = (0..p.gens()).map(|k| u64::from(k < a.n() - 1)).collect();
    let cover = CyclicCoverSpec::new(p, n, chi)?;
    let (charpoly, b1) = bdf_closed_form(&lat);
    let ctx = find_cyclotomic_prime(n, 0);
    let mut charpoly_from_cover = abelian_cover_monodromy(&cover.presentation, &cover.chi, n, &ctx)?;
    charpoly_from_cover.field = charpoly.field.clone();
    let integral_h1 = match integral_cover_homology(&cover, max_columns) {
        Ok(h) => Some(h),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundaryMilnor { cover, charpoly, b1, charpoly_from_cover, integral_h1 })
}

/// Evidence against 1-formality: a random class in H¹(∂U) is resonant,
/// while V¹₁(∂U) is a finite union of codimension-one subtori.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalityWitness {
    pub b1: usize,
    pub random_class_depth: usize,
    pub codim_one_components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalityReport {
    pub shape: Shape,
    pub formal: bool,
    pub boundary_type: Option<String>,
    pub milnor_boundary_type: Option<String>,
    pub witness: Option<FormalityWitness>,
}

fn connected_sum(k: usize) -> String {
    match k {
        0 => "S3".to_string(),
        1 => "S1xS2".to_string(),
        _ => format!("#^{k} S1xS2"),
    }
}

pub fn formality_report(a: &Arrangement, seed: u64) -> Result<FormalityReport> {
    let lat = Lattice::new(a)?;
    let n = a.n();
    let shape = lat.shape();
    let (boundary_type, milnor_boundary_type) = match shape {
        Shape::Pencil => (Some(connected_sum(n.saturating_sub(1))), Some(connected_sum((n.saturating_sub(1)).pow(2)))),
        Shape::NearPencil => {
            let t = format!("S1 x Sigma_{}", n - 2);
            (Some(t.clone()), Some(t))
        }
        _ => (None, None),
    };
    let formal = boundary_type.is_some();
    let witness = if formal {
        None
    } else {
        let f = Fq::prime(find_cyclotomic_prime(2, 0).p());
        let ring = doubled_ring(f.clone(), &lat);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d1 = ring.dims()[1];
        let class: Vec<u64> = (0..d1).map(|_| f.from_i64(rng.gen_range(1..f.order() as i64))).collect();
        let alex = alexander_boundary(&build_graph(a)?);
        Some(FormalityWitness {
            b1: d1,
            random_class_depth: ring.h1_depth(&class)?,
            codim_one_components: alex.v1_components().len(),
        })
    };
    Ok(FormalityReport { shape, formal, boundary_type, milnor_boundary_type, witness })
}

//! Free-group words, the Artin action, and braid-monodromy presentations of
//! arrangement groups.

use crate::arrangement::{Arrangement, Eis, Lattice};
use crate::error::{Error, Result};
use crate::scalar::field::{Field, QOmega, QOmegaElem};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A word in a free group: letter `g + 1` is generator g, `-(g + 1)` its
/// inverse.
pub type Word = Vec<i32>;

pub fn gen(g: usize) -> i32 {
    g as i32 + 1
}

pub fn letter_gen(l: i32) -> usize {
    l.unsigned_abs() as usize - 1
}

/// Freely reduce.
pub fn reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn concat(parts: &[&[i32]]) -> Word {
    reduce(&parts.concat())
}

/// [a, b] = a b a⁻¹ b⁻¹.
pub fn commutator(a: &[i32], b: &[i32]) -> Word {
    concat(&[a, b, &inverse(a), &inverse(b)])
}

/// a^b = b⁻¹ a b.
pub fn conjugate(a: &[i32], b: &[i32]) -> Word {
    concat(&[&inverse(b), a, b])
}

pub fn exponent_sums(w: &[i32], n: usize) -> Vec<i64> {
    let mut e = vec![0i64; n];
    for &l in w {
        e[letter_gen(l)] += l.signum() as i64;
    }
    e
}

/// Substitute `images[g]` for each generator g.
pub fn substitute(w: &[i32], images: &[Word]) -> Word {
    let mut out = Vec::new();
    for &l in w {
        let img = &images[letter_gen(l)];
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(img.iter().rev().map(|x| -x));
        }
    }
    reduce(&out)
}

/// A word in the Artin generators: `(i, +1)` is σ_i exchanging positions
/// i and i + 1 (0-based), `(i, -1)` its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn sigma(strands: usize, i: usize, sign: i8) -> Self {
        BraidWord { strands, letters: vec![(i, sign)] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect() }
    }

    pub fn then(mut self, other: &BraidWord) -> Self {
        self.letters.extend_from_slice(&other.letters);
        self
    }

    /// A_{ij} = σ_{j−1}⋯σ_{i+1} σ_i² σ_{i+1}⁻¹⋯σ_{j−1}⁻¹ for positions i < j.
    pub fn pure(strands: usize, i: usize, j: usize) -> Self {
        let (i, j) = (i.min(j), i.max(j));
        let mut letters: Vec<(usize, i8)> = (i + 1..j).rev().map(|k| (k, 1)).collect();
        letters.extend([(i, 1), (i, 1)]);
        letters.extend((i + 1..j).map(|k| (k, -1)));
        BraidWord { strands, letters }
    }

    /// Full twist on the given increasing positions:
    /// A_{i₁i₂}(A_{i₁i₃}A_{i₂i₃})⋯(A_{i₁i_r}⋯A_{i_{r−1}i_r}).
    pub fn full_twist(strands: usize, positions: &[usize]) -> Self {
        let mut b = BraidWord::identity(strands);
        for (t, &j) in positions.iter().enumerate() {
            for &i in &positions[..t] {
                b = b.then(&BraidWord::pure(strands, i, j));
            }
        }
        b
    }

    /// (σ_k⋯σ_{k+r−2})^r on the adjacent block starting at k.
    pub fn block_twist(strands: usize, start: usize, r: usize) -> Self {
        let mut letters = Vec::new();
        for _ in 0..r {
            letters.extend((start..start + r - 1).map(|k| (k, 1)));
        }
        BraidWord { strands, letters }
    }
}

/// Images of the generators under the automorphism of a braid word
/// s₁⋯s_m, acting as φ_{s₁}∘⋯∘φ_{s_m} with
/// σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i.
pub fn action_table(b: &BraidWord) -> Vec<Word> {
    let mut t: Vec<Word> = (0..b.strands).map(|g| vec![gen(g)]).collect();
    for &(i, s) in &b.letters {
        let (a, c) = (t[i].clone(), t[i + 1].clone());
        if s > 0 {
            t[i] = concat(&[&a, &c, &inverse(&a)]);
            t[i + 1] = a;
        } else {
            t[i] = c.clone();
            t[i + 1] = concat(&[&inverse(&c), &a, &c]);
        }
    }
    t
}

pub fn artin_action(b: &BraidWord, w: &[i32]) -> Word {
    substitute(w, &action_table(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    Complement,
    Projectivized,
    Boundary,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub names: Vec<String>,
    pub relators: Vec<Word>,
    pub kind: PresentationKind,
    /// Product of meridians around the whole fibre, central in the
    /// complement group.
    pub boundary_word: Option<Word>,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    gens: usize,
    relators: &'a [Word],
}

impl GroupPresentation {
    pub fn gens(&self) -> usize {
        self.names.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PresentationJson { gens: self.gens(), relators: &self.relators }).expect("serializable")
    }

    /// Abelianized relation matrix: one row of exponent sums per relator.
    pub fn abelianized(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| exponent_sums(r, self.gens())).collect()
    }

    pub fn is_commutator_relators(&self) -> bool {
        self.abelianized().iter().all(|r| r.iter().all(|&e| e == 0))
    }
}

/// Append the boundary word as a relator, giving π₁ of the projective
/// complement.
pub fn projectivize_presentation(p: &GroupPresentation) -> Result<GroupPresentation> {
    if p.kind != PresentationKind::Complement {
        return Err(Error::Precondition("expected a complement presentation".into()));
    }
    let w = p.boundary_word.clone().ok_or_else(|| Error::Precondition("no boundary word".into()))?;
    let mut relators = p.relators.clone();
    relators.push(w);
    Ok(GroupPresentation { names: p.names.clone(), relators, kind: PresentationKind::Projectivized, boundary_word: None })
}

/// Coordinates in which every flat is at finite distance, no line is
/// vertical, and flats have distinct first coordinates. `matrix` maps new
/// coordinates to old ones; forms become f·T.
#[derive(Clone, Debug)]
pub struct Chart {
    pub matrix: Vec<Vec<i64>>,
    pub arrangement: Arrangement,
    /// Per line: slope α and intercept β of y = αx + β.
    pub lines: Vec<(QOmegaElem, QOmegaElem)>,
    /// Per flat (lattice ids): first coordinate.
    pub xs: Vec<QOmegaElem>,
}

fn eis(q: &QOmega, e: Eis) -> QOmegaElem {
    let _ = q;
    QOmega::from_parts(e.a, e.b)
}

/// Three-variable arrangement suitable for charts: pads lower dimensions
/// with zeros and cuts higher ones generically.
pub fn planar(a: &Arrangement) -> Result<Arrangement> {
    match a.dim().cmp(&3) {
        Ordering::Equal => Ok(a.clone()),
        Ordering::Greater => a.generic_section(0),
        Ordering::Less => {
            let forms = a
                .forms()
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    g.resize(3, Eis::ZERO);
                    g
                })
                .collect();
            Arrangement::with_labels(forms, a.labels().to_vec())
        }
    }
}

fn try_chart(a: &Arrangement, lat: &Lattice, t: Vec<Vec<i64>>) -> Option<Chart> {
    let q = QOmega;
    let te: Vec<Vec<Eis>> = t.iter().map(|r| r.iter().map(|&v| Eis::from(v)).collect()).collect();
    let g = a.transform(&te).ok()?;
    if g.forms().iter().any(|f| f[1].is_zero()) {
        return None;
    }
    let glat = Lattice::new(&g).ok()?;
    let mut xs = Vec::with_capacity(lat.flats().len());
    for (fl, gfl) in lat.flats().iter().zip(glat.flats()) {
        debug_assert_eq!(fl.lines, gfl.lines);
        let p = gfl.point?;
        if p[2].is_zero() {
            return None;
        }
        let x = q.mul(&eis(&q, p[0]), &q.inv(&eis(&q, p[2]))?);
        if xs.contains(&x) {
            return None;
        }
        xs.push(x);
    }
    let lines = g
        .forms()
        .iter()
        .map(|f| {
            let inv_b = q.inv(&eis(&q, f[1])).expect("nonzero");
            let alpha = q.neg(&q.mul(&eis(&q, f[0]), &inv_b));
            let beta = q.neg(&q.mul(&eis(&q, f[2]), &inv_b));
            (alpha, beta)
        })
        .collect();
    Some(Chart { matrix: t, arrangement: g, lines, xs })
}

/// Smallest shear x ↦ x + c·y (c ≥ 0) with a finite, generic picture,
/// falling back to unimodular charts that also tilt the line at infinity.
pub fn generic_chart(a: &Arrangement) -> Result<Chart> {
    let a = planar(a)?;
    let lat = Lattice::new(&a)?;
    let chart = |c: i64, d: i64, e: i64| vec![vec![1, c, 0], vec![0, 1, 0], vec![d, e, 1]];
    for c in 0..=8 {
        if let Some(ch) = try_chart(&a, &lat, chart(c, 0, 0)) {
            return Ok(ch);
        }
    }
    for bound in 1..=12i64 {
        for c in 0..=bound {
            for d in -bound..=bound {
                for e in -bound..=bound {
                    if c.max(d.abs()).max(e.abs()) != bound {
                        continue;
                    }
                    if let Some(ch) = try_chart(&a, &lat, chart(c, d, e)) {
                        return Ok(ch);
                    }
                }
            }
        }
    }
    Err(Error::Precondition("no generic chart found".into()))
}

/// One singular fibre: the braid along the path from the base fibre, and
/// the block of positions whose strands meet there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyEvent {
    pub flat: usize,
    pub lines: Vec<usize>,
    pub path: BraidWord,
    pub block_start: usize,
}

#[derive(Clone, Debug)]
pub struct BraidMonodromy {
    pub chart: Chart,
    /// Line at each position of the base fibre.
    pub base_order: Vec<usize>,
    pub events: Vec<MonodromyEvent>,
}

struct Retry;

fn re(x: &QOmegaElem) -> BigRational {
    QOmega::re(x)
}

fn im(x: &QOmegaElem) -> BigRational {
    QOmega::im_scaled(x)
}

fn random_point(rng: &mut ChaCha8Rng, scale: i64) -> QOmegaElem {
    let q = QOmega;
    let num = QOmega::from_parts(rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale));
    q.mul(&num, &q.inv(&QOmega::from_parts(rng.gen_range(3..=17), 0)).expect("nonzero"))
}

/// Braid monodromy along straight paths from a generic base point.
pub fn braid_monodromy(a: &Arrangement) -> Result<BraidMonodromy> {
    let chart = generic_chart(a)?;
    let lat = Lattice::new(&chart.arrangement)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..500 {
        let scale = 20 + 10 * (attempt / 50);
        let b = random_point(&mut rng, scale * 4);
        let c = loop {
            let c = random_point(&mut rng, scale);
            if !QOmega.is_zero(&c) {
                break c;
            }
        };
        if let Ok(m) = monodromy_with(&chart, &lat, &b, &c) {
            return Ok(m);
        }
    }
    Err(Error::Precondition("no generic base point found".into()))
}

fn monodromy_with(
    chart: &Chart,
    lat: &Lattice,
    b: &QOmegaElem,
    c: &QOmegaElem,
) -> std::result::Result<BraidMonodromy, Retry> {
    let q = QOmega;
    let n = chart.lines.len();
    let at = |k: usize, x: &QOmegaElem| {
        let (al, be) = &chart.lines[k];
        q.mul(c, &q.add(&q.mul(al, x), be))
    };
    let base: Vec<QOmegaElem> = (0..n).map(|k| at(k, b)).collect();
    let mut base_order: Vec<usize> = (0..n).collect();
    base_order.sort_by(|&i, &j| re(&base[i]).cmp(&re(&base[j])));
    if base_order.windows(2).any(|w| re(&base[w[0]]) == re(&base[w[1]])) {
        return Err(Retry);
    }
    let mut events = Vec::new();
    for fl in lat.flats() {
        let xq = &chart.xs[fl.id];
        let dir = q.sub(xq, b);
        // no other critical value on the segment
        for other in lat.flats().iter().filter(|o| o.id != fl.id) {
            let w = q.sub(&chart.xs[other.id], b);
            let crossp = re(&dir) * im(&w) - im(&dir) * re(&w);
            if crossp.is_zero() {
                let dotp = re(&dir) * re(&w) + im(&dir) * im(&w);
                let nd = re(&dir) * re(&dir) + im(&dir) * im(&dir);
                let nw = re(&w) * re(&w) + im(&w) * im(&w);
                if dotp.is_positive() && nw <= nd {
                    return Err(Retry);
                }
            }
        }
        // y_k(s) = y_k(b) + s·α_k·(x_q − b); projections linear in s
        let slope: Vec<QOmegaElem> = (0..n).map(|k| q.mul(c, &q.mul(&chart.lines[k].0, &dir))).collect();
        let mut crossings: Vec<(BigRational, usize, usize)> = Vec::new();
        for k in 0..n {
            for l in k + 1..n {
                let both = fl.contains(k) && fl.contains(l);
                let db = re(&slope[k]) - re(&slope[l]);
                if both || db.is_zero() {
                    continue;
                }
                let s = (re(&base[l]) - re(&base[k])) / db;
                let one = BigRational::from_integer(1.into());
                if s.is_positive() && s < one {
                    crossings.push((s, k, l));
                } else if s == one && (fl.contains(k) || fl.contains(l)) {
                    return Err(Retry);
                }
            }
        }
        crossings.sort_by(|x, y| x.0.cmp(&y.0));
        let mut order = base_order.clone();
        let mut pos_of = vec![0usize; n];
        for (p, &k) in order.iter().enumerate() {
            pos_of[k] = p;
        }
        let mut path = BraidWord::identity(n);
        let mut idx = 0;
        while idx < crossings.len() {
            let s = crossings[idx].0.clone();
            let mut group = Vec::new();
            while idx < crossings.len() && crossings[idx].0 == s {
                group.push((crossings[idx].1, crossings[idx].2));
                idx += 1;
            }
            // strands aligned at s form contiguous runs that reverse
            // order, each a half twist of one sign
            let mut comp: Vec<usize> = (0..n).collect();
            fn root(c: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while c[r] != r {
                    r = c[r];
                }
                c[x] = r;
                r
            }
            for &(k, l) in &group {
                let (rk, rl) = (root(&mut comp, k), root(&mut comp, l));
                comp[rk.max(rl)] = rk.min(rl);
            }
            let mut runs: Vec<Vec<usize>> = Vec::new();
            for k in 0..n {
                if group.iter().any(|&(a, b)| a == k || b == k) {
                    let r = root(&mut comp, k);
                    match runs.iter_mut().find(|run| root(&mut comp, run[0]) == r) {
                        Some(run) => run.push(k),
                        None => runs.push(vec![k]),
                    }
                }
            }
            let y = |m: usize| q.add(&base[m], &q.mul(&slope[m], &(s.clone(), BigRational::zero())));
            let mut twists = Vec::new();
            for mut run in runs {
                run.sort_by_key(|&k| pos_of[k]);
                let r = run.len();
                let start = pos_of[run[0]];
                let pairs = group.iter().filter(|&&(a, _)| run.contains(&a)).count();
                if run.iter().enumerate().any(|(t, &k)| pos_of[k] != start + t) || pairs != r * (r - 1) / 2 {
                    return Err(Retry);
                }
                let ims: Vec<BigRational> = run.iter().map(|&k| im(&y(k))).collect();
                let sign = if ims.windows(2).all(|w| w[0] < w[1]) {
                    1
                } else if ims.windows(2).all(|w| w[0] > w[1]) {
                    -1
                } else {
                    return Err(Retry);
                };
                twists.push((start, r, sign, run));
            }
            twists.sort_by_key(|t| t.0);
            for (start, r, sign, run) in twists {
                for i in 0..r - 1 {
                    for j in 0..r - 1 - i {
                        path.letters.push((start + j, sign));
                    }
                }
                for (t, &k) in run.iter().rev().enumerate() {
                    order[start + t] = k;
                    pos_of[k] = start + t;
                }
            }
        }
        let mut block: Vec<usize> = fl.lines.iter().map(|&k| pos_of[k]).collect();
        block.sort_unstable();
        if block.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(Retry);
        }
        events.push(MonodromyEvent { flat: fl.id, lines: fl.lines.clone(), path, block_start: block[0] });
    }
    Ok(BraidMonodromy { chart: chart.clone(), base_order, events })
}

fn relabel(w: &[i32], base_order: &[usize]) -> Word {
    w.iter().map(|&l| l.signum() * gen(base_order[letter_gen(l)])).collect()
}

impl BraidMonodromy {
    /// Relators ψ(τ(x_j)·x_j⁻¹) for each block position but the last, with
    /// generators renamed to line indices.
    pub fn presentation(&self, names: &[String]) -> GroupPresentation {
        let n = self.base_order.len();
        let mut relators = Vec::new();
        for ev in &self.events {
            let psi = action_table(&ev.path);
            let r = ev.lines.len();
            let tau = action_table(&BraidWord::block_twist(n, ev.block_start, r));
            for j in ev.block_start..ev.block_start + r - 1 {
                let local = concat(&[&tau[j], &[-gen(j)]]);
                relators.push(relabel(&substitute(&local, &psi), &self.base_order));
            }
        }
        let boundary: Word = (0..n).map(gen).collect();
        GroupPresentation {
            names: names.to_vec(),
            relators,
            kind: PresentationKind::Complement,
            boundary_word: Some(relabel(&boundary, &self.base_order)),
        }
    }
}

/// π₁ of the complement, generators x_H in the arrangement's order.
pub fn presentation_complement(a: &Arrangement) -> Result<GroupPresentation> {
    let names: Vec<String> = (1..=a.n()).map(|i| format!("x{i}")).collect();
    if a.n() == 0 {
        return Ok(GroupPresentation { names, relators: Vec::new(), kind: PresentationKind::Complement, boundary_word: Some(Vec::new()) });
    }
    Ok(braid_monodromy(a)?.presentation(&names))
}

/// A real picture: wires labelled by their order left of every vertex.
#[derive(Clone, Debug)]
pub struct WiringDiagram {
    pub n: usize,
    /// Line of the arrangement carried by each wire.
    pub wire_line: Vec<usize>,
    pub events: Vec<WiringEvent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringEvent {
    pub flat: usize,
    /// Wires through the vertex, increasing.
    pub middle: Vec<usize>,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl WiringEvent {
    pub fn j_set(&self) -> Vec<usize> {
        let (lo, hi) = (self.middle[0], *self.middle.last().expect("nonempty"));
        self.upper.iter().copied().filter(|&i| lo < i && i < hi).collect()
    }
}

/// Wiring diagram of a complexified-real arrangement in a generic chart.
pub fn wiring_diagram(a: &Arrangement) -> Result<WiringDiagram> {
    if !a.is_real() {
        return Err(Error::Precondition("wiring diagrams need real forms".into()));
    }
    let chart = generic_chart(a)?;
    let lat = Lattice::new(&chart.arrangement)?;
    let n = chart.lines.len();
    let q = QOmega;
    let x_min = chart.xs.iter().map(re).min().unwrap_or_else(BigRational::zero);
    let left = (x_min - BigRational::from_integer(1.into()), BigRational::zero());
    let y = |k: usize, x: &QOmegaElem| re(&q.add(&q.mul(&chart.lines[k].0, x), &chart.lines[k].1));
    let mut wire_line: Vec<usize> = (0..n).collect();
    wire_line.sort_by_key(|&i| y(i, &left));
    let mut wire_of = vec![0usize; n];
    for (w, &l) in wire_line.iter().enumerate() {
        wire_of[l] = w;
    }
    let mut flats: Vec<usize> = (0..lat.flats().len()).collect();
    flats.sort_by(|&f, &g| re(&chart.xs[f]).cmp(&re(&chart.xs[g])));
    let events = flats
        .into_iter()
        .map(|f| {
            let fl = &lat.flats()[f];
            let x = &chart.xs[f];
            let yq = y(fl.lines[0], x);
            let mut ev = WiringEvent { flat: f, middle: Vec::new(), lower: Vec::new(), upper: Vec::new() };
            for w in 0..n {
                let v = y(wire_line[w], x);
                match v.cmp(&yq) {
                    Ordering::Less => ev.lower.push(w),
                    Ordering::Equal => ev.middle.push(w),
                    Ordering::Greater => ev.upper.push(w),
                }
            }
            ev
        })
        .collect();
    Ok(WiringDiagram { n, wire_line, events })
}

/// δ_q = ∏_{i ∈ I_q} ∏_{j ∈ J_q} A_{ji}, one per vertex.
pub fn conjugating_braids(w: &WiringDiagram) -> Vec<BraidWord> {
    w.events
        .iter()
        .map(|ev| {
            let js = ev.j_set();
            let mut b = BraidWord::identity(w.n);
            for &i in &ev.middle {
                for &j in &js {
                    b = b.then(&BraidWord::pure(w.n, j, i));
                }
            }
            b
        })
        .collect()
}

/// Relators (δ_q⁻¹ A_{I_q} δ_q)(x_i)·x_i⁻¹ for i ∈ I_q ∖ max I_q.
pub fn presentation_from_wiring(w: &WiringDiagram) -> GroupPresentation {
    let mut relators = Vec::new();
    for (ev, delta) in w.events.iter().zip(conjugating_braids(w)) {
        let braid = delta.inverse().then(&BraidWord::full_twist(w.n, &ev.middle)).then(&delta);
        let table = action_table(&braid);
        for &i in &ev.middle[..ev.middle.len() - 1] {
            relators.push(relabel(&concat(&[&table[i], &[-gen(i)]]), &w.wire_line));
        }
    }
    let boundary: Word = (0..w.n).map(gen).collect();
    GroupPresentation {
        names: (1..=w.n).map(|i| format!("x{i}")).collect(),
        relators,
        kind: PresentationKind::Complement,
        boundary_word: Some(relabel(&boundary, &w.wire_line)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog_lookup;

    fn arr(name: &str) -> Arrangement {
        catalog_lookup(name).unwrap().arrangement
    }

    #[test]
    fn words_reduce() {
        assert_eq!(reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(commutator(&[1], &[2]), vec![1, 2, -1, -2]);
        assert_eq!(conjugate(&[1], &[2]), vec![-2, 1, 2]);
        assert_eq!(exponent_sums(&[1, 2, -1, 2], 2), vec![0, 2]);
    }

    #[test]
    fn artin_conventions() {
        let s1 = BraidWord::sigma(3, 0, 1);
        assert_eq!(artin_action(&s1, &[1]), vec![1, 2, -1]);
        assert_eq!(artin_action(&s1, &[2]), vec![1]);
        assert_eq!(artin_action(&BraidWord::identity(3), &[1, -3]), vec![1, -3]);
        let both = s1.clone().then(&s1.inverse());
        for g in 1..=3 {
            assert_eq!(artin_action(&both, &[g]), vec![g]);
        }
        // the boundary word is fixed by every braid
        let b = BraidWord::pure(4, 0, 3).then(&BraidWord::sigma(4, 2, -1)).then(&BraidWord::full_twist(4, &[0, 1, 3]));
        assert_eq!(artin_action(&b, &[1, 2, 3, 4]), vec![1, 2, 3, 4]);
        // a full twist acts by conjugation by the boundary word
        let t = BraidWord::full_twist(3, &[0, 1, 2]);
        for g in 1..=3 {
            assert_eq!(artin_action(&t, &[g]), conjugate(&[g], &inverse(&[1, 2, 3])));
        }
        assert_eq!(
            action_table(&BraidWord::block_twist(3, 0, 3)),
            action_table(&BraidWord::full_twist(3, &[0, 1, 2]))
        );
        // pure braids preserve abelianization
        let img = artin_action(&BraidWord::pure(3, 0, 2), &[1]);
        assert_eq!(exponent_sums(&img, 3), vec![1, 0, 0]);
        assert_eq!(artin_action(&BraidWord::pure(3, 0, 1), &[3]), vec![3]);
    }

    #[test]
    fn presentation_counts_match_betti_numbers() {
        for name in crate::arrangement::CATALOG_NAMES {
            let a = arr(name);
            let lat = Lattice::new(&a).unwrap();
            let p = presentation_complement(&a).unwrap();
            assert_eq!(p.gens(), a.n(), "{name}");
            assert_eq!(p.relators.len() as i64, lat.b2(), "{name}");
            assert!(p.is_commutator_relators(), "{name}");
            let proj = projectivize_presentation(&p).unwrap();
            assert_eq!(exponent_sums(proj.relators.last().unwrap(), a.n()), vec![1; a.n()]);
        }
    }

    #[test]
    fn pencil_relators_are_commutators_with_the_boundary() {
        let p = presentation_complement(&arr("pencil(2)")).unwrap();
        assert_eq!(p.relators.len(), 2);
        let pg = projectivize_presentation(&p).unwrap();
        assert_eq!(pg.kind, PresentationKind::Projectivized);
        assert!(p.to_json().starts_with("{\"gens\":3,\"relators\":[["));
    }

    #[test]
    fn charts() {
        let ch = generic_chart(&arr("generic(4)")).unwrap();
        assert_eq!((ch.matrix[1][0], ch.matrix[2][0], ch.xs.len()), (0, 0, 6));
        let ch = generic_chart(&arr("braid-A3")).unwrap();
        assert_eq!(ch.xs.len(), 7);
        let ch = generic_chart(&arr("hessian")).unwrap();
        assert_eq!(ch.xs.len(), 21);
    }

    #[test]
    fn conjugating_braid_lengths() {
        for (name, events) in [("near-pencil(4)", 4), ("braid-A3", 7)] {
            let w = wiring_diagram(&arr(name)).unwrap();
            assert_eq!(w.events.len(), events);
            for (ev, d) in w.events.iter().zip(conjugating_braids(&w)) {
                // count wires above the vertex strictly between its extremes
                let lo = *ev.middle.first().unwrap();
                let hi = *ev.middle.last().unwrap();
                let js = ev.upper.iter().filter(|&&u| lo < u && u < hi).count();
                let expected: usize =
                    ev.middle.iter().flat_map(|&i| ev.j_set().into_iter().map(move |j| BraidWord::pure(w.n, j, i).len())).sum();
                assert_eq!(d.len(), expected);
                assert_eq!(ev.middle.len() * js == 0, d.is_empty());
            }
        }
    }

}

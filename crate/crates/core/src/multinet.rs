//! Multinets: validation, exhaustive search, and the resonance components
//! they span.

use crate::arrangement::{Arrangement, Lattice};
use crate::error::{Error, MultinetViolation, Result};
use crate::scalar::field::{Field, Rationals};
use crate::scalar::linalg::{kernel, rank, Matrix};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// A partition of the lines into k weighted classes with balanced
/// incidences along the base locus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multinet {
    /// Classes sorted by least member, members sorted.
    pub classes: Vec<Vec<usize>>,
    pub m: Vec<u64>,
    /// Flat ids of the base locus, increasing.
    pub base_locus: Vec<usize>,
    pub ell: u64,
    pub k: usize,
    /// n_X for each base-locus flat, in the same order.
    pub n_x: Vec<u64>,
}

impl Multinet {
    pub fn is_net(&self) -> bool {
        self.m.iter().all(|&x| x == 1)
    }

    pub fn class_of(&self, h: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&h)).expect("line in some class")
    }

    /// Display classes as 1-based digit strings, e.g. `(12|34|56)`.
    pub fn partition_string(&self) -> String {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let sep = if c.iter().any(|&h| h >= 9) { "," } else { "" };
                c.iter().map(|h| (h + 1).to_string()).collect::<Vec<_>>().join(sep)
            })
            .collect();
        format!("({})", parts.join("|"))
    }
}

/// An unvalidated partition with multiplicities.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub classes: Vec<Vec<usize>>,
    pub m: Vec<u64>,
    /// Optional expected base locus (flat ids); recomputed and compared.
    pub base_locus: Option<Vec<usize>>,
}

fn canonical(mut classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// Check the multinet axioms and the weight identities.
pub fn validate_multinet(lat: &Lattice, cand: &Candidate) -> Result<Multinet> {
    use MultinetViolation::*;
    let n = lat.n();
    let classes = canonical(cand.classes.clone());
    let k = classes.len();
    let mut class_of = vec![usize::MAX; n];
    for (i, c) in classes.iter().enumerate() {
        for &h in c {
            if h >= n || class_of[h] != usize::MAX {
                return Err(Malformed(format!("line {h} missing or repeated")).into());
            }
            class_of[h] = i;
        }
    }
    if class_of.contains(&usize::MAX) || cand.m.len() != n || k < 3 {
        return Err(Malformed("partition must cover every line with at least 3 classes".into()).into());
    }
    if cand.m.contains(&0) {
        return Err(Malformed("multiplicities must be positive".into()).into());
    }
    if cand.m.iter().fold(0u64, |g, &x| g.gcd(&x)) != 1 {
        return Err(Malformed("multiplicities must have gcd 1".into()).into());
    }
    let m = &cand.m;
    let weights: Vec<u64> = classes.iter().map(|c| c.iter().map(|&h| m[h]).sum()).collect();
    if weights.iter().any(|&w| w != weights[0]) {
        return Err(UnequalWeights(weights).into());
    }
    let ell = weights[0];
    let base: BTreeSet<usize> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| class_of[i] != class_of[j])
        .map(|(i, j)| lat.flat_of(i, j))
        .collect();
    if let Some(expected) = &cand.base_locus {
        let expected: BTreeSet<usize> = expected.iter().copied().collect();
        if let Some(&x) = base.difference(&expected).next() {
            let fl = &lat.flats()[x];
            let (i, j) = fl
                .lines
                .iter()
                .flat_map(|&i| fl.lines.iter().map(move |&j| (i, j)))
                .find(|&(i, j)| class_of[i] != class_of[j])
                .expect("crossing pair");
            return Err(UncoveredCrossing(i.min(j), i.max(j)).into());
        }
        if expected != base {
            return Err(Malformed("base locus contains flats without crossings".into()).into());
        }
    }
    let base_locus: Vec<usize> = base.into_iter().collect();
    let mut n_x = Vec::with_capacity(base_locus.len());
    for &x in &base_locus {
        let mut per = vec![0u64; k];
        for &h in &lat.flats()[x].lines {
            per[class_of[h]] += m[h];
        }
        if per.iter().any(|&v| v != per[0]) {
            return Err(InconsistentNX(x).into());
        }
        n_x.push(per[0]);
    }
    let in_base = |x: usize| base_locus.binary_search(&x).is_ok();
    for (ci, c) in classes.iter().enumerate() {
        let mut seen = vec![false; c.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for b in 0..c.len() {
                if !seen[b] && !in_base(lat.flat_of(c[a], c[b])) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        if seen.contains(&false) {
            return Err(DisconnectedClass(ci).into());
        }
    }
    let total: u64 = m.iter().sum();
    if total != k as u64 * ell {
        return Err(IdentityFailure(format!("sum of m = {total}, k·ℓ = {}", k as u64 * ell)).into());
    }
    for h in 0..n {
        let s: u64 = base_locus
            .iter()
            .zip(&n_x)
            .filter(|(&x, _)| lat.flats()[x].contains(h))
            .map(|(_, &v)| v)
            .sum();
        if s != ell {
            return Err(IdentityFailure(format!("line {h}: Σ n_X = {s}, ℓ = {ell}")).into());
        }
    }
    let sq: u64 = n_x.iter().map(|v| v * v).sum();
    if sq != ell * ell {
        return Err(IdentityFailure(format!("Σ n_X² = {sq}, ℓ² = {}", ell * ell)).into());
    }
    Ok(Multinet { classes, m: m.clone(), base_locus, ell, k, n_x })
}

/// Limits for the exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub m_bound: u64,
    pub node_budget: u64,
    pub max_lines: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { m_bound: 4, node_budget: 50_000_000, max_lines: 12 }
    }
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::SearchBudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

/// All multinets with k classes using every line, up to relabeling.
pub fn search_multinets(lat: &Lattice, k: usize, opts: &SearchOptions) -> Result<Vec<Multinet>> {
    let mut budget = Budget { used: 0, limit: opts.node_budget };
    search_with_budget(lat, k, opts, &mut budget)
}

fn search_with_budget(lat: &Lattice, k: usize, opts: &SearchOptions, budget: &mut Budget) -> Result<Vec<Multinet>> {
    let n = lat.n();
    if !(3..=4).contains(&k) {
        return Ok(Vec::new());
    }
    if n > opts.max_lines {
        return Err(Error::Precondition(format!("search limited to {} lines", opts.max_lines)));
    }
    // every line of a non-local multinet lies on two base points
    if (0..n).any(|h| lat.flats_through(h).iter().filter(|&&x| lat.flats()[x].size() >= k).count() < 2) {
        return Ok(Vec::new());
    }
    // flats with fewer than k lines are monochromatic
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for fl in lat.flats().iter().filter(|f| f.size() < k) {
        for w in fl.lines.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|h| find(&mut parent, h)).collect();
    let blocks: Vec<Vec<usize>> = {
        let reps: BTreeSet<usize> = roots.iter().copied().collect();
        reps.iter().map(|&r| (0..n).filter(|&h| roots[h] == r).collect()).collect()
    };
    if blocks.len() < k {
        return Ok(Vec::new());
    }
    let block_of: Vec<usize> = (0..n).map(|h| blocks.iter().position(|b| b.contains(&h)).unwrap()).collect();
    // per flat: distinct blocks it meets
    let flat_blocks: Vec<Vec<usize>> = lat
        .flats()
        .iter()
        .map(|f| f.lines.iter().map(|&h| block_of[h]).collect::<BTreeSet<_>>().into_iter().collect())
        .collect();
    let mut color = vec![usize::MAX; blocks.len()];
    let mut partitions = Vec::new();
    color_blocks(0, 0, k, &flat_blocks, &mut color, &mut partitions, budget)?;
    let mut out = BTreeSet::new();
    for colors in partitions {
        let classes: Vec<Vec<usize>> = (0..k)
            .map(|c| (0..n).filter(|&h| colors[block_of[h]] == c).collect())
            .collect();
        if classes.iter().any(|c| c.len() < 2) {
            continue;
        }
        for m in multiplicity_solutions(lat, &classes, k, opts.m_bound, budget)? {
            let cand = Candidate { classes: classes.clone(), m, base_locus: None };
            if let Ok(net) = validate_multinet(lat, &cand) {
                if net.base_locus.len() >= 2 {
                    out.insert(net);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn color_blocks(
    next: usize,
    used: usize,
    k: usize,
    flat_blocks: &[Vec<usize>],
    color: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    // a flat with two colors must be able to reach all k
    for fb in flat_blocks {
        let mut present = [false; 4];
        let mut open = 0;
        for &b in fb {
            match color[b] {
                usize::MAX => open += 1,
                c => present[c] = true,
            }
        }
        let distinct = present.iter().filter(|&&p| p).count();
        if distinct >= 2 && distinct + open < k {
            return Ok(());
        }
    }
    if next == color.len() {
        if used == k {
            out.push(color.clone());
        }
        return Ok(());
    }
    // remaining blocks must still be able to introduce missing colors
    if k - used > color.len() - next {
        return Ok(());
    }
    for c in 0..(used + 1).min(k) {
        color[next] = c;
        color_blocks(next + 1, used.max(c + 1), k, flat_blocks, color, out, budget)?;
    }
    color[next] = usize::MAX;
    Ok(())
}

/// Primitive positive multiplicity vectors, entries at most `bound`,
/// balancing class weights and every full-colored flat.
fn multiplicity_solutions(
    lat: &Lattice,
    classes: &[Vec<usize>],
    k: usize,
    bound: u64,
    budget: &mut Budget,
) -> Result<Vec<Vec<u64>>> {
    let n = lat.n();
    let mut class_of = vec![0usize; n];
    for (i, c) in classes.iter().enumerate() {
        for &h in c {
            class_of[h] = i;
        }
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut add_balance = |sets: Vec<Vec<usize>>| {
        for i in 1..sets.len() {
            let mut row = vec![0i64; n];
            for &h in &sets[i] {
                row[h] += 1;
            }
            for &h in &sets[0] {
                row[h] -= 1;
            }
            rows.push(row);
        }
    };
    add_balance(classes.to_vec());
    for fl in lat.flats() {
        let per: Vec<Vec<usize>> =
            (0..k).map(|c| fl.lines.iter().copied().filter(|&h| class_of[h] == c).collect()).collect();
        if per.iter().filter(|p| !p.is_empty()).count() >= 2 {
            add_balance(per);
        }
    }
    let satisfies = |m: &[u64]| rows.iter().all(|r| r.iter().zip(m).map(|(&a, &b)| a * b as i64).sum::<i64>() == 0);
    let ones = vec![1u64; n];
    if k == 4 || bound == 1 {
        return Ok(if satisfies(&ones) { vec![ones] } else { Vec::new() });
    }
    let q = Rationals;
    let mat = Matrix::new(rows.clone(), n).map(&q);
    let ker = kernel(&q, &mat);
    match ker.len() {
        0 => Ok(Vec::new()),
        1 => {
            let v = &ker[0];
            let lcm = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
            let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
            if g.is_zero() {
                return Ok(Vec::new());
            }
            let sign = num_bigint::BigInt::from(if ints[0].is_negative() { -1 } else { 1 });
            let m: Option<Vec<u64>> = ints.iter().map(|x| ((x / &g) * &sign).to_u64()).collect();
            Ok(match m {
                Some(m) if m.iter().all(|&x| x >= 1 && x <= bound) => vec![m],
                _ => Vec::new(),
            })
        }
        _ => {
            let mut out = Vec::new();
            let mut m = vec![0u64; n];
            enumerate_m(0, bound, &rows, &mut m, &mut out, budget)?;
            Ok(out.into_iter().filter(|m| m.iter().fold(0u64, |g, &x| g.gcd(&x)) == 1).collect())
        }
    }
}

fn enumerate_m(
    pos: usize,
    bound: u64,
    rows: &[Vec<i64>],
    m: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    // equations whose last variable has been fixed
    for r in rows {
        let last = r.iter().rposition(|&c| c != 0).unwrap_or(0);
        if last < pos && r.iter().zip(m.iter()).map(|(&a, &b)| a * b as i64).sum::<i64>() != 0 {
            return Ok(());
        }
    }
    if pos == m.len() {
        out.push(m.clone());
        return Ok(());
    }
    for v in 1..=bound {
        m[pos] = v;
        enumerate_m(pos + 1, bound, rows, m, out, budget)?;
    }
    m[pos] = 0;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    Local,
    Multinet,
    TranslatedPrediction,
}

/// Character family ρ·T: the value on line H is ζ^{zeta_exp[H]}·t^{t_exp[H]}
/// with ζ a primitive root of unity of order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedTorus {
    pub order: u64,
    pub zeta_exp: Vec<i64>,
    pub t_exp: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceComponent {
    pub kind: ComponentKind,
    /// Lines of the sub-arrangement carrying the component.
    pub support: Vec<usize>,
    /// Integer spanning vectors in the ambient coordinates.
    pub basis: Vec<Vec<i64>>,
    pub dim: usize,
    /// Number of classes (k for multinets, |A_X| for local components).
    pub parts: usize,
    pub essential: bool,
    /// The multinet behind the component, in ambient indices.
    pub multinet: Option<Multinet>,
    pub torus: Option<TranslatedTorus>,
}

impl ResonanceComponent {
    pub fn translation_order(&self) -> Option<u64> {
        self.torus.as_ref().map(|t| t.order)
    }
}

/// P_M = span{u_i − u_1} with u_i = Σ_{H ∈ class i} m_H e_H; `support`
/// maps the multinet's line indices into an ambient arrangement of size n.
pub fn multinet_component(net: &Multinet, support: &[usize], n: usize) -> ResonanceComponent {
    let u: Vec<Vec<i64>> = net
        .classes
        .iter()
        .map(|c| {
            let mut v = vec![0i64; n];
            for &h in c {
                v[support[h]] = net.m[h] as i64;
            }
            v
        })
        .collect();
    let basis: Vec<Vec<i64>> =
        u[1..].iter().map(|ui| ui.iter().zip(&u[0]).map(|(a, b)| a - b).collect()).collect();
    let lifted = Multinet {
        classes: net.classes.iter().map(|c| c.iter().map(|&h| support[h]).collect()).collect(),
        m: {
            let mut m = vec![0u64; n];
            for (h, &s) in support.iter().enumerate() {
                m[s] = net.m[h];
            }
            m
        },
        ..net.clone()
    };
    ResonanceComponent {
        kind: ComponentKind::Multinet,
        support: support.to_vec(),
        dim: net.k - 1,
        basis,
        parts: net.k,
        essential: support.len() == n,
        multinet: Some(lifted),
        torus: None,
    }
}

fn local_component(lat: &Lattice, flat: usize) -> ResonanceComponent {
    let n = lat.n();
    let lines = &lat.flats()[flat].lines;
    let basis = lines[1..]
        .iter()
        .map(|&h| {
            let mut v = vec![0i64; n];
            v[h] = 1;
            v[lines[0]] = -1;
            v
        })
        .collect();
    ResonanceComponent {
        kind: ComponentKind::Local,
        support: lines.clone(),
        basis,
        dim: lines.len() - 1,
        parts: lines.len(),
        essential: lines.len() == n,
        multinet: None,
        torus: None,
    }
}

fn span_rank(vectors: &[&Vec<i64>], n: usize) -> usize {
    let rows: Vec<Vec<i64>> = vectors.iter().map(|v| (*v).clone()).collect();
    rank(&Rationals, &Matrix::new(rows, n).map(&Rationals))
}

/// Every sub-arrangement that can carry a multinet: at least six lines,
/// each on two flats of multiplicity ≥ 3 within the subset.
fn candidate_supports(lat: &Lattice) -> Vec<Vec<usize>> {
    let n = lat.n();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 6 {
            continue;
        }
        let inside = |h: usize| mask >> h & 1 == 1;
        let ok = (0..n).filter(|&h| inside(h)).all(|h| {
            lat.flats()
                .iter()
                .filter(|f| f.contains(h) && f.lines.iter().filter(|&&l| inside(l)).count() >= 3)
                .count()
                >= 2
        });
        if ok {
            out.push((0..n).filter(|&h| inside(h)).collect());
        }
    }
    out
}

/// Components of the first resonance variety over ℚ with at least s + 2
/// parts: local components first, then multinet components of all
/// sub-arrangements, keeping only maximal subspaces.
pub fn enumerate_r1_components(a: &Arrangement, s: usize, opts: &SearchOptions) -> Result<Vec<ResonanceComponent>> {
    let lat = Lattice::new(a)?;
    let n = a.n();
    if n > opts.max_lines {
        return Err(Error::Precondition(format!("component scan limited to {} lines", opts.max_lines)));
    }
    let mut comps: Vec<ResonanceComponent> =
        lat.multiple_points().map(|f| local_component(&lat, f.id)).collect();
    let mut budget = Budget { used: 0, limit: opts.node_budget };
    let mut found: Vec<ResonanceComponent> = Vec::new();
    for support in candidate_supports(&lat) {
        let sub = a.sub_arrangement(&support)?;
        let sub_lat = Lattice::new(&sub)?;
        for k in [3, 4] {
            for net in search_with_budget(&sub_lat, k, opts, &mut budget)? {
                found.push(multinet_component(&net, &support, n));
            }
        }
    }
    // drop subspaces contained in another one
    let mut keep = vec![true; found.len()];
    for i in 0..found.len() {
        for j in 0..found.len() {
            if i == j || !keep[j] {
                continue;
            }
            let both: Vec<&Vec<i64>> = found[i].basis.iter().chain(&found[j].basis).collect();
            let contained = span_rank(&both, n) == found[j].dim;
            if contained && (found[i].dim < found[j].dim || i > j) {
                keep[i] = false;
                break;
            }
        }
    }
    comps.extend(found.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c));
    comps.retain(|c| c.parts >= s + 2);
    Ok(comps)
}

/// A multinet with a distinguished line H with m_H > 1 dividing every n_X
/// over base points on H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedMultinet {
    pub multinet: Multinet,
    pub distinguished: usize,
}

pub fn find_pointed_multinets(lat: &Lattice, opts: &SearchOptions) -> Result<Vec<PointedMultinet>> {
    let mut out = Vec::new();
    for net in search_multinets(lat, 3, opts)? {
        out.extend(pointed_at(lat, &net));
    }
    Ok(out)
}

fn pointed_at(lat: &Lattice, net: &Multinet) -> Vec<PointedMultinet> {
    (0..lat.n())
        .filter(|&h| net.m[h] > 1)
        .filter(|&h| {
            net.base_locus
                .iter()
                .zip(&net.n_x)
                .filter(|(&x, _)| lat.flats()[x].contains(h))
                .all(|(_, &v)| v % net.m[h] == 0)
        })
        .map(|h| PointedMultinet { multinet: net.clone(), distinguished: h })
        .collect()
}

/// Predicted translated component of A ∖ {H}: the orbifold pencil sends
/// the class of H to a root of unity of order m_H, the first other class
/// to t and the second to (ζ t)⁻¹; a line contributes its class value to
/// the power m.
pub fn predict_translated_component(lat: &Lattice, pm: &PointedMultinet) -> Result<ResonanceComponent> {
    let net = &pm.multinet;
    let h = pm.distinguished;
    let order = net.m[h];
    if order < 2 || net.k != 3 || pointed_at(lat, net).iter().all(|p| p.distinguished != h) {
        return Err(Error::Precondition("not a pointed multinet".into()));
    }
    let ch = net.class_of(h);
    let others: Vec<usize> = (0..3).filter(|&c| c != ch).collect();
    let (mut zeta_exp, mut t_exp, mut support) = (Vec::new(), Vec::new(), Vec::new());
    for line in (0..lat.n()).filter(|&l| l != h) {
        let c = net.class_of(line);
        let m = net.m[line] as i64;
        let (z, t) = if c == ch {
            (m, 0)
        } else if c == others[0] {
            (0, m)
        } else {
            (-m, -m)
        };
        zeta_exp.push(z.rem_euclid(order as i64));
        t_exp.push(t);
        support.push(line);
    }
    Ok(ResonanceComponent {
        kind: ComponentKind::TranslatedPrediction,
        basis: vec![t_exp.clone()],
        support,
        dim: 1,
        parts: 3,
        essential: true,
        multinet: Some(net.clone()),
        torus: Some(TranslatedTorus { order, zeta_exp, t_exp }),
    })
}

/// Integer points of a component: Σ c_i b_i with the given coefficients.
pub fn combine(basis: &[Vec<i64>], coeffs: &[i64]) -> Vec<i64> {
    let n = basis.first().map_or(0, |b| b.len());
    (0..n).map(|j| basis.iter().zip(coeffs).map(|(b, c)| b[j] * c).sum()).collect()
}

/// Map an integer vector into a field.
pub fn to_field<F: Field>(f: &F, v: &[i64]) -> Vec<F::Elem> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

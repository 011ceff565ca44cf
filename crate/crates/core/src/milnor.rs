//! Milnor fibers of multi-arrangements as cyclic covers of the projective
//! complement, and homology of finite abelian covers in general.

use crate::arrangement::{mobius_poincare, Arrangement, Lattice, Multiplicity};
use crate::braid::{letter_gen, presentation_complement, projectivize_presentation, GroupPresentation};
use crate::error::{Error, Result};
use crate::jump::depth_profile;
use crate::scalar::charpoly::{factor_by_root_orders, FactoredCharPoly};
use crate::scalar::field::divisors;
use crate::scalar::roots::{consensus, find_cyclotomic_prime, RootOfUnityContext};
use crate::scalar::snf::smith_normal_form;
use serde::Serialize;
use serde_json::json;

/// Column bound for integral cover computations.
pub const DEFAULT_MAX_COLUMNS: usize = 4096;

/// A regular ℤ_N-cover of a presentation complex, classified by residues
/// of the generators.
#[derive(Clone, Debug)]
pub struct CyclicCoverSpec {
    pub presentation: GroupPresentation,
    pub n: u64,
    pub chi: Vec<u64>,
}

impl CyclicCoverSpec {
    pub fn new(presentation: GroupPresentation, n: u64, chi: Vec<u64>) -> Result<Self> {
        if n == 0 || chi.len() != presentation.gens() {
            return Err(Error::Precondition("cover degree or residue count is wrong".into()));
        }
        let chi: Vec<u64> = chi.into_iter().map(|c| c % n).collect();
        if chi.iter().fold(n, |g, &c| num_integer::gcd(g, c)) != 1 {
            return Err(Error::Precondition("residues do not generate ℤ_N".into()));
        }
        for r in &presentation.relators {
            let s: i64 = r.iter().map(|&l| l.signum() as i64 * chi[letter_gen(l)] as i64).sum();
            if s.rem_euclid(n as i64) != 0 {
                return Err(Error::Precondition("residues do not vanish on a relator".into()));
            }
        }
        Ok(CyclicCoverSpec { presentation, n, chi })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralH1 {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl std::fmt::Display for IntegralH1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// H₁ of the cover with integer coefficients.
///
/// Cells of the cover are indexed by (cell, residue); the boundary of a
/// lifted relator is its Fox calculus pushed into ℤ[ℤ_N]. Since the
/// cycles form a direct summand of the 1-chains, the torsion of H₁ is
/// the torsion of the cokernel of ∂₂.
pub fn integral_cover_homology(spec: &CyclicCoverSpec, max_columns: usize) -> Result<IntegralH1> {
    let n = spec.n as usize;
    let gens = spec.presentation.gens();
    let cols = n * gens;
    if cols > max_columns {
        return Err(Error::BudgetExceeded { needed: cols, allowed: max_columns });
    }
    let mut rows = Vec::with_capacity(n * spec.presentation.relators.len());
    for r in &spec.presentation.relators {
        let fox = pushed_fox(r, &spec.chi, spec.n);
        for a in 0..n {
            let mut row = vec![0i64; cols];
            for (&(j, k), &c) in &fox {
                row[j * n + (a + k as usize) % n] += c;
            }
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    let snf = smith_normal_form(&rows, cols);
    Ok(IntegralH1 { rank: cols - (n - 1) - snf.rank, torsion: snf.torsion_u64() })
}

/// Fox derivatives of a word in ℤ[ℤ_N]: coefficient of t^k in ∂w/∂x_j,
/// keyed by (j, k).
fn pushed_fox(word: &[i32], chi: &[u64], n: u64) -> std::collections::BTreeMap<(usize, u64), i64> {
    let mut out = std::collections::BTreeMap::new();
    let mut prefix = 0u64;
    for &l in word {
        let g = letter_gen(l);
        if l > 0 {
            *out.entry((g, prefix)).or_insert(0) += 1;
            prefix = (prefix + chi[g]) % n;
        } else {
            prefix = (prefix + n - chi[g]) % n;
            *out.entry((g, prefix)).or_insert(0) -= 1;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Characters ρ_j(x_H) = ζ^{j·m_H}, j = 0..N−1, in a context of order N.
pub fn delta_character(m: &Multiplicity, ctx: &RootOfUnityContext) -> Result<Vec<Vec<u64>>> {
    let total = m.total();
    if ctx.n != total {
        return Err(Error::Precondition(format!("context has order {}, expected {total}", ctx.n)));
    }
    Ok((0..total as i64)
        .map(|j| m.as_slice().iter().map(|&mh| ctx.zeta_pow(j * mh as i64)).collect())
        .collect())
}

/// The Milnor fiber F_m of a multi-arrangement, viewed as the ℤ_N-cover
/// of the projective complement U.
#[derive(Clone, Debug)]
pub struct MilnorFiber {
    pub presentation: GroupPresentation,
    pub m: Multiplicity,
    pub n_cover: u64,
    pub b1_u: usize,
    pub euler_u: i64,
}

impl MilnorFiber {
    pub fn new(a: &Arrangement, m: Multiplicity) -> Result<Self> {
        if m.as_slice().len() != a.n() {
            return Err(Error::Multiplicity(format!("expected {} entries", a.n())));
        }
        let lat = Lattice::new(a)?;
        let summary = mobius_poincare(a, &lat);
        let presentation = projectivize_presentation(&presentation_complement(a)?)?;
        Ok(MilnorFiber {
            presentation,
            n_cover: m.total(),
            m,
            b1_u: summary.b1_u() as usize,
            euler_u: summary.euler_u,
        })
    }

    pub fn reduced(a: &Arrangement) -> Result<Self> {
        Self::new(a, Multiplicity::ones(a.n()))
    }

    pub fn cover_spec(&self) -> CyclicCoverSpec {
        let chi = self.m.as_slice().iter().map(|&x| x % self.n_cover).collect();
        CyclicCoverSpec { presentation: self.presentation.clone(), n: self.n_cover, chi }
    }

    /// Context of order N in characteristic p.
    pub fn context(&self, p: u64) -> Result<RootOfUnityContext> {
        RootOfUnityContext::in_characteristic(self.n_cover, p).ok_or(Error::BadPrime { p, n: self.n_cover })
    }

    /// depth(ρ_j) for j = 0..N−1.
    pub fn depths(&self, ctx: &RootOfUnityContext) -> Result<Vec<usize>> {
        if self.n_cover.is_multiple_of(ctx.p()) {
            return Err(Error::BadPrime { p: ctx.p(), n: self.n_cover });
        }
        depth_profile(&ctx.field, &self.presentation, &delta_character(&self.m, ctx)?)
    }

    /// dim H₁(F_m) over the context field.
    pub fn h1_dim(&self, ctx: &RootOfUnityContext) -> Result<usize> {
        Ok(self.depths(ctx)?.iter().sum())
    }

    pub fn charpoly_q1(&self, ctx: &RootOfUnityContext) -> Result<FactoredCharPoly> {
        let roots: Vec<u64> = self
            .depths(ctx)?
            .iter()
            .enumerate()
            .flat_map(|(j, &d)| std::iter::repeat_n(ctx.zeta_pow(j as i64), d))
            .collect();
        Ok(factor_by_root_orders(&roots, ctx))
    }

    /// Depth profiles at the first `k` primes p ≡ 1 (mod N) above 100,
    /// with the majority profile.
    pub fn consensus_depths(&self, k: usize) -> Result<(Vec<(u64, Vec<usize>)>, Vec<usize>)> {
        let table = (0..k)
            .map(|i| {
                let ctx = find_cyclotomic_prime(self.n_cover, i);
                Ok((ctx.p(), self.depths(&ctx)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let profiles: Vec<Vec<usize>> = table.iter().map(|(_, d)| d.clone()).collect();
        let value = consensus(&profiles).value.ok_or_else(|| Error::Precondition("no majority among primes".into()))?;
        Ok((table, value))
    }

    /// Δ₁ in characteristic zero, by consensus over three primes.
    pub fn monodromy_charpoly_q1(&self) -> Result<FactoredCharPoly> {
        let (_, depths) = self.consensus_depths(3)?;
        let ctx = find_cyclotomic_prime(self.n_cover, 0);
        let roots: Vec<u64> = depths
            .iter()
            .enumerate()
            .flat_map(|(j, &d)| std::iter::repeat_n(ctx.zeta_pow(j as i64), d))
            .collect();
        let mut poly = factor_by_root_orders(&roots, &ctx);
        poly.field = crate::scalar::charpoly::FieldTag::Rational;
        Ok(poly)
    }

    /// Δ₂ = Δ₁ · (t^N − 1)^{χ(U)} / (t − 1).
    pub fn monodromy_charpoly_q2(&self, q1: &FactoredCharPoly) -> Result<FactoredCharPoly> {
        if q1.galois_imbalance {
            return Err(Error::Precondition("Δ₁ is not a product of cyclotomic polynomials".into()));
        }
        let pairs = q1.cyclotomic_pairs().ok_or_else(|| Error::Precondition("explicit factors in Δ₁".into()))?;
        let mut exps: std::collections::BTreeMap<u64, i64> = pairs.iter().map(|&(r, e)| (r, e as i64)).collect();
        for d in divisors(self.n_cover) {
            *exps.entry(d).or_insert(0) += self.euler_u;
        }
        *exps.entry(1).or_insert(0) -= 1;
        if exps.values().any(|&e| e < 0) {
            return Err(Error::Precondition("Δ₂ would not be a polynomial".into()));
        }
        let out: Vec<(u64, u32)> = exps.into_iter().map(|(r, e)| (r, e as u32)).collect();
        let poly = FactoredCharPoly::from_cyclotomic(&out);
        let b1 = q1.degree() as i64;
        let b2 = self.n_cover as i64 * self.euler_u - 1 + b1;
        if poly.degree() as i64 != b2 {
            return Err(Error::Precondition("degree of Δ₂ differs from b₂(F)".into()));
        }
        Ok(poly)
    }

    pub fn integral_h1(&self, max_columns: usize) -> Result<IntegralH1> {
        integral_cover_homology(&self.cover_spec(), max_columns)
    }

    pub fn invariants(&self, primes: &[u64], max_columns: usize) -> Result<MilnorInvariants> {
        let q1 = self.monodromy_charpoly_q1()?;
        let q2 = self.monodromy_charpoly_q2(&q1)?;
        let per_prime = primes
            .iter()
            .map(|&p| Ok((p, self.h1_dim(&self.context(p)?)?)))
            .collect::<Result<Vec<_>>>()?;
        let integral = match self.integral_h1(max_columns) {
            Ok(h) => Some(h),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(MilnorInvariants { n_cover: self.n_cover, b1: q1.degree(), charpoly_q1: q1, charpoly_q2: q2, integral_h1: integral, per_prime })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorInvariants {
    pub n_cover: u64,
    pub b1: usize,
    pub charpoly_q1: FactoredCharPoly,
    pub charpoly_q2: FactoredCharPoly,
    pub integral_h1: Option<IntegralH1>,
    pub per_prime: Vec<(u64, usize)>,
}

impl MilnorInvariants {
    pub fn to_json(&self) -> serde_json::Value {
        let per_prime: serde_json::Map<String, serde_json::Value> =
            self.per_prime.iter().map(|(p, d)| (p.to_string(), json!(d))).collect();
        json!({
            "N": self.n_cover,
            "b1": self.b1,
            "per_prime": per_prime,
            "charpoly_q1": self.charpoly_q1.to_json_value(),
            "charpoly_q2": self.charpoly_q2.to_json_value(),
            "integral_h1": self.integral_h1,
        })
    }
}

/// Characters of A = ⊕ ℤ_{orders[i]} pulled back along `chi`, where
/// chi[h][i] is the residue of generator h in the i-th factor.
fn pulled_back_characters(chi: &[Vec<u64>], orders: &[u64], ctx: &RootOfUnityContext) -> Result<Vec<Vec<u64>>> {
    if orders.iter().any(|&d| d == 0 || !ctx.n.is_multiple_of(d)) {
        return Err(Error::ContextTooSmall(ctx.n));
    }
    let size: u64 = orders.iter().product();
    if size.is_multiple_of(ctx.p()) {
        return Err(Error::BadPrime { p: ctx.p(), n: size });
    }
    let mut out = Vec::with_capacity(size as usize);
    for mut code in 0..size {
        let ks: Vec<u64> = orders
            .iter()
            .map(|&d| {
                let k = code % d;
                code /= d;
                k
            })
            .collect();
        out.push(
            chi.iter()
                .map(|res| {
                    let e: u64 = ks.iter().zip(res).zip(orders).map(|((k, r), d)| k * r * (ctx.n / d)).sum();
                    ctx.zeta_pow((e % ctx.n) as i64)
                })
                .collect(),
        );
    }
    Ok(out)
}

/// b₁ of the finite abelian cover classified by `chi`: the sum of depths
/// over all characters of A pulled back to the base.
pub fn abelian_cover_betti(
    p: &GroupPresentation,
    chi: &[Vec<u64>],
    orders: &[u64],
    ctx: &RootOfUnityContext,
) -> Result<usize> {
    if chi.len() != p.gens() || chi.iter().any(|r| r.len() != orders.len()) {
        return Err(Error::Precondition("residue table has the wrong shape".into()));
    }
    let chars = pulled_back_characters(chi, orders, ctx)?;
    Ok(depth_profile(&ctx.field, p, &chars)?.iter().sum())
}

/// Characteristic polynomial of the deck transformation 1 ∈ ℤ_order on H₁
/// of a cyclic cover.
pub fn abelian_cover_monodromy(
    p: &GroupPresentation,
    chi: &[u64],
    order: u64,
    ctx: &RootOfUnityContext,
) -> Result<FactoredCharPoly> {
    let table: Vec<Vec<u64>> = chi.iter().map(|&c| vec![c]).collect();
    let chars = pulled_back_characters(&table, &[order], ctx)?;
    let depths = depth_profile(&ctx.field, p, &chars)?;
    let step = (ctx.n / order) as i64;
    let roots: Vec<u64> = depths
        .iter()
        .enumerate()
        .flat_map(|(j, &d)| std::iter::repeat_n(ctx.zeta_pow(j as i64 * step), d))
        .collect();
    Ok(factor_by_root_orders(&roots, ctx))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionScan {
    pub per_prime: Vec<(u64, usize)>,
    pub char0: usize,
    /// Primes whose dimension exceeds the characteristic-zero value, with
    /// the excess (the number of ℤ_{p^k} summands of H₁).
    pub excess: Vec<(u64, usize)>,
}

pub fn torsion_scan(fiber: &MilnorFiber, primes: &[u64]) -> Result<TorsionScan> {
    let (_, depths) = fiber.consensus_depths(3)?;
    let char0: usize = depths.iter().sum();
    let per_prime = primes
        .iter()
        .map(|&p| Ok((p, fiber.h1_dim(&fiber.context(p)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let excess = per_prime.iter().filter(|(_, d)| *d > char0).map(|&(p, d)| (p, d - char0)).collect();
    Ok(TorsionScan { per_prime, char0, excess })
}

/// Numerology of the polarization of a multi-arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polarization {
    pub rank: usize,
    pub size: u64,
    pub torsion_degree: usize,
}

pub fn polarization_summary(a: &Arrangement, m: &Multiplicity) -> Polarization {
    let heavy = |k: u64| m.as_slice().iter().filter(|&&x| x >= k).count();
    Polarization { rank: a.rank() + heavy(2), size: m.total(), torsion_degree: 1 + heavy(3) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog_lookup;
    use crate::scalar::charpoly::Factor;

    fn arr(name: &str) -> Arrangement {
        catalog_lookup(name).unwrap().arrangement
    }

    fn deleted_b3() -> MilnorFiber {
        let a = arr("deleted-B3");
        MilnorFiber::new(&a, Multiplicity::new(vec![2, 1, 3, 3, 2, 2, 1, 1], 8).unwrap()).unwrap()
    }

    #[test]
    fn characters() {
        let ctx = find_cyclotomic_prime(6, 0);
        let chars = delta_character(&Multiplicity::ones(6), &ctx).unwrap();
        assert_eq!(chars.len(), 6);
        assert!(chars[0].iter().all(|&v| v == 1));
        assert_eq!(chars[1], vec![ctx.zeta; 6]);
        assert_eq!(Multiplicity::new(vec![2, 2], 2).unwrap_err(), Error::NonPrimitiveMultiplicity(2));
        let m = Multiplicity::new(vec![2, 1, 3, 3, 2, 2, 1, 1], 8).unwrap();
        assert_eq!(m.total(), 15);
    }

    #[test]
    fn braid_fiber() {
        let f = MilnorFiber::reduced(&arr("braid-A3")).unwrap();
        let q1 = f.monodromy_charpoly_q1().unwrap();
        assert!(q1.same_factors(&FactoredCharPoly::from_cyclotomic(&[(1, 5), (3, 1)])));
        assert_eq!(f.h1_dim(&find_cyclotomic_prime(6, 0)).unwrap(), 7);
        let q2 = f.monodromy_charpoly_q2(&q1).unwrap();
        assert_eq!(q2.degree(), 18);
        // Δ₁ (t⁶−1)² / (t−1)
        assert!(q2.same_factors(&FactoredCharPoly::from_cyclotomic(&[(1, 6), (2, 2), (3, 3), (6, 2)])));
        assert_eq!(f.integral_h1(DEFAULT_MAX_COLUMNS).unwrap(), IntegralH1 { rank: 7, torsion: vec![] });
        assert_eq!(f.context(3).unwrap_err(), Error::BadPrime { p: 3, n: 6 });
    }

    #[test]
    fn golden_charpolys() {
        for (name, pairs) in [
            ("B3", vec![(1, 8)]),
            ("ceva3", vec![(1, 8), (3, 2)]),
            ("pappus-1", vec![(1, 8), (3, 1)]),
            ("pappus-2", vec![(1, 8)]),
        ] {
            let f = MilnorFiber::reduced(&arr(name)).unwrap();
            let q1 = f.monodromy_charpoly_q1().unwrap();
            assert!(q1.same_factors(&FactoredCharPoly::from_cyclotomic(&pairs)), "{name}: {q1}");
        }
    }

    #[test]
    fn pencil_genus() {
        for (lines, m) in [(3usize, vec![1u64, 1, 1]), (4, vec![1, 2, 1, 3]), (3, vec![2, 3, 1])] {
            let a = crate::arrangement::catalog_lookup(&format!("pencil({})", lines - 1)).unwrap().arrangement;
            assert_eq!(a.n(), lines);
            let m = Multiplicity::new(m, lines).unwrap();
            let big_n = m.total() as usize;
            let f = MilnorFiber::new(&a, m).unwrap();
            let ctx = find_cyclotomic_prime(f.n_cover, 0);
            assert_eq!(f.h1_dim(&ctx).unwrap(), big_n * (lines - 2) + 1);
            let q1 = f.monodromy_charpoly_q1().unwrap();
            assert_eq!(f.monodromy_charpoly_q2(&q1).unwrap().degree(), 0);
            assert_eq!(torsion_scan(&f, &[11, 13]).unwrap().excess, vec![]);
        }
    }

    #[test]
    fn deleted_b3_torsion() {
        let f = deleted_b3();
        assert_eq!(f.n_cover, 15);
        let gf16 = f.context(2).unwrap();
        assert_eq!(gf16.field.order(), 16);
        assert_eq!(f.h1_dim(&gf16).unwrap(), 9);
        let poly = f.charpoly_q1(&gf16).unwrap();
        assert_eq!(poly.factors, vec![(Factor::Cyclotomic(1), 7), (Factor::Cyclotomic(3), 1)]);
        assert!(f.monodromy_charpoly_q1().unwrap().same_factors(&FactoredCharPoly::from_cyclotomic(&[(1, 7)])));
        assert_eq!(f.integral_h1(DEFAULT_MAX_COLUMNS).unwrap(), IntegralH1 { rank: 7, torsion: vec![2, 2] });
        let scan = torsion_scan(&f, &[2, 151, 181]).unwrap();
        assert_eq!(scan.char0, 7);
        assert_eq!(scan.excess, vec![(2, 2)]);
        assert_eq!(f.integral_h1(100).unwrap_err(), Error::BudgetExceeded { needed: 120, allowed: 100 });
    }

    #[test]
    fn cover_specializations() {
        let f = deleted_b3();
        let ctx = find_cyclotomic_prime(15, 0);
        let chi: Vec<Vec<u64>> = f.m.as_slice().iter().map(|&x| vec![x]).collect();
        assert_eq!(abelian_cover_betti(&f.presentation, &chi, &[15], &ctx).unwrap(), f.h1_dim(&ctx).unwrap());
        let mono = abelian_cover_monodromy(&f.presentation, f.m.as_slice(), 15, &ctx).unwrap();
        assert!(mono.same_factors(&f.charpoly_q1(&ctx).unwrap()));
        // trivial group and trivial cover
        let zero: Vec<Vec<u64>> = vec![vec![]; 8];
        assert_eq!(abelian_cover_betti(&f.presentation, &zero, &[], &ctx).unwrap(), 7);
        let one = CyclicCoverSpec::new(f.presentation.clone(), 1, vec![0; 8]).unwrap();
        assert_eq!(integral_cover_homology(&one, 64).unwrap(), IntegralH1 { rank: 7, torsion: vec![] });
        let triv = abelian_cover_monodromy(&f.presentation, &[0; 8], 1, &ctx).unwrap();
        assert!(triv.same_factors(&FactoredCharPoly::from_cyclotomic(&[(1, 7)])));
        // the 3-fold cover Y in characteristic 2
        let y: Vec<Vec<u64>> = [2, 1, 0, 0, 2, 2, 1, 1].iter().map(|&x| vec![x]).collect();
        let gf4 = RootOfUnityContext::in_characteristic(3, 2).unwrap();
        let big = find_cyclotomic_prime(3, 0);
        let b_y = abelian_cover_betti(&f.presentation, &y, &[3], &gf4).unwrap();
        assert!(b_y >= abelian_cover_betti(&f.presentation, &y, &[3], &big).unwrap());
    }

    #[test]
    fn galois_sweep() {
        let f = MilnorFiber::reduced(&arr("ceva3")).unwrap();
        let ctx = find_cyclotomic_prime(9, 0);
        let base = f.h1_dim(&ctx).unwrap();
        for k in [2, 4, 5, 7, 8] {
            let other = RootOfUnityContext { zeta: ctx.zeta_pow(k), ..ctx.clone() };
            assert_eq!(f.h1_dim(&other).unwrap(), base);
        }
    }

    #[test]
    fn polarization() {
        let a = arr("deleted-B3");
        let m = Multiplicity::new(vec![8, 1, 3, 3, 5, 5, 1, 1], 8).unwrap();
        assert_eq!(polarization_summary(&a, &m), Polarization { rank: 8, size: 27, torsion_degree: 6 });
        let m = Multiplicity::new(vec![2, 1, 3, 3, 2, 2, 1, 1], 8).unwrap();
        assert_eq!(polarization_summary(&a, &m), Polarization { rank: 8, size: 15, torsion_degree: 3 });
        assert_eq!(polarization_summary(&a, &Multiplicity::ones(8)), Polarization { rank: 3, size: 8, torsion_degree: 1 });
    }
}

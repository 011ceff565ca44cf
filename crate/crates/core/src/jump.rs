//! Fox calculus, Alexander matrices, and homology with rank-one local
//! coefficients.

use crate::braid::{exponent_sums, letter_gen, GroupPresentation};
use crate::error::{Error, Result};
use crate::multinet::{ComponentKind, ResonanceComponent};
use crate::scalar::field::Field;
use crate::scalar::linalg::{rank, Matrix};
use crate::scalar::roots::RootOfUnityContext;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Laurent polynomial in t₁..t_n: exponent vector ↦ integer coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly(pub BTreeMap<Vec<i64>, i64>);

impl LaurentPoly {
    fn add_term(&mut self, e: Vec<i64>, c: i64) {
        let slot = self.0.entry(e.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate<F: Field>(&self, f: &F, values: &[F::Elem]) -> F::Elem {
        let inv: Vec<F::Elem> = values.iter().map(|v| f.inv(v).expect("unit")).collect();
        self.0.iter().fold(f.zero(), |acc, (e, &c)| {
            let mono = e.iter().enumerate().fold(f.from_i64(c), |m, (i, &k)| {
                let base = if k >= 0 { &values[i] } else { &inv[i] };
                f.mul(&m, &f.pow(base, k.unsigned_abs()))
            });
            f.add(&acc, &mono)
        })
    }
}

/// Abelianized Fox Jacobian: rows are relators, columns generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    pub cols: usize,
    pub entries: Vec<Vec<LaurentPoly>>,
}

pub fn alexander_matrix(p: &GroupPresentation) -> AlexanderMatrix {
    let n = p.gens();
    let entries = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![LaurentPoly::default(); n];
            let mut prefix = vec![0i64; n];
            for &l in r {
                let g = letter_gen(l);
                if l > 0 {
                    row[g].add_term(prefix.clone(), 1);
                    prefix[g] += 1;
                } else {
                    prefix[g] -= 1;
                    row[g].add_term(prefix.clone(), -1);
                }
            }
            row
        })
        .collect();
    AlexanderMatrix { cols: n, entries }
}

impl AlexanderMatrix {
    pub fn evaluate<F: Field>(&self, f: &F, rho: &[F::Elem]) -> Matrix<F::Elem> {
        Matrix::new(self.entries.iter().map(|r| r.iter().map(|e| e.evaluate(f, rho)).collect()).collect(), self.cols)
    }
}

/// One Fox row evaluated at ρ by a running prefix value.
pub fn fox_row<F: Field>(f: &F, word: &[i32], rho: &[F::Elem], rho_inv: &[F::Elem]) -> Vec<F::Elem> {
    let mut row = vec![f.zero(); rho.len()];
    let mut pv = f.one();
    for &l in word {
        let g = letter_gen(l);
        if l > 0 {
            row[g] = f.add(&row[g], &pv);
            pv = f.mul(&pv, &rho[g]);
        } else {
            pv = f.mul(&pv, &rho_inv[g]);
            row[g] = f.sub(&row[g], &pv);
        }
    }
    row
}

fn check_character<F: Field>(f: &F, p: &GroupPresentation, rho: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if rho.len() != p.gens() {
        return Err(Error::FieldMismatch(format!("{} values for {} generators", rho.len(), p.gens())));
    }
    let inv: Vec<F::Elem> = rho
        .iter()
        .map(|v| f.inv(v).ok_or_else(|| Error::FieldMismatch("character value 0".into())))
        .collect::<Result<_>>()?;
    for r in &p.relators {
        let value = exponent_sums(r, p.gens()).iter().enumerate().fold(f.one(), |acc, (i, &e)| {
            let base = if e >= 0 { &rho[i] } else { &inv[i] };
            f.mul(&acc, &f.pow(base, e.unsigned_abs()))
        });
        if value != f.one() {
            return Err(Error::FieldMismatch("character does not kill a relator".into()));
        }
    }
    Ok(inv)
}

/// Φ(ρ), the Alexander matrix at a character.
pub fn alexander_at<F: Field>(f: &F, p: &GroupPresentation, rho: &[F::Elem]) -> Result<Matrix<F::Elem>> {
    let inv = check_character(f, p, rho)?;
    Ok(Matrix::new(p.relators.iter().map(|r| fox_row(f, r, rho, &inv)).collect(), p.gens()))
}

/// dim H₁ of the presentation complex with coefficients twisted by ρ.
pub fn local_system_h1<F: Field>(f: &F, p: &GroupPresentation, rho: &[F::Elem]) -> Result<usize> {
    let phi = alexander_at(f, p, rho)?;
    let d1 = usize::from(rho.iter().any(|v| *v != f.one()));
    Ok(p.gens() - d1 - rank(f, &phi))
}

/// Per-character depths; evaluated in parallel, returned in input order.
pub fn depth_profile<F: Field>(f: &F, p: &GroupPresentation, characters: &[Vec<F::Elem>]) -> Result<Vec<usize>> {
    characters.par_iter().map(|rho| local_system_h1(f, p, rho)).collect()
}

/// Linearized Alexander matrix: entry (i, j) is Σ_k ε(∂_k∂_j r_i) y_k,
/// stored as the coefficient vector over k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedMatrix {
    pub cols: usize,
    pub entries: Vec<Vec<Vec<i64>>>,
}

pub fn linearized_matrix(p: &GroupPresentation) -> Result<LinearizedMatrix> {
    if !p.is_commutator_relators() {
        return Err(Error::NotCommutatorRelators);
    }
    let n = p.gens();
    let entries = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![vec![0i64; n]; n];
            let mut prefix = vec![0i64; n];
            for &l in r {
                let g = letter_gen(l);
                if l > 0 {
                    row[g].iter_mut().zip(&prefix).for_each(|(a, b)| *a += b);
                    prefix[g] += 1;
                } else {
                    prefix[g] -= 1;
                    row[g].iter_mut().zip(&prefix).for_each(|(a, b)| *a -= b);
                }
            }
            row
        })
        .collect();
    Ok(LinearizedMatrix { cols: n, entries })
}

impl LinearizedMatrix {
    pub fn evaluate<F: Field>(&self, f: &F, a: &[F::Elem]) -> Matrix<F::Elem> {
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|coeffs| coeffs.iter().zip(a).fold(f.zero(), |acc, (&c, x)| f.add(&acc, &f.mul(&f.from_i64(c), x))))
                    .collect()
            })
            .collect();
        Matrix::new(rows, self.cols)
    }

    /// Resonance depth of a nonzero a with Σ a_i = 0, read off a complement
    /// presentation: n − 1 − rank Φ^lin(a).
    pub fn resonance_depth<F: Field>(&self, f: &F, a: &[F::Elem]) -> Result<usize> {
        if a.iter().all(|x| f.is_zero(x)) {
            return Err(Error::ZeroVector);
        }
        Ok(self.cols - 1 - rank(f, &self.evaluate(f, a)))
    }
}

/// Character of line values ζ^{e_H} in a root-of-unity context.
pub fn torsion_character(ctx: &RootOfUnityContext, exponents: &[i64]) -> Vec<u64> {
    exponents.iter().map(|&e| ctx.zeta_pow(e)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    /// Exponents of ζ_N on each generator.
    pub exponents: Vec<i64>,
    pub depth: usize,
    pub on_component: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionReport {
    pub context_order: u64,
    pub prime: u64,
    pub points: Vec<SamplePoint>,
}

impl PredictionReport {
    pub fn passed(&self) -> bool {
        !self.points.is_empty() && self.points.iter().all(|p| p.pass)
    }
}

/// Sample ρ·T at t = ζ^j and the untranslated T as controls; the torus is
/// expected to carry depth ≥ 1, the controls depth 0.
pub fn verify_component_prediction(
    p: &GroupPresentation,
    pred: &ResonanceComponent,
    ctx: &RootOfUnityContext,
    samples: usize,
) -> Result<PredictionReport> {
    let torus = match (&pred.kind, &pred.torus) {
        (ComponentKind::TranslatedPrediction, Some(t)) => t,
        _ => return Err(Error::Precondition("expected a translated prediction".into())),
    };
    if !ctx.n.is_multiple_of(torus.order) || ctx.n <= 2 * torus.order {
        return Err(Error::ContextTooSmall(ctx.n));
    }
    let f = &ctx.field;
    let step = (ctx.n / torus.order) as i64;
    let mut points = Vec::new();
    for j in 1..ctx.n as i64 {
        if points.len() >= 2 * samples {
            break;
        }
        let on: Vec<i64> = torus.zeta_exp.iter().zip(&torus.t_exp).map(|(z, t)| z * step + t * j).collect();
        let off: Vec<i64> = torus.t_exp.iter().map(|t| t * j).collect();
        if off.iter().all(|e| e.rem_euclid(ctx.n as i64) == 0) {
            continue;
        }
        for (exps, on_component) in [(on, true), (off, false)] {
            let rho = torsion_character(ctx, &exps);
            let depth = local_system_h1(f, p, &rho)?;
            let pass = if on_component { depth >= 1 } else { depth == 0 };
            points.push(SamplePoint { exponents: exps, depth, on_component, pass });
        }
    }
    Ok(PredictionReport { context_order: ctx.n, prime: ctx.p(), points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog_lookup;
    use crate::braid::{presentation_complement, projectivize_presentation, PresentationKind};
    use crate::scalar::field::{Fq, Rationals};
    use crate::scalar::roots::find_cyclotomic_prime;
    use num_rational::BigRational;

    fn pres(relators: Vec<Vec<i32>>, n: usize) -> GroupPresentation {
        GroupPresentation {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            relators,
            kind: PresentationKind::Other,
            boundary_word: None,
        }
    }

    fn proj(name: &str) -> GroupPresentation {
        projectivize_presentation(&presentation_complement(&catalog_lookup(name).unwrap().arrangement).unwrap()).unwrap()
    }

    #[test]
    fn commutator_fox_row() {
        let p = pres(vec![vec![1, 2, -1, -2]], 2);
        let m = alexander_matrix(&p);
        // [1 − t₂, t₁ − 1]
        let e0: Vec<(Vec<i64>, i64)> = m.entries[0][0].0.clone().into_iter().collect();
        assert_eq!(e0, vec![(vec![0, 0], 1), (vec![0, 1], -1)]);
        let e1: Vec<(Vec<i64>, i64)> = m.entries[0][1].0.clone().into_iter().collect();
        assert_eq!(e1, vec![(vec![0, 0], -1), (vec![1, 0], 1)]);
        let lin = linearized_matrix(&p).unwrap();
        assert_eq!(lin.entries[0], vec![vec![0, -1], vec![1, 0]]);
        let f = Fq::prime(7);
        assert_eq!(local_system_h1(&f, &p, &[3, 5]).unwrap(), 0);
        assert_eq!(local_system_h1(&f, &p, &[1, 1]).unwrap(), 2);
        assert!(matches!(local_system_h1(&f, &p, &[1]), Err(Error::FieldMismatch(_))));
        let direct = alexander_at(&f, &p, &[3, 5]).unwrap();
        assert_eq!(direct.rows, m.evaluate(&f, &[3, 5]).rows);
        assert!(linearized_matrix(&pres(vec![vec![1, 1]], 1)).is_err());
    }

    #[test]
    fn trivial_character_gives_first_betti() {
        let f = Fq::prime(101);
        for name in crate::arrangement::CATALOG_NAMES {
            let a = catalog_lookup(name).unwrap().arrangement;
            let c = presentation_complement(&a).unwrap();
            assert_eq!(local_system_h1(&f, &c, &vec![1; a.n()]).unwrap(), a.n(), "{name}");
            let p = projectivize_presentation(&c).unwrap();
            assert_eq!(local_system_h1(&f, &p, &vec![1; a.n()]).unwrap(), a.n() - 1, "{name}");
        }
    }

    #[test]
    fn pencil_group_is_free() {
        let ctx = find_cyclotomic_prime(12, 0);
        let p = proj("pencil(3)");
        // F₃: every nontrivial character has depth 2
        for e in [[1, 2, 3, 6], [5, 5, 1, 1], [0, 0, 6, 6]] {
            assert_eq!(local_system_h1(&ctx.field, &p, &torsion_character(&ctx, &e)).unwrap(), 2);
        }
        let b = proj("boolean(3)");
        assert_eq!(local_system_h1(&ctx.field, &b, &torsion_character(&ctx, &[1, 2, 9])).unwrap(), 0);
    }

    #[test]
    fn milnor_characters_of_braid_and_ceva() {
        let ctx = find_cyclotomic_prime(6, 0);
        let p = proj("braid-A3");
        let chars: Vec<Vec<u64>> = (0..6).map(|j| torsion_character(&ctx, &[j; 6])).collect();
        assert_eq!(depth_profile(&ctx.field, &p, &chars).unwrap(), vec![5, 0, 1, 0, 1, 0]);
        let p = proj("B3");
        let ctx = find_cyclotomic_prime(9, 0);
        let chars: Vec<Vec<u64>> = (1..9).map(|j| torsion_character(&ctx, &[j; 9])).collect();
        assert_eq!(depth_profile(&ctx.field, &p, &chars).unwrap(), vec![0; 8]);
        let p = proj("ceva3");
        let d: Vec<usize> = [3, 6].iter().map(|&j| local_system_h1(&ctx.field, &p, &torsion_character(&ctx, &[j; 9])).unwrap()).collect();
        assert_eq!(d, vec![2, 2]);
    }

    #[test]
    fn linearized_depth_matches_orlik_solomon() {
        use crate::arrangement::Lattice;
        use crate::os::OsDegree2;
        let q = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
        for (name, a) in [
            ("braid-A3", vec![-1, -1, 1, 1, 0, 0]),
            ("braid-A3", vec![3, -1, 4, -1, -5, 0]),
            ("braid-A3", vec![1, 0, 0, 0, 0, -1]),
            ("generic(4)", vec![1, 2, -4, 1]),
        ] {
            let arr = catalog_lookup(name).unwrap().arrangement;
            let lin = linearized_matrix(&presentation_complement(&arr).unwrap()).unwrap();
            let os = OsDegree2::new(Rationals, &Lattice::new(&arr).unwrap());
            assert_eq!(lin.resonance_depth(&Rationals, &q(&a)).unwrap(), os.resonance_depth(&q(&a)).unwrap(), "{name} {a:?}");
        }
    }
}

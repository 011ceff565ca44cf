use arrtopo::arrangement::{catalog_lookup, mobius_poincare, Arrangement, Lattice};
use arrtopo::boundary::*;
use arrtopo::milnor::MilnorFiber;
use arrtopo::os::OsDegree2;
use arrtopo::scalar::charpoly::{factor_by_root_orders, roots_in_context};
use arrtopo::scalar::field::{Field, Fq, Rationals};
use arrtopo::scalar::linalg::{rank, Matrix};
use arrtopo::scalar::roots::{find_cyclotomic_prime, RootOfUnityContext};
use arrtopo::scalar::snf::smith_normal_form;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

/// Planar arrangements with small coefficients; duplicates are dropped.
fn planar_arrangement() -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3..8).prop_filter_map("degenerate", |rows| {
        let mut kept: Vec<&[i64]> = Vec::new();
        for r in &rows {
            let cand: Vec<&[i64]> = kept.iter().copied().chain([r.as_slice()]).collect();
            if Arrangement::from_ints(&cand).is_ok() {
                kept.push(r);
            }
        }
        let a = Arrangement::from_ints(&kept).ok()?;
        (a.n() >= 3 && a.rank() == 3).then_some(a)
    })
}

fn catalog(name: &str) -> Arrangement {
    catalog_lookup(name).unwrap().arrangement
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_survives_unimodular_mixing(m in small_matrix(), ops in prop::collection::vec((0usize..6, 0usize..6, -3i64..=3, any::<bool>()), 0..12)) {
        let cols = m[0].len();
        let base = smith_normal_form(&m, cols);
        for w in base.diagonal.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        let mut mixed = m.clone();
        for (i, j, k, on_rows) in ops {
            if on_rows {
                let (i, j) = (i % mixed.len(), j % mixed.len());
                if i == j { mixed.swap(0, i); continue; }
                let src = mixed[j].clone();
                for (x, y) in mixed[i].iter_mut().zip(src) { *x += k * y; }
            } else {
                let (i, j) = (i % cols, j % cols);
                if i == j { continue; }
                for row in mixed.iter_mut() { row[i] += k * row[j]; }
            }
        }
        prop_assert_eq!(smith_normal_form(&mixed, cols), base);
    }

    #[test]
    fn rank_mod_p_bounded_by_rational_rank(m in small_matrix()) {
        let mat = Matrix::new(m.clone(), m[0].len());
        let q = rank(&Rationals, &mat.map(&Rationals));
        for p in [2u64, 3, 101] {
            let f = Fq::prime(p);
            prop_assert!(rank(&f, &mat.map(&f)) <= q);
        }
        prop_assert_eq!(smith_normal_form(&m, m[0].len()).rank, q);
    }

    #[test]
    fn root_factorization_round_trip(ks in prop::collection::vec(0i64..12, 0..10)) {
        let ctx = find_cyclotomic_prime(12, 0);
        let mut roots: Vec<u64> = ks.iter().map(|&k| ctx.zeta_pow(k)).collect();
        let poly = factor_by_root_orders(&roots, &ctx);
        prop_assert_eq!(poly.degree(), roots.len());
        let mut back = roots_in_context(&poly.expand_over(&ctx), &ctx);
        roots.sort();
        back.sort();
        prop_assert_eq!(back, roots);
    }

    #[test]
    fn lattice_identities(a in planar_arrangement()) {
        let lat = Lattice::new(&a).unwrap();
        let n = a.n();
        let pairs: usize = lat.flats().iter().map(|f| f.size() * (f.size() - 1) / 2).sum();
        prop_assert_eq!(pairs, n * (n - 1) / 2);
        let s = mobius_poincare(&a, &lat);
        prop_assert_eq!(s.poincare_m[2], lat.flats().iter().map(|f| f.mobius).sum::<i64>());
        let mut prod = vec![0i64; s.poincare_u.len() + 1];
        for (i, c) in s.poincare_u.iter().enumerate() {
            prod[i] += c;
            prod[i + 1] += c;
        }
        prop_assert_eq!(prod, s.poincare_m.clone());

        let g = build_graph(&a).unwrap();
        let graph_b1 = n - 1 + g.cycle_count();
        prop_assert_eq!(graph_b1 as i64, s.b1_u() + s.b2_u());
        let p = westlund_presentation(&g).simplified.unwrap();
        prop_assert_eq!(p.gens(), graph_b1);
        prop_assert!(p.is_commutator_relators());
    }

    #[test]
    fn deletion_matches_induced_lattice(a in planar_arrangement(), h in 0usize..8) {
        let h = h % a.n();
        let direct = Lattice::new(&a.delete_hyperplane(h).unwrap()).unwrap();
        let mut got: Vec<Vec<usize>> = direct.flats().iter().map(|f| f.lines.clone()).collect();
        let mut induced: Vec<Vec<usize>> = Lattice::new(&a)
            .unwrap()
            .flats()
            .iter()
            .map(|f| f.lines.iter().filter(|&&i| i != h).map(|&i| if i > h { i - 1 } else { i }).collect::<Vec<_>>())
            .filter(|l| l.len() >= 2)
            .collect();
        got.sort();
        induced.sort();
        prop_assert_eq!(got, induced);
    }

    #[test]
    fn resonance_depth_is_projective(raw in prop::collection::vec(0u64..101, 5), lambda in 1u64..101) {
        let f = Fq::prime(101);
        let os = OsDegree2::new(f.clone(), &Lattice::new(&catalog("braid-A3")).unwrap());
        let mut a: Vec<u64> = raw.clone();
        let s = a.iter().fold(0, |acc, x| f.add(&acc, x));
        a.push(f.neg(&s));
        prop_assume!(a.iter().any(|&x| x != 0));
        let scaled: Vec<u64> = a.iter().map(|x| f.mul(x, &lambda)).collect();
        prop_assert_eq!(os.resonance_depth(&a).unwrap(), os.resonance_depth(&scaled).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn boundary_milnor_ignores_order(pick in 0usize..4, perm in Just((0usize..9).collect::<Vec<_>>()).prop_shuffle()) {
        let name = ["generic(4)", "near-pencil(4)", "braid-A3", "generic(5)"][pick];
        let a = catalog(name);
        let order: Vec<usize> = perm.into_iter().filter(|&i| i < a.n()).collect();
        let b = a.permuted(&order).unwrap();
        let x = bdf_invariants(&a, 4096).unwrap();
        let y = bdf_invariants(&b, 4096).unwrap();
        prop_assert_eq!(x.b1, y.b1);
        prop_assert!(x.charpoly.same_factors(&y.charpoly));
        prop_assert!(y.charpoly_from_cover.same_factors(&y.charpoly));
        prop_assert_eq!(x.integral_h1, y.integral_h1);
    }

    #[test]
    fn milnor_sweep_is_galois_stable(pick in 0usize..3, k in 1i64..30) {
        let name = ["braid-A3", "ceva3", "pappus-1"][pick];
        let f = MilnorFiber::reduced(&catalog(name)).unwrap();
        let ctx = find_cyclotomic_prime(f.n_cover, 0);
        prop_assume!(k.gcd(&(f.n_cover as i64)) == 1);
        let other = RootOfUnityContext { zeta: ctx.zeta_pow(k), ..ctx.clone() };
        prop_assert_eq!(f.h1_dim(&other).unwrap(), f.h1_dim(&ctx).unwrap());
    }
}

use arrtopo::arrangement::catalog_lookup;
use arrtopo::braid::*;
use arrtopo::jump::*;
use arrtopo::scalar::roots::find_cyclotomic_prime;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The wiring-diagram presentation and the path presentation must give
/// the same twisted homology at every torsion character.
#[test]
fn wiring_and_path_presentations_agree() {
    let ctx = find_cyclotomic_prime(12, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut jumps = 0;
    for name in ["braid-A3", "B3", "non-fano", "pappus-1", "near-pencil(4)", "deleted-B3"] {
        let a = catalog_lookup(name).unwrap().arrangement;
        let w = wiring_diagram(&a).unwrap();
        let pw = projectivize_presentation(&presentation_from_wiring(&w)).unwrap();
        let pp = projectivize_presentation(&presentation_complement(&a).unwrap()).unwrap();
        for _ in 0..200 {
            let mut e: Vec<i64> = (1..a.n()).map(|_| rng.gen_range(0..12)).collect();
            if rng.gen_bool(0.5) {
                // land on a coordinate subtorus more often
                let k = rng.gen_range(0..e.len());
                e[k] = 0;
            }
            e.push(-e.iter().sum::<i64>());
            let rho = torsion_character(&ctx, &e);
            let d1 = local_system_h1(&ctx.field, &pw, &rho).unwrap();
            let d2 = local_system_h1(&ctx.field, &pp, &rho).unwrap();
            assert_eq!(d1, d2, "{name} at {e:?}");
            jumps += (d2 > 0) as usize;
        }
    }
    assert!(jumps > 0, "no jumping character sampled");
}

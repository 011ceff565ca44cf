use super::eisenstein::Eis;
use super::lattice::flat_sets;
use super::{Arrangement, Multiplicity};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One representative per catalog family.
pub const CATALOG_NAMES: [&str; 13] = [
    "braid-A3",
    "B3",
    "deleted-B3",
    "ceva3",
    "hessian",
    "non-fano",
    "pappus-1",
    "pappus-2",
    "pencil(3)",
    "near-pencil(4)",
    "generic(4)",
    "boolean(3)",
    "grunbaum-10",
];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub arrangement: Arrangement,
    pub multiplicities: Option<Multiplicity>,
}

fn real(rows: &[[i64; 3]]) -> Vec<Vec<Eis>> {
    rows.iter().map(|r| r.iter().map(|&c| Eis::from(c)).collect()).collect()
}

/// Look up a named arrangement. Families take parameters either as
/// `pencil(4)` or `pencil:4`; `generic(n,seed)` defaults to seed 0.
pub fn catalog_lookup(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownName(name.to_string());
    let (family, args) = split_args(name).ok_or_else(unknown)?;
    let fixed = |forms: Vec<Vec<Eis>>| -> Result<Arrangement> {
        if args.is_empty() {
            Arrangement::new(forms)
        } else {
            Err(unknown())
        }
    };
    let mut multiplicities = None;
    let arrangement = match family.as_str() {
        "braid-A3" | "braid" | "A3" => fixed(real(&[
            [1, 1, 0],
            [1, -1, 0],
            [1, 0, 1],
            [1, 0, -1],
            [0, 1, 1],
            [0, 1, -1],
        ]))?,
        "B3" => fixed(real(&[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [1, -1, 0],
            [0, 1, 1],
            [0, 1, -1],
            [1, 0, 1],
            [1, 0, -1],
        ]))?,
        "deleted-B3" => {
            let a = fixed(real(&[
                [1, 0, 0],
                [0, 1, 0],
                [1, 1, 0],
                [1, -1, 0],
                [1, 0, 1],
                [1, 0, -1],
                [0, 1, 1],
                [0, 1, -1],
            ]))?;
            multiplicities = Some(Multiplicity::new(vec![2, 1, 3, 3, 2, 2, 1, 1], 8)?);
            a
        }
        "non-fano" => fixed(real(&[
            [0, 0, 1],
            [1, 1, 0],
            [1, -1, 0],
            [1, 0, 1],
            [1, 0, -1],
            [0, 1, 1],
            [0, 1, -1],
        ]))?,
        "pappus-1" => fixed(real(&[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, -1, 0],
            [0, 1, -1],
            [1, -1, -1],
            [2, 1, 1],
            [2, 1, -1],
            [2, -5, 1],
        ]))?,
        "pappus-2" => fixed(real(&[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 0, 3],
            [1, 2, 1],
            [1, 2, 3],
            [2, 3, 3],
        ]))?,
        "grunbaum-10" => fixed(real(&[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [-1, 1, 0],
            [1, 1, 0],
            [0, 2, -1],
            [-1, 1, -1],
            [-1, 1, 1],
            [1, 1, 1],
            [1, 1, -1],
        ]))?,
        "ceva3" => fixed(ceva3())?,
        "hessian" => fixed(hessian())?,
        "pencil" => {
            let [n] = args[..] else { return Err(unknown()) };
            if n < 1 {
                return Err(unknown());
            }
            // n + 1 lines through [0:0:1]
            Arrangement::new((0..=n as i64).map(|k| vec![Eis::ONE, Eis::from(-k), Eis::ZERO]).collect())?
        }
        "near-pencil" => {
            let [n] = args[..] else { return Err(unknown()) };
            if n < 3 {
                return Err(unknown());
            }
            let mut forms = vec![vec![Eis::ONE, Eis::ZERO, Eis::ZERO]];
            forms.extend((0..n as i64 - 1).map(|k| vec![Eis::ZERO, Eis::ONE, Eis::from(-k)]));
            Arrangement::new(forms)?
        }
        "boolean" => {
            let [n] = args[..] else { return Err(unknown()) };
            if n < 1 {
                return Err(unknown());
            }
            let n = n as usize;
            Arrangement::new(
                (0..n).map(|i| (0..n).map(|j| Eis::from(i64::from(i == j))).collect()).collect(),
            )?
        }
        "generic" => {
            let (n, seed) = match args[..] {
                [n] => (n, 0),
                [n, s] => (n, s),
                _ => return Err(unknown()),
            };
            if n < 1 {
                return Err(unknown());
            }
            generic(n as usize, seed)?
        }
        _ => return Err(unknown()),
    };
    Ok(CatalogEntry { name: name.to_string(), arrangement, multiplicities })
}

fn split_args(name: &str) -> Option<(String, Vec<u64>)> {
    let parse = |s: &str| -> Option<Vec<u64>> {
        s.split(',').map(|t| t.trim().parse().ok()).collect()
    };
    if let Some(open) = name.find('(') {
        let inner = name[open + 1..].strip_suffix(')')?;
        Some((name[..open].to_string(), parse(inner)?))
    } else if let Some((fam, rest)) = name.split_once(':') {
        Some((fam.to_string(), parse(rest)?))
    } else {
        Some((name.to_string(), Vec::new()))
    }
}

/// x − ω^a y, then y − ω^a z, then z − ω^a x for a = 0, 1, 2.
fn ceva3() -> Vec<Vec<Eis>> {
    let mut forms = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        for a in 0..3 {
            let mut f = vec![Eis::ZERO; 3];
            f[i] = Eis::ONE;
            f[j] = -Eis::omega_pow(a);
            forms.push(f);
        }
    }
    forms
}

/// The nine lines x + ω^a y + ω^b z, then x, y, z.
fn hessian() -> Vec<Vec<Eis>> {
    let mut forms = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            forms.push(vec![Eis::ONE, Eis::omega_pow(a), Eis::omega_pow(b)]);
        }
    }
    for i in 0..3 {
        let mut f = vec![Eis::ZERO; 3];
        f[i] = Eis::ONE;
        forms.push(f);
    }
    forms
}

/// n lines with only double points, drawn from a seeded generator.
fn generic(n: usize, seed: u64) -> Result<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let forms: Vec<Vec<Eis>> =
            (0..n).map(|_| (0..3).map(|_| Eis::from(rng.gen_range(-4..=4))).collect()).collect();
        let Ok(a) = Arrangement::new(forms) else { continue };
        if flat_sets(a.forms()).iter().all(|s| s.len() == 2) && (n < 3 || a.rank() == 3) {
            return Ok(a);
        }
    }
}

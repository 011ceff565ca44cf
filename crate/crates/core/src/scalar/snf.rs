use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Diagonal of the Smith normal form: `diagonal` has min(rows, cols)
/// entries d1 | d2 | ... (zeros last), `rank` counts the nonzero ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors larger than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion().iter().map(|d| d.to_u64().expect("torsion fits in u64")).collect()
    }
}

/// Smith normal form of an integer matrix given by rows.
///
/// Unit pivots are eliminated first on sparse rows of machine integers
/// (cheap and typical for presentation matrices); whatever remains is
/// finished with arbitrary-precision arithmetic.
pub fn smith_normal_form(rows: &[Vec<i64>], cols: usize) -> SmithForm {
    let total = rows.len().min(cols);
    let (units, rest) = eliminate_units(rows, cols);
    let mut diag = vec![BigInt::one(); units];
    diag.extend(dense_snf(rest));
    diag.retain(|d| !d.is_zero());
    let rank = diag.len();
    diag.sort();
    diag.resize(total, BigInt::zero());
    SmithForm { diagonal: diag, rank }
}

type SparseRow = Vec<(usize, i128)>;

/// Repeatedly pick an entry of absolute value one, clear its column by
/// row operations and drop its row and column. Pivots are chosen to
/// limit fill-in. Stops early if an entry would overflow; returns the
/// number of pivots and the remaining dense block.
fn eliminate_units(rows: &[Vec<i64>], cols: usize) -> (usize, Vec<Vec<BigInt>>) {
    let mut m: Vec<SparseRow> = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x as i128)).collect::<SparseRow>())
        .filter(|r| !r.is_empty())
        .collect();
    let mut alive = vec![true; cols];
    let mut units = 0;
    'outer: loop {
        let mut count = vec![0usize; cols];
        for row in &m {
            for &(j, _) in row {
                count[j] += 1;
            }
        }
        let best = m
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(|(_, v)| v.abs() == 1).map(move |&(j, _)| (i, j, row.len())))
            .min_by_key(|&(_, j, len)| ((len - 1) * (count[j] - 1), len));
        let Some((pi, pj, _)) = best else { break };
        let prow = m.swap_remove(pi);
        let sign = prow.iter().find(|(j, _)| *j == pj).expect("pivot").1;
        for row in m.iter_mut() {
            let Some(&(_, factor)) = row.iter().find(|(j, _)| *j == pj) else { continue };
            match axpy(row, &prow, factor * sign) {
                Some(r) => *row = r,
                None => {
                    m.push(prow);
                    break 'outer;
                }
            }
        }
        m.retain(|r| !r.is_empty());
        alive[pj] = false;
        units += 1;
    }
    let index: Vec<Option<usize>> = {
        let mut k = 0;
        alive.iter().map(|&a| a.then(|| { k += 1; k - 1 })).collect()
    };
    let width = alive.iter().filter(|&&a| a).count();
    let rest = m
        .iter()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); width];
            for &(j, v) in r {
                dense[index[j].expect("eliminated column is clear")] = BigInt::from(v);
            }
            dense
        })
        .collect();
    (units, rest)
}

/// row − k·pivot for sorted sparse rows, or `None` on overflow.
fn axpy(row: &[(usize, i128)], pivot: &[(usize, i128)], k: i128) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ja = row.get(a).map_or(usize::MAX, |e| e.0);
        let jb = pivot.get(b).map_or(usize::MAX, |e| e.0);
        let (j, v) = if ja < jb {
            a += 1;
            (ja, row[a - 1].1)
        } else if jb < ja {
            b += 1;
            (jb, k.checked_mul(pivot[b - 1].1)?.checked_neg()?)
        } else {
            a += 1;
            b += 1;
            (ja, row[a - 1].1.checked_sub(k.checked_mul(pivot[b - 1].1)?)?)
        };
        if v != 0 {
            out.push((j, v));
        }
    }
    Some(out)
}

/// Rank r and |det| of some nonsingular r×r submatrix, by fraction-free
/// elimination.
fn bareiss(a: &[Vec<BigInt>]) -> (usize, BigInt) {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    (r, prev.abs())
}

/// Nonzero invariant factors of a dense matrix.
///
/// Every nonzero invariant factor divides a nonzero maximal minor D, so
/// the matrix is diagonalized over ℤ/D, which keeps entries below D.
fn dense_snf(a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let (r, d) = bareiss(&a);
    if r == 0 {
        return Vec::new();
    }
    if d.is_one() {
        return vec![BigInt::one(); r];
    }
    let rows = a.len();
    let cols = a[0].len();
    let mut a: Vec<Vec<BigInt>> = a.into_iter().map(|row| row.into_iter().map(|x| x.mod_floor(&d)).collect()).collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero representative in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j] < a[bi][bj]) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0].iter_mut().zip(&top[t]).skip(t) {
                    *x = (&*x - &q * y).mod_floor(&d);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for row in a.iter_mut().skip(t) {
                    let y = row[t].clone();
                    row[j] = (&row[j] - &q * y).mod_floor(&d);
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
        diag.push(a[t][t].gcd(&d));
    }
    // gcd/lcm normalization into a divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.truncate(r);
    diag
}

use super::field::Field;

/// Dense matrix stored by rows; `cols` is kept explicitly so empty
/// matrices still know their shape.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: Vec<Vec<E>>,
    pub cols: usize,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: Vec<Vec<E>>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix { rows, cols: self.rows.len() }
    }
}

impl Matrix<i64> {
    pub fn map<F: Field>(&self, f: &F) -> Matrix<F::Elem> {
        Matrix {
            rows: self.rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect(),
            cols: self.cols,
        }
    }
}

/// In-place reduced row echelon form; returns pivot columns in order.
/// Rows past the rank are left zero.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows.len() {
            break;
        }
        let Some(piv) = (r..m.rows.len()).find(|&i| !f.is_zero(&m.rows[i][c])) else {
            continue;
        };
        m.rows.swap(r, piv);
        let inv = f.inv(&m.rows[r][c]).expect("nonzero pivot");
        for v in m.rows[r].iter_mut().skip(c) {
            *v = f.mul(v, &inv);
        }
        let pivot_row = m.rows[r].clone();
        for (i, row) in m.rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(pv) {
                    *v = f.sub(v, &f.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination only.
pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut rows = m.rows.clone();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.mul(&row[c], &inv);
            for j in c..m.cols {
                if !f.is_zero(&prow[j]) {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &prow[j]));
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of { x : M x = 0 }.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(f, &mut work);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&work.rows[i][fc]);
            }
            v
        })
        .collect()
}

/// Rows of `m` that extend the row space of `base` by one each, chosen
/// greedily in order; returns their indices.
pub fn independent_rows<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in m.rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !f.is_zero(&v[*pc]) {
                let factor = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !f.is_zero(x)) {
            let inv = f.inv(&v[pc]).expect("nonzero");
            for x in v.iter_mut() {
                *x = f.mul(x, &inv);
            }
            for (_, b) in basis.iter_mut() {
                if !f.is_zero(&b[pc]) {
                    let factor = b[pc].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = f.sub(x, &f.mul(&factor, y));
                    }
                }
            }
            basis.push((pc, v));
            picked.push(idx);
        }
    }
    picked
}

/// Express `v` in the row space of an RREF matrix with the given pivots;
/// `None` if `v` lies outside it.
pub fn coordinates_in_rref<F: Field>(
    f: &F,
    reduced: &Matrix<F::Elem>,
    pivots: &[usize],
    v: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(pivots.len());
    for (i, &pc) in pivots.iter().enumerate() {
        let c = rest[pc].clone();
        if !f.is_zero(&c) {
            for (x, y) in rest.iter_mut().zip(&reduced.rows[i]) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        coords.push(c);
    }
    if rest.iter().all(|x| f.is_zero(x)) {
        Some(coords)
    } else {
        None
    }
}

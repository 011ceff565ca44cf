//! Orlik–Solomon algebra in degrees at most two, and resonance depth.

use crate::arrangement::Lattice;
use crate::error::{Error, Result};
use crate::scalar::field::Field;
use crate::scalar::linalg::{rank, rref, Matrix};

/// A²(M) as Λ²(e₁..e_n) modulo the boundaries ∂e_T of dependent triples,
/// stored through the normal form of every e_i e_j.
#[derive(Clone, Debug)]
pub struct OsDegree2<F: Field> {
    field: F,
    n: usize,
    /// Free pairs (i, j), i < j, forming a basis of A²(M).
    basis2: Vec<(usize, usize)>,
    /// Normal form of e_i e_j (i < j) in the basis, indexed by pair_index.
    normal: Vec<Vec<F::Elem>>,
    proj_dim2: usize,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl<F: Field + Clone> OsDegree2<F> {
    pub fn new(field: F, lat: &Lattice) -> Self {
        let n = lat.n();
        let npairs = n * n.saturating_sub(1) / 2;
        let mut rows = Vec::new();
        for flat in lat.multiple_points() {
            let l = &flat.lines;
            for a in 0..l.len() {
                for b in a + 1..l.len() {
                    for c in b + 1..l.len() {
                        let (i, j, k) = (l[a], l[b], l[c]);
                        let mut row = vec![field.zero(); npairs];
                        row[pair_index(n, j, k)] = field.one();
                        row[pair_index(n, i, k)] = field.from_i64(-1);
                        row[pair_index(n, i, j)] = field.one();
                        rows.push(row);
                    }
                }
            }
        }
        let mut rel = Matrix::new(rows, npairs);
        let pivots = rref(&field, &mut rel);
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let free: Vec<usize> = (0..npairs).filter(|c| !pivots.contains(c)).collect();
        let normal = (0..npairs)
            .map(|c| {
                if let Some(r) = pivots.iter().position(|&p| p == c) {
                    free.iter().map(|&f| field.neg(&rel.rows[r][f])).collect()
                } else {
                    free.iter().map(|&f| if f == c { field.one() } else { field.zero() }).collect()
                }
            })
            .collect();
        let basis2 = free.iter().map(|&c| pairs[c]).collect();
        let mut os = OsDegree2 { field, n, basis2, normal, proj_dim2: 0 };
        let b1: Vec<Vec<F::Elem>> = (0..n.saturating_sub(1)).map(|k| os.proj_basis_vector(k)).collect();
        let images: Vec<Vec<F::Elem>> = (0..b1.len())
            .flat_map(|k| (k + 1..b1.len()).map(move |l| (k, l)))
            .map(|(k, l)| os.wedge(&b1[k], &b1[l]))
            .collect();
        let dim2 = os.basis2.len();
        os.proj_dim2 = rank(&os.field, &Matrix::new(images, dim2));
        os
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim2(&self) -> usize {
        self.basis2.len()
    }

    pub fn proj_dim2(&self) -> usize {
        self.proj_dim2
    }

    pub fn basis2(&self) -> &[(usize, usize)] {
        &self.basis2
    }

    /// e_k − e_{n−1}, a basis of A¹(U).
    fn proj_basis_vector(&self, k: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.n];
        v[k] = self.field.one();
        v[self.n - 1] = self.field.from_i64(-1);
        v
    }

    /// Normal form of a ∧ b in A²(M).
    pub fn wedge(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim2()];
        for i in 0..self.n {
            for j in i + 1..self.n {
                let c = f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
                if f.is_zero(&c) {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(&self.normal[pair_index(self.n, i, j)]) {
                    if !f.is_zero(v) {
                        *o = f.add(o, &f.mul(&c, v));
                    }
                }
            }
        }
        out
    }

    /// dim H¹(A(U), a·) = dim ker(a ∧ −: A¹(U) → A²(U)) − 1.
    pub fn resonance_depth(&self, a: &[F::Elem]) -> Result<usize> {
        let f = &self.field;
        if a.len() != self.n {
            return Err(Error::Precondition(format!("expected {} coordinates", self.n)));
        }
        if a.iter().all(|x| f.is_zero(x)) {
            return Err(Error::ZeroVector);
        }
        let sum = a.iter().fold(f.zero(), |acc, x| f.add(&acc, x));
        if !f.is_zero(&sum) {
            return Err(Error::NonProjective);
        }
        let images: Vec<Vec<F::Elem>> =
            (0..self.n - 1).map(|k| self.wedge(a, &self.proj_basis_vector(k))).collect();
        let r = rank(f, &Matrix::new(images, self.dim2()));
        Ok(self.n - 1 - r - 1)
    }

    /// Same contract as `resonance_depth`; used for depth sweeps s ≥ 2 in
    /// positive characteristic.
    pub fn resonance_depth2_char_p(&self, a: &[F::Elem]) -> Result<usize> {
        self.resonance_depth(a)
    }
}

/// Local components: one per flat of multiplicity ≥ 3, of dimension |A_X| − 1.
pub fn local_components(lat: &Lattice) -> Vec<(usize, usize)> {
    lat.multiple_points().map(|f| (f.id, f.size() - 1)).collect()
}

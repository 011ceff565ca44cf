use super::field::{euler_phi, Field};
use super::roots::RootOfUnityContext;
use std::collections::BTreeMap;
use std::fmt;

/// An irreducible factor: a cyclotomic polynomial, or a monic polynomial
/// with coefficients (low to high) encoded as elements of the context field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Cyclotomic(u64),
    Explicit(Vec<u64>),
}

impl Factor {
    pub fn degree(&self) -> usize {
        match self {
            Factor::Cyclotomic(r) => euler_phi(*r) as usize,
            Factor::Explicit(c) => c.len() - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldTag {
    Rational,
    Finite { p: u64, q: u64, n: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredCharPoly {
    /// Sorted by factor, exponents at least one.
    pub factors: Vec<(Factor, u32)>,
    pub field: FieldTag,
    /// Some order had primitive roots with unequal multiplicities.
    pub galois_imbalance: bool,
}

impl FactoredCharPoly {
    pub fn from_cyclotomic(pairs: &[(u64, u32)]) -> Self {
        let mut map = BTreeMap::new();
        for &(r, e) in pairs {
            if e > 0 {
                *map.entry(Factor::Cyclotomic(r)).or_insert(0) += e;
            }
        }
        FactoredCharPoly {
            factors: map.into_iter().collect(),
            field: FieldTag::Rational,
            galois_imbalance: false,
        }
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(f, e)| f.degree() * *e as usize).sum()
    }

    pub fn cyclotomic_exponent(&self, r: u64) -> u32 {
        self.factors
            .iter()
            .find(|(f, _)| *f == Factor::Cyclotomic(r))
            .map_or(0, |(_, e)| *e)
    }

    /// Same factors and exponents, ignoring the field tag.
    pub fn same_factors(&self, other: &Self) -> bool {
        self.factors == other.factors
    }

    pub fn is_cyclotomic(&self) -> bool {
        self.factors.iter().all(|(f, _)| matches!(f, Factor::Cyclotomic(_)))
    }

    /// Pairs (order, exponent) when every factor is cyclotomic.
    pub fn cyclotomic_pairs(&self) -> Option<Vec<(u64, u32)>> {
        self.factors
            .iter()
            .map(|(f, e)| match f {
                Factor::Cyclotomic(r) => Some((*r, *e)),
                Factor::Explicit(_) => None,
            })
            .collect()
    }

    /// Integer coefficients (low to high) when every factor is cyclotomic.
    pub fn expand_integer(&self) -> Option<Vec<i64>> {
        let mut acc = vec![1i64];
        for (r, e) in self.cyclotomic_pairs()? {
            let c = cyclotomic_poly(r);
            for _ in 0..e {
                acc = poly_mul_int(&acc, &c);
            }
        }
        Some(acc)
    }

    /// Coefficients (low to high) of the product over the context field.
    pub fn expand_over(&self, ctx: &RootOfUnityContext) -> Vec<u64> {
        let f = &ctx.field;
        let mut acc = vec![f.one()];
        for (factor, e) in &self.factors {
            let c: Vec<u64> = match factor {
                Factor::Cyclotomic(r) => cyclotomic_poly(*r).iter().map(|&v| f.from_i64(v)).collect(),
                Factor::Explicit(c) => c.clone(),
            };
            for _ in 0..*e {
                acc = poly_mul_field(f, &acc, &c);
            }
        }
        acc
    }
}

impl fmt::Display for FactoredCharPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(out, "1");
        }
        for (factor, e) in &self.factors {
            match factor {
                Factor::Cyclotomic(r) => write!(out, "({})", format_int_poly(&cyclotomic_poly(*r)))?,
                Factor::Explicit(c) => {
                    let signed: Vec<i64> = c.iter().map(|&v| v as i64).collect();
                    write!(out, "[{}]", format_int_poly(&signed))?
                }
            }
            if *e > 1 {
                write!(out, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FactoredCharPoly {
    /// `[["cyclo", r, e], ["poly", [c0, c1, ..], e], ..]`
    pub fn to_json_value(&self) -> serde_json::Value {
        self.factors
            .iter()
            .map(|(factor, e)| match factor {
                Factor::Cyclotomic(r) => serde_json::json!(["cyclo", r, e]),
                Factor::Explicit(c) => serde_json::json!(["poly", c, e]),
            })
            .collect()
    }
}

/// Render an integer polynomial, highest degree first, in the variable t.
pub fn format_int_poly(c: &[i64]) -> String {
    let mut s = String::new();
    for (d, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let sign = if v < 0 { "-" } else { "+" };
        if !s.is_empty() || v < 0 {
            s.push_str(sign);
        }
        let a = v.abs();
        match d {
            0 => s.push_str(&a.to_string()),
            _ => {
                if a != 1 {
                    s.push_str(&a.to_string());
                }
                s.push('t');
                if d > 1 {
                    s.push_str(&format!("^{d}"));
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn poly_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_mul_field<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Coefficients (low to high) of the r-th cyclotomic polynomial.
pub fn cyclotomic_poly(r: u64) -> Vec<i64> {
    let mut num = vec![0i64; r as usize + 1];
    num[0] = -1;
    num[r as usize] = 1;
    for d in (1..r).filter(|d| r.is_multiple_of(*d)) {
        num = poly_div_int(&num, &cyclotomic_poly(d));
    }
    num
}

/// Group a multiset of n-th roots of unity into cyclotomic factors.
///
/// When the primitive roots of some order occur with unequal
/// multiplicities that order is emitted as explicit minimal polynomials
/// of Frobenius orbits, and `galois_imbalance` is set.
pub fn factor_by_root_orders(roots: &[u64], ctx: &RootOfUnityContext) -> FactoredCharPoly {
    let f = &ctx.field;
    let mut by_order: BTreeMap<u64, BTreeMap<u64, u32>> = BTreeMap::new();
    for &x in roots {
        let k = ctx.log(x).expect("root must be an n-th root of unity");
        let r = ctx.n / gcd(k, ctx.n);
        *by_order.entry(r).or_default().entry(x).or_insert(0) += 1;
    }
    let mut map: BTreeMap<Factor, u32> = BTreeMap::new();
    let mut imbalance = false;
    for (r, counts) in by_order {
        let phi = euler_phi(r) as usize;
        let first = *counts.values().next().expect("nonempty");
        if counts.len() == phi && counts.values().all(|&c| c == first) {
            *map.entry(Factor::Cyclotomic(r)).or_insert(0) += first;
            continue;
        }
        imbalance = true;
        let mut done: Vec<u64> = Vec::new();
        for (&x, &c) in &counts {
            if done.contains(&x) {
                continue;
            }
            let mut orbit = vec![x];
            let mut y = f.frobenius(x);
            while y != x {
                orbit.push(y);
                y = f.frobenius(y);
            }
            done.extend(&orbit);
            let minpoly = orbit.iter().fold(vec![f.one()], |acc, &z| {
                poly_mul_field(f, &acc, &[f.neg(&z), f.one()])
            });
            let e = orbit.iter().map(|z| counts.get(z).copied().unwrap_or(0)).min().unwrap_or(c);
            if e > 0 {
                *map.entry(Factor::Explicit(minpoly.clone())).or_insert(0) += e;
            }
            for z in &orbit {
                let extra = counts.get(z).copied().unwrap_or(0) - e;
                if extra > 0 {
                    *map.entry(Factor::Explicit(vec![f.neg(z), f.one()])).or_insert(0) += extra;
                }
            }
        }
    }
    FactoredCharPoly {
        factors: map.into_iter().collect(),
        field: FieldTag::Finite { p: f.p(), q: f.order(), n: ctx.n },
        galois_imbalance: imbalance,
    }
}

/// Multiset of n-th roots of unity of a polynomial over the context field,
/// by repeated synthetic division. Roots outside the context are dropped.
pub fn roots_in_context(coeffs: &[u64], ctx: &RootOfUnityContext) -> Vec<u64> {
    let f = &ctx.field;
    let mut poly = coeffs.to_vec();
    let mut out = Vec::new();
    for k in 0..ctx.n {
        let z = ctx.zeta_pow(k as i64);
        loop {
            if poly.len() < 2 {
                break;
            }
            // Horner division by (t - z)
            let mut q = vec![f.zero(); poly.len() - 1];
            let mut carry = f.zero();
            for i in (0..poly.len()).rev() {
                let v = f.add(&poly[i], &f.mul(&carry, &z));
                if i == 0 {
                    carry = v;
                } else {
                    q[i - 1] = v;
                    carry = v;
                }
            }
            if !f.is_zero(&carry) {
                break;
            }
            out.push(z);
            poly = q;
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::roots::find_cyclotomic_prime;

    #[test]
    fn cyclotomic_coefficients() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(15).len(), 9);
    }

    #[test]
    fn braid_monodromy_roots() {
        let ctx = find_cyclotomic_prime(6, 0);
        let z3 = ctx.zeta_pow(2);
        let z3b = ctx.zeta_pow(4);
        let roots = [1, 1, 1, 1, 1, z3, z3b];
        let p = factor_by_root_orders(&roots, &ctx);
        assert!(p.same_factors(&FactoredCharPoly::from_cyclotomic(&[(1, 5), (3, 1)])));
        assert!(!p.galois_imbalance);
        assert_eq!(p.to_string(), "(t-1)^5(t^2+t+1)");
    }

    #[test]
    fn trivial_and_ceva_roots() {
        let ctx = find_cyclotomic_prime(1, 0);
        let p = factor_by_root_orders(&[1], &ctx);
        assert!(p.same_factors(&FactoredCharPoly::from_cyclotomic(&[(1, 1)])));
        let ctx = find_cyclotomic_prime(9, 0);
        let mut roots = vec![1; 8];
        roots.extend([ctx.zeta_pow(3), ctx.zeta_pow(3), ctx.zeta_pow(6), ctx.zeta_pow(6)]);
        let p = factor_by_root_orders(&roots, &ctx);
        assert!(p.same_factors(&FactoredCharPoly::from_cyclotomic(&[(1, 8), (3, 2)])));
        assert_eq!(p.degree(), 12);
    }

    #[test]
    fn imbalance_is_flagged() {
        let ctx = find_cyclotomic_prime(3, 0);
        let p = factor_by_root_orders(&[ctx.zeta_pow(1)], &ctx);
        assert!(p.galois_imbalance);
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn round_trip_expansion() {
        let ctx = find_cyclotomic_prime(12, 0);
        let mut roots: Vec<u64> = vec![1, 1, ctx.zeta_pow(6)];
        roots.extend((0..12).filter(|k| gcd(*k, 12) == 1).map(|k| ctx.zeta_pow(k as i64)));
        let p = factor_by_root_orders(&roots, &ctx);
        let mut back = roots_in_context(&p.expand_over(&ctx), &ctx);
        back.sort_unstable();
        roots.sort_unstable();
        assert_eq!(back, roots);
        let ints = p.expand_integer().unwrap();
        assert_eq!(ints.len(), roots.len() + 1);
    }
}

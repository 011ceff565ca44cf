use super::field::{is_prime, Field, Fq};

/// A finite field together with an element of exact multiplicative order `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootOfUnityContext {
    pub n: u64,
    pub field: Fq,
    pub zeta: u64,
}

impl RootOfUnityContext {
    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// `zeta^k` for any integer k.
    pub fn zeta_pow(&self, k: i64) -> u64 {
        let e = k.rem_euclid(self.n as i64) as u64;
        self.field.pow(&self.zeta, e)
    }

    /// Exponent k in [0, n) with zeta^k = x, if x is an n-th root of unity.
    pub fn log(&self, x: u64) -> Option<u64> {
        let mut acc = 1;
        for k in 0..self.n {
            if acc == x {
                return Some(k);
            }
            acc = self.field.mul(&acc, &self.zeta);
        }
        None
    }

    /// The smallest field of characteristic `p` containing n-th roots of
    /// unity; `p` must not divide `n`.
    pub fn in_characteristic(n: u64, p: u64) -> Option<Self> {
        if n == 0 || !is_prime(p) || n.is_multiple_of(p) {
            return None;
        }
        let mut m = 1u32;
        let mut q = p % n;
        // order of p modulo n
        while q != 1 % n {
            q = (q * p) % n;
            m += 1;
        }
        let field = Fq::extension(p, m);
        let g = field.primitive_element();
        let zeta = field.pow(&g, (field.order() - 1) / n);
        Some(RootOfUnityContext { n, field, zeta })
    }
}

/// The (skip+1)-th smallest prime p = 1 mod n with p > max(n, 100), with a
/// verified root of unity of order n in GF(p).
pub fn find_cyclotomic_prime(n: u64, skip: usize) -> RootOfUnityContext {
    assert!(n >= 1);
    let floor = n.max(100);
    let mut p = floor + 1;
    p += (1 + n - p % n) % n;
    let mut seen = 0;
    loop {
        if is_prime(p) {
            if seen == skip {
                let field = Fq::prime(p);
                let g = field.primitive_element();
                let zeta = field.pow(&g, (p - 1) / n);
                debug_assert_eq!(if zeta == 0 { 0 } else { field.mult_order(zeta) }, n);
                return RootOfUnityContext { n, field, zeta };
            }
            seen += 1;
        }
        p += n;
    }
}

/// Majority outcome over several independent computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consensus<T> {
    pub value: Option<T>,
    pub unanimous: bool,
}

pub fn consensus<T: PartialEq + Clone>(values: &[T]) -> Consensus<T> {
    let best = values
        .iter()
        .map(|v| (v, values.iter().filter(|w| *w == v).count()))
        .max_by_key(|&(_, c)| c);
    let value = best.filter(|&(_, c)| 2 * c > values.len()).map(|(v, _)| v.clone());
    let unanimous = values.windows(2).all(|w| w[0] == w[1]);
    Consensus { value, unanimous }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(ctx: &RootOfUnityContext) -> u64 {
        ctx.field.mult_order(ctx.zeta)
    }

    #[test]
    fn cyclotomic_primes() {
        let c = find_cyclotomic_prime(6, 0);
        assert_eq!((c.p(), order(&c)), (103, 6));
        let c = find_cyclotomic_prime(1, 0);
        assert_eq!((c.p(), c.zeta), (101, 1));
        let c = find_cyclotomic_prime(15, 0);
        assert_eq!((c.p(), order(&c)), (151, 15));
        let c = find_cyclotomic_prime(15, 1);
        assert_eq!(c.p(), 181);
    }

    #[test]
    fn oracle_enumeration_agrees() {
        for n in 1..40u64 {
            let expect: Vec<u64> =
                (n.max(100) + 1..).filter(|&p| is_prime(p) && p % n == 1 % n).take(3).collect();
            for (skip, &p) in expect.iter().enumerate() {
                let c = find_cyclotomic_prime(n, skip);
                assert_eq!(c.p(), p);
                assert_eq!(order(&c), n);
            }
        }
    }

    #[test]
    fn small_characteristic_contexts() {
        let c = RootOfUnityContext::in_characteristic(15, 2).unwrap();
        assert_eq!(c.field.order(), 16);
        assert_eq!(order(&c), 15);
        let c = RootOfUnityContext::in_characteristic(3, 2).unwrap();
        assert_eq!(c.field.order(), 4);
        assert!(RootOfUnityContext::in_characteristic(6, 3).is_none());
        assert_eq!(c.log(c.zeta_pow(2)), Some(2));
    }

    #[test]
    fn majority() {
        assert_eq!(consensus(&[3, 3, 4]), Consensus { value: Some(3), unanimous: false });
        assert_eq!(consensus(&[1, 1, 1]), Consensus { value: Some(1), unanimous: true });
        assert_eq!(consensus(&[1, 2, 3]).value, None);
    }
}

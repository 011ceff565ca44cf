use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Arithmetic over a field whose elements are plain values and whose
/// parameters (modulus, tables) live in the field object.
pub trait Field: Sync + Send {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// The cyclotomic field ℚ(ω), ω² + ω + 1 = 0; elements are pairs (a, b)
/// standing for a + b·ω.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QOmega;

pub type QOmegaElem = (BigRational, BigRational);

impl QOmega {
    pub fn from_parts(a: i64, b: i64) -> QOmegaElem {
        (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// Real part a − b/2.
    pub fn re(x: &QOmegaElem) -> BigRational {
        &x.0 - &x.1 / BigRational::from_integer(2.into())
    }

    /// Imaginary part divided by √3/2, i.e. b.
    pub fn im_scaled(x: &QOmegaElem) -> BigRational {
        x.1.clone()
    }
}

impl Field for QOmega {
    type Elem = QOmegaElem;

    fn zero(&self) -> QOmegaElem {
        (BigRational::zero(), BigRational::zero())
    }
    fn one(&self) -> QOmegaElem {
        (BigRational::one(), BigRational::zero())
    }
    fn from_i64(&self, v: i64) -> QOmegaElem {
        QOmega::from_parts(v, 0)
    }
    fn add(&self, x: &QOmegaElem, y: &QOmegaElem) -> QOmegaElem {
        (&x.0 + &y.0, &x.1 + &y.1)
    }
    fn sub(&self, x: &QOmegaElem, y: &QOmegaElem) -> QOmegaElem {
        (&x.0 - &y.0, &x.1 - &y.1)
    }
    fn mul(&self, x: &QOmegaElem, y: &QOmegaElem) -> QOmegaElem {
        let bd = &x.1 * &y.1;
        (&x.0 * &y.0 - &bd, &x.0 * &y.1 + &x.1 * &y.0 - bd)
    }
    fn neg(&self, x: &QOmegaElem) -> QOmegaElem {
        (-&x.0, -&x.1)
    }
    fn inv(&self, x: &QOmegaElem) -> Option<QOmegaElem> {
        if self.is_zero(x) {
            return None;
        }
        let norm = &x.0 * &x.0 - &x.0 * &x.1 + &x.1 * &x.1;
        Some(((&x.0 - &x.1) / &norm, -&x.1 / norm))
    }
    fn is_zero(&self, x: &QOmegaElem) -> bool {
        x.0.is_zero() && x.1.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// A finite field GF(p^m). Elements are encoded as base-p digit strings
/// packed into a `u64`; for m = 1 this is the residue itself.
#[derive(Clone)]
pub struct Fq {
    p: u64,
    m: u32,
    q: u64,
    /// exp[i] = g^i for a primitive element g (m > 1 only)
    exp: Vec<u64>,
    /// log[x] = i with g^i = x (m > 1 only; log[0] unused)
    log: Vec<u64>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.m)
        }
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.exp == other.exp
    }
}

/// Largest extension size for table-based arithmetic.
const MAX_TABLE: u64 = 1 << 22;

impl Fq {
    /// Prime field GF(p). `p` must be prime and below 2^32.
    pub fn prime(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p) && is_prime(p), "GF(p) needs a prime p < 2^32");
        Fq { p, m: 1, q: p, exp: Vec::new(), log: Vec::new() }
    }

    /// Extension field GF(p^m) via a primitive polynomial found by search.
    pub fn extension(p: u64, m: u32) -> Self {
        if m == 1 {
            return Fq::prime(p);
        }
        assert!(is_prime(p), "characteristic must be prime");
        let q = p.checked_pow(m).expect("field too large");
        assert!(q <= MAX_TABLE, "field too large for tables");
        // monic polynomial x^m + c_{m-1} x^{m-1} + ... + c_0, coefficients as digits
        for tail in 0..q {
            let coeffs: Vec<u64> = digits(tail, p, m);
            if coeffs[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = primitive_tables(p, m, q, &coeffs) {
                return Fq { p, m, q, exp, log };
            }
        }
        unreachable!("a primitive polynomial always exists")
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.m
    }
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Every element, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive_element(&self) -> u64 {
        if self.m > 1 {
            return self.exp[1];
        }
        let n = self.p - 1;
        let fs = prime_factors(n);
        (2..self.p)
            .find(|&g| fs.iter().all(|&f| self.pow(&g, n / f) != 1))
            .unwrap_or(1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u64) -> u64 {
        assert!(a != 0);
        let n = self.q - 1;
        let mut ord = n;
        for f in prime_factors(n) {
            while ord.is_multiple_of(f) && self.pow(&a, ord / f) == 1 {
                ord /= f;
            }
        }
        ord
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(&a, self.p)
    }
}

fn digits(mut v: u64, p: u64, m: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Tables for the power map of x modulo the monic polynomial with the
/// given low coefficients, if x generates the multiplicative group.
fn primitive_tables(p: u64, m: u32, q: u64, low: &[u64]) -> Option<(Vec<u64>, Vec<u64>)> {
    let n = (q - 1) as usize;
    let mut exp = vec![0u64; n];
    let mut log = vec![u64::MAX; q as usize];
    let mut cur = vec![0u64; m as usize];
    cur[0] = 1;
    for (i, slot) in exp.iter_mut().enumerate() {
        let code = undigits(&cur, p);
        if log[code as usize] != u64::MAX {
            return None;
        }
        log[code as usize] = i as u64;
        *slot = code;
        // multiply by x: shift up, reduce x^m = -sum low_i x^i
        let top = cur[m as usize - 1];
        for k in (1..m as usize).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for k in 0..m as usize {
                cur[k] = (cur[k] + (p - low[k]) * top) % p;
            }
        }
    }
    if undigits(&cur, p) != 1 {
        return None;
    }
    Some((exp, log))
}

impl Field for Fq {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v.rem_euclid(self.p as i64)) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (x, y) = (digits(*a, self.p, self.m), digits(*b, self.p, self.m));
            let z: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
            undigits(&z, self.p)
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.m == 1 {
            ((*a as u128 * *b as u128) % self.p as u128) as u64
        } else if *a == 0 || *b == 0 {
            0
        } else {
            let n = self.q - 1;
            self.exp[((self.log[*a as usize] + self.log[*b as usize]) % n) as usize]
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if self.m == 1 {
            if *a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            *a
        } else {
            let z: Vec<u64> =
                digits(*a, self.p, self.m).iter().map(|u| (self.p - u) % self.p).collect();
            undigits(&z, self.p)
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        if self.m == 1 {
            Some(self.pow(a, self.p - 2))
        } else {
            let n = self.q - 1;
            Some(self.exp[((n - self.log[*a as usize]) % n) as usize])
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An Eisenstein integer a + b·ω with ω² + ω + 1 = 0.
///
/// Real arrangements only ever use b = 0; the extra component lets the
/// catalog hold the Ceva and Hessian configurations exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eis {
    pub a: i64,
    pub b: i64,
}

impl Eis {
    pub const ZERO: Eis = Eis { a: 0, b: 0 };
    pub const ONE: Eis = Eis { a: 1, b: 0 };
    pub const OMEGA: Eis = Eis { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Eis { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_real(self) -> bool {
        self.b == 0
    }

    /// Complex conjugate: ω ↦ ω² = −1 − ω.
    pub fn conj(self) -> Self {
        Eis { a: self.a - self.b, b: -self.b }
    }

    /// |z|² = a² − ab + b².
    pub fn norm(self) -> i64 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    /// ω^k for any integer k.
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Eis::ONE,
            1 => Eis::OMEGA,
            _ => Eis { a: -1, b: -1 },
        }
    }
}

impl From<i64> for Eis {
    fn from(a: i64) -> Self {
        Eis { a, b: 0 }
    }
}

impl Add for Eis {
    type Output = Eis;
    fn add(self, o: Eis) -> Eis {
        Eis { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Eis {
    type Output = Eis;
    fn sub(self, o: Eis) -> Eis {
        Eis { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        Eis { a: -self.a, b: -self.b }
    }
}

impl Mul for Eis {
    type Output = Eis;
    fn mul(self, o: Eis) -> Eis {
        let bd = self.b * o.b;
        Eis { a: self.a * o.a - bd, b: self.a * o.b + self.b * o.a - bd }
    }
}

impl fmt::Display for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "w"),
            (0, -1) => write!(f, "-w"),
            (0, b) => write!(f, "{b}w"),
            (a, 1) => write!(f, "({a}+w)"),
            (a, -1) => write!(f, "({a}-w)"),
            (a, b) if b < 0 => write!(f, "({a}{b}w)"),
            (a, b) => write!(f, "({a}+{b}w)"),
        }
    }
}

pub fn dot(u: &[Eis], v: &[Eis]) -> Eis {
    u.iter().zip(v).fold(Eis::ZERO, |acc, (&x, &y)| acc + x * y)
}

pub fn cross(u: &[Eis], v: &[Eis]) -> [Eis; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub fn det3(u: &[Eis], v: &[Eis], w: &[Eis]) -> Eis {
    dot(u, &cross(v, w))
}

/// True when u and v are linearly dependent.
pub fn proportional(u: &[Eis], v: &[Eis]) -> bool {
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| (u[i] * v[j] - u[j] * v[i]).is_zero()))
}

/// True when the three vectors span a space of dimension at most two.
pub fn coplanar(u: &[Eis], v: &[Eis], w: &[Eis]) -> bool {
    let n = u.len();
    if n == 3 {
        return det3(u, v, w).is_zero();
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let pick = |x: &[Eis]| [x[i], x[j], x[k]];
                if !det3(&pick(u), &pick(v), &pick(w)).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three ambient coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        })
    }
}

/// Weights `|x| = a`, `|y| = b`, `|z| = c`, the degree `d` of the defining
/// polynomial, and the bracket degree `kappa = d - (a + b + c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    kappa: i64,
}

impl WeightSystem {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a < 1 || !(a <= b && b <= c) {
            return Err(Error::InvalidWeights(format!(
                "need 1 <= a <= b <= c, got ({a}, {b}, {c})"
            )));
        }
        if d < 1 {
            return Err(Error::InvalidWeights(format!(
                "degree must be positive, got {d}"
            )));
        }
        Ok(WeightSystem {
            a,
            b,
            c,
            d,
            kappa: d - (a + b + c),
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    pub fn weights(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn var_weight(&self, v: Var) -> i64 {
        self.weights()[v.index()]
    }

    /// Top weight `3d - 2(a+b+c)` of the Milnor algebra.
    pub fn socle_bound(&self) -> i64 {
        3 * self.d - 2 * (self.a + self.b + self.c)
    }

    pub fn lcm_abc(&self) -> i64 {
        use num_integer::Integer;
        self.a.lcm(&self.b).lcm(&self.c)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a, b, c; d) = ({}, {}, {}; {}), kappa = {}",
            self.a, self.b, self.c, self.d, self.kappa
        )
    }
}

/// `x^i y^j z^k`. Ordered lexicographically with `z > y > x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { i: 0, j: 0, k: 0 };

    pub const fn new(i: u32, j: u32, k: u32) -> Self {
        Monomial { i, j, k }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Monomial::ONE;
        m.set_exp(v, 1);
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        match v {
            Var::X => self.i,
            Var::Y => self.j,
            Var::Z => self.k,
        }
    }

    fn set_exp(&mut self, v: Var, e: u32) {
        match v {
            Var::X => self.i = e,
            Var::Y => self.j = e,
            Var::Z => self.k = e,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    pub fn weight(&self, ws: &WeightSystem) -> i64 {
        ws.a() * self.i as i64 + ws.b() * self.j as i64 + ws.c() * self.k as i64
    }

    pub fn total_degree(&self) -> u32 {
        self.i + self.j + self.k
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.i + other.i, self.j + other.j, self.k + other.k)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.i <= other.i && self.j <= other.j && self.k <= other.k
    }

    /// `self / other`, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial::new(self.i - other.i, self.j - other.j, self.k - other.k))
    }

    /// Formal derivative: the exponent of `v` and the lowered monomial.
    pub fn derivative(&self, v: Var) -> Option<(u32, Monomial)> {
        let e = self.exp(v);
        if e == 0 {
            return None;
        }
        let mut m = *self;
        m.set_exp(v, e - 1);
        Some((e, m))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.j, self.i).cmp(&(other.k, other.j, other.i))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `m ↦ a·i + b·j + c·k`.
pub fn weight(m: &Monomial, ws: &WeightSystem) -> i64 {
    m.weight(ws)
}

/// All monomials of `ℂ[x,y,z]` of weight `w`, in increasing term order.
pub fn monomials_of_weight(ws: &WeightSystem, w: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if w < 0 {
        return out;
    }
    let (a, b, c) = (ws.a(), ws.b(), ws.c());
    for k in 0..=w / c {
        let rest_k = w - c * k;
        for j in 0..=rest_k / b {
            let rest = rest_k - b * j;
            if rest % a == 0 {
                out.push(Monomial::new((rest / a) as u32, j as u32, k as u32));
            }
        }
    }
    out.sort();
    out
}

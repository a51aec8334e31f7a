//! Formal spectral parameters `a^t e^{2 pi i phi} q^s`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use std::fmt;

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn frac_part(x: Q) -> Q {
    x - x.floor()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpectralParam {
    a: Q,
    phase: Q,
    qp: Q,
}

impl SpectralParam {
    pub fn new(a: Q, phase: Q, qp: Q) -> Self {
        SpectralParam { a, phase: frac_part(phase), qp }
    }

    /// The base parameter `a`.
    pub fn base() -> Self {
        Self::new(Q::one(), Q::zero(), Q::zero())
    }

    pub fn one() -> Self {
        Self::new(Q::zero(), Q::zero(), Q::zero())
    }

    pub fn a_pow(&self) -> Q {
        self.a
    }

    pub fn phase(&self) -> Q {
        self.phase
    }

    pub fn q_pow(&self) -> Q {
        self.qp
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.a + o.a, self.phase + o.phase, self.qp + o.qp)
    }

    pub fn div(&self, o: &Self) -> Self {
        Self::new(self.a - o.a, self.phase - o.phase, self.qp - o.qp)
    }

    pub fn pow(&self, r: Q) -> Self {
        Self::new(self.a * r, self.phase * r, self.qp * r)
    }

    pub fn shift_q(&self, s: Q) -> Self {
        Self::new(self.a, self.phase, self.qp + s)
    }

    pub fn shift_phase(&self, p: Q) -> Self {
        Self::new(self.a, self.phase + p, self.qp)
    }

    /// Multiplication by `-1`.
    pub fn neg(&self) -> Self {
        self.shift_phase(qr(1, 2))
    }

    /// The principal `m`-th root (phase divided by `m`).
    pub fn root(&self, m: i64) -> Self {
        let r = qr(1, m);
        Self::new(self.a * r, self.phase * r, self.qp * r)
    }

    /// All `m`-th roots, principal branch first.
    pub fn roots(&self, m: i64) -> Vec<Self> {
        let p = self.root(m);
        (0..m).map(|k| p.shift_phase(qr(k, m))).collect()
    }
}

impl Default for SpectralParam {
    fn default() -> Self {
        Self::base()
    }
}

pub(crate) fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Q::from_integer),
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} w^{} q^{}", fmt_q(&self.a), fmt_q(&self.phase), fmt_q(&self.qp))
    }
}

impl std::str::FromStr for SpectralParam {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        let bad = || crate::Error::Parse(format!("spectral parameter `{s}`"));
        let mut a = None;
        let mut w = None;
        let mut qq = None;
        for tok in s.split_whitespace() {
            let (head, val) = tok.split_once('^').ok_or_else(bad)?;
            let v = parse_q(val.trim_matches(|c| c == '{' || c == '}')).ok_or_else(bad)?;
            match head {
                "a" => a = Some(v),
                "w" => w = Some(v),
                "q" => qq = Some(v),
                _ => return Err(bad()),
            }
        }
        Ok(Self::new(
            a.unwrap_or_else(Q::zero),
            w.unwrap_or_else(Q::zero),
            qq.unwrap_or_else(Q::zero),
        ))
    }
}

/// Least common multiple of the denominators of a list of rationals.
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a Q>) -> i64 {
    xs.into_iter().fold(1i64, |l, x| l.lcm(x.denom()))
}

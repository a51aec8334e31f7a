//! Spin columns of `D_{n+1}^{(2)}` and their half boxes.

use super::{Alphabet, Letter};
use crate::cartan::TypeSpec;
use crate::symalg::{q, Monomial, SpectralParam, Var};
use crate::{Error, Result};

/// Strict chains `i_1 < ... < i_{n+1}` without a pair `i`, `~i`, where `~(n+1)`
/// occurs exactly when an odd number of `~1, ..., ~n` occur.
pub fn spin_columns(al: &Alphabet) -> Vec<Vec<Letter>> {
    let top = match *al {
        Alphabet::TypeD(n) => n,
        Alphabet::Chain(_) => return vec![],
    };
    let letters = al.letters();
    let mut out = vec![vec![]];
    for _ in 0..top {
        let mut next = Vec::new();
        for c in &out {
            for &l in &letters {
                if c.last().is_none_or(|&p: &Letter| al.lt(p, l)) && !c.contains(&-l) {
                    let mut d = c.clone();
                    d.push(l);
                    next.push(d);
                }
            }
        }
        out = next;
    }
    out.retain(|c| {
        let bars = c.iter().filter(|&&l| l < 0 && l > -top).count();
        c.contains(&-top) == (bars % 2 == 1)
    });
    out
}

/// The half box `[l]_a`.
pub fn half_box(t: &TypeSpec, l: Letter, a: SpectralParam) -> Result<Monomial> {
    let n = t.n as i64;
    let i = l as i64;
    let a2 = a.pow(q(2));
    let z = |node: i64, p: SpectralParam, e: i32| (Var::new(node as u8, p), e);
    let f = match i {
        1 => vec![z(1, a2.shift_q(q(-2)), 1)],
        _ if i >= 2 && i < n => vec![z(i - 1, a2.shift_q(q(2 * i - 2)), -1), z(i, a2.shift_q(q(2 * i - 4)), 1)],
        _ if i == n => vec![z(n - 1, a2.shift_q(q(2 * n - 2)), -1)],
        _ if i == n + 1 => vec![z(n, a.shift_q(q(n)), 1)],
        _ if i < 0 && -i < n => vec![],
        _ if i == -n => vec![z(n, a.neg().shift_q(q(n + 2)), -1), z(n, a.shift_q(q(n + 2)), -1)],
        _ if i == -(n + 1) => vec![z(n, a.neg().shift_q(q(n)), 1)],
        _ => return Err(Error::UnknownLetter(super::fmt_letter(l))),
    };
    Ok(Monomial::from_factors(f))
}

/// `prod_p [i_p]_{a q^{n+2-2p}}`.
pub fn spin_monomial(t: &TypeSpec, col: &[Letter], a: SpectralParam) -> Result<Monomial> {
    let n = t.n as i64;
    let mut m = Monomial::one();
    for (p, &l) in col.iter().enumerate() {
        let p = p as i64 + 1;
        m = m.mul(&half_box(t, l, a.shift_q(q(n + 2 - 2 * p)))?);
    }
    Ok(m)
}

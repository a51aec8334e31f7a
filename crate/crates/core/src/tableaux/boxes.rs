//! Box monomials of the tableau formulas.

use super::Letter;
use crate::cartan::TypeSpec;
use crate::symalg::{q, qr, Monomial, SpectralParam, Var};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxVariant {
    A2nm1,
    A2n,
    D43,
    /// Untwisted `D_4`; the payload is the node whose character is built.
    D41(u8),
    /// `D_4^{(2)}`, nodes 1 and 2.
    D42T,
    /// `D_4^{(2)}`, node 3.
    D42S,
    /// `D_{n+1}^{(2)}` full boxes.
    Dn1,
    /// `D_{n+1}^{(2)}` half boxes.
    Spin,
}

struct Builder(Vec<(Var, i32)>);

impl Builder {
    fn z(mut self, node: i64, p: SpectralParam, e: i32) -> Self {
        self.0.push((Var::new(node as u8, p), e));
        self
    }

    fn done(self) -> Monomial {
        Monomial::from_factors(self.0)
    }
}

fn b() -> Builder {
    Builder(Vec::new())
}

/// The box `[l]_a` of the given variant.
pub fn box_monomial(t: &TypeSpec, v: BoxVariant, l: Letter, a: SpectralParam) -> Result<Monomial> {
    let bad = || Error::UnknownLetter(super::fmt_letter(l));
    let n = t.n as i64;
    let i = l as i64;
    let aq = |c: i64| a.shift_q(q(c));
    let naq = |c: i64| a.neg().shift_q(q(c));
    let a2q = |c: i64| a.pow(q(2)).shift_q(q(c));
    let a3q = |c: i64| a.pow(q(3)).shift_q(q(c));
    let om = |c: i64, r: i64| a.shift_q(q(c)).shift_phase(qr(r, 3));
    let rt = a.root(2);
    let bq = |c: i64| rt.shift_q(q(c));
    let nbq = |c: i64| rt.neg().shift_q(q(c));
    let m = match v {
        BoxVariant::A2nm1 => match i {
            1 => b().z(1, aq(0), 1),
            _ if (2..n).contains(&i) => b().z(i - 1, aq(i), -1).z(i, aq(i - 1), 1),
            _ if i == n => b().z(n - 1, aq(n), -1).z(n, a2q(2 * n - 2), 1),
            _ if i == n + 1 => b().z(n, a2q(2 * n + 2), -1).z(n - 1, naq(n), 1),
            _ if (n + 2..2 * n).contains(&i) => b().z(2 * n - i + 1, naq(i), -1).z(2 * n - i, naq(i - 1), 1),
            _ if i == 2 * n => b().z(1, naq(2 * n), -1),
            _ => return Err(bad()),
        },
        BoxVariant::A2n => match i {
            1 => b().z(n - 1, aq(0), 1),
            _ if (2..=n).contains(&i) => b().z(n - i + 1, aq(i), -1).z(n - i, aq(i - 1), 1),
            _ if i == n + 1 => b().z(0, aq(n + 1), -1).z(0, naq(n), 1),
            _ if (n + 2..=2 * n).contains(&i) => b().z(i - n - 2, naq(i), -1).z(i - n - 1, naq(i - 1), 1),
            _ if i == 2 * n + 1 => b().z(n - 1, naq(2 * n + 1), -1),
            _ => return Err(bad()),
        },
        BoxVariant::D43 => match i {
            1 => b().z(1, aq(0), 1),
            2 => b().z(1, aq(2), -1).z(2, a3q(3), 1),
            3 => b().z(2, a3q(9), -1).z(1, om(2, 1), 1).z(1, om(2, 2), 1),
            4 => b().z(1, om(2, 1), 1).z(1, om(4, 2), -1),
            -4 => b().z(1, om(2, 2), 1).z(1, om(4, 1), -1),
            -3 => b().z(1, om(4, 1), -1).z(1, om(4, 2), -1).z(2, a3q(9), 1),
            -2 => b().z(1, aq(4), 1).z(2, a3q(15), -1),
            -1 => b().z(1, aq(6), -1),
            _ => return Err(bad()),
        },
        BoxVariant::D41(node) => {
            // outer nodes 1, 3, 4 are permuted so that `node` plays the role of 1
            let p = |x: i64| -> i64 {
                match (node, x) {
                    (3, 1) => 3,
                    (3, 3) => 1,
                    (4, 1) => 4,
                    (4, 4) => 1,
                    _ => x,
                }
            };
            let y = |bb: Builder, x: i64, s: SpectralParam, e: i32| bb.z(p(x), s, e);
            match i {
                1 => y(b(), 1, aq(0), 1),
                2 => y(y(b(), 1, aq(2), -1), 2, aq(1), 1),
                3 => y(y(y(b(), 2, aq(3), -1), 4, aq(2), 1), 3, aq(2), 1),
                4 => y(y(b(), 4, aq(2), 1), 3, aq(4), -1),
                -4 => y(y(b(), 3, aq(2), 1), 4, aq(4), -1),
                -3 => y(y(y(b(), 4, aq(4), -1), 3, aq(4), -1), 2, aq(3), 1),
                -2 => y(y(b(), 1, aq(4), 1), 2, aq(5), -1),
                -1 => y(b(), 1, aq(6), -1),
                _ => return Err(bad()),
            }
        }
        BoxVariant::D42T => match i {
            1 => b().z(1, aq(0), 1),
            2 => b().z(1, aq(4), -1).z(2, aq(2), 1),
            3 => b().z(2, aq(6), -1).z(3, bq(2), 1).z(3, nbq(2), 1),
            4 => b().z(3, bq(2), 1).z(3, nbq(4), -1),
            -4 => b().z(3, nbq(2), 1).z(3, bq(4), -1),
            -3 => b().z(3, bq(4), -1).z(3, nbq(4), -1).z(2, aq(6), 1),
            -2 => b().z(1, aq(8), 1).z(2, aq(10), -1),
            -1 => b().z(1, aq(12), -1),
            _ => return Err(bad()),
        },
        BoxVariant::D42S => match i {
            1 => b().z(3, aq(0), 1),
            2 => b().z(3, aq(2), -1).z(2, a2q(2), 1),
            3 => b().z(2, a2q(6), -1).z(1, a2q(4), 1).z(3, naq(2), 1),
            4 => b().z(1, a2q(4), 1).z(3, naq(4), -1),
            -4 => b().z(3, naq(2), 1).z(1, a2q(8), -1),
            -3 => b().z(3, naq(4), -1).z(1, a2q(8), -1).z(2, a2q(6), 1),
            -2 => b().z(3, aq(4), 1).z(2, a2q(10), -1),
            -1 => b().z(3, aq(6), -1),
            _ => return Err(bad()),
        },
        BoxVariant::Dn1 => {
            let top = n + 1;
            match i {
                1 => b().z(1, aq(0), 1),
                _ if (2..n).contains(&i) => b().z(i - 1, aq(2 * i), -1).z(i, aq(2 * i - 2), 1),
                _ if i == n => b().z(n - 1, aq(2 * n), -1).z(n, bq(n - 1), 1).z(n, nbq(n - 1), 1),
                _ if i == top => b().z(n, bq(n + 1), -1).z(n, nbq(n - 1), 1),
                _ if i == -top => b().z(n, nbq(n + 1), -1).z(n, bq(n - 1), 1),
                _ if i == -n => b().z(n - 1, aq(2 * n), 1).z(n, bq(n + 1), -1).z(n, nbq(n + 1), -1),
                _ if (2..n).contains(&-i) => {
                    let j = -i;
                    b().z(j - 1, aq(4 * n - 2 * j), 1).z(j, aq(4 * n + 2 - 2 * j), -1)
                }
                -1 => b().z(1, aq(4 * n), -1),
                _ => return Err(bad()),
            }
        }
        BoxVariant::Spin => return super::spin::half_box(t, l, a),
    };
    let m = m.done();
    for (v, _) in m.factors() {
        t.idx(v.node)?;
    }
    Ok(m)
}

//! Tableau sums for KR characters: alphabets, box monomials, admissible
//! tableaux and their character sums.

mod boxes;
pub mod spin;

pub use boxes::{box_monomial, BoxVariant};

use crate::cartan::{Ade, Family, TypeSpec};
use crate::symalg::{q, CharPoly, Monomial, SpectralParam};
use crate::{Error, Result};
use std::fmt;

/// A letter of a tableau alphabet. Barred letters are stored negated.
pub type Letter = i8;

/// Ordered alphabet. For the type-D alphabets `N` and `-N` are incomparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// `1 < 2 < ... < size`.
    Chain(i8),
    /// `1 < ... < N-1 < {N, -N} < -(N-1) < ... < -1`.
    TypeD(i8),
}

impl Alphabet {
    pub fn letters(&self) -> Vec<Letter> {
        match *self {
            Alphabet::Chain(n) => (1..=n).collect(),
            Alphabet::TypeD(n) => (1..=n).chain((1..=n).rev().map(|i| -i)).collect(),
        }
    }

    fn rank(&self, l: Letter) -> i8 {
        match *self {
            Alphabet::Chain(_) => l,
            Alphabet::TypeD(n) => {
                if l > 0 {
                    l
                } else {
                    2 * n + l
                }
            }
        }
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.letters().contains(&l)
    }

    /// Strict order `x < y`.
    pub fn lt(&self, x: Letter, y: Letter) -> bool {
        match *self {
            Alphabet::Chain(_) => x < y,
            Alphabet::TypeD(_) => self.rank(x) < self.rank(y),
        }
    }

    pub fn le(&self, x: Letter, y: Letter) -> bool {
        x == y || self.lt(x, y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    /// `rows[i][j]`.
    pub rows: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn column(&self, j: usize) -> Vec<Letter> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

pub fn fmt_letter(l: Letter) -> String {
    if l > 0 {
        l.to_string()
    } else {
        format!("~{}", -l)
    }
}

pub fn parse_letter(s: &str) -> Result<Letter> {
    let bad = || Error::UnknownLetter(s.to_string());
    match s.strip_prefix('~') {
        Some(r) => r.parse::<i8>().map(|x| -x).map_err(|_| bad()),
        None => s.parse::<i8>().map_err(|_| bad()),
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|&l| fmt_letter(l)).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// Which admissibility rule a tableau family obeys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Rows weakly increasing, columns strictly increasing.
    Semistandard,
    /// One or two rows over the `D_4` alphabet with the theta conditions.
    Theta,
    /// A single column whose consecutive entries satisfy `T_{i+1} !<= T_i`.
    ColumnD,
    /// Spin columns.
    Spin,
}

/// A tableau family attached to a `(type, node)` pair.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub rule: Rule,
    pub alphabet: Alphabet,
    pub rows: usize,
    pub variant: BoxVariant,
}

/// The family describing `W^{(i)}_k` of type `t`, if one is published.
pub fn shape_of(t: &TypeSpec, i: u8, k: u32) -> Result<Shape> {
    let n = t.n as i8;
    let unsupported = || Error::UnsupportedNode(i);
    t.idx(i)?;
    let sh = |rule, alphabet, rows, variant| Ok(Shape { rule, alphabet, rows, variant });
    match t.family {
        Family::A2nm1 => sh(Rule::Semistandard, Alphabet::Chain(2 * n), i as usize, BoxVariant::A2nm1),
        Family::A2n => sh(Rule::Semistandard, Alphabet::Chain(2 * n + 1), (n as usize) - i as usize, BoxVariant::A2n),
        Family::D4 => sh(Rule::Theta, Alphabet::TypeD(4), i as usize, BoxVariant::D43),
        Family::Untwisted(Ade::D) if t.n == 4 => match i {
            2 => sh(Rule::Theta, Alphabet::TypeD(4), 2, BoxVariant::D41(2)),
            _ => sh(Rule::Theta, Alphabet::TypeD(4), 1, BoxVariant::D41(i)),
        },
        Family::Dn1 if t.n == 3 => match i {
            1 | 2 => sh(Rule::Theta, Alphabet::TypeD(4), i as usize, BoxVariant::D42T),
            _ => sh(Rule::Theta, Alphabet::TypeD(4), 1, BoxVariant::D42S),
        },
        Family::Dn1 if k == 1 => fundamental_shape(t, i),
        _ => Err(unsupported()),
    }
}

/// The single-column family of the fundamental module `W^{(i)}_1` of `D_{n+1}^{(2)}`.
pub fn fundamental_shape(t: &TypeSpec, i: u8) -> Result<Shape> {
    if t.family != Family::Dn1 {
        return Err(Error::UnsupportedNode(i));
    }
    t.idx(i)?;
    let n = t.n as i8;
    Ok(if (i as usize) < t.n {
        Shape { rule: Rule::ColumnD, alphabet: Alphabet::TypeD(n + 1), rows: i as usize, variant: BoxVariant::Dn1 }
    } else {
        Shape { rule: Rule::Spin, alphabet: Alphabet::TypeD(n + 1), rows: t.n + 1, variant: BoxVariant::Spin }
    })
}

fn theta_column(al: &Alphabet, top: Letter, bot: Letter) -> bool {
    !al.le(bot, top)
}

/// `(theta 3')` and `(theta 4')`: forbidden two-column patterns.
fn theta_pair_ok(c1: (Letter, Letter), c2: (Letter, Letter)) -> bool {
    !(c1 == (3, 4) && c2 == (4, -3)) && !(c1 == (3, -4) && c2 == (-4, -3))
}

/// The long forms `(theta 3)` and `(theta 4)` on a window `j..=j2`.
fn theta_long_ok(t: &Tableau) -> bool {
    let k = t.ncols();
    for j in 0..k {
        for j2 in j + 1..k {
            for (last_top, first_bot) in [(4, 4), (-4, -4)] {
                let top_ok = (j..j2).all(|c| t.rows[0][c] == 3) && t.rows[0][j2] == last_top;
                let bot_ok = t.rows[1][j] == first_bot && (j + 1..=j2).all(|c| t.rows[1][c] == -3);
                if top_ok && bot_ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Enumerates all tableaux of the given shape with `k` columns, in a fixed order.
pub fn enumerate_shape(shape: &Shape, k: u32) -> Vec<Tableau> {
    let al = shape.alphabet;
    let letters = al.letters();
    let r = shape.rows;
    match shape.rule {
        Rule::ColumnD => columns(&letters, r, |a, b| !al.le(b, a))
            .into_iter()
            .map(|c| Tableau { rows: c.into_iter().map(|x| vec![x]).collect() })
            .collect(),
        Rule::Spin => spin::spin_columns(&al)
            .into_iter()
            .map(|c| Tableau { rows: c.into_iter().map(|x| vec![x]).collect() })
            .collect(),
        Rule::Semistandard | Rule::Theta => {
            let cols: Vec<Vec<Letter>> = match shape.rule {
                Rule::Semistandard => columns(&letters, r, |a, b| al.lt(a, b)),
                _ => columns(&letters, r, |a, b| theta_column(&al, a, b)),
            };
            let mut out = Vec::new();
            let mut cur: Vec<usize> = Vec::new();
            extend(shape, &cols, k as usize, &mut cur, &mut out);
            out
        }
    }
}

fn columns(letters: &[Letter], r: usize, ok: impl Fn(Letter, Letter) -> bool + Copy) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for c in &out {
            for &l in letters {
                if c.last().is_none_or(|&p| ok(p, l)) {
                    let mut d = c.clone();
                    d.push(l);
                    next.push(d);
                }
            }
        }
        out = next;
    }
    out
}

fn extend(shape: &Shape, cols: &[Vec<Letter>], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Tableau>) {
    if cur.len() == k {
        let rows = (0..shape.rows).map(|i| cur.iter().map(|&c| cols[c][i]).collect()).collect();
        out.push(Tableau { rows });
        return;
    }
    for (ci, c) in cols.iter().enumerate() {
        if let Some(&p) = cur.last() {
            let prev = &cols[p];
            if !(0..shape.rows).all(|i| shape.alphabet.le(prev[i], c[i])) {
                continue;
            }
        }
        if shape.rule == Rule::Theta && shape.rows == 2 {
            let ok = cur.iter().all(|&p| theta_pair_ok((cols[p][0], cols[p][1]), (c[0], c[1])));
            if !ok {
                continue;
            }
        }
        cur.push(ci);
        extend(shape, cols, k, cur, out);
        cur.pop();
    }
}

/// Admissible tableaux for `W^{(i)}_k`.
pub fn enumerate(t: &TypeSpec, i: u8, k: u32) -> Result<Vec<Tableau>> {
    Ok(enumerate_shape(&shape_of(t, i, k)?, k))
}

/// Base parameter of the tableau sum producing `W^{(i)}_{k,s}`, and the
/// per-cell shift `q^{step (j - i)}`.
fn placement(t: &TypeSpec, shape: &Shape, i: u8, s: SpectralParam) -> (SpectralParam, i64) {
    let n = t.n as i64;
    let i0 = i as i64;
    match shape.variant {
        BoxVariant::A2nm1 if i0 == n => (s.root(2).shift_q(q(n - 1)), 2),
        BoxVariant::A2nm1 => (s.shift_q(q(i0 - 1)), 2),
        BoxVariant::A2n => (s.shift_q(q(n - i0 - 1)), 2),
        BoxVariant::D43 if i0 == 2 => (s.root(3).shift_q(q(1)), 2),
        BoxVariant::D43 => (s, 2),
        BoxVariant::D41(2) => (s.shift_q(q(1)), 2),
        BoxVariant::D41(_) => (s, 2),
        BoxVariant::D42T if i0 == 2 => (s.shift_q(q(2)), 4),
        BoxVariant::D42T => (s, 4),
        BoxVariant::D42S => (s, 2),
        BoxVariant::Dn1 => (s.shift_q(q(2 * i0 - 2)), 4),
        BoxVariant::Spin => (s, 2),
    }
}

/// Monomial of a tableau placed at base parameter `base` with cell step `step`.
pub fn tableau_monomial(t: &TypeSpec, shape: &Shape, tab: &Tableau, base: SpectralParam, step: i64) -> Result<Monomial> {
    if shape.rule == Rule::Spin {
        return spin::spin_monomial(t, &tab.column(0), base);
    }
    let mut m = Monomial::one();
    for (r, row) in tab.rows.iter().enumerate() {
        for (c, &l) in row.iter().enumerate() {
            let p = base.shift_q(q(step * (c as i64 - r as i64)));
            m = m.mul(&box_monomial(t, shape.variant, l, p)?);
        }
    }
    Ok(m)
}

/// The tableau sum for `W^{(i)}_{k,s}`.
pub fn tableaux_char(t: &TypeSpec, i: u8, k: u32, s: SpectralParam) -> Result<CharPoly> {
    if k == 0 {
        return Ok(CharPoly::one());
    }
    tableaux_char_with(t, &shape_of(t, i, k)?, i, k, s)
}

/// The tableau sum for `W^{(i)}_{k,s}` over an explicitly chosen family.
pub fn tableaux_char_with(t: &TypeSpec, shape: &Shape, i: u8, k: u32, s: SpectralParam) -> Result<CharPoly> {
    if k == 0 {
        return Ok(CharPoly::one());
    }
    if k > 1 && matches!(shape.rule, Rule::ColumnD | Rule::Spin) {
        return Err(Error::UnsupportedNode(i));
    }
    let (base, step) = placement(t, shape, i, s);
    let mut p = CharPoly::zero();
    for tab in enumerate_shape(shape, k) {
        p.add_int(tableau_monomial(t, shape, &tab, base, step)?, 1);
    }
    Ok(p)
}

/// Filtering all two-row arrays by the long theta conditions agrees with the
/// two-column forms.
pub fn theta_equivalence_check(k: u32) -> bool {
    let al = Alphabet::TypeD(4);
    let shape = Shape { rule: Rule::Theta, alphabet: al, rows: 2, variant: BoxVariant::D43 };
    let short: std::collections::HashSet<Tableau> = enumerate_shape(&shape, k).into_iter().collect();
    let letters = al.letters();
    let mut rows: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..k {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                letters.iter().filter_map(move |&l| {
                    if r.last().is_none_or(|&p| al.le(p, l)) {
                        let mut r = r.clone();
                        r.push(l);
                        Some(r)
                    } else {
                        None
                    }
                })
            })
            .collect();
    }
    let mut long = 0usize;
    for top in &rows {
        for bot in &rows {
            if !(0..k as usize).all(|j| theta_column(&al, top[j], bot[j])) {
                continue;
            }
            let t = Tableau { rows: vec![top.clone(), bot.clone()] };
            if theta_long_ok(&t) {
                if !short.contains(&t) {
                    return false;
                }
                long += 1;
            }
        }
    }
    long == short.len()
}

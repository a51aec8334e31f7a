//! Exact symbolic arithmetic over the Z-variables.

pub mod coeff;
pub mod monomial;
pub mod poly;
pub mod spectral;
pub mod weight;

pub use coeff::Coeff;
pub use monomial::{Monomial, Var};
pub use poly::CharPoly;
pub use spectral::{q, qr, SpectralParam, Q};
pub use weight::{FiniteChar, FiniteWeight, Lattice};

use crate::cartan::{NodeKind, TypeSpec};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

pub fn z_var(t: &TypeSpec, i: u8, s: SpectralParam) -> Result<Monomial> {
    t.idx(i)?;
    Ok(Monomial::var(i, s))
}

/// The simple-root monomial `A_{i,s}`.
pub fn a_monomial(t: &TypeSpec, i: u8, s: SpectralParam) -> Result<Monomial> {
    let idx = t.idx(i)?;
    let m = t.m as i64;
    let mut f: Vec<(Var, i32)> = Vec::with_capacity(8);
    let own = |f: &mut Vec<(Var, i32)>, step: i64| {
        f.push((Var::new(i, s.shift_q(q(step))), 1));
        f.push((Var::new(i, s.shift_q(q(-step))), 1));
    };
    match t.kind[idx] {
        _ if !t.is_twisted() => {
            own(&mut f, 1);
            for &(j, _) in &t.adj[idx] {
                f.push((Var::new(t.labels[j], s), -1));
            }
        }
        NodeKind::Diag => {
            own(&mut f, m);
            for &(j, fixed) in &t.adj[idx] {
                let lj = t.labels[j];
                if fixed {
                    f.push((Var::new(lj, s), -1));
                } else {
                    for r in s.roots(m) {
                        f.push((Var::new(lj, r), -1));
                    }
                }
            }
        }
        NodeKind::Free => {
            own(&mut f, 1);
            for &(j, fixed) in &t.adj[idx] {
                let lj = t.labels[j];
                let p = if fixed { s.pow(q(m)) } else { s };
                f.push((Var::new(lj, p), -1));
            }
        }
        NodeKind::Special => {
            own(&mut f, 1);
            f.push((Var::new(i, s.neg()), -1));
            for &(j, _) in &t.adj[idx] {
                f.push((Var::new(t.labels[j], s), -1));
            }
        }
    }
    Ok(Monomial::from_factors(f))
}

/// q-power spacing between consecutive variables of a KR string.
pub fn string_step(t: &TypeSpec, i: u8) -> Result<Q> {
    Ok(t.rho(i)? * q(2))
}

pub fn kr_highest(t: &TypeSpec, i: u8, k: i64, s: SpectralParam) -> Result<Monomial> {
    if k < 0 {
        return Err(Error::NegativeK(k));
    }
    let step = string_step(t, i)?;
    Ok(Monomial::from_factors((0..k).map(|r| (Var::new(i, s.shift_q(step * q(r))), 1))))
}

/// Normalized height coordinate of a variable.
fn t_coord(t: &TypeSpec, v: &Var) -> Q {
    if t.is_a2n() || !t.is_twisted() {
        return v.param.q_pow();
    }
    let d = t.d[t.idx(v.node).unwrap()];
    v.param.q_pow() / d
}

/// Offset from the top variable of `A_{j,b}` back to `b`.
fn a_top_offset(t: &TypeSpec, idx: usize) -> i64 {
    if t.is_twisted() && t.kind[idx] == NodeKind::Diag {
        t.m as i64
    } else {
        1
    }
}

fn solve_rational(c: &[Vec<i32>], rhs: &[i32]) -> Option<Vec<Q>> {
    let n = c.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = c[i].iter().map(|&x| q(x as i64)).collect();
            row.push(q(rhs[i] as i64));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= f * *y;
                }
            }
        }
    }
    Some(a.iter().map(|row| row[n]).collect())
}

/// Coefficients `n_j` with `beta_bar(m) = -sum n_j alpha_j`.
pub fn root_coords(t: &TypeSpec, m: &Monomial) -> Option<Vec<Q>> {
    let w = beta_bar(t, m);
    let rhs: Vec<i32> = w.coords.iter().map(|x| -x).collect();
    solve_rational(&t.finite_cartan(), &rhs)
}

/// Decomposes `m_plus / m` as a product of `A_{j,b}` with nonnegative exponents.
pub fn leq_decompose(
    t: &TypeSpec,
    m: &Monomial,
    m_plus: &Monomial,
) -> Option<Vec<(u8, SpectralParam, i32)>> {
    let coords = root_coords(t, &m.div(m_plus))?;
    let mut bound = Q::zero();
    for c in &coords {
        if !c.is_integer() || *c < Q::zero() {
            return None;
        }
        bound += c;
    }
    let bound = bound.to_integer();
    let mut r = m_plus.div(m);
    let mut out = Vec::new();
    let mut used = 0i64;
    while !r.is_one() {
        let f = r.factors();
        let (v, e) = f
            .iter()
            .max_by(|x, y| t_coord(t, &x.0).cmp(&t_coord(t, &y.0)).then(x.0.cmp(&y.0)))
            .copied()?;
        if e <= 0 {
            return None;
        }
        used += e as i64;
        if used > bound {
            return None;
        }
        let idx = t.idx(v.node).ok()?;
        let b = v.param.shift_q(q(-a_top_offset(t, idx)));
        let a = a_monomial(t, v.node, b).ok()?;
        r = r.mul_pow(&a, -e);
        out.push((v.node, b, e));
    }
    Some(out)
}

pub fn leq(t: &TypeSpec, m: &Monomial, m_plus: &Monomial) -> bool {
    leq_decompose(t, m, m_plus).is_some()
}

/// Number of `A^{-1}` factors separating `m` from `m_plus`.
pub fn height_v(t: &TypeSpec, m: &Monomial, m_plus: &Monomial) -> Result<u64> {
    let d = leq_decompose(t, m, m_plus).ok_or(Error::NotBelow)?;
    Ok(d.iter().map(|x| x.2 as u64).sum())
}

pub fn is_right_negative(t: &TypeSpec, m: &Monomial) -> bool {
    if m.is_one() {
        return false;
    }
    type Key = (Q, Q, Q);
    let mut layers: BTreeMap<Key, (i64, bool)> = BTreeMap::new();
    for (v, e) in m.factors() {
        let p = v.param;
        let (key, l) = if t.is_a2n() {
            let qp = p.q_pow();
            let fl = qp.floor();
            let ph = p.phase() - (p.phase() * q(2)).floor() * qr(1, 2);
            ((p.a_pow(), ph, qp - fl), fl.to_integer())
        } else {
            let d = t.d[t.idx(v.node).unwrap()];
            let mm = q(t.m as i64);
            let ph = p.phase() / d;
            let ph = ph - (ph * mm).floor() / mm;
            let qp = p.q_pow() / d;
            let fl = qp.floor();
            ((p.a_pow() / d, ph, qp - fl), fl.to_integer())
        };
        let slot = layers.entry(key).or_insert((i64::MIN, true));
        if l > slot.0 {
            *slot = (l, e <= 0);
        } else if l == slot.0 {
            slot.1 &= e <= 0;
        }
    }
    layers.values().all(|s| s.1)
}

pub fn beta(t: &TypeSpec, m: &Monomial) -> FiniteWeight {
    let mut w = FiniteWeight::zero(Lattice::Tilde, t.n);
    for (v, e) in m.factors() {
        let i = t.tilde_coord(t.idx(v.node).unwrap());
        w.coords[i] += e;
    }
    w
}

pub fn beta_bar(t: &TypeSpec, m: &Monomial) -> FiniteWeight {
    let mut w = FiniteWeight::zero(Lattice::Bar, t.n);
    for (v, e) in m.factors() {
        let i = t.idx(v.node).unwrap();
        let f = if t.is_a2n() && v.node == 0 { 2 } else { 1 };
        w.coords[i] += f * e;
    }
    w
}

fn char_via(p: &CharPoly, lattice: Lattice, n: usize, f: impl Fn(&Monomial) -> FiniteWeight) -> FiniteChar {
    let mut c = FiniteChar::zero(lattice, n);
    for (m, x) in p.iter() {
        c.add_term(f(m).coords, x);
    }
    c
}

pub fn beta_char(t: &TypeSpec, p: &CharPoly) -> FiniteChar {
    char_via(p, Lattice::Tilde, t.n, |m| beta(t, m))
}

pub fn beta_bar_char(t: &TypeSpec, p: &CharPoly) -> FiniteChar {
    char_via(p, Lattice::Bar, t.n, |m| beta_bar(t, m))
}

/// Dominant monomials with multiplicities, sorted by height then canonically.
pub fn dominant_monomials(p: &CharPoly) -> Vec<(Monomial, Coeff)> {
    let mut v: Vec<(i64, Monomial, Coeff)> = p
        .iter()
        .filter(|(m, _)| m.is_dominant())
        .map(|(m, c)| (-(m.raw().iter().map(|x| x.1 as i64).sum::<i64>()), m.clone(), c.clone()))
        .collect();
    v.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    v.into_iter().map(|(_, m, c)| (m, c)).collect()
}

pub fn is_special(p: &CharPoly) -> bool {
    let d = dominant_monomials(p);
    d.len() == 1 && d[0].1.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    fn sp(qp: i64) -> SpectralParam {
        SpectralParam::base().shift_q(q(qp))
    }

    fn all_types() -> Vec<TypeSpec> {
        let mut v = Vec::new();
        for n in 1..=4 {
            v.push(TypeSpec::build(Family::A2n, n).unwrap());
            if n >= 2 {
                v.push(TypeSpec::build(Family::A2nm1, n).unwrap());
                v.push(TypeSpec::build(Family::Dn1, n).unwrap());
            }
        }
        v.push(TypeSpec::parse("E6-2").unwrap());
        v.push(TypeSpec::parse("D4-3").unwrap());
        v.push(TypeSpec::parse("untwisted:A3").unwrap());
        v.push(TypeSpec::parse("untwisted:D4").unwrap());
        v.push(TypeSpec::parse("untwisted:E6").unwrap());
        v
    }

    #[test]
    fn a2_2_simple_root() {
        let t = TypeSpec::parse("A2-2").unwrap();
        let a = a_monomial(&t, 0, sp(0)).unwrap();
        let want = Monomial::from_factors([
            (Var::new(0, sp(1)), 1),
            (Var::new(0, sp(-1)), 1),
            (Var::new(0, sp(0).neg()), -1),
        ]);
        assert_eq!(a, want);
    }

    #[test]
    fn d4_3_diag_root() {
        let t = TypeSpec::parse("D4-3").unwrap();
        let a = a_monomial(&t, 2, sp(0)).unwrap();
        let third = SpectralParam::new(qr(1, 3), q(0), q(0));
        let want = Monomial::from_factors([
            (Var::new(2, sp(3)), 1),
            (Var::new(2, sp(-3)), 1),
            (Var::new(1, third), -1),
            (Var::new(1, third.shift_phase(qr(1, 3))), -1),
            (Var::new(1, third.shift_phase(qr(2, 3))), -1),
        ]);
        assert_eq!(a, want);
    }

    #[test]
    fn a5_2_free_with_fixed_neighbor() {
        let t = TypeSpec::parse("A2n-1-2:3").unwrap();
        let a = a_monomial(&t, 2, sp(0)).unwrap();
        let want = Monomial::from_factors([
            (Var::new(2, sp(1)), 1),
            (Var::new(2, sp(-1)), 1),
            (Var::new(1, sp(0)), -1),
            (Var::new(3, SpectralParam::base().pow(q(2))), -1),
        ]);
        assert_eq!(a, want);
    }

    #[test]
    fn kr_highest_examples() {
        let t = TypeSpec::parse("A2-2").unwrap();
        let m = kr_highest(&t, 0, 2, sp(0)).unwrap();
        assert_eq!(m, Monomial::var(0, sp(0)).mul(&Monomial::var(0, sp(2))));
        let t = TypeSpec::parse("Dn1-2:3").unwrap();
        let m = kr_highest(&t, 1, 2, sp(0)).unwrap();
        assert_eq!(m, Monomial::var(1, sp(0)).mul(&Monomial::var(1, sp(4))));
        assert!(kr_highest(&t, 1, 0, sp(0)).unwrap().is_one());
        assert!(kr_highest(&t, 1, -1, sp(0)).is_err());
    }

    #[test]
    fn beta_bar_of_roots_is_cartan_column() {
        for t in all_types() {
            let c = t.finite_cartan();
            for (j, &l) in t.labels.iter().enumerate() {
                let w = beta_bar(&t, &a_monomial(&t, l, sp(3)).unwrap());
                let col: Vec<i32> = (0..t.n).map(|i| c[i][j]).collect();
                assert_eq!(w.coords, col, "{t} node {l}");
            }
        }
    }

    #[test]
    fn right_negativity_of_inverse_roots() {
        for t in all_types() {
            for &l in &t.labels {
                let a = a_monomial(&t, l, sp(1)).unwrap();
                assert!(is_right_negative(&t, &a.inv()), "{t} {l}");
                assert!(!is_right_negative(&t, &kr_highest(&t, l, 2, sp(0)).unwrap()));
            }
        }
    }

    #[test]
    fn height_counts_factors() {
        for t in all_types() {
            let mp = kr_highest(&t, t.labels[0], 2, sp(0)).unwrap();
            assert_eq!(height_v(&t, &mp, &mp).unwrap(), 0);
            for &l in &t.labels {
                for s in [sp(0), sp(5).neg()] {
                    let a = a_monomial(&t, l, s).unwrap();
                    assert_eq!(height_v(&t, &mp.div(&a), &mp).unwrap(), 1, "{t} {l}");
                }
            }
            let a = a_monomial(&t, t.labels[0], sp(2)).unwrap();
            assert!(height_v(&t, &mp.mul(&a), &mp).is_err());
        }
    }

    #[test]
    fn a4_2_beta_examples() {
        let t = TypeSpec::parse("A4-2").unwrap();
        // V_1(a) monomials of the A4-2 fundamental at node 1.
        let z = |n: u8, p: SpectralParam| Monomial::var(n, p);
        let a = sp(0);
        let ms = [
            z(1, a),
            z(1, sp(2)).inv().mul(&z(0, sp(1))),
            z(0, sp(3)).inv().mul(&z(0, sp(2).neg())),
            z(0, sp(4).neg()).inv().mul(&z(1, sp(3).neg())),
            z(1, sp(5).neg()).inv(),
        ];
        let p: CharPoly = ms.iter().cloned().collect();
        let b = beta_char(&t, &p);
        // coordinates (z_1, z_2)
        let mut want = FiniteChar::zero(Lattice::Tilde, 2);
        for w in [[1, 0], [-1, 1], [0, 0], [1, -1], [-1, 0]] {
            want.add_int(w.to_vec(), 1);
        }
        assert_eq!(b, want);
        let bb = beta_bar_char(&t, &p);
        // coordinates (z_0, z_1)
        let mut want = FiniteChar::zero(Lattice::Bar, 2);
        for w in [[0, 1], [2, -1], [0, 0], [-2, 1], [0, -1]] {
            want.add_int(w.to_vec(), 1);
        }
        assert_eq!(bb, want);
    }
}

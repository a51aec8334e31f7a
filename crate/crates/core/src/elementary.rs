//! Node-local building blocks: string expansions, normal factorization,
//! local lifts and the direction decomposition.

use crate::cartan::{NodeKind, TypeSpec};
use crate::symalg::{a_monomial, kr_highest, q, CharPoly, Coeff, Monomial, SpectralParam, Q};
use crate::{Error, Result};
use num_traits::Zero;
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalString {
    pub node: u8,
    pub k: u32,
    pub s: SpectralParam,
}

impl LocalString {
    pub fn new(node: u8, k: u32, s: SpectralParam) -> Self {
        LocalString { node, k, s }
    }
}

/// Correction monomials `m / m_+` of a string, with their number of `A^{-1}` factors.
pub fn string_corrections(t: &TypeSpec, st: &LocalString) -> Result<Vec<(Monomial, u32)>> {
    let idx = t.idx(st.node)?;
    let k = st.k as i64;
    let mut out = Vec::new();
    if t.is_twisted() && t.kind[idx] == NodeKind::Special {
        let plus: Vec<Monomial> = (1..=k)
            .map(|r| a_monomial(t, st.node, st.s.shift_q(q(2 * k + 1 - 2 * r))).map(|a| a.inv()))
            .collect::<Result<_>>()?;
        let minus: Vec<Monomial> = (1..=k)
            .map(|r| a_monomial(t, st.node, st.s.neg().shift_q(q(2 * k + 2 - 2 * r))).map(|a| a.inv()))
            .collect::<Result<_>>()?;
        let mut pp = Monomial::one();
        for rr in 0..=k as usize {
            if rr > 0 {
                pp = pp.mul(&plus[rr - 1]);
            }
            let mut pm = pp.clone();
            for r2 in 0..=rr {
                if r2 > 0 {
                    pm = pm.mul(&minus[r2 - 1]);
                }
                out.push((pm.clone(), (rr + r2) as u32));
            }
        }
    } else {
        let rho = t.rho(st.node)?;
        let mut acc = Monomial::one();
        out.push((acc.clone(), 0));
        for u in 1..=k {
            let a = a_monomial(t, st.node, st.s.shift_q(rho * q(2 * k - 2 * u + 1)))?;
            acc = acc.div(&a);
            out.push((acc.clone(), u as u32));
        }
    }
    Ok(out)
}

pub fn string_expand(t: &TypeSpec, st: &LocalString) -> Result<CharPoly> {
    let top = kr_highest(t, st.node, st.k as i64, st.s)?;
    Ok(string_corrections(t, st)?.into_iter().map(|(c, _)| top.mul(&c)).collect())
}

/// Splits a node-local dominant monomial into strings in general position.
pub fn normal_factorization(t: &TypeSpec, i: u8, mloc: &Monomial) -> Result<Vec<LocalString>> {
    t.idx(i)?;
    let step = t.rho(i)? * q(2);
    let mut lines: BTreeMap<(Q, Q, Q), BTreeMap<i64, i32>> = BTreeMap::new();
    for (v, e) in mloc.factors() {
        if v.node != i || e < 0 {
            return Err(Error::NotLocallyDominant(i));
        }
        let qp = v.param.q_pow();
        let pos = (qp / step).floor();
        let rem = qp - pos * step;
        let key = (v.param.a_pow(), v.param.phase(), rem);
        *lines.entry(key).or_default().entry(pos.to_integer()).or_insert(0) += e;
    }
    let mut out = Vec::new();
    for ((a, ph, rem), mut pts) in lines {
        loop {
            pts.retain(|_, e| *e > 0);
            if pts.is_empty() {
                break;
            }
            let keys: Vec<i64> = pts.keys().copied().collect();
            let mut start = 0;
            while start < keys.len() {
                let mut end = start;
                while end + 1 < keys.len() && keys[end + 1] == keys[end] + 1 {
                    end += 1;
                }
                let s = SpectralParam::new(a, ph, rem + step * q(keys[start]));
                out.push(LocalString::new(i, (end - start + 1) as u32, s));
                start = end + 1;
            }
            for e in pts.values_mut() {
                *e -= 1;
            }
        }
    }
    Ok(out)
}

/// Terms of `L_j(m)` as `(monomial, coefficient, number of A^{-1} factors)`.
pub fn local_lift_terms(t: &TypeSpec, j: u8, m: &Monomial) -> Result<Vec<(Monomial, i64, u32)>> {
    let strings = normal_factorization(t, j, &m.node_part(j))?;
    let mut acc: FxHashMap<Monomial, (i64, u32)> = FxHashMap::default();
    acc.insert(Monomial::one(), (1, 0));
    for st in &strings {
        let corr = string_corrections(t, st)?;
        let mut next: FxHashMap<Monomial, (i64, u32)> = FxHashMap::default();
        for (x, (c, h)) in &acc {
            for (y, hy) in &corr {
                let e = next.entry(x.mul(y)).or_insert((0, h + hy));
                e.0 += c;
            }
        }
        acc = next;
    }
    let special = t.is_twisted() && t.kind[t.idx(j)?] == NodeKind::Special;
    if special && strings.len() > 1 {
        let top = m.node_part(j);
        let dominant = acc.keys().filter(|c| top.mul(c).is_dominant()).count();
        if dominant != 1 {
            return special_lift(t, j, m);
        }
    }
    Ok(acc.into_iter().map(|(c, (x, h))| (m.mul(&c), x, h)).collect())
}

/// Local lift at a special node outside general position: the folded simple
/// `A_2`-module of least dimension over all lifts of the local monomial.
fn special_lift(t: &TypeSpec, j: u8, m: &Monomial) -> Result<Vec<(Monomial, i64, u32)>> {
    let local = TypeSpec::parse("A2-2")?;
    let par = local.parent.as_ref().expect("twisted");
    let (u1, u2) = (par.spec.labels[0], par.spec.labels[1]);
    let top = m.node_part(j);
    let units: Vec<SpectralParam> = top
        .factors()
        .into_iter()
        .flat_map(|(v, e)| std::iter::repeat_n(v.param, e.max(0) as usize))
        .collect();
    if units.len() > 12 {
        return Err(Error::NotLocallyDominant(j));
    }
    let budget = crate::engine::budget_from_env();
    let mut best: Option<CharPoly> = None;
    for mask in 0u32..(1 << (units.len() - 1)) {
        let lift = Monomial::from_factors(units.iter().enumerate().map(|(r, b)| {
            if r > 0 && mask & (1 << (r - 1)) != 0 {
                (crate::symalg::Var::new(u2, b.neg()), 1)
            } else {
                (crate::symalg::Var::new(u1, *b), 1)
            }
        }));
        let up = match crate::engine::fm_expand(&par.spec, &lift, budget) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let low = crate::engine::fold_pi(&local, &up)?;
        if best.as_ref().is_none_or(|b| low.dimension() < b.dimension()) {
            best = Some(low);
        }
    }
    let low = best.ok_or(Error::NotLocallyDominant(j))?;
    let top0 = top.map_vars(|v| Monomial::var(0, v.param));
    let mut out = Vec::with_capacity(low.len());
    for (x, c) in low.iter() {
        let dec = crate::symalg::leq_decompose(&local, x, &top0).ok_or(Error::NotLocallyDominant(j))?;
        let mut y = m.clone();
        let mut h = 0u32;
        for (_, b, e) in dec {
            y = y.mul_pow(&a_monomial(t, j, b)?, -e);
            h += e as u32;
        }
        out.push((y, c.to_i64().ok_or(Error::NotLocallyDominant(j))?, h));
    }
    Ok(out)
}

pub fn local_lift(t: &TypeSpec, j: u8, m: &Monomial) -> Result<CharPoly> {
    let mut p = CharPoly::zero();
    for (x, c, _) in local_lift_terms(t, j, m)? {
        p.add_int(x, c);
    }
    Ok(p)
}

/// Linear height functional: pairing of `beta_bar` with the dual Weyl vector.
pub(crate) struct Heights {
    per_node: FxHashMap<u8, Q>,
}

impl Heights {
    pub(crate) fn new(t: &TypeSpec) -> Self {
        let rd = t.finite_type();
        let mut per_node = FxHashMap::default();
        for (i, &l) in t.labels.iter().enumerate() {
            let mut w = vec![0; t.n];
            w[i] = if t.is_a2n() && l == 0 { 2 } else { 1 };
            per_node.insert(l, rd.height(&w));
        }
        Heights { per_node }
    }

    pub(crate) fn of(&self, m: &Monomial) -> Q {
        m.factors()
            .iter()
            .map(|(v, e)| self.per_node[&v.node] * q(*e as i64))
            .fold(Q::zero(), |a, b| a + b)
    }
}

/// Greedy maximal-first decomposition of `p` into blocks `L_j(m)`.
pub fn decompose_direction(t: &TypeSpec, p: &CharPoly, j: u8) -> Result<Vec<(Monomial, Coeff)>> {
    t.idx(j)?;
    let hs = Heights::new(t);
    let mut cands: Vec<(Q, Monomial)> = p
        .monomials()
        .filter(|m| m.is_j_dominant(&[j]))
        .map(|m| (hs.of(m), m.clone()))
        .collect();
    cands.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let mut rest = p.clone();
    let mut out = Vec::new();
    for (_, m) in cands {
        let c = rest.coeff(&m);
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            return Err(Error::NotInKernel(j));
        }
        let lift = local_lift(t, j, &m).map_err(|_| Error::NotInKernel(j))?;
        for (x, y) in lift.iter() {
            rest.add_term(x.clone(), &-(y * &c));
        }
        out.push((m, c));
    }
    if !rest.is_zero() {
        return Err(Error::NotInKernel(j));
    }
    Ok(out)
}

pub fn screen(t: &TypeSpec, p: &CharPoly) -> bool {
    t.labels.iter().all(|&j| decompose_direction(t, p, j).is_ok())
}

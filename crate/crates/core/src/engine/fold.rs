//! The folding map from the simply-laced parent and parameter shifts.

use crate::cartan::TypeSpec;
use crate::symalg::{q, qr, CharPoly, Monomial, SpectralParam, Var};
use crate::{Error, Result};
use rustc_hash::FxHashMap;

/// Image of the untwisted variable `Y_{u,b}` (parent label `u`).
pub fn fold_var(t: &TypeSpec, u: u8, b: SpectralParam) -> Result<Var> {
    let p = t.parent.as_ref().ok_or_else(|| Error::TypeMismatch(format!("{t} is untwisted")))?;
    let ui = p.spec.idx(u)?;
    let (i, pw) = p.fold[ui];
    let param = if t.is_a2n() {
        b.shift_phase(qr(pw as i64, 2))
    } else {
        b.shift_phase(qr(pw as i64, t.m as i64)).pow(t.d[i])
    };
    Ok(Var::new(t.labels[i], param))
}

pub fn fold_monomial(t: &TypeSpec, m: &Monomial) -> Result<Monomial> {
    let mut err = None;
    let r = m.map_vars(|v| match fold_var(t, v.node, v.param) {
        Ok(x) => Monomial::var(x.node, x.param),
        Err(e) => {
            err = Some(e);
            Monomial::one()
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(r),
    }
}

pub fn fold_pi(t: &TypeSpec, p: &CharPoly) -> Result<CharPoly> {
    let mut cache: FxHashMap<Monomial, Monomial> = FxHashMap::default();
    let mut out = CharPoly::with_capacity(p.len());
    for (m, c) in p.iter() {
        let x = match cache.get(m) {
            Some(x) => x.clone(),
            None => {
                let x = fold_monomial(t, m)?;
                cache.insert(m.clone(), x.clone());
                x
            }
        };
        out.add_term(x, c);
    }
    Ok(out)
}

/// The ring automorphism induced by multiplying untwisted parameters by `c`:
/// `Z_{j,x} -> Z_{j, x c^{d_j}}` (uniformly `x c` for untwisted and `A_{2n}^{(2)}`).
pub fn shift_char(t: &TypeSpec, p: &CharPoly, c: SpectralParam) -> CharPoly {
    if c == SpectralParam::one() {
        return p.clone();
    }
    let uniform = !t.is_twisted() || t.is_a2n();
    let factor: Vec<SpectralParam> =
        t.d.iter().map(|&d| if uniform { c } else { c.pow(d) }).collect();
    let mut vmap: FxHashMap<u32, u32> = FxHashMap::default();
    let mut out = CharPoly::with_capacity(p.len());
    for (m, x) in p.iter() {
        let raw: Vec<(u32, i32)> = m
            .raw()
            .iter()
            .map(|&(id, e)| {
                let nid = *vmap.entry(id).or_insert_with(|| {
                    let v = crate::symalg::monomial::resolve(id);
                    let f = factor[t.idx(v.node).unwrap()];
                    crate::symalg::monomial::intern(Var::new(v.node, v.param.mul(&f)))
                });
                (nid, e)
            })
            .collect();
        out.add_term(Monomial::from_raw(raw), x);
    }
    out
}

/// Untwisted-side parameter ratio taking the KR module at `a` to the one at `s`.
pub fn shift_factor(t: &TypeSpec, i: u8, s: SpectralParam) -> Result<SpectralParam> {
    let ratio = s.div(&SpectralParam::base());
    if !t.is_twisted() || t.is_a2n() {
        t.idx(i)?;
        return Ok(ratio);
    }
    let d = t.d_of(i)?;
    Ok(ratio.pow(q(1) / d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::a_monomial;

    fn sp(qp: i64) -> SpectralParam {
        SpectralParam::base().shift_q(q(qp))
    }

    #[test]
    fn a2_2_fold_vars() {
        let t = TypeSpec::parse("A2-2").unwrap();
        assert_eq!(fold_var(&t, 1, sp(0)).unwrap(), Var::new(0, sp(0)));
        assert_eq!(fold_var(&t, 2, sp(0)).unwrap(), Var::new(0, sp(0).neg()));
    }

    #[test]
    fn d4_3_center() {
        let t = TypeSpec::parse("D4-3").unwrap();
        assert_eq!(fold_var(&t, 2, sp(0)).unwrap(), Var::new(2, SpectralParam::base().pow(q(3))));
    }

    #[test]
    fn folds_simple_roots() {
        for name in ["A2-2", "A4-2", "A6-2", "A3-2", "A5-2", "D3-2", "D4-2", "D5-2", "E6-2", "D4-3"] {
            let t = TypeSpec::parse(name).unwrap();
            let p = t.parent.as_ref().unwrap();
            for u in 0..p.spec.n {
                let ul = p.spec.labels[u];
                for b in [sp(0), sp(3).neg(), SpectralParam::new(qr(1, 3), qr(1, 3), q(1))] {
                    let a = a_monomial(&p.spec, ul, b).unwrap();
                    let (i, pw) = p.fold[u];
                    let param = if t.is_a2n() {
                        b.shift_phase(qr(pw as i64, 2))
                    } else {
                        b.shift_phase(qr(pw as i64, t.m as i64)).pow(t.d[i])
                    };
                    let want = a_monomial(&t, t.labels[i], param).unwrap();
                    assert_eq!(fold_monomial(&t, &a).unwrap(), want, "{name} {ul}");
                }
            }
        }
    }

    #[test]
    fn fold_preserves_dominance() {
        let t = TypeSpec::parse("D4-3").unwrap();
        let m = Monomial::var(1, sp(0)).mul(&Monomial::var(3, sp(2)).inv());
        let f = fold_monomial(&t, &m).unwrap();
        assert_eq!(m.is_dominant(), f.is_dominant());
    }
}

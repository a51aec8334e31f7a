//! Structural properties of KR characters: the sub-highest bound and the
//! dominant ladder of the T-system product.

use crate::cartan::TypeSpec;
use crate::symalg::{a_monomial, is_right_negative, kr_highest, leq, q, CharPoly, Coeff, Monomial, SpectralParam};
use crate::Result;
use rustc_hash::FxHashMap;

/// Every `m != m_plus` is right-negative and lies below `m_plus A^{-1}_{i, s rho^{2k-1}}`.
pub fn check_lower_bound(t: &TypeSpec, i: u8, k: u32, s: SpectralParam, p: &CharPoly) -> Result<bool> {
    let top = kr_highest(t, i, k as i64, s)?;
    if k == 0 {
        return Ok(p.len() == 1 && p.contains(&top));
    }
    let rho = t.rho(i)?;
    let a = a_monomial(t, i, s.shift_q(rho * q(2 * k as i64 - 1)))?;
    let bound = top.div(&a);
    Ok(p.monomials().filter(|m| **m != top).all(|m| is_right_negative(t, m) && leq(t, m, &bound)))
}

/// The `k+1` expected dominant monomials of `chi(W_{k,s}) chi(W_{k,s rho^2})`.
pub fn ladder_expected(t: &TypeSpec, i: u8, k: u32, s: SpectralParam) -> Result<Vec<Monomial>> {
    let rho = t.rho(i)?;
    let big = kr_highest(t, i, k as i64, s)?.mul(&kr_highest(t, i, k as i64, s.shift_q(rho * q(2)))?);
    let mut out = vec![big.clone()];
    let mut cur = big;
    for u in 1..=k as i64 {
        let a = a_monomial(t, i, s.shift_q(rho * q(2 * k as i64 - 2 * u + 1)))?;
        cur = cur.div(&a);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Dominant monomials of `p1 * p2` without forming the product.
pub fn ladder_dominants(p1: &CharPoly, p2: &CharPoly) -> Vec<(Monomial, Coeff)> {
    let mut acc: FxHashMap<Monomial, Coeff> = FxHashMap::default();
    for (m1, c1) in p1.iter() {
        for (m2, c2) in p2.iter() {
            let m = m1.mul(m2);
            if m.is_dominant() {
                *acc.entry(m).or_insert_with(Coeff::zero) += &(c1 * c2);
            }
        }
    }
    let mut v: Vec<(Monomial, Coeff)> = acc.into_iter().filter(|x| !x.1.is_zero()).collect();
    v.sort();
    v
}

//! Frenkel-Mukhin saturation for untwisted and twisted types.

use crate::cartan::TypeSpec;
use crate::elementary::local_lift_terms;
use crate::symalg::monomial::with_resolver;
use crate::symalg::{CharPoly, Coeff, Monomial};
use crate::{Error, Result};
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;

struct Entry {
    coef: i64,
    colored: Vec<i64>,
}

/// Bitmask of node indices carrying a negative exponent.
fn negative_mask(t: &TypeSpec, m: &Monomial) -> u64 {
    let mut idx = [0u8; 256];
    for (i, &l) in t.labels.iter().enumerate() {
        idx[l as usize] = i as u8;
    }
    with_resolver(|r| {
        m.raw()
            .iter()
            .filter(|p| p.1 < 0)
            .fold(0u64, |acc, &(id, _)| acc | (1u64 << idx[r(id).node as usize]))
    })
}

/// Expands the unique character in the intersection of the screening kernels
/// whose only dominant monomial is `m_plus`.
pub fn fm_expand(t: &TypeSpec, m_plus: &Monomial, budget: usize) -> Result<CharPoly> {
    if !m_plus.is_dominant() {
        return Err(Error::NotSpecial(m_plus.to_text(t.letter())));
    }
    let n = t.n;
    let mut map: FxHashMap<Monomial, Entry> = FxHashMap::default();
    let mut levels: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    map.insert(m_plus.clone(), Entry { coef: 1, colored: vec![0; n] });
    levels.insert(0, vec![m_plus.clone()]);
    while let Some((h, mut todo)) = levels.pop_first() {
        todo.sort_unstable_by(|a, b| a.lex_cmp(b));
        for m in todo {
            let (coef, colored) = {
                let e = map.get_mut(&m).unwrap();
                if m != *m_plus {
                    e.coef = e.colored.iter().copied().max().unwrap_or(0);
                }
                (e.coef, e.colored.clone())
            };
            if m != *m_plus && m.is_dominant() {
                return Err(Error::NotSpecial(m.to_text(t.letter())));
            }
            let neg = negative_mask(t, &m);
            for j in 0..n {
                if neg & (1 << j) != 0 {
                    if colored[j] != coef {
                        return Err(Error::DirectionConflict(m.to_text(t.letter())));
                    }
                    continue;
                }
                let lambda = coef - colored[j];
                if lambda < 0 {
                    return Err(Error::DirectionConflict(m.to_text(t.letter())));
                }
                if lambda == 0 {
                    continue;
                }
                for (x, c, cnt) in local_lift_terms(t, t.labels[j], &m)? {
                    let add = c * lambda;
                    match map.get_mut(&x) {
                        Some(e) => e.colored[j] += add,
                        None => {
                            if cnt == 0 {
                                return Err(Error::DirectionConflict(x.to_text(t.letter())));
                            }
                            let mut colored = vec![0; n];
                            colored[j] = add;
                            map.insert(x.clone(), Entry { coef: 0, colored });
                            levels.entry(h + cnt).or_default().push(x);
                            if map.len() > budget {
                                return Err(Error::Budget(budget));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut p = CharPoly::with_capacity(map.len());
    for (m, e) in map {
        p.add_term(m, &Coeff::from(e.coef));
    }
    Ok(p)
}

//! Streamed evaluation of signed sums of products, sliced by an integer grading.
//!
//! Products are never materialized in full: each product term is split into a
//! small prefix (multiplied out) and its largest factor, both bucketed by grade,
//! and the grade axis is cut into chunks of bounded work.

use crate::cartan::TypeSpec;
use crate::symalg::monomial::with_resolver;
use crate::symalg::spectral::denom_lcm;
use crate::symalg::{CharPoly, Coeff, Monomial};
use crate::Result;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;

const CHUNK: u64 = 200_000;

pub struct GradedResult {
    pub zero: bool,
    /// Up to `cap` surviving terms.
    pub residual: CharPoly,
}

type Buckets = BTreeMap<i64, Vec<(Monomial, Coeff)>>;

struct Grader {
    scale: i64,
    idx: [i64; 256],
}

impl Grader {
    fn new(t: &TypeSpec, polys: &[&CharPoly]) -> Grader {
        let mut qs = Vec::new();
        with_resolver(|r| {
            for p in polys {
                for m in p.monomials() {
                    for &(id, _) in m.raw() {
                        qs.push(r(id).param.q_pow());
                    }
                }
            }
        });
        let mut idx = [0i64; 256];
        for (i, &l) in t.labels.iter().enumerate() {
            idx[l as usize] = i as i64 + 1;
        }
        Grader { scale: denom_lcm(qs.iter()), idx }
    }

    fn grade(&self, m: &Monomial) -> i64 {
        with_resolver(|r| {
            m.raw()
                .iter()
                .map(|&(id, e)| {
                    let v = r(id);
                    let qp = (v.param.q_pow() * self.scale).to_integer();
                    e as i64 * (qp * 64 + self.idx[v.node as usize])
                })
                .sum()
        })
    }

    fn bucket(&self, p: &CharPoly) -> Buckets {
        let mut b: Buckets = BTreeMap::new();
        for (m, c) in p.iter() {
            b.entry(self.grade(m)).or_default().push((m.clone(), c.clone()));
        }
        b
    }
}

struct Split {
    sign: Coeff,
    prefix: Buckets,
    last: Buckets,
}

/// Evaluates `sum sign * prod factors` and reports whether it vanishes.
pub fn sum_of_products(t: &TypeSpec, terms: &[(i64, Vec<CharPoly>)], cap: usize) -> Result<GradedResult> {
    let all: Vec<&CharPoly> = terms.iter().flat_map(|x| x.1.iter()).collect();
    let g = Grader::new(t, &all);
    let splits: Vec<Split> = terms
        .iter()
        .map(|(sign, fs)| {
            let mut fs: Vec<&CharPoly> = fs.iter().collect();
            fs.sort_by_key(|p| p.len());
            let last = fs.pop().cloned().unwrap_or_else(CharPoly::one);
            let mut pre = CharPoly::one();
            for f in fs {
                pre = pre.mul(f);
            }
            Split { sign: Coeff::from(*sign), prefix: g.bucket(&pre), last: g.bucket(&last) }
        })
        .collect();

    // exact work histogram over the output grade
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    for s in &splits {
        for (gp, a) in &s.prefix {
            for (gl, b) in &s.last {
                *hist.entry(gp + gl).or_default() += (a.len() * b.len()) as u64;
            }
        }
    }
    let mut cuts: Vec<(i64, i64)> = Vec::new();
    let mut start: Option<i64> = None;
    let mut acc = 0u64;
    let mut prev = 0i64;
    for (&gr, &w) in &hist {
        if start.is_none() {
            start = Some(gr);
        }
        acc += w;
        prev = gr;
        if acc >= CHUNK {
            cuts.push((start.unwrap(), gr + 1));
            start = None;
            acc = 0;
        }
    }
    if let Some(s0) = start {
        cuts.push((s0, prev + 1));
    }

    let partial: Vec<(bool, Vec<(Monomial, Coeff)>)> = cuts
        .par_iter()
        .map(|&(lo, hi)| {
            let mut sum: FxHashMap<Monomial, Coeff> = FxHashMap::default();
            for s in &splits {
                for (gp, a) in &s.prefix {
                    for (_, b) in s.last.range(lo - gp..hi - gp) {
                        for (ma, ca) in a {
                            let ca = &s.sign * ca;
                            for (mb, cb) in b {
                                let e = sum.entry(ma.mul(mb)).or_insert_with(Coeff::zero);
                                *e += &(&ca * cb);
                            }
                        }
                    }
                }
            }
            let mut zero = true;
            let mut left = Vec::new();
            for (m, c) in sum {
                if !c.is_zero() {
                    zero = false;
                    if left.len() < cap {
                        left.push((m, c));
                    }
                }
            }
            (zero, left)
        })
        .collect();

    let mut residual = CharPoly::zero();
    let mut zero = true;
    for (z, left) in partial {
        zero &= z;
        for (m, c) in left {
            if residual.len() < cap {
                residual.add_term(m, &c);
            }
        }
    }
    Ok(GradedResult { zero, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::{q, SpectralParam};

    #[test]
    fn matches_direct_product() {
        let t = TypeSpec::parse("untwisted:A2").unwrap();
        let y = |i: u8, k: i64| CharPoly::from_monomial(Monomial::var(i, SpectralParam::base().shift_q(q(k))));
        let a = y(1, 0).add(&y(2, 1)).add(&CharPoly::one());
        let b = y(1, 2).add(&y(2, -3));
        let c = y(2, 5).add(&CharPoly::one());
        let full = a.mul(&b).mul(&c);
        let terms = vec![(1, vec![a.clone(), b.clone(), c.clone()]), (-1, vec![full.clone()])];
        assert!(sum_of_products(&t, &terms, 10).unwrap().zero);
        let terms = vec![(1, vec![a, b, c]), (-1, vec![full.add(&y(1, 7))])];
        let r = sum_of_products(&t, &terms, 10).unwrap();
        assert!(!r.zero);
        assert_eq!(r.residual.len(), 1);
    }
}

//! Sparse Laurent polynomials with integer coefficients.

use super::coeff::Coeff;
use super::monomial::Monomial;
use crate::{Error, Result};
use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

#[derive(Clone, Default, PartialEq, Eq)]
pub struct CharPoly {
    terms: FxHashMap<Monomial, Coeff>,
}

impl CharPoly {
    pub fn zero() -> Self {
        CharPoly::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::one())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = CharPoly::zero();
        p.terms.insert(m, Coeff::one());
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = CharPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn with_capacity(n: usize) -> Self {
        CharPoly { terms: FxHashMap::with_capacity_and_hasher(n, Default::default()) }
    }

    pub fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = o.get_mut();
                *v += c;
                if v.is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_int(&mut self, m: Monomial, c: i64) {
        self.add_term(m, &Coeff::from(c));
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    pub fn add(&self, o: &CharPoly) -> CharPoly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &CharPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub(&self, o: &CharPoly) -> CharPoly {
        let mut r = self.clone();
        r.sub_assign(o);
        r
    }

    pub fn sub_assign(&mut self, o: &CharPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    pub fn neg(&self) -> CharPoly {
        CharPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> CharPoly {
        if c.is_zero() {
            return CharPoly::zero();
        }
        CharPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> CharPoly {
        CharPoly { terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect() }
    }

    pub fn mul(&self, o: &CharPoly) -> CharPoly {
        let (a, b) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut r = CharPoly::with_capacity((a.len() * b.len()).min(1 << 22));
        for (m2, c2) in &b.terms {
            for (m1, c1) in &a.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        r
    }

    /// Adds `c * m * o` into `self`.
    pub fn add_scaled_shifted(&mut self, o: &CharPoly, m: &Monomial, c: &Coeff) {
        for (x, y) in &o.terms {
            self.add_term(x.mul(m), &(y * c));
        }
    }

    pub fn pow(&self, e: u32) -> CharPoly {
        let mut r = CharPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Sum of coefficients.
    pub fn dimension(&self) -> Coeff {
        self.terms.values().sum()
    }

    pub fn affine_degree(&self) -> i32 {
        self.terms.keys().map(|m| m.affine_degree()).max().unwrap_or(0)
    }

    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> CharPoly {
        let mut r = CharPoly::with_capacity(self.len());
        for (m, c) in &self.terms {
            r.add_term(f(m), c);
        }
        r
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Coeff)> {
        let mut v: Vec<(Monomial, Coeff)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by_cached_key(|x| x.0.factors());
        v
    }

    pub fn into_terms(self) -> FxHashMap<Monomial, Coeff> {
        self.terms
    }

    fn lex_max(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|x, y| x.0.lex_cmp(y.0))
    }

    fn lex_min(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().min_by(|x, y| x.0.lex_cmp(y.0))
    }

    /// Exact division by repeated cancellation of leading terms.
    pub fn div_exact(&self, d: &CharPoly) -> Result<CharPoly> {
        let (dl, dc) = d.lex_max().ok_or(Error::NotDivisible)?;
        let (dl, dc) = (dl.clone(), dc.clone());
        if self.is_zero() {
            return Ok(CharPoly::zero());
        }
        let floor = {
            let (pm, _) = self.lex_min().unwrap();
            let (dm, _) = d.lex_min().unwrap();
            pm.div(dm)
        };
        let dc_big = dc.to_big();
        let mut rem = self.terms.clone();
        let mut heap: BinaryHeap<LexKey> = rem.keys().cloned().map(LexKey).collect();
        let mut quot = CharPoly::zero();
        let cap = self.len().saturating_mul(d.len()).saturating_add(1000);
        let mut steps = 0usize;
        while let Some(LexKey(m)) = heap.pop() {
            let c = match rem.get(&m) {
                Some(c) => c.clone(),
                None => continue,
            };
            steps += 1;
            let qm = m.div(&dl);
            if steps > cap || qm.lex_cmp(&floor) == Ordering::Less {
                return Err(Error::NotDivisible);
            }
            let cb = c.to_big();
            if &cb % &dc_big != num_bigint::BigInt::from(0) {
                return Err(Error::NotDivisible);
            }
            let qc = Coeff::from(cb / &dc_big);
            for (x, y) in &d.terms {
                let t = qm.mul(x);
                let delta = &qc * y;
                use std::collections::hash_map::Entry;
                match rem.entry(t) {
                    Entry::Occupied(mut o) => {
                        let v = o.get_mut();
                        *v -= &delta;
                        if v.is_zero() {
                            o.remove();
                        }
                    }
                    Entry::Vacant(v) => {
                        heap.push(LexKey(v.key().clone()));
                        v.insert(-delta);
                    }
                }
            }
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    pub fn to_text(&self, letter: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .iter()
            .map(|(m, c)| format!("{} {}", c, m.to_text(letter)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

struct LexKey(Monomial);

impl PartialEq for LexKey {
    fn eq(&self, o: &Self) -> bool {
        self.0 == o.0
    }
}
impl Eq for LexKey {}
impl PartialOrd for LexKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for LexKey {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.lex_cmp(&o.0)
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text('Z'))
    }
}

impl FromIterator<Monomial> for CharPoly {
    fn from_iter<I: IntoIterator<Item = Monomial>>(it: I) -> Self {
        let mut p = CharPoly::zero();
        for m in it {
            p.add_term(m, &Coeff::one());
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::monomial::Var;
    use crate::symalg::spectral::{q, SpectralParam};
    use proptest::prelude::*;

    fn z(node: u8, qp: i64) -> Monomial {
        Monomial::var(node, SpectralParam::base().shift_q(q(qp)))
    }

    fn arb_poly() -> impl Strategy<Value = CharPoly> {
        prop::collection::vec(
            (prop::collection::vec((0u8..2, -3i64..4, -2i32..3), 0..3), -3i64..4),
            1..5,
        )
        .prop_map(|ts| {
            let mut p = CharPoly::zero();
            for (vars, c) in ts {
                let m = Monomial::from_factors(vars.into_iter().map(|(n, qp, e)| {
                    (Var::new(n, SpectralParam::base().shift_q(q(qp))), e)
                }));
                p.add_int(m, c);
            }
            p
        })
    }

    #[test]
    fn additive_identity() {
        let p = CharPoly::from_monomial(z(0, 0));
        assert_eq!(p.add(&CharPoly::zero()), p);
        let inv = CharPoly::from_monomial(z(0, 0).inv());
        assert_eq!(p.mul(&inv), CharPoly::one());
    }

    #[test]
    fn divide_by_one() {
        let p: CharPoly = [z(0, 0), z(1, 3).inv()].into_iter().collect();
        assert_eq!(p.div_exact(&CharPoly::one()).unwrap(), p);
    }

    #[test]
    fn not_divisible() {
        let p: CharPoly = [z(0, 0), z(0, 2)].into_iter().collect();
        let d: CharPoly = [z(0, 0), z(1, 2)].into_iter().collect();
        assert_eq!(p.div_exact(&d), Err(Error::NotDivisible));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn div_inverts_mul(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = a.mul(&b);
            prop_assert_eq!(p.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }
    }
}

//! Finite weights and characters of the finite subalgebras.

use super::coeff::Coeff;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lattice {
    Tilde,
    Bar,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWeight {
    pub lattice: Lattice,
    pub coords: Vec<i32>,
}

impl FiniteWeight {
    pub fn zero(lattice: Lattice, n: usize) -> Self {
        FiniteWeight { lattice, coords: vec![0; n] }
    }
}

/// A finite Z-linear combination of weights on a fixed lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteChar {
    pub lattice: Lattice,
    pub dim: usize,
    terms: BTreeMap<Vec<i32>, Coeff>,
}

pub(crate) fn add_w(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl FiniteChar {
    pub fn zero(lattice: Lattice, dim: usize) -> Self {
        FiniteChar { lattice, dim, terms: BTreeMap::new() }
    }

    pub fn one(lattice: Lattice, dim: usize) -> Self {
        Self::monomial(lattice, vec![0; dim])
    }

    pub fn monomial(lattice: Lattice, w: Vec<i32>) -> Self {
        let mut c = Self::zero(lattice, w.len());
        c.add_term(w, &Coeff::one());
        c
    }

    pub fn add_term(&mut self, w: Vec<i32>, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(w.len(), self.dim);
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_int(&mut self, w: Vec<i32>, c: i64) {
        self.add_term(w, &Coeff::from(c));
    }

    pub fn coeff(&self, w: &[i32]) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i32>, &Coeff)> {
        self.terms.iter()
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

    pub fn dimension(&self) -> Coeff {
        self.terms.values().sum()
    }

    pub fn add(&self, o: &FiniteChar) -> FiniteChar {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &FiniteChar) -> FiniteChar {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), &-c);
        }
        r
    }

    pub fn scale(&self, c: &Coeff) -> FiniteChar {
        let mut r = Self::zero(self.lattice, self.dim);
        for (w, x) in &self.terms {
            r.add_term(w.clone(), &(x * c));
        }
        r
    }

    pub fn mul(&self, o: &FiniteChar) -> FiniteChar {
        let mut acc: rustc_hash::FxHashMap<Vec<i32>, Coeff> = Default::default();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let e = acc.entry(add_w(w1, w2)).or_insert_with(Coeff::zero);
                *e += &(c1 * c2);
            }
        }
        let mut r = Self::zero(self.lattice, self.dim);
        r.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        r
    }

    pub fn pow(&self, e: u32) -> FiniteChar {
        let mut r = Self::one(self.lattice, self.dim);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn shift(&self, w: &[i32]) -> FiniteChar {
        let mut r = Self::zero(self.lattice, self.dim);
        r.terms = self.terms.iter().map(|(x, c)| (add_w(x, w), c.clone())).collect();
        r
    }
}

impl fmt::Debug for FiniteChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*e{w:?}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

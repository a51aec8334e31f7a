//! Laurent monomials in the variables `Z_{i,a}`.
//!
//! Variables are interned into a process-wide table so that a monomial is a
//! short sorted array of `(id, exponent)` pairs.

use super::spectral::{fmt_q, Q, SpectralParam};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub node: u8,
    pub param: SpectralParam,
}

impl Var {
    pub fn new(node: u8, param: SpectralParam) -> Self {
        Var { node, param }
    }
}

#[derive(Default)]
struct Interner {
    ids: FxHashMap<Var, u32>,
    vars: Vec<Var>,
}

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| RwLock::new(Interner::default()));

pub fn intern(v: Var) -> u32 {
    if let Some(&id) = INTERNER.read().ids.get(&v) {
        return id;
    }
    let mut w = INTERNER.write();
    if let Some(&id) = w.ids.get(&v) {
        return id;
    }
    let id = w.vars.len() as u32;
    w.vars.push(v);
    w.ids.insert(v, id);
    id
}

pub fn resolve(id: u32) -> Var {
    INTERNER.read().vars[id as usize]
}

/// Runs `f` with a resolver holding one read lock for the whole call.
pub fn with_resolver<R>(f: impl FnOnce(&dyn Fn(u32) -> Var) -> R) -> R {
    let g = INTERNER.read();
    f(&|id| g.vars[id as usize])
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    terms: Box<[(u32, i32)]>,
}

fn normalize(mut v: Vec<(u32, i32)>) -> Box<[(u32, i32)]> {
    v.sort_unstable_by_key(|p| p.0);
    let mut out: Vec<(u32, i32)> = Vec::with_capacity(v.len());
    for (id, e) in v {
        match out.last_mut() {
            Some(last) if last.0 == id => last.1 += e,
            _ => out.push((id, e)),
        }
    }
    out.retain(|p| p.1 != 0);
    out.into_boxed_slice()
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(node: u8, param: SpectralParam) -> Self {
        Self::var_pow(node, param, 1)
    }

    pub fn var_pow(node: u8, param: SpectralParam, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Monomial { terms: vec![(intern(Var::new(node, param)), e)].into_boxed_slice() }
    }

    pub fn from_factors(it: impl IntoIterator<Item = (Var, i32)>) -> Self {
        let v: Vec<(u32, i32)> = it.into_iter().map(|(v, e)| (intern(v), e)).collect();
        Monomial { terms: normalize(v) }
    }

    pub fn from_raw(v: Vec<(u32, i32)>) -> Self {
        Monomial { terms: normalize(v) }
    }

    pub fn raw(&self) -> &[(u32, i32)] {
        &self.terms
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        self.mul_pow(o, 1)
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        self.mul_pow(o, -1)
    }

    /// `self * o^e`.
    pub fn mul_pow(&self, o: &Monomial, e: i32) -> Monomial {
        if e == 0 || o.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, b[j].1 * e));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1 + b[j].1 * e;
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(id, x)| (id, x * e)));
        Monomial { terms: out.into_boxed_slice() }
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn pow(&self, e: i32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial { terms: self.terms.iter().map(|&(id, x)| (id, x * e)).collect() }
    }

    /// Resolved factors in canonical variable order.
    pub fn factors(&self) -> Vec<(Var, i32)> {
        let mut v: Vec<(Var, i32)> =
            with_resolver(|r| self.terms.iter().map(|&(id, e)| (r(id), e)).collect());
        v.sort_unstable_by_key(|x| x.0);
        v
    }

    pub fn exp_of(&self, v: &Var) -> i32 {
        let id = intern(*v);
        self.terms.iter().find(|p| p.0 == id).map_or(0, |p| p.1)
    }

    pub fn is_dominant(&self) -> bool {
        self.terms.iter().all(|p| p.1 >= 0)
    }

    pub fn is_j_dominant(&self, nodes: &[u8]) -> bool {
        with_resolver(|r| {
            self.terms.iter().all(|&(id, e)| e >= 0 || !nodes.contains(&r(id).node))
        })
    }

    /// The projection keeping only variables at `node`.
    pub fn node_part(&self, node: u8) -> Monomial {
        let v: Vec<(u32, i32)> = with_resolver(|r| {
            self.terms.iter().copied().filter(|&(id, _)| r(id).node == node).collect()
        });
        Monomial { terms: v.into_boxed_slice() }
    }

    /// Maximum positive exponent (zero when none is positive).
    pub fn affine_degree(&self) -> i32 {
        self.terms.iter().map(|p| p.1).max().unwrap_or(0).max(0)
    }

    /// Total order on raw ids; invariant under multiplication.
    pub fn lex_cmp(&self, o: &Monomial) -> Ordering {
        let (a, b) = (&self.terms, &o.terms);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => return x.1.cmp(&0),
                (None, Some(y)) => return 0.cmp(&y.1),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return x.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&y.1),
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// Canonical comparison by resolved variables.
    pub fn canonical_cmp(&self, o: &Monomial) -> Ordering {
        self.factors().cmp(&o.factors())
    }

    /// Applies a variable substitution, extended multiplicatively.
    pub fn map_vars(&self, mut f: impl FnMut(Var) -> Monomial) -> Monomial {
        let vars: Vec<(Var, i32)> =
            with_resolver(|r| self.terms.iter().map(|&(id, e)| (r(id), e)).collect());
        let mut raw = Vec::new();
        for (v, e) in vars {
            for &(id, x) in f(v).raw() {
                raw.push((id, x * e));
            }
        }
        Monomial::from_raw(raw)
    }

    /// Changes every spectral parameter by `g`.
    pub fn map_params(&self, g: impl Fn(SpectralParam) -> SpectralParam) -> Monomial {
        self.map_vars(|v| Monomial::var(v.node, g(v.param)))
    }

    pub fn shift_q(&self, s: Q) -> Monomial {
        self.map_params(|p| p.shift_q(s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.canonical_cmp(o)
    }
}

pub(crate) fn fmt_var(v: &Var, letter: char, e: i32) -> String {
    format!(
        "{}[{}; a^{} w^{} q^{}]^{}",
        letter,
        v.node,
        fmt_q(&v.param.a_pow()),
        fmt_q(&v.param.phase()),
        fmt_q(&v.param.q_pow()),
        e
    )
}

impl Monomial {
    /// Text form with the given variable letter (`Z` twisted, `Y` untwisted).
    pub fn to_text(&self, letter: char) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.factors().iter().map(|(v, e)| fmt_var(v, letter, *e)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_text(s: &str) -> crate::Result<Monomial> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Monomial::one());
        }
        let bad = || crate::Error::Parse(format!("monomial `{s}`"));
        let mut out = Vec::new();
        let mut rest = s;
        while !rest.trim().is_empty() {
            let r = rest.trim_start();
            let open = r.find('[').ok_or_else(bad)?;
            let close = r.find(']').ok_or_else(bad)?;
            let inner = &r[open + 1..close];
            let (node, param) = inner.split_once(';').ok_or_else(bad)?;
            let node: u8 = node.trim().parse().map_err(|_| bad())?;
            let param: SpectralParam = param.parse()?;
            let after = &r[close + 1..];
            let after = after.strip_prefix('^').ok_or_else(bad)?;
            let end = after.find(char::is_whitespace).unwrap_or(after.len());
            let e: i32 = after[..end].parse().map_err(|_| bad())?;
            out.push((Var::new(node, param), e));
            rest = &after[end..];
        }
        Ok(Monomial::from_factors(out))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text('Z'))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text('Z'))
    }
}

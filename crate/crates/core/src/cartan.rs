//! Twisted affine type data and the simply-laced parents.

use crate::finitechar::RootData;
use crate::symalg::spectral::{q, qr, Q};
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ade {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A_{2n}^{(2)}`, n >= 1.
    A2n,
    /// `A_{2n-1}^{(2)}`, n >= 2.
    A2nm1,
    /// `D_{n+1}^{(2)}`, n >= 2.
    Dn1,
    E6,
    D4,
    Untwisted(Ade),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Diag,
    Free,
    Special,
}

/// The simply-laced parent with its diagram automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parent {
    pub spec: Box<TypeSpec>,
    /// `sigma[u]` for parent index `u`.
    pub sigma: Vec<usize>,
    /// Orbit representative (parent index) of each twisted index.
    pub rep: Vec<usize>,
    /// For each parent index `u`: `(i, p)` with `u = sigma^p(rep[i])`.
    pub fold: Vec<(usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSpec {
    pub family: Family,
    pub n: usize,
    pub m: u8,
    pub labels: Vec<u8>,
    pub d: Vec<Q>,
    pub eps: Vec<u8>,
    pub kind: Vec<NodeKind>,
    /// Neighbours of each index, with the partner's fixedness under sigma.
    pub adj: Vec<Vec<(usize, bool)>>,
    pub parent: Option<Parent>,
}

fn ade_cartan(ade: Ade, n: usize) -> Vec<Vec<i32>> {
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match ade {
        Ade::A => (1..n).for_each(|i| edge(i - 1, i)),
        Ade::D => {
            (1..n - 1).for_each(|i| edge(i - 1, i));
            edge(n - 3, n - 1);
        }
        Ade::E => {
            edge(0, 2);
            edge(2, 3);
            edge(3, 4);
            edge(1, 3);
            (5..n).for_each(|i| edge(i - 1, i));
        }
    }
    c
}

impl TypeSpec {
    pub fn untwisted(ade: Ade, n: usize) -> Result<TypeSpec> {
        let ok = match ade {
            Ade::A => n >= 1,
            Ade::D => n >= 3,
            Ade::E => (6..=8).contains(&n),
        };
        if !ok {
            return Err(Error::IllegalRank { family: "untwisted", n });
        }
        let c = ade_cartan(ade, n);
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| c[i][j] == -1).map(|j| (j, true)).collect())
            .collect();
        Ok(TypeSpec {
            family: Family::Untwisted(ade),
            n,
            m: 1,
            labels: (1..=n as u8).collect(),
            d: vec![q(1); n],
            eps: vec![1; n],
            kind: vec![NodeKind::Free; n],
            adj,
            parent: None,
        })
    }

    pub fn build(family: Family, n: usize) -> Result<TypeSpec> {
        let (name, ok) = match family {
            Family::A2n => ("A2n-2", n >= 1),
            Family::A2nm1 => ("A2n-1-2", n >= 2),
            Family::Dn1 => ("Dn1-2", n >= 2),
            Family::E6 => ("E6-2", n == 4),
            Family::D4 => ("D4-3", n == 2),
            Family::Untwisted(a) => return Self::untwisted(a, n),
        };
        if !ok || n > 40 {
            return Err(Error::IllegalRank { family: name, n });
        }
        let (pspec, sigma, rep, m) = match family {
            Family::A2n => {
                let nn = 2 * n;
                let sigma = (0..nn).map(|x| nn - 1 - x).collect();
                let rep = (0..n).map(|j| n - j - 1).collect();
                (Self::untwisted(Ade::A, nn)?, sigma, rep, 2)
            }
            Family::A2nm1 => {
                let nn = 2 * n - 1;
                let sigma = (0..nn).map(|x| nn - 1 - x).collect();
                let rep = (0..n).collect();
                (Self::untwisted(Ade::A, nn)?, sigma, rep, 2)
            }
            Family::Dn1 => {
                let nn = n + 1;
                let mut sigma: Vec<usize> = (0..nn).collect();
                sigma.swap(n - 1, n);
                let rep = (0..n).collect();
                let p = if nn == 3 {
                    // D_3 is A_3 with the fork at node 1.
                    let c = {
                        let mut c = vec![vec![0; 3]; 3];
                        for (i, row) in c.iter_mut().enumerate() {
                            row[i] = 2;
                        }
                        for j in [1, 2] {
                            c[0][j] = -1;
                            c[j][0] = -1;
                        }
                        c
                    };
                    let mut t = Self::untwisted(Ade::A, 3)?;
                    t.family = Family::Untwisted(Ade::D);
                    t.adj = (0..3)
                        .map(|i| (0..3).filter(|&j| c[i][j] == -1).map(|j| (j, true)).collect())
                        .collect();
                    t
                } else {
                    Self::untwisted(Ade::D, nn)?
                };
                (p, sigma, rep, 2)
            }
            Family::E6 => {
                let sigma = vec![5, 1, 4, 3, 2, 0];
                let rep = vec![0, 2, 3, 1];
                (Self::untwisted(Ade::E, 6)?, sigma, rep, 2)
            }
            Family::D4 => {
                let sigma = vec![2, 1, 3, 0];
                let rep = vec![0, 1];
                (Self::untwisted(Ade::D, 4)?, sigma, rep, 3)
            }
            Family::Untwisted(_) => unreachable!(),
        };
        let pn = pspec.n;
        let mut fold = vec![(usize::MAX, 0u32); pn];
        for (i, &r) in rep.iter().enumerate() {
            let mut u = r;
            for p in 0..m as u32 {
                if fold[u].0 == usize::MAX {
                    fold[u] = (i, p);
                }
                u = sigma[u];
            }
        }
        debug_assert!(fold.iter().all(|f| f.0 != usize::MAX));
        let orbit = |i: usize| -> Vec<usize> { (0..pn).filter(|&u| fold[u].0 == i).collect() };
        let padj = |u: usize, v: usize| pspec.adj[u].iter().any(|e| e.0 == v);
        let mut kind = Vec::with_capacity(n);
        for i in 0..n {
            let o = orbit(i);
            kind.push(if o.len() == 1 {
                NodeKind::Diag
            } else if o.iter().any(|&u| o.iter().any(|&v| padj(u, v))) {
                NodeKind::Special
            } else {
                NodeKind::Free
            });
        }
        let d = kind
            .iter()
            .map(|k| match k {
                NodeKind::Diag => q(m as i64),
                NodeKind::Free => q(1),
                NodeKind::Special => qr(1, 2),
            })
            .collect();
        let eps = kind.iter().map(|k| if *k == NodeKind::Diag { m } else { 1 }).collect();
        let adj = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i)
                    .filter(|&j| orbit(i).iter().any(|&u| orbit(j).iter().any(|&v| padj(u, v))))
                    .map(|j| (j, kind[j] == NodeKind::Diag))
                    .collect()
            })
            .collect();
        let labels = match family {
            Family::A2n => (0..n as u8).collect(),
            _ => (1..=n as u8).collect(),
        };
        Ok(TypeSpec {
            family,
            n,
            m,
            labels,
            d,
            eps,
            kind,
            adj,
            parent: Some(Parent { spec: Box::new(pspec), sigma, rep, fold }),
        })
    }

    pub fn is_twisted(&self) -> bool {
        self.m > 1
    }

    pub fn is_a2n(&self) -> bool {
        self.family == Family::A2n
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn idx(&self, label: u8) -> Result<usize> {
        self.labels.iter().position(|&l| l == label).ok_or(Error::UnknownNode(label as i64))
    }

    pub fn label(&self, idx: usize) -> u8 {
        self.labels[idx]
    }

    pub fn kind_of(&self, label: u8) -> Result<NodeKind> {
        Ok(self.kind[self.idx(label)?])
    }

    pub fn d_of(&self, label: u8) -> Result<Q> {
        Ok(self.d[self.idx(label)?])
    }

    /// Exponent `rho` with `rho = q^{d_i}`, or `q` for `A_{2n}^{(2)}`.
    pub fn rho(&self, label: u8) -> Result<Q> {
        if self.is_a2n() {
            self.idx(label)?;
            Ok(q(1))
        } else {
            self.d_of(label)
        }
    }

    pub fn neighbors(&self, label: u8) -> Result<Vec<(u8, bool)>> {
        let i = self.idx(label)?;
        Ok(self.adj[i].iter().map(|&(j, f)| (self.labels[j], f)).collect())
    }

    /// Cartan matrix of the finite subalgebra on the BAR side,
    /// `C[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn finite_cartan(&self) -> Vec<Vec<i32>> {
        let n = self.n;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
            for &(j, _) in &self.adj[i] {
                let r = self.d[j] / self.d[i];
                row[j] = -(if r > q(1) { r.to_integer() as i32 } else { 1 });
            }
        }
        c
    }

    /// Cartan matrix on the TILDE side, indexed by the coordinates
    /// `z_1..z_n` of the target lattice.
    pub fn tilde_cartan(&self) -> Vec<Vec<i32>> {
        if !self.is_a2n() {
            return self.finite_cartan();
        }
        let n = self.n;
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            c[i][i] = 2;
            if i + 1 < n {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        if n >= 2 {
            c[n - 2][n - 1] = -2;
        }
        c
    }

    /// Coordinate index of `beta(Z_i)` in the TILDE lattice.
    pub fn tilde_coord(&self, idx: usize) -> usize {
        if self.is_a2n() {
            self.n - idx - 1
        } else {
            idx
        }
    }

    pub fn finite_type(&self) -> RootData {
        RootData::from_cartan(self.finite_cartan())
    }

    pub fn tilde_type(&self) -> RootData {
        RootData::from_cartan(self.tilde_cartan())
    }

    pub fn finite_name(&self) -> String {
        match self.family {
            Family::A2n if self.n == 1 => "A1".into(),
            Family::A2n | Family::Dn1 => format!("B{}", self.n),
            Family::A2nm1 => format!("C{}", self.n),
            Family::E6 => "F4".into(),
            Family::D4 => "G2".into(),
            Family::Untwisted(a) => format!("{:?}{}", a, self.n),
        }
    }

    pub fn untwisted_parent(&self) -> Option<&Parent> {
        self.parent.as_ref()
    }

    pub fn parse(s: &str) -> Result<TypeSpec> {
        let bad = || Error::Parse(format!("type `{s}`"));
        let s = s.trim();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("untwisted:") {
            let (c, n) = rest.split_at(1);
            let ade = match c {
                "A" => Ade::A,
                "D" => Ade::D,
                "E" => Ade::E,
                _ => return Err(bad()),
            };
            return Self::untwisted(ade, num(n)?);
        }
        if let Some(n) = s.strip_prefix("A2n-2:") {
            return Self::build(Family::A2n, num(n)?);
        }
        if let Some(n) = s.strip_prefix("A2n-1-2:") {
            return Self::build(Family::A2nm1, num(n)?);
        }
        if let Some(n) = s.strip_prefix("Dn1-2:") {
            return Self::build(Family::Dn1, num(n)?);
        }
        match s {
            "E6-2" => return Self::build(Family::E6, 4),
            "D4-3" => return Self::build(Family::D4, 2),
            _ => {}
        }
        if let Some(body) = s.strip_suffix("-2") {
            if let Some(r) = body.strip_prefix('A') {
                let r = num(r)?;
                return if r % 2 == 0 {
                    Self::build(Family::A2n, r / 2)
                } else {
                    Self::build(Family::A2nm1, r.div_ceil(2))
                };
            }
            if let Some(r) = body.strip_prefix('D') {
                let r = num(r)?;
                return Self::build(Family::Dn1, r.checked_sub(1).ok_or_else(bad)?);
            }
        }
        Err(bad())
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::A2n => format!("A{}-2", 2 * self.n),
            Family::A2nm1 => format!("A{}-2", 2 * self.n - 1),
            Family::Dn1 => format!("D{}-2", self.n + 1),
            Family::E6 => "E6-2".into(),
            Family::D4 => "D4-3".into(),
            Family::Untwisted(a) => format!("untwisted:{:?}{}", a, self.n),
        }
    }

    /// Variable letter used in text output.
    pub fn letter(&self) -> char {
        if self.is_twisted() {
            'Z'
        } else {
            'Y'
        }
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types(max: usize) -> Vec<TypeSpec> {
        let mut v = Vec::new();
        for n in 1..=max {
            v.push(TypeSpec::build(Family::A2n, n).unwrap());
            if n >= 2 {
                v.push(TypeSpec::build(Family::A2nm1, n).unwrap());
                v.push(TypeSpec::build(Family::Dn1, n).unwrap());
            }
        }
        v.push(TypeSpec::build(Family::E6, 4).unwrap());
        v.push(TypeSpec::build(Family::D4, 2).unwrap());
        v
    }

    #[test]
    fn invariants_hold() {
        for t in all_types(6) {
            let p = t.parent.as_ref().unwrap();
            let pc = ade_cartan_of(&p.spec);
            for u in 0..p.spec.n {
                for v in 0..p.spec.n {
                    assert_eq!(pc[p.sigma[u]][p.sigma[v]], pc[u][v], "{t}");
                }
            }
            for i in 0..t.n {
                assert_eq!(t.eps[i] == t.m, t.kind[i] == NodeKind::Diag);
                match t.kind[i] {
                    NodeKind::Special => {
                        assert!(t.is_a2n() && t.labels[i] == 0);
                        assert_eq!(t.d[i], qr(1, 2));
                    }
                    NodeKind::Diag => assert_eq!(t.d[i], q(t.m as i64)),
                    NodeKind::Free => assert_eq!(t.d[i], q(1)),
                }
                // Representatives: a moved neighbour orbit is reached through an edge.
                let r = p.rep[i];
                for &(j, fixed) in &t.adj[i] {
                    if !fixed && t.kind[i] != NodeKind::Diag {
                        assert_eq!(pc[r][p.rep[j]], -1, "{t} rep {i} -> {j}");
                    }
                }
            }
            for i in 0..t.n {
                for &(j, _) in &t.adj[i] {
                    assert!(t.adj[j].iter().any(|e| e.0 == i));
                }
            }
        }
    }

    fn ade_cartan_of(t: &TypeSpec) -> Vec<Vec<i32>> {
        let n = t.n;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
            for &(j, _) in &t.adj[i] {
                row[j] = -1;
            }
        }
        c
    }

    #[test]
    fn a2_2() {
        let t = TypeSpec::parse("A2-2").unwrap();
        assert_eq!(t.m, 2);
        assert_eq!(t.labels, vec![0]);
        assert_eq!(t.d, vec![qr(1, 2)]);
        assert_eq!(t.kind, vec![NodeKind::Special]);
        assert_eq!(t.finite_name(), "A1");
    }

    #[test]
    fn d4_3() {
        let t = TypeSpec::parse("D4-3").unwrap();
        assert_eq!(t.m, 3);
        assert_eq!(t.labels, vec![1, 2]);
        assert_eq!(t.d, vec![q(1), q(3)]);
        assert_eq!(t.kind, vec![NodeKind::Free, NodeKind::Diag]);
        assert_eq!(t.finite_name(), "G2");
        assert_eq!(t.finite_cartan(), vec![vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn d_values() {
        let t = TypeSpec::parse("A6-2").unwrap();
        assert_eq!(t.d, vec![qr(1, 2), q(1), q(1)]);
        let t = TypeSpec::parse("A5-2").unwrap();
        assert_eq!(t.d, vec![q(1), q(1), q(2)]);
        let t = TypeSpec::parse("Dn1-2:3").unwrap();
        assert_eq!(t.d, vec![q(2), q(2), q(1)]);
        let t = TypeSpec::parse("E6-2").unwrap();
        assert_eq!(t.d, vec![q(1), q(1), q(2), q(2)]);
        assert_eq!(t.finite_name(), "F4");
    }

    #[test]
    fn a4_2_parent() {
        let t = TypeSpec::parse("A4-2").unwrap();
        let p = t.parent.as_ref().unwrap();
        assert_eq!(p.sigma, vec![3, 2, 1, 0]);
        // labels: node 0 -> parent node 2, node 1 -> parent node 1
        assert_eq!(p.rep, vec![1, 0]);
        assert_eq!(t.finite_name(), "B2");
        assert_eq!(t.finite_cartan(), vec![vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn illegal_ranks() {
        assert!(TypeSpec::build(Family::A2nm1, 1).is_err());
        assert!(TypeSpec::build(Family::Dn1, 1).is_err());
        assert!(TypeSpec::build(Family::A2n, 0).is_err());
        assert!(TypeSpec::parse("B3-2").is_err());
    }

    #[test]
    fn parse_aliases() {
        assert_eq!(TypeSpec::parse("A2n-2:2").unwrap(), TypeSpec::parse("A4-2").unwrap());
        assert_eq!(TypeSpec::parse("A2n-1-2:3").unwrap(), TypeSpec::parse("A5-2").unwrap());
        assert_eq!(TypeSpec::parse("Dn1-2:3").unwrap(), TypeSpec::parse("D4-2").unwrap());
        assert_eq!(TypeSpec::parse("untwisted:E6").unwrap().n, 6);
    }
}

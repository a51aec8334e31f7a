//! Finite-type root data, irreducible characters and branching.

mod qsystem;

pub use qsystem::{check_qsystem, q_char, r_term, QSystemReport};

use crate::symalg::{q, Coeff, FiniteChar, Lattice, Q};
use crate::{Error, Result};
use num_traits::{One, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct RootData {
    pub cartan: Vec<Vec<i32>>,
    /// `(alpha_i, alpha_i) / 2`.
    pub sym: Vec<Q>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i32>>,
    /// Inverse Cartan matrix.
    inv: Vec<Vec<Q>>,
}

fn invert(c: &[Vec<i32>]) -> Vec<Vec<Q>> {
    let n = c.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = c[i].iter().map(|&x| q(x as i64)).collect();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular Cartan matrix");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let prow = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(prow.iter()) {
                    *x -= f * *y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootData {
    pub fn from_cartan(cartan: Vec<Vec<i32>>) -> RootData {
        let n = cartan.len();
        let mut sym = vec![Q::zero(); n];
        if n > 0 {
            sym[0] = Q::one();
            let mut queue = VecDeque::from([0usize]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if cartan[i][j] != 0 && i != j && sym[j].is_zero() {
                        sym[j] = sym[i] * q(cartan[i][j] as i64) / q(cartan[j][i] as i64);
                        queue.push_back(j);
                    }
                }
            }
            let mn = sym.iter().copied().min().unwrap();
            for s in sym.iter_mut() {
                *s /= mn;
            }
        }
        let inv = invert(&cartan);
        let mut rd = RootData { cartan, sym, positive_roots: Vec::new(), inv };
        rd.positive_roots = rd.compute_positive_roots();
        rd
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    fn compute_positive_roots(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        let mut roots: Vec<Vec<i32>> = Vec::new();
        let mut set: FxHashSet<Vec<i32>> = FxHashSet::default();
        let mut frontier: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        for f in &frontier {
            set.insert(f.clone());
        }
        while !frontier.is_empty() {
            roots.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for b in &frontier {
                for i in 0..n {
                    let pair: i32 = (0..n).map(|j| b[j] * self.cartan[i][j]).sum();
                    let mut p = 0;
                    let mut down = b.clone();
                    loop {
                        down[i] -= 1;
                        if set.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pair > 0 {
                        let mut up = b.clone();
                        up[i] += 1;
                        if set.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }
        roots
    }

    /// Simple root `alpha_j` in fundamental-weight coordinates.
    pub fn simple_root(&self, j: usize) -> Vec<i32> {
        (0..self.rank()).map(|i| self.cartan[i][j]).collect()
    }

    /// Converts simple-root coordinates to weight coordinates.
    pub fn root_to_weight(&self, r: &[i32]) -> Vec<i32> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.cartan[i][j] * r[j]).sum()).collect()
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root(&self, w: &[i32]) -> Vec<Q> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| self.inv[j][i] * q(w[i] as i64)).sum()).collect()
    }

    /// Sum of simple-root coordinates, the pairing with the dual Weyl vector.
    pub fn height(&self, w: &[i32]) -> Q {
        self.weight_to_root(w).into_iter().sum()
    }

    /// `(lambda, alpha)` for a weight and a root in root coordinates.
    fn pair_wr(&self, w: &[i32], r: &[i32]) -> Q {
        (0..self.rank()).map(|j| q((r[j] * w[j]) as i64) * self.sym[j]).sum()
    }

    /// Invariant form on weights.
    pub fn form(&self, a: &[i32], b: &[i32]) -> Q {
        let rb = self.weight_to_root(b);
        (0..self.rank()).map(|j| rb[j] * q(a[j] as i64) * self.sym[j]).sum()
    }

    pub fn rho(&self) -> Vec<i32> {
        vec![1; self.rank()]
    }

    pub fn is_dominant(&self, w: &[i32]) -> bool {
        w.iter().all(|&x| x >= 0)
    }

    pub fn reflect(&self, w: &[i32], i: usize) -> Vec<i32> {
        let c = w[i];
        let a = self.simple_root(i);
        w.iter().zip(a).map(|(x, y)| x - c * y).collect()
    }

    pub fn dominant_rep(&self, w: &[i32]) -> Vec<i32> {
        let mut v = w.to_vec();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            v = self.reflect(&v, i);
        }
        v
    }

    pub fn weyl_orbit(&self, w: &[i32]) -> Vec<Vec<i32>> {
        let mut seen: FxHashSet<Vec<i32>> = FxHashSet::default();
        let start = self.dominant_rep(w);
        seen.insert(start.clone());
        let mut out = vec![start.clone()];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for i in 0..self.rank() {
                if v[i] > 0 {
                    let r = self.reflect(&v, i);
                    if seen.insert(r.clone()) {
                        out.push(r.clone());
                        stack.push(r);
                    }
                }
            }
        }
        out
    }

    pub fn weyl_dimension(&self, lambda: &[i32]) -> Result<Coeff> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant);
        }
        let lr: Vec<i32> = lambda.iter().map(|x| x + 1).collect();
        let rho = self.rho();
        let mut num = Q::one();
        for a in &self.positive_roots {
            num *= self.pair_wr(&lr, a) / self.pair_wr(&rho, a);
        }
        Ok(Coeff::from(num.to_integer()))
    }

    fn dominant_weights_below(&self, lambda: &[i32]) -> Vec<Vec<i32>> {
        let roots_w: Vec<Vec<i32>> =
            self.positive_roots.iter().map(|r| self.root_to_weight(r)).collect();
        let mut seen: FxHashSet<Vec<i32>> = FxHashSet::default();
        seen.insert(lambda.to_vec());
        let mut stack = vec![lambda.to_vec()];
        while let Some(v) = stack.pop() {
            for rw in &roots_w {
                let u: Vec<i32> = v.iter().zip(rw).map(|(x, y)| x - y).collect();
                if self.is_dominant(&u) && seen.insert(u.clone()) {
                    stack.push(u);
                }
            }
        }
        let mut out: Vec<Vec<i32>> = seen.into_iter().collect();
        out.sort_by(|a, b| self.height(b).cmp(&self.height(a)).then(b.cmp(a)));
        out
    }

    /// Dominant weight multiplicities of `V(lambda)` via Freudenthal.
    pub fn dominant_multiplicities(&self, lambda: &[i32]) -> Result<Vec<(Vec<i32>, i64)>> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant);
        }
        let doms = self.dominant_weights_below(lambda);
        let rho = self.rho();
        let plus = |a: &[i32], b: &[i32]| -> Vec<i32> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let lr = plus(lambda, &rho);
        let top = self.form(&lr, &lr);
        let roots_w: Vec<Vec<i32>> =
            self.positive_roots.iter().map(|r| self.root_to_weight(r)).collect();
        let mut mult: FxHashMap<Vec<i32>, i64> = FxHashMap::default();
        let mut out = Vec::new();
        for mu in doms {
            let m = if mu.as_slice() == lambda {
                1
            } else {
                let mut acc = Q::zero();
                for (r, rw) in self.positive_roots.iter().zip(&roots_w) {
                    let mut k = 1;
                    loop {
                        let w: Vec<i32> = mu.iter().zip(rw).map(|(x, y)| x + k * y).collect();
                        let d = self.dominant_rep(&w);
                        match mult.get(&d) {
                            Some(&c) => {
                                acc += q(c) * self.pair_wr(&w, r);
                                k += 1;
                            }
                            None => break,
                        }
                    }
                }
                let mr = plus(&mu, &rho);
                let den = top - self.form(&mr, &mr);
                let v = acc * q(2) / den;
                debug_assert!(v.is_integer());
                v.to_integer()
            };
            if m > 0 {
                mult.insert(mu.clone(), m);
                out.push((mu, m));
            }
        }
        Ok(out)
    }

    pub fn irr_char(&self, lattice: Lattice, lambda: &[i32]) -> Result<FiniteChar> {
        let mut c = FiniteChar::zero(lattice, self.rank());
        for (mu, m) in self.dominant_multiplicities(lambda)? {
            for w in self.weyl_orbit(&mu) {
                c.add_int(w, m);
            }
        }
        Ok(c)
    }

    /// Decomposes a character into irreducibles by peeling maximal weights.
    pub fn branch(&self, chi: &FiniteChar) -> Result<Vec<(Vec<i32>, Coeff)>> {
        let mut rest = chi.clone();
        let mut out: Vec<(Vec<i32>, Coeff)> = Vec::new();
        while !rest.is_zero() {
            let (w, c) = rest
                .iter()
                .max_by(|a, b| self.height(a.0).cmp(&self.height(b.0)).then(b.0.cmp(a.0)))
                .map(|(w, c)| (w.clone(), c.clone()))
                .unwrap();
            if !c.is_positive() || !self.is_dominant(&w) {
                return Err(Error::NegativeResidue);
            }
            let irr = self.irr_char(chi.lattice, &w)?;
            rest = rest.sub(&irr.scale(&c));
            out.push((w, c));
        }
        out.sort_by(|a, b| self.height(&b.0).cmp(&self.height(&a.0)).then(b.0.cmp(&a.0)));
        Ok(out)
    }

    /// `prod_{alpha > 0} (1 - e^{-alpha})` in weight coordinates.
    pub fn weyl_denominator(&self, lattice: Lattice) -> FiniteChar {
        let n = self.rank();
        let mut acc = FiniteChar::one(lattice, n);
        for r in &self.positive_roots {
            let mut f = FiniteChar::one(lattice, n);
            f.add_int(self.root_to_weight(r).iter().map(|x| -x).collect(), -1);
            acc = acc.mul(&f);
        }
        acc
    }
}

/// Cartan matrices of the standard finite types, Bourbaki labels.
pub fn cartan_of(name: &str) -> Option<Vec<Vec<i32>>> {
    let (c, n) = name.split_at(1);
    let n: usize = n.parse().ok()?;
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    match (c, n) {
        ("A", _) => {}
        ("B", n) if n >= 2 => m[n - 1][n - 2] = -2,
        ("C", n) if n >= 2 => m[n - 2][n - 1] = -2,
        ("F", 4) => m[2][1] = -2,
        ("G", 2) => m[0][1] = -3,
        _ => return None,
    }
    Some(m)
}

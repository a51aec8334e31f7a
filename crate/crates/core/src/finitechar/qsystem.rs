//! Restricted KR characters and the twisted Q-system.

use crate::cartan::NodeKind;
use crate::engine::{Engine, EngineKind};
use crate::symalg::{beta_bar_char, beta_char, FiniteChar, Lattice, SpectralParam};
use crate::Result;

#[derive(Clone, Debug)]
pub struct QSystemReport {
    pub holds: bool,
    pub lattice: Lattice,
    /// `Q_k^2 - Q_{k+1} Q_{k-1} - R_k`.
    pub residual: FiniteChar,
}

/// `Q_k^{(i)}`: the restricted character of `W^{(i)}_k` on the given side.
pub fn q_char(e: &Engine, kind: EngineKind, i: u8, k: u32, lattice: Lattice) -> Result<FiniteChar> {
    let p = e.kr_char(kind, i, k, SpectralParam::base())?;
    Ok(match lattice {
        Lattice::Tilde => beta_char(&e.t, &p),
        Lattice::Bar => beta_bar_char(&e.t, &p),
    })
}

/// The correction term `R_k^{(i)}`.
pub fn r_term(e: &Engine, kind: EngineKind, i: u8, k: u32, lattice: Lattice) -> Result<FiniteChar> {
    let t = &e.t;
    let idx = t.idx(i)?;
    let mut acc = FiniteChar::one(lattice, t.n);
    if t.is_twisted() && t.kind[idx] == NodeKind::Special {
        acc = acc.mul(&q_char(e, kind, i, k, lattice)?);
    }
    for &(j, fixed) in &t.adj[idx] {
        let qj = q_char(e, kind, t.labels[j], k, lattice)?;
        let pw = if t.is_twisted() && t.kind[idx] == NodeKind::Diag && !fixed { t.m as u32 } else { 1 };
        acc = acc.mul(&qj.pow(pw));
    }
    Ok(acc)
}

/// Checks `(Q_k)^2 = Q_{k+1} Q_{k-1} + R_k` exactly.
pub fn check_qsystem(e: &Engine, kind: EngineKind, i: u8, k: u32, lattice: Lattice) -> Result<QSystemReport> {
    let qk = q_char(e, kind, i, k, lattice)?;
    let up = q_char(e, kind, i, k + 1, lattice)?;
    let down = if k == 0 { FiniteChar::zero(lattice, e.t.n) } else { q_char(e, kind, i, k - 1, lattice)? };
    let r = if k == 0 { FiniteChar::zero(lattice, e.t.n) } else { r_term(e, kind, i, k, lattice)? };
    let residual = qk.mul(&qk).sub(&up.mul(&down)).sub(&r);
    let residual = if k == 0 { qk.sub(&FiniteChar::one(lattice, e.t.n)) } else { residual };
    Ok(QSystemReport { holds: residual.is_zero(), lattice, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeSpec;

    #[test]
    fn q_systems_hold() {
        for name in ["A2-2", "A4-2", "A3-2", "D3-2", "D4-2", "D4-3", "untwisted:D4"] {
            let e = Engine::new(TypeSpec::parse(name).unwrap());
            for &i in &e.t.labels.clone() {
                for k in 1..=2 {
                    for lat in [Lattice::Tilde, Lattice::Bar] {
                        let r = check_qsystem(&e, EngineKind::Tsys, i, k, lat).unwrap();
                        assert!(r.holds, "{name} {i} {k} {lat:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn r_terms() {
        let e = Engine::new(TypeSpec::parse("D4-3").unwrap());
        for k in 1..=2 {
            let lat = Lattice::Tilde;
            assert_eq!(r_term(&e, EngineKind::Fold, 1, k, lat).unwrap(), q_char(&e, EngineKind::Fold, 2, k, lat).unwrap());
            assert_eq!(r_term(&e, EngineKind::Fold, 2, k, lat).unwrap(), q_char(&e, EngineKind::Fold, 1, k, lat).unwrap().pow(3));
        }
        let e = Engine::new(TypeSpec::parse("A2-2").unwrap());
        assert_eq!(r_term(&e, EngineKind::Fold, 0, 2, Lattice::Bar).unwrap(), q_char(&e, EngineKind::Fold, 0, 2, Lattice::Bar).unwrap());
    }
}

//! p-primary homotopy exponent intervals for decomposition outputs.
//!
//! The inputs are the two exponent theorems for the factor types that
//! occur: `exp_p(S^(2n+1)) = p^n` (Cohen-Moore-Neisendorfer) and, for the
//! sphere bundles, `exp_p(B(3,2p+1)) = p^(p+1)` together with
//! `p^(m+p-2) <= exp_p(B(2m-1,2m+2p-3)) <= p^(m+p-1)` for `m > 2`
//! (Davis-Theriault). Looping does not change the exponent, and the
//! exponent of a finite product is the factor-wise maximum, so every
//! decomposition yields an interval `[lo, hi]` meaning
//! `p^lo <= exp_p <= p^hi`.

use std::fmt;

use crate::fibre::{loop_decomposition, FibreError, LoopSpace};
use crate::space::{Atom, Prime, SpaceExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExponentError {
    #[error("no exponent bound is available for {0} (multi-cell bundles are out of range)")]
    Unsupported(String),
    #[error(transparent)]
    Fibre(#[from] Box<FibreError>),
}

/// `[lo, hi]` with `p^lo <= exp_p(X) <= p^hi`; exact when `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentInterval {
    pub lo: u32,
    pub hi: u32,
}

impl ExponentInterval {
    pub fn exact(k: u32) -> Self {
        ExponentInterval { lo: k, hi: k }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    fn join(self, other: ExponentInterval) -> ExponentInterval {
        ExponentInterval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }
}

impl fmt::Display for ExponentInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "exp = p^{}", self.lo)
        } else {
            write!(f, "p^{} ≤ exp ≤ p^{}", self.lo, self.hi)
        }
    }
}

/// Exponent interval of a single atom. The looped flag is accepted and
/// ignored: looping preserves the homotopy exponent.
pub fn exponent_atom(atom: &Atom, _looped: bool, p: Prime) -> Result<ExponentInterval, ExponentError> {
    match atom {
        Atom::Point | Atom::Circle => Ok(ExponentInterval::exact(0)),
        Atom::Sphere(d) if d % 2 == 1 => Ok(ExponentInterval::exact((d - 1) / 2)),
        Atom::BCell(cells) if cells.len() == 2 => {
            let m = (cells[0] + 1) / 2;
            if m == 2 {
                Ok(ExponentInterval::exact(p + 1))
            } else {
                Ok(ExponentInterval { lo: m + p - 2, hi: m + p - 1 })
            }
        }
        other => Err(ExponentError::Unsupported(other.to_string())),
    }
}

/// Exponent interval of a product: the factor-wise maximum in both
/// coordinates. The point has interval `[0, 0]`.
pub fn exponent(expr: &SpaceExpr, p: Prime) -> Result<ExponentInterval, ExponentError> {
    let mut out = ExponentInterval::exact(0);
    for f in expr.factors() {
        out = out.join(exponent_atom(&f.atom, f.looped, p)?);
    }
    Ok(out)
}

/// Exponent interval for a computed case, with the exactness flag. The
/// loop space and the symmetric space itself have the same exponent.
pub fn exponent_report(ls: &LoopSpace) -> Result<ExponentInterval, ExponentError> {
    exponent(&ls.expr, ls.record.prime)
}

/// Dimension of the top cell across all output factors. Several tabulated
/// classical exponent entries read off this dimension rather than the
/// Cohen-Moore-Neisendorfer exponent of the top factor, so the audit
/// output reports both quantities side by side.
pub fn top_sphere_dimension(ls: &LoopSpace) -> Option<u32> {
    ls.expr.factors().iter().flat_map(|f| f.atom.cells()).max()
}

/// Run a case end to end and report its exponent interval.
pub fn case_exponent(
    case: &crate::catalog::CaseId,
    p: Prime,
) -> Result<ExponentInterval, ExponentError> {
    let record = crate::catalog::case_record(case, p).map_err(FibreError::from).map_err(Box::new)?;
    let ls = loop_decomposition(&record).map_err(Box::new)?;
    exponent_report(&ls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CaseId;
    use crate::space::Factor;

    #[test]
    fn atom_exponents() {
        assert_eq!(exponent_atom(&Atom::Sphere(23), false, 5).unwrap(), ExponentInterval::exact(11));
        assert_eq!(exponent_atom(&Atom::Sphere(23), true, 13).unwrap(), ExponentInterval::exact(11));
        assert_eq!(
            exponent_atom(&Atom::BCell(vec![15, 23]), false, 5).unwrap(),
            ExponentInterval { lo: 11, hi: 12 }
        );
        assert_eq!(exponent_atom(&Atom::BCell(vec![3, 11]), false, 5).unwrap(), ExponentInterval::exact(6));
        assert!(exponent_atom(&Atom::BCell(vec![3, 15, 27]), false, 7).is_err());
    }

    #[test]
    fn product_rule_is_factorwise_max() {
        let fii = SpaceExpr::new(5, vec![
            Factor::plain(Atom::Sphere(7)),
            Factor::looped(Atom::Sphere(23)),
        ])
        .unwrap();
        assert_eq!(exponent(&fii, 5).unwrap(), ExponentInterval::exact(11));

        let fi = SpaceExpr::new(5, vec![
            Factor::plain(Atom::Sphere(3)),
            Factor::plain(Atom::Sphere(7)),
            Factor::looped(Atom::BCell(vec![15, 23])),
        ])
        .unwrap();
        assert_eq!(exponent(&fi, 5).unwrap(), ExponentInterval { lo: 11, hi: 12 });

        assert_eq!(exponent(&SpaceExpr::point(5), 5).unwrap(), ExponentInterval::exact(0));
    }

    #[test]
    fn case_reports() {
        assert_eq!(case_exponent(&CaseId::EVIII, 17).unwrap(), ExponentInterval::exact(29));
        assert_eq!(case_exponent(&CaseId::EI, 5).unwrap(), ExponentInterval::exact(11));
        assert_eq!(case_exponent(&CaseId::EIX, 11).unwrap(), ExponentInterval { lo: 29, hi: 30 });
    }

    #[test]
    fn looping_preserves_the_exponent() {
        let loop_free = [
            SpaceExpr::new(5, vec![Factor::plain(Atom::Sphere(7))]).unwrap(),
            SpaceExpr::new(5, vec![
                Factor::plain(Atom::BCell(vec![15, 23])),
                Factor::plain(Atom::Sphere(3)),
            ])
            .unwrap(),
            SpaceExpr::new(7, vec![
                Factor::plain(Atom::Circle),
                Factor::plain(Atom::BCell(vec![3, 15])),
            ])
            .unwrap(),
        ];
        for e in loop_free {
            let p = e.prime();
            assert_eq!(exponent(&e.loop_space().unwrap(), p).unwrap(), exponent(&e, p).unwrap());
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExponentInterval::exact(11).to_string(), "exp = p^11");
        assert_eq!(ExponentInterval { lo: 11, hi: 12 }.to_string(), "p^11 ≤ exp ≤ p^12");
    }
}

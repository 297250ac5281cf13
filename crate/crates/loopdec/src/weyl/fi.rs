//! The finite non-splitting check for `H^*(FI; F_5)`.
//!
//! The mod-5 cohomology of `FI = F_4/SU(2)·Sp(3)` reduces to
//! `F_5[f_4, f_8]` modulo relations, the essential one in degree 16 being
//! `f_4^4 - 2 f_4^2 f_8 - f_8^2`. A nontrivial tensor splitting of the
//! ring would force a substitution `f_8 ↦ a f_8' + b f_4^2` (with `a` a
//! unit) after which that relation involves only one of the two
//! generators. This module expands all twenty substitutions exactly over
//! `F_5` and reports that every one keeps both generators in play, so no
//! splitting exists.

use serde::Serialize;

use super::poly::{PolyError, Polynomial};

const P: u64 = 5;

#[derive(Debug, Clone, Serialize)]
pub struct FiSubstitution {
    pub a: u64,
    pub b: u64,
    /// The substituted relation, printed with `x0 = f4`, `x1 = f8'`.
    pub relation: String,
    pub involves_f4: bool,
    pub involves_f8: bool,
    pub non_splitting: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiReport {
    pub prime: u64,
    pub substitutions: Vec<FiSubstitution>,
    pub ok: bool,
}

/// Runs the twenty substitutions `f_8 ↦ a f_8' + b f_4^2` over `F_5` and
/// returns `ok = true` when every substituted relation involves both
/// `f_4` and `f_8'` (so the degree-16 relation never splits).
pub fn verify_fi_no_splitting() -> Result<FiReport, PolyError> {
    let f4 = Polynomial::var(P, 2, 0)?;
    let f8 = Polynomial::var(P, 2, 1)?;
    // r = f4^4 - 2 f4^2 f8 - f8^2
    let relation = f4
        .pow(4)?
        .sub(&f4.pow(2)?.mul(&f8)?.scale(2))?
        .sub(&f8.pow(2)?)?;

    let mut substitutions = Vec::new();
    for a in 1..P {
        for b in 0..P {
            let image = f8.scale(a as i64).add(&f4.pow(2)?.scale(b as i64))?;
            let substituted = relation.substitute(&[f4.clone(), image])?;
            let involves_f4 = substituted.terms().any(|(m, _)| m[0] > 0);
            let involves_f8 = substituted.terms().any(|(m, _)| m[1] > 0);
            substitutions.push(FiSubstitution {
                a,
                b,
                relation: substituted.to_string(),
                involves_f4,
                involves_f8,
                non_splitting: involves_f4 && involves_f8,
            });
        }
    }
    let ok = substitutions.iter().all(|s| s.non_splitting);
    Ok(FiReport { prime: P, substitutions, ok })
}

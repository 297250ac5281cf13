//! Quasi-p-regular decompositions of the relevant Lie groups and the
//! per-case database of compact irreducible simply-connected symmetric
//! spaces.
//!
//! Group decompositions come from two sources of record: the Mimura-Toda
//! tables for classical and exceptional quasi-p-regular groups, and the
//! Harris splittings used to rewrite orthogonal groups and quotient forms
//! (`SO(2n+1) ~p Sp(n)`, `SO(2n) ~p Sp(n-1) x S^(2n-1)`,
//! `PSp(4) ~p Spin(9)`, `SU(8)/{±I} ~p SU(8)`, `Ss(16) ~p S^15 x Sp(7)`).
//! The index-range rows are evaluated as written, with empty products when
//! a range is void. `E_7` and `E_8` at `p = 7` are not quasi-regular; for
//! those two the catalog carries the Mimura-Nishida-Toda forms
//! `B(3,15,27) x B(11,23,35) x S^19` and `B(3,15,27,39) x B(23,35,47,59)`
//! as extension data.
//!
//! Every symmetric-space case record stores the degrees where the induced
//! map of indecomposables is nonzero as *data with a citation*; the engine
//! never infers a cohomology computation.

use std::fmt;

use crate::space::{check_prime, Atom, Factor, Prime, SpaceError, SpaceExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{group} is not quasi-regular at p={p} (needs {condition}) and no extension entry exists")]
    NotQuasiRegular { group: String, p: Prime, condition: String },
    #[error("cannot parse group token {0:?}")]
    BadGroupToken(String),
    #[error("cannot parse case token {0:?}")]
    BadCaseToken(String),
    #[error("parameter error for {case}: {reason}")]
    Parameter { case: String, reason: String },
    #[error("prime p={p} violates the condition {condition} for {case}")]
    Prime { case: String, p: Prime, condition: String },
    #[error("slot error: atom {0} has no slot in [2, p] at p={1}")]
    Slot(String, Prime),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A Lie group (or p-local form of one) the catalog can decompose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupId {
    Su(u32),
    U(u32),
    Sp(u32),
    So(u32),
    Spin(u32),
    G2,
    F4,
    E6,
    E7,
    E8,
    /// `PSp(4) ~p Spin(9)` at odd primes.
    PSp4,
    /// `SU(8)/{±I} ~p SU(8)` at odd primes.
    Su8Quot,
    /// The semi-spinor group `Ss(16) ~p S^15 x Sp(7)`.
    Ss16,
    /// `S^1 · K`, p-locally `S^1 x K`.
    DotCircle(Box<GroupId>),
    /// `SU(2) · K`, p-locally `S^3 x K`.
    DotSu2(Box<GroupId>),
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Su(n) => write!(f, "SU({n})"),
            GroupId::U(n) => write!(f, "U({n})"),
            GroupId::Sp(n) => write!(f, "Sp({n})"),
            GroupId::So(n) => write!(f, "SO({n})"),
            GroupId::Spin(n) => write!(f, "Spin({n})"),
            GroupId::G2 => write!(f, "G2"),
            GroupId::F4 => write!(f, "F4"),
            GroupId::E6 => write!(f, "E6"),
            GroupId::E7 => write!(f, "E7"),
            GroupId::E8 => write!(f, "E8"),
            GroupId::PSp4 => write!(f, "PSp(4)"),
            GroupId::Su8Quot => write!(f, "SU(8)/{{±I}}"),
            GroupId::Ss16 => write!(f, "Ss(16)"),
            GroupId::DotCircle(k) => write!(f, "T1·{k}"),
            GroupId::DotSu2(k) => write!(f, "SU(2)·{k}"),
        }
    }
}

impl GroupId {
    /// Parse tokens like `SU(8)`, `Spin(9)`, `E7`, `PSp(4)`, `Ss(16)`,
    /// `SU(8)/{±I}` (ASCII form `SU(8)/{+-I}` also accepted), and dot
    /// products `T1.E6` / `SU(2).Sp(3)`.
    pub fn parse(token: &str) -> Result<GroupId, CatalogError> {
        let t = token.trim();
        let bad = || CatalogError::BadGroupToken(token.to_string());
        match t {
            "G2" => return Ok(GroupId::G2),
            "F4" => return Ok(GroupId::F4),
            "E6" => return Ok(GroupId::E6),
            "E7" => return Ok(GroupId::E7),
            "E8" => return Ok(GroupId::E8),
            "PSp(4)" => return Ok(GroupId::PSp4),
            "Ss(16)" => return Ok(GroupId::Ss16),
            "SU(8)/{±I}" | "SU(8)/{+-I}" | "SU(8)/C" => return Ok(GroupId::Su8Quot),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("T1.").or_else(|| t.strip_prefix("T1·")) {
            return Ok(GroupId::DotCircle(Box::new(GroupId::parse(rest)?)));
        }
        if let Some(rest) = t.strip_prefix("SU(2).").or_else(|| t.strip_prefix("SU(2)·")) {
            return Ok(GroupId::DotSu2(Box::new(GroupId::parse(rest)?)));
        }
        let (family, arg) = t.split_once('(').ok_or_else(bad)?;
        let n: u32 = arg.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        match family {
            "SU" => Ok(GroupId::Su(n)),
            "U" => Ok(GroupId::U(n)),
            "Sp" => Ok(GroupId::Sp(n)),
            "SO" => Ok(GroupId::So(n)),
            "Spin" => Ok(GroupId::Spin(n)),
            _ => Err(bad()),
        }
    }

    /// Generator degrees of the rational type, used as reference data for
    /// the decomposition-soundness checks.
    pub fn reference_type(&self) -> Vec<u32> {
        match self {
            GroupId::Su(n) => (2..=*n).map(|i| 2 * i - 1).collect(),
            GroupId::U(n) => {
                let mut t = vec![1];
                t.extend((2..=*n).map(|i| 2 * i - 1));
                t
            }
            GroupId::Sp(n) => (1..=*n).map(|i| 4 * i - 1).collect(),
            GroupId::So(k) | GroupId::Spin(k) => {
                if *k < 2 {
                    Vec::new()
                } else if k % 2 == 1 {
                    GroupId::Sp((k - 1) / 2).reference_type()
                } else if *k == 2 {
                    vec![1]
                } else {
                    let n = k / 2;
                    let mut t: Vec<u32> = (1..n).map(|i| 4 * i - 1).collect();
                    t.push(2 * n - 1);
                    t.sort_unstable();
                    t
                }
            }
            GroupId::G2 => vec![3, 11],
            GroupId::F4 => vec![3, 11, 15, 23],
            GroupId::E6 => vec![3, 9, 11, 15, 17, 23],
            GroupId::E7 => vec![3, 11, 15, 19, 23, 27, 35],
            GroupId::E8 => vec![3, 15, 23, 27, 35, 39, 47, 59],
            GroupId::PSp4 => GroupId::Sp(4).reference_type(),
            GroupId::Su8Quot => GroupId::Su(8).reference_type(),
            GroupId::Ss16 => {
                let mut t = GroupId::Sp(7).reference_type();
                t.push(15);
                t.sort_unstable();
                t
            }
            GroupId::DotCircle(k) => {
                let mut t = vec![1];
                t.extend(k.reference_type());
                t.sort_unstable();
                t
            }
            GroupId::DotSu2(k) => {
                let mut t = vec![3];
                t.extend(k.reference_type());
                t.sort_unstable();
                t
            }
        }
    }

    /// Citation for the decomposition this catalog returns for the group.
    pub fn citation(&self, p: Prime) -> &'static str {
        match self {
            GroupId::Su(_) | GroupId::Sp(_) | GroupId::U(_) => CITE_MT_CLASSICAL,
            GroupId::So(_) | GroupId::Spin(_) => CITE_HARRIS,
            GroupId::E7 | GroupId::E8 if p == 7 => CITE_MNT,
            GroupId::G2 | GroupId::F4 | GroupId::E6 | GroupId::E7 | GroupId::E8 => {
                CITE_MT_EXCEPTIONAL
            }
            GroupId::PSp4 | GroupId::Su8Quot | GroupId::Ss16 => CITE_HARRIS_QUOTIENTS,
            GroupId::DotCircle(k) | GroupId::DotSu2(k) => k.citation(p),
        }
    }
}

pub const CITE_MT_CLASSICAL: &str =
    "Mimura-Toda: quasi-p-regular decompositions of SU(n), Sp(n), SO(n)";
pub const CITE_MT_EXCEPTIONAL: &str =
    "Mimura-Toda: quasi-p-regular decompositions of the exceptional groups";
pub const CITE_HARRIS: &str =
    "Harris: SO(2n+1) ~p Sp(n), SO(2n) ~p Spin(2n-1) x S^(2n-1), SU(2n) ~p Sp(n) x SU(2n)/Sp(n)";
pub const CITE_HARRIS_QUOTIENTS: &str =
    "p-local identifications PSp(4) ~p Spin(9), SU(8)/{±I} ~p SU(8), Ss(16) ~p S^15 x Sp(7)";
pub const CITE_MNT: &str =
    "Mimura-Nishida-Toda: E7 ~7 B(3,15,27) x B(11,23,35) x S^19, E8 ~7 B(3,15,27,39) x B(23,35,47,59)";
pub const CITE_MNT_41: &str =
    "Mimura-Nishida-Toda Thm 4.1: decompositions of SU(2n)/Sp(n) and SU(2n+1)/SO(2n+1)";
pub const CITE_MT2_58: &str = "Mimura-Toda II Thm 5.8: Q-phi* for Sp(n)/U(n) nonzero in {3,7,...,4[n/2]-1}";
pub const CITE_MT2_67: &str =
    "Mimura-Toda II Thm 6.7: Q-phi* for SU(2n)/SO(2n) nonzero in {3,7,...,4n-5}";
pub const CITE_EPI: &str =
    "upper-left block inclusion: phi* is a projection, so Q-phi* is onto every generator degree of H";

fn b_atom(bottom: u32, p: Prime) -> Atom {
    Atom::BCell(vec![bottom, bottom + 2 * (p - 1)])
}

// SU(n) row of the Mimura-Toda table, condition p > n/2.
fn su_atoms(n: u32, p: Prime) -> Result<Vec<Atom>, CatalogError> {
    if 2 * p <= n {
        return Err(CatalogError::NotQuasiRegular {
            group: format!("SU({n})"),
            p,
            condition: "p > n/2".into(),
        });
    }
    let mut atoms = Vec::new();
    let (n, pi) = (n as i64, p as i64);
    for i in 2..=(n - pi + 1) {
        atoms.push(b_atom(2 * i as u32 - 1, p));
    }
    for j in 2.max(n - pi + 2)..=n.min(pi) {
        atoms.push(Atom::Sphere(2 * j as u32 - 1));
    }
    Ok(atoms)
}

// Sp(n) row, condition p > n. SO(2n+1) is the same row via Harris.
fn sp_atoms(n: u32, p: Prime) -> Result<Vec<Atom>, CatalogError> {
    if p <= n {
        return Err(CatalogError::NotQuasiRegular {
            group: format!("Sp({n})"),
            p,
            condition: "p > n".into(),
        });
    }
    let mut atoms = Vec::new();
    let (n, pi) = (n as i64, p as i64);
    for i in 1..=(n - (pi - 1) / 2) {
        atoms.push(b_atom(4 * i as u32 - 1, p));
    }
    for j in 1.max(n - (pi - 3) / 2)..=n.min((pi - 1) / 2) {
        atoms.push(Atom::Sphere(4 * j as u32 - 1));
    }
    Ok(atoms)
}

fn exceptional_atoms(g: &GroupId, p: Prime) -> Result<Vec<Atom>, CatalogError> {
    let b = |x: u32| b_atom(x, p);
    let s = Atom::Sphere;
    let fail = |cond: &str| CatalogError::NotQuasiRegular {
        group: g.to_string(),
        p,
        condition: cond.into(),
    };
    Ok(match (g, p) {
        (GroupId::G2, 5) => vec![b(3)],
        (GroupId::G2, _) => vec![s(3), s(11)],
        (GroupId::F4, 5) => vec![b(3), b(15)],
        (GroupId::F4, 7) => vec![b(3), b(11)],
        (GroupId::F4, 11) => vec![b(3), s(11), s(15)],
        (GroupId::F4, _) => vec![s(3), s(11), s(15), s(23)],
        (GroupId::E6, 5) => vec![b(3), b(9), b(15)],
        (GroupId::E6, 7) => vec![b(3), b(11), s(9), s(17)],
        (GroupId::E6, 11) => vec![b(3), s(9), s(11), s(15), s(17)],
        (GroupId::E6, _) => vec![s(3), s(9), s(11), s(15), s(17), s(23)],
        (GroupId::E7, 7) => vec![
            Atom::BCell(vec![3, 15, 27]),
            Atom::BCell(vec![11, 23, 35]),
            s(19),
        ],
        (GroupId::E7, 11) => vec![b(3), b(15), s(11), s(19), s(27)],
        (GroupId::E7, 13) => vec![b(3), b(11), s(15), s(19), s(23)],
        (GroupId::E7, 17) => vec![b(3), s(11), s(15), s(19), s(23), s(27)],
        (GroupId::E7, p) if p >= 19 => vec![s(3), s(11), s(15), s(19), s(23), s(27), s(35)],
        (GroupId::E7, _) => return Err(fail("p >= 11, or the p = 7 extension entry")),
        (GroupId::E8, 7) => vec![
            Atom::BCell(vec![3, 15, 27, 39]),
            Atom::BCell(vec![23, 35, 47, 59]),
        ],
        (GroupId::E8, 11) => vec![b(3), b(15), b(27), b(39)],
        (GroupId::E8, 13) => vec![b(3), b(15), b(23), b(35)],
        (GroupId::E8, 17) => vec![b(3), b(15), b(27), s(23), s(39)],
        (GroupId::E8, 19) => vec![b(3), b(23), s(15), s(27), s(35), s(47)],
        (GroupId::E8, 23) => vec![b(3), b(15), s(23), s(27), s(35), s(39)],
        (GroupId::E8, 29) => vec![b(3), s(15), s(23), s(27), s(35), s(39), s(47)],
        (GroupId::E8, p) if p >= 31 => {
            vec![s(3), s(15), s(23), s(27), s(35), s(39), s(47), s(59)]
        }
        (GroupId::E8, _) => return Err(fail("p >= 11, or the p = 7 extension entry")),
        _ => unreachable!("exceptional_atoms called on a classical group"),
    })
}

/// Decompose a group into unlooped atoms at `p`, per the quasi-regular
/// tables (with orthogonal groups first rewritten through Harris).
pub fn group_atoms(g: &GroupId, p: Prime) -> Result<Vec<Atom>, CatalogError> {
    check_prime(p)?;
    let atoms = match g {
        GroupId::Su(n) => {
            if *n <= 1 {
                Vec::new()
            } else {
                su_atoms(*n, p)?
            }
        }
        GroupId::Sp(n) => {
            if *n == 0 {
                Vec::new()
            } else {
                sp_atoms(*n, p)?
            }
        }
        GroupId::U(n) => {
            let mut a = vec![Atom::Circle];
            a.extend(group_atoms(&GroupId::Su(*n), p)?);
            a
        }
        GroupId::So(k) | GroupId::Spin(k) => match k {
            0 | 1 => Vec::new(),
            2 => vec![Atom::Circle],
            k if k % 2 == 1 => group_atoms(&GroupId::Sp((k - 1) / 2), p)?,
            k => {
                let n = k / 2;
                let mut a = group_atoms(&GroupId::Sp(n - 1), p)?;
                a.push(Atom::Sphere(2 * n - 1));
                a
            }
        },
        GroupId::G2 | GroupId::F4 | GroupId::E6 | GroupId::E7 | GroupId::E8 => {
            exceptional_atoms(g, p)?
        }
        GroupId::PSp4 => group_atoms(&GroupId::Spin(9), p)?,
        GroupId::Su8Quot => group_atoms(&GroupId::Su(8), p)?,
        GroupId::Ss16 => {
            let mut a = group_atoms(&GroupId::Sp(7), p)?;
            a.push(Atom::Sphere(15));
            a
        }
        GroupId::DotCircle(k) => {
            let mut a = vec![Atom::Circle];
            a.extend(group_atoms(k, p)?);
            a
        }
        GroupId::DotSu2(k) => {
            let mut a = vec![Atom::Sphere(3)];
            a.extend(group_atoms(k, p)?);
            a
        }
    };
    Ok(atoms)
}

/// Quasi-p-regular decomposition as a normalized, loop-free expression.
pub fn qr_decomposition(g: &GroupId, p: Prime) -> Result<SpaceExpr, CatalogError> {
    let atoms = group_atoms(g, p)?;
    Ok(SpaceExpr::new(p, atoms.into_iter().map(Factor::plain).collect())?)
}

/// Slot index of an atom: atoms with bottom cell `2m-1` or `2m+2p-3` both
/// occupy slot `m`, for `m` in `[2, p]`.
pub fn slot_index(atom: &Atom, p: Prime) -> Result<u32, CatalogError> {
    let err = || CatalogError::Slot(atom.to_string(), p);
    let b = atom.bottom().ok_or_else(err)?;
    if b % 2 == 0 || b < 3 || b > 4 * p - 3 {
        return Err(err());
    }
    let m = (b + 1) / 2;
    let m = if m <= p { m } else { m - (p - 1) };
    if (2..=p).contains(&m) {
        Ok(m)
    } else {
        Err(err())
    }
}

// ---------------------------------------------------------------------------
// Symmetric-space case records
// ---------------------------------------------------------------------------

/// The four displayed real-Grassmannian reductions, in row order:
/// 1. `SO(2n+1)/(SO(2m) x SO(2(n-m)+1))`   (requires `2m <= n`)
/// 2. `SO(2n+1)/(SO(2m-1) x SO(2(n-m)+2))` (requires `2m <= n+1`)
/// 3. `SO(2n+2)/(SO(2m+1) x SO(2(n-m)+1))` (requires `2m <= n`)
/// 4. `SO(2n+2)/(SO(2m) x SO(2(n-m)+2))`   (requires `2m <= n+1`)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BdiVariant {
    OddEven,
    OddOdd,
    EvenOdd,
    EvenEven,
}

impl BdiVariant {
    pub fn from_index(v: u32) -> Option<Self> {
        match v {
            1 => Some(BdiVariant::OddEven),
            2 => Some(BdiVariant::OddOdd),
            3 => Some(BdiVariant::EvenOdd),
            4 => Some(BdiVariant::EvenEven),
            _ => None,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            BdiVariant::OddEven => 1,
            BdiVariant::OddOdd => 2,
            BdiVariant::EvenOdd => 3,
            BdiVariant::EvenEven => 4,
        }
    }
}

/// A symmetric-space case with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseId {
    /// `SU(n)/SO(n)`; the parameter is the size of the unitary group.
    AI { su: u32 },
    /// `SU(2n)/Sp(n)`.
    AII { n: u32 },
    /// `U(n)/(U(m) x U(n-m))`.
    AIII { n: u32, m: u32 },
    /// Real Grassmannian cases, see [`BdiVariant`].
    BDI { n: u32, m: u32, variant: BdiVariant },
    /// `Sp(n)/U(n)`.
    CI { n: u32 },
    /// `Sp(n)/(Sp(m) x Sp(n-m))`.
    CII { n: u32, m: u32 },
    /// `SO(2n)/U(n)`.
    DIII { n: u32 },
    G,
    FI,
    FII,
    EI,
    EII,
    EIII,
    EIV,
    EV,
    EVI,
    EVII,
    EVIII,
    EIX,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::AI { su } => write!(f, "AI(n={su})"),
            CaseId::AII { n } => write!(f, "AII(n={n})"),
            CaseId::AIII { n, m } => write!(f, "AIII(n={n},m={m})"),
            CaseId::BDI { n, m, variant } => write!(f, "BDI(n={n},m={m},v={})", variant.index()),
            CaseId::CI { n } => write!(f, "CI(n={n})"),
            CaseId::CII { n, m } => write!(f, "CII(n={n},m={m})"),
            CaseId::DIII { n } => write!(f, "DIII(n={n})"),
            CaseId::G => write!(f, "G"),
            CaseId::FI => write!(f, "FI"),
            CaseId::FII => write!(f, "FII"),
            CaseId::EI => write!(f, "EI"),
            CaseId::EII => write!(f, "EII"),
            CaseId::EIII => write!(f, "EIII"),
            CaseId::EIV => write!(f, "EIV"),
            CaseId::EV => write!(f, "EV"),
            CaseId::EVI => write!(f, "EVI"),
            CaseId::EVII => write!(f, "EVII"),
            CaseId::EVIII => write!(f, "EVIII"),
            CaseId::EIX => write!(f, "EIX"),
        }
    }
}

impl CaseId {
    /// Parse a case token plus `--params` style arguments (`n=5,m=2,v=1`).
    pub fn parse(token: &str, params: &str) -> Result<CaseId, CatalogError> {
        let mut n = None;
        let mut m = None;
        let mut v = None;
        for part in params.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| CatalogError::BadCaseToken(format!("{token} --params {params}")))?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| CatalogError::BadCaseToken(format!("{token} --params {params}")))?;
            match key.trim() {
                "n" => n = Some(value),
                "m" => m = Some(value),
                "v" => v = Some(value),
                _ => return Err(CatalogError::BadCaseToken(format!("{token} --params {params}"))),
            }
        }
        let need_n = || {
            n.ok_or_else(|| CatalogError::Parameter {
                case: token.to_string(),
                reason: "missing parameter n".into(),
            })
        };
        let need_m = || {
            m.ok_or_else(|| CatalogError::Parameter {
                case: token.to_string(),
                reason: "missing parameter m".into(),
            })
        };
        match token {
            "AI" => Ok(CaseId::AI { su: need_n()? }),
            "AII" => Ok(CaseId::AII { n: need_n()? }),
            "AIII" => Ok(CaseId::AIII { n: need_n()?, m: need_m()? }),
            "BDI" => {
                let variant = BdiVariant::from_index(v.unwrap_or(0)).ok_or_else(|| {
                    CatalogError::Parameter {
                        case: token.to_string(),
                        reason: "missing or invalid variant v (1..4)".into(),
                    }
                })?;
                Ok(CaseId::BDI { n: need_n()?, m: need_m()?, variant })
            }
            "CI" => Ok(CaseId::CI { n: need_n()? }),
            "CII" => Ok(CaseId::CII { n: need_n()?, m: need_m()? }),
            "DIII" => Ok(CaseId::DIII { n: need_n()? }),
            "G" => Ok(CaseId::G),
            "FI" => Ok(CaseId::FI),
            "FII" => Ok(CaseId::FII),
            "EI" => Ok(CaseId::EI),
            "EII" => Ok(CaseId::EII),
            "EIII" => Ok(CaseId::EIII),
            "EIV" => Ok(CaseId::EIV),
            "EV" => Ok(CaseId::EV),
            "EVI" => Ok(CaseId::EVI),
            "EVII" => Ok(CaseId::EVII),
            "EVIII" => Ok(CaseId::EVIII),
            "EIX" => Ok(CaseId::EIX),
            _ => Err(CatalogError::BadCaseToken(token.to_string())),
        }
    }
}

/// One factor of the subgroup side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HPart {
    Circle,
    Group(GroupId),
}

impl HPart {
    pub fn atoms(&self, p: Prime) -> Result<Vec<Atom>, CatalogError> {
        match self {
            HPart::Circle => Ok(vec![Atom::Circle]),
            HPart::Group(g) => group_atoms(g, p),
        }
    }
}

/// The subgroup-to-group slot data a slot-match execution consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotCore {
    pub h_parts: Vec<HPart>,
    pub g: GroupId,
    /// Degrees where the induced map of indecomposables is nonzero.
    pub d: Vec<u32>,
}

/// Extension data for the `E_7` cases at `p = 7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCase {
    pub h_parts: Vec<HPart>,
    pub g: GroupId,
    pub d: Vec<u32>,
    /// Dimensions of subgroup-side spheres that map in trivially because
    /// the target's homotopy groups vanish there (Mimura-Nishida-Toda).
    pub null_dims: Vec<u32>,
}

/// How a case's loop space decomposition is assembled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    /// Match subgroup skeleta against group atoms slot by slot.
    SlotMatch(SlotCore),
    /// Peel off a factor of the subgroup unlooped, then slot-match a core.
    ProductSplit { split_off: Vec<HPart>, core: SlotCore },
    /// Rewrite through the displayed orthogonal reductions, then slot-match
    /// the symplectic core.
    Reduction {
        unlooped: Vec<HPart>,
        unlooped_spheres: Vec<u32>,
        looped_spheres: Vec<u32>,
        core: SlotCore,
    },
    /// Loop the complement of a Harris factor (atom subtraction), plus an
    /// optional looped even-sphere token.
    HarrisComplement { g: GroupId, subtract: Vec<GroupId>, extra_even_loop: Option<u32> },
    /// The `SU(4n+2)/SO(4n+2)` boundary row at `p = 2n+1`, stored as the
    /// printed index ranges.
    BoundaryAi2 { n: u32 },
    /// Product of previously computed cases.
    Assembly { parts: Vec<CaseId> },
    /// The quasi-regular-domain extension machinery at `p = 7`.
    ExtensionP7(ExtensionCase),
    /// Known obstruction; the decomposition is reported as undetermined.
    UndeterminedP7 { obstruction: String },
}

/// Recipe family tags (what the audit and result JSON report).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecipeKind {
    SlotMatch,
    SlotMatchWithS1,
    HarrisComplement,
    ProductSplit,
    Reduction,
    Assembly,
    ExtensionP7,
    UndeterminedP7,
}

impl fmt::Display for RecipeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RecipeKind::SlotMatch => "SLOT_MATCH",
            RecipeKind::SlotMatchWithS1 => "SLOT_MATCH_WITH_S1",
            RecipeKind::HarrisComplement => "HARRIS_COMPLEMENT",
            RecipeKind::ProductSplit => "PRODUCT_SPLIT",
            RecipeKind::Reduction => "REDUCTION",
            RecipeKind::Assembly => "ASSEMBLY",
            RecipeKind::ExtensionP7 => "EXTENSION_P7",
            RecipeKind::UndeterminedP7 => "UNDETERMINED_P7",
        };
        write!(f, "{s}")
    }
}

/// A fully populated symmetric-space case at a specific prime.
#[derive(Debug, Clone)]
pub struct CaseRecord {
    pub case: CaseId,
    pub prime: Prime,
    pub quotient: String,
    pub prime_condition: String,
    pub d_degrees: Vec<u32>,
    pub d_citation: String,
    pub recipe: Recipe,
    pub recipe_kind: RecipeKind,
    pub citations: Vec<String>,
}

pub const OBSTRUCTION_P7: &str =
    "π_27(S^18) ≅ Z/7: the 27-skeleton of B(3,15,27,39) is A(3,15,27) ∪ e^18, and the compression needed by the fibre machinery may hit this group";

fn sp_type(n: u32) -> Vec<u32> {
    (1..=n).map(|i| 4 * i - 1).collect()
}

fn su_type(n: u32) -> Vec<u32> {
    (2..=n).map(|i| 2 * i - 1).collect()
}

fn ci_d(n: u32) -> Vec<u32> {
    (1..=n / 2).map(|k| 4 * k - 1).collect()
}

fn param_err(case: &CaseId, reason: &str) -> CatalogError {
    CatalogError::Parameter { case: case.to_string(), reason: reason.into() }
}

fn prime_err(case: &CaseId, p: Prime, condition: &str) -> CatalogError {
    CatalogError::Prime { case: case.to_string(), p, condition: condition.into() }
}

/// Build the fully populated case record for a case at a prime, checking
/// the side conditions and the prime condition.
pub fn case_record(case: &CaseId, p: Prime) -> Result<CaseRecord, CatalogError> {
    check_prime(p)?;
    let rec = |quotient: String,
               condition: &str,
               d: Vec<u32>,
               d_cite: &str,
               recipe: Recipe,
               kind: RecipeKind,
               citations: Vec<String>| CaseRecord {
        case: case.clone(),
        prime: p,
        quotient,
        prime_condition: condition.to_string(),
        d_degrees: d,
        d_citation: d_cite.to_string(),
        recipe,
        recipe_kind: kind,
        citations,
    };

    match case {
        CaseId::AI { su } => {
            let su = *su;
            if su < 3 {
                return Err(param_err(case, "needs SU(n) with n >= 3"));
            }
            let quotient = format!("SU({su})/SO({su})");
            if su % 2 == 1 {
                let n = (su - 1) / 2;
                if p <= n {
                    return Err(prime_err(case, p, "p > n where SU(2n+1)/SO(2n+1)"));
                }
                Ok(rec(
                    quotient,
                    "p > n",
                    vec![],
                    CITE_MNT_41,
                    Recipe::HarrisComplement {
                        g: GroupId::Su(su),
                        subtract: vec![GroupId::Sp(n)],
                        extra_even_loop: None,
                    },
                    RecipeKind::HarrisComplement,
                    vec![CITE_HARRIS.into(), CITE_MNT_41.into()],
                ))
            } else {
                let n = su / 2;
                if su % 4 == 2 && p == n {
                    // boundary row: SU(4k+2)/SO(4k+2) at p = 2k+1
                    let k = (su - 2) / 4;
                    return Ok(rec(
                        quotient,
                        "p = 2n+1 where SU(4n+2)/SO(4n+2)",
                        vec![],
                        CITE_MNT_41,
                        Recipe::BoundaryAi2 { n: k },
                        RecipeKind::HarrisComplement,
                        vec![CITE_MNT_41.into()],
                    ));
                }
                if p <= n {
                    return Err(prime_err(case, p, "p > n where SU(2n)/SO(2n)"));
                }
                Ok(rec(
                    quotient,
                    "p > n",
                    (1..n).map(|k| 4 * k - 1).collect(),
                    CITE_MT2_67,
                    Recipe::HarrisComplement {
                        g: GroupId::Su(su),
                        subtract: vec![GroupId::Sp(n)],
                        extra_even_loop: Some(su),
                    },
                    RecipeKind::HarrisComplement,
                    vec![CITE_HARRIS.into(), CITE_MT2_67.into(), CITE_MNT_41.into()],
                ))
            }
        }
        CaseId::AII { n } => {
            let n = *n;
            if n < 1 {
                return Err(param_err(case, "needs n >= 1"));
            }
            if p <= n {
                return Err(prime_err(case, p, "p > n"));
            }
            Ok(rec(
                format!("SU({})/Sp({n})", 2 * n),
                "p > n",
                vec![],
                CITE_MNT_41,
                Recipe::HarrisComplement {
                    g: GroupId::Su(2 * n),
                    subtract: vec![GroupId::Sp(n)],
                    extra_even_loop: None,
                },
                RecipeKind::HarrisComplement,
                vec![CITE_HARRIS.into(), CITE_MNT_41.into()],
            ))
        }
        CaseId::AIII { n, m } => {
            let (n, m) = (*n, *m);
            if m < 1 || 2 * m > n {
                return Err(param_err(case, "needs 1 <= m and 2m <= n"));
            }
            if 2 * p <= n {
                return Err(prime_err(case, p, "p > n/2"));
            }
            Ok(rec(
                format!("U({n})/(U({m})xU({}))", n - m),
                "p > n/2",
                su_type(n - m),
                CITE_EPI,
                Recipe::ProductSplit {
                    split_off: vec![HPart::Group(GroupId::U(m))],
                    core: SlotCore {
                        h_parts: vec![HPart::Group(GroupId::Su(n - m))],
                        g: GroupId::Su(n),
                        d: su_type(n - m),
                    },
                },
                RecipeKind::ProductSplit,
                vec![CITE_MT_CLASSICAL.into(), CITE_EPI.into()],
            ))
        }
        CaseId::BDI { n, m, variant } => {
            let (n, m) = (*n, *m);
            let (even_total, even_sub) = match variant {
                BdiVariant::OddEven => (false, true),
                BdiVariant::OddOdd => (false, false),
                BdiVariant::EvenOdd => (true, false),
                BdiVariant::EvenEven => (true, true),
            };
            let bound_ok = if even_sub == even_total {
                // the ‡ rows allow 2m <= n+1
                m >= 1 && 2 * m <= n + 1
            } else {
                m >= 1 && 2 * m <= n
            };
            // rows 1,3 carry the † condition 2m <= n; rows 2,4 carry ‡
            let dag_ok = match variant {
                BdiVariant::OddEven | BdiVariant::EvenOdd => m >= 1 && 2 * m <= n,
                BdiVariant::OddOdd | BdiVariant::EvenEven => m >= 1 && 2 * m <= n + 1,
            };
            if !(bound_ok && dag_ok) || n < 1 {
                return Err(param_err(case, "needs 1 <= m and 2m <= n (†) or 2m <= n+1 (‡)"));
            }
            if p <= n {
                return Err(prime_err(case, p, "p > n"));
            }
            let (quotient, unlooped, unlooped_spheres, looped_spheres) = match variant {
                BdiVariant::OddEven => (
                    format!("SO({})/(SO({})xSO({}))", 2 * n + 1, 2 * m, 2 * (n - m) + 1),
                    vec![HPart::Group(GroupId::So(2 * m))],
                    vec![],
                    vec![],
                ),
                BdiVariant::OddOdd => (
                    format!("SO({})/(SO({})xSO({}))", 2 * n + 1, 2 * m - 1, 2 * (n - m) + 2),
                    vec![HPart::Group(GroupId::So(2 * m - 1))],
                    vec![2 * (n - m) + 1],
                    vec![],
                ),
                BdiVariant::EvenOdd => (
                    format!("SO({})/(SO({})xSO({}))", 2 * n + 2, 2 * m + 1, 2 * (n - m) + 1),
                    vec![HPart::Group(GroupId::So(2 * m + 1))],
                    vec![],
                    vec![2 * n + 1],
                ),
                BdiVariant::EvenEven => (
                    format!("SO({})/(SO({})xSO({}))", 2 * n + 2, 2 * m, 2 * (n - m) + 2),
                    vec![HPart::Group(GroupId::So(2 * m))],
                    vec![2 * (n - m) + 1],
                    vec![2 * n + 1],
                ),
            };
            Ok(rec(
                quotient,
                "p > n",
                sp_type(n - m),
                CITE_EPI,
                Recipe::Reduction {
                    unlooped,
                    unlooped_spheres,
                    looped_spheres,
                    core: SlotCore {
                        h_parts: vec![HPart::Group(GroupId::Sp(n - m))],
                        g: GroupId::Sp(n),
                        d: sp_type(n - m),
                    },
                },
                RecipeKind::Reduction,
                vec![CITE_HARRIS.into(), CITE_EPI.into()],
            ))
        }
        CaseId::CI { n } => {
            let n = *n;
            if n < 1 {
                return Err(param_err(case, "needs n >= 1"));
            }
            if p <= n {
                return Err(prime_err(case, p, "p > n"));
            }
            Ok(rec(
                format!("Sp({n})/U({n})"),
                "p > n",
                ci_d(n),
                CITE_MT2_58,
                Recipe::SlotMatch(SlotCore {
                    h_parts: vec![HPart::Group(GroupId::U(n))],
                    g: GroupId::Sp(n),
                    d: ci_d(n),
                }),
                RecipeKind::SlotMatchWithS1,
                vec![CITE_MT2_58.into()],
            ))
        }
        CaseId::CII { n, m } => {
            let (n, m) = (*n, *m);
            if m < 1 || 2 * m > n {
                return Err(param_err(case, "needs 1 <= m and 2m <= n"));
            }
            if p <= n {
                return Err(prime_err(case, p, "p > n"));
            }
            Ok(rec(
                format!("Sp({n})/(Sp({m})xSp({}))", n - m),
                "p > n",
                sp_type(n - m),
                CITE_EPI,
                Recipe::ProductSplit {
                    split_off: vec![HPart::Group(GroupId::Sp(m))],
                    core: SlotCore {
                        h_parts: vec![HPart::Group(GroupId::Sp(n - m))],
                        g: GroupId::Sp(n),
                        d: sp_type(n - m),
                    },
                },
                RecipeKind::ProductSplit,
                vec![CITE_MT_CLASSICAL.into(), CITE_EPI.into()],
            ))
        }
        CaseId::DIII { n } => {
            let n = *n;
            if n < 2 {
                return Err(param_err(case, "needs n >= 2"));
            }
            if p <= n - 1 {
                return Err(prime_err(case, p, "p > n-1"));
            }
            Ok(rec(
                format!("SO({})/U({n})", 2 * n),
                "p > n-1",
                ci_d(n - 1),
                CITE_MT2_58,
                Recipe::Reduction {
                    unlooped: vec![],
                    unlooped_spheres: vec![],
                    looped_spheres: vec![],
                    core: SlotCore {
                        h_parts: vec![HPart::Group(GroupId::U(n - 1))],
                        g: GroupId::Sp(n - 1),
                        d: ci_d(n - 1),
                    },
                },
                RecipeKind::Reduction,
                vec![CITE_HARRIS.into(), CITE_MT2_58.into()],
            ))
        }
        CaseId::G => Ok(rec(
            "G2/SO(4)".into(),
            "p >= 5",
            vec![3],
            "Q-phi* nonzero in degree 3 (rank-2 comparison of G2 and SO(4))",
            Recipe::SlotMatch(SlotCore {
                h_parts: vec![HPart::Group(GroupId::So(4))],
                g: GroupId::G2,
                d: vec![3],
            }),
            RecipeKind::SlotMatch,
            vec![CITE_MT_EXCEPTIONAL.into()],
        )),
        CaseId::FI => Ok(rec(
            "F4/SU(2)·Sp(3)".into(),
            "p >= 5",
            vec![3, 11],
            "Ishitoya-Toda: H*(FI) = F_p[f4,f8]/(r16,r24)",
            Recipe::SlotMatch(SlotCore {
                h_parts: vec![HPart::Group(GroupId::Su(2)), HPart::Group(GroupId::Sp(3))],
                g: GroupId::F4,
                d: vec![3, 11],
            }),
            RecipeKind::SlotMatch,
            vec![CITE_MT_EXCEPTIONAL.into(), "Ishitoya-Toda: H*(FI)".into()],
        )),
        CaseId::FII => Ok(rec(
            "F4/Spin(9)".into(),
            "p >= 5",
            vec![3, 11, 15],
            "H*(FII; Z) = Z[x8]/(x8^3), so BF4 -> BSpin(9) hits degrees 4, 12, 16",
            Recipe::SlotMatch(SlotCore {
                h_parts: vec![HPart::Group(GroupId::Spin(9))],
                g: GroupId::F4,
                d: vec![3, 11, 15],
            }),
            RecipeKind::SlotMatch,
            vec![CITE_MT_EXCEPTIONAL.into()],
        )),
        CaseId::EI => Ok(rec(
            "E6/PSp(4)".into(),
            "p >= 5",
            vec![],
            "Ishitoya: H*(EI) splits as H*(FII) ⊗ H*(EIV) (cohomology comparison)",
            Recipe::Assembly { parts: vec![CaseId::EIV, CaseId::FII] },
            RecipeKind::Assembly,
            vec![
                CITE_HARRIS_QUOTIENTS.into(),
                "Harris: E6 ~p F4 x E6/F4".into(),
                "homotopy action of E6 on E6/Spin(9) realizes the tensor splitting".into(),
            ],
        )),
        CaseId::EII => Ok(rec(
            "E6/SU(2)·SU(6)".into(),
            "p >= 5",
            vec![3, 9, 11],
            "Ishitoya: H*(EII) = F_p[x4,x6,x8]/(r16,r18,r24)",
            Recipe::SlotMatch(SlotCore {
                h_parts: vec![HPart::Group(GroupId::Su(2)), HPart::Group(GroupId::Su(6))],
                g: GroupId::E6,
                d: vec![3, 9, 11],
            }),
            RecipeKind::SlotMatch,
            vec![CITE_MT_EXCEPTIONAL.into()],
        )),
        CaseId::EIII => Ok(rec(
            "E6/T1·Spin(10)".into(),
            "p >= 5",
            vec![3, 9, 11, 15],
            "Iliev-Manivel, Toda-Watanabe: H*(EIII) = F_p[x2,x8]/(r18,r24)",
            Recipe::SlotMatch(SlotCore {
                h_parts: vec![HPart::Circle, HPart::Group(GroupId::Spin(10))],
                g: GroupId::E6,
                d: vec![3, 9, 11, 15],
            }),
            RecipeKind::SlotMatchWithS1,
            vec![CITE_MT_EXCEPTIONAL.into()],
        )),
        CaseId::EIV => Ok(rec(
            "E6/F4".into(),
            "p >= 5",
            vec![],
            "Harris: E6 ~p F4 x E6/F4",
            Recipe::HarrisComplement {
                g: GroupId::E6,
                subtract: vec![GroupId::F4],
                extra_even_loop: None,
            },
            RecipeKind::HarrisComplement,
            vec!["Harris: E6 ~p F4 x E6/F4".into(), CITE_MT_EXCEPTIONAL.into()],
        )),
        CaseId::EV => {
            let quotient = "E7/(SU(8)/{±I})".to_string();
            let d = vec![3, 11, 15];
            let d_cite =
                "E7 Weyl-invariant computation over F_p (reproduced by `verify appendix-e7`)";
            if p == 7 {
                Ok(rec(
                    quotient,
                    "p >= 11, or the p = 7 extension",
                    d.clone(),
                    d_cite,
                    Recipe::ExtensionP7(ExtensionCase {
                        h_parts: vec![HPart::Group(GroupId::Su8Quot)],
                        g: GroupId::E7,
                        d,
                        null_dims: vec![5, 7, 9, 13],
                    }),
                    RecipeKind::ExtensionP7,
                    vec![CITE_MNT.into()],
                ))
            } else if p >= 11 {
                Ok(rec(
                    quotient,
                    "p >= 11",
                    d.clone(),
                    d_cite,
                    Recipe::SlotMatch(SlotCore {
                        h_parts: vec![HPart::Group(GroupId::Su8Quot)],
                        g: GroupId::E7,
                        d,
                    }),
                    RecipeKind::SlotMatch,
                    vec![CITE_MT_EXCEPTIONAL.into(), CITE_HARRIS_QUOTIENTS.into()],
                ))
            } else {
                Err(prime_err(case, p, "p >= 11, or the p = 7 extension"))
            }
        }
        CaseId::EVI => {
            let quotient = "E7/SU(2)·Spin(12)".to_string();
            let d = vec![3, 11, 15, 19];
            let d_cite = "Nakagawa: H*(E7/T1·Spin(12)) = F_p[x2,x8,x12]/(r24,r28,r36)";
            if p == 7 {
                Ok(rec(
                    quotient,
                    "p >= 11, or the p = 7 extension",
                    d.clone(),
                    d_cite,
                    Recipe::ExtensionP7(ExtensionCase {
                        h_parts: vec![
                            HPart::Group(GroupId::Su(2)),
                            HPart::Group(GroupId::Spin(12)),
                        ],
                        g: GroupId::E7,
                        d,
                        null_dims: vec![],
                    }),
                    RecipeKind::ExtensionP7,
                    vec![CITE_MNT.into()],
                ))
            } else if p >= 11 {
                Ok(rec(
                    quotient,
                    "p >= 11",
                    d.clone(),
                    d_cite,
                    Recipe::SlotMatch(SlotCore {
                        h_parts: vec![
                            HPart::Group(GroupId::Su(2)),
                            HPart::Group(GroupId::Spin(12)),
                        ],
                        g: GroupId::E7,
                        d,
                    }),
                    RecipeKind::SlotMatch,
                    vec![CITE_MT_EXCEPTIONAL.into()],
                ))
            } else {
                Err(prime_err(case, p, "p >= 11, or the p = 7 extension"))
            }
        }
        CaseId::EVII => {
            let quotient = "E7/T1·E6".to_string();
            let d = vec![3, 11, 15, 23];
            let d_cite = "Chaput-Manivel, Watanabe: H*(E7/T1·E6) = F_p[x2,x10,x18]/(r20,r28,r36)";
            if p == 7 {
                Ok(rec(
                    quotient,
                    "p >= 11, or the p = 7 extension",
                    d.clone(),
                    d_cite,
                    Recipe::ExtensionP7(ExtensionCase {
                        h_parts: vec![HPart::Circle, HPart::Group(GroupId::E6)],
                        g: GroupId::E7,
                        d,
                        null_dims: vec![9, 17],
                    }),
                    RecipeKind::ExtensionP7,
                    vec![CITE_MNT.into()],
                ))
            } else if p >= 11 {
                Ok(rec(
                    quotient,
                    "p >= 11",
                    d.clone(),
                    d_cite,
                    Recipe::SlotMatch(SlotCore {
                        h_parts: vec![HPart::Circle, HPart::Group(GroupId::E6)],
                        g: GroupId::E7,
                        d,
                    }),
                    RecipeKind::SlotMatchWithS1,
                    vec![CITE_MT_EXCEPTIONAL.into()],
                ))
            } else {
                Err(prime_err(case, p, "p >= 11, or the p = 7 extension"))
            }
        }
        CaseId::EVIII => {
            let quotient = "E8/Ss(16)".to_string();
            let d = vec![3, 15, 23, 27];
            let d_cite = "Hamanaka-Kono, Kaji-Kishimoto: Q-phi* for E8 -> Ss(16)";
            if p == 7 {
                Ok(rec(
                    quotient,
                    "p >= 11; undetermined at p = 7",
                    d,
                    d_cite,
                    Recipe::UndeterminedP7 { obstruction: OBSTRUCTION_P7.to_string() },
                    RecipeKind::UndeterminedP7,
                    vec![CITE_MNT.into()],
                ))
            } else if p >= 11 {
                Ok(rec(
                    quotient,
                    "p >= 11",
                    d.clone(),
                    d_cite,
                    Recipe::SlotMatch(SlotCore {
                        h_parts: vec![HPart::Group(GroupId::Ss16)],
                        g: GroupId::E8,
                        d,
                    }),
                    RecipeKind::SlotMatch,
                    vec![CITE_MT_EXCEPTIONAL.into(), CITE_HARRIS_QUOTIENTS.into()],
                ))
            } else {
                Err(prime_err(case, p, "p >= 11"))
            }
        }
        CaseId::EIX => {
            let quotient = "E8/SU(2)·E7".to_string();
            let d = vec![3, 15, 23, 27, 35];
            let d_cite = "Nakagawa: H*(E8/T1·E7) = F_p[x2,x12,x20]/(r40,r48,r60)";
            if p == 7 {
                Ok(rec(
                    quotient,
                    "p >= 11; undetermined at p = 7",
                    d,
                    d_cite,
                    Recipe::UndeterminedP7 { obstruction: OBSTRUCTION_P7.to_string() },
                    RecipeKind::UndeterminedP7,
                    vec![CITE_MNT.into()],
                ))
            } else if p >= 11 {
                Ok(rec(
                    quotient,
                    "p >= 11",
                    d.clone(),
                    d_cite,
                    Recipe::SlotMatch(SlotCore {
                        h_parts: vec![HPart::Group(GroupId::Su(2)), HPart::Group(GroupId::E7)],
                        g: GroupId::E8,
                        d,
                    }),
                    RecipeKind::SlotMatch,
                    vec![CITE_MT_EXCEPTIONAL.into()],
                ))
            } else {
                Err(prime_err(case, p, "p >= 11"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decomp(token: &str, p: Prime) -> String {
        qr_decomposition(&GroupId::parse(token).unwrap(), p).unwrap().to_string()
    }

    #[test]
    fn exceptional_table_entries() {
        assert_eq!(decomp("F4", 7), "B(3,15) x B(11,23)");
        assert_eq!(decomp("Spin(9)", 5), "B(3,11) x B(7,15)");
        assert_eq!(decomp("SU(8)", 11), "S^3 x S^5 x S^7 x S^9 x S^11 x S^13 x S^15");
        assert_eq!(decomp("G2", 5), "B(3,11)");
        assert_eq!(decomp("E7", 7), "B(3,15,27) x B(11,23,35) x S^19");
        assert_eq!(decomp("E8", 7), "B(3,15,27,39) x B(23,35,47,59)");
    }

    #[test]
    fn classical_rows_evaluate() {
        assert_eq!(decomp("Sp(3)", 5), "B(3,11) x S^7");
        assert_eq!(decomp("Sp(5)", 7), "B(3,15) x B(7,19) x S^11");
        assert_eq!(decomp("SU(6)", 5), "B(3,11) x S^5 x S^7 x S^9");
        assert_eq!(decomp("SO(4)", 7), "S^3 x S^3");
        assert_eq!(decomp("Spin(12)", 11), "S^3 x S^7 x S^11 x S^11 x S^15 x S^19");
        assert_eq!(decomp("U(3)", 5), "S^1 x S^3 x S^5");
        assert_eq!(decomp("Ss(16)", 11), "B(3,23) x B(7,27) x S^11 x S^15 x S^15 x S^19");
    }

    #[test]
    fn not_quasi_regular_errors() {
        assert!(matches!(
            qr_decomposition(&GroupId::E8, 5),
            Err(CatalogError::NotQuasiRegular { .. })
        ));
        assert!(matches!(
            qr_decomposition(&GroupId::Sp(5), 5),
            Err(CatalogError::NotQuasiRegular { .. })
        ));
        assert!(matches!(
            qr_decomposition(&GroupId::Su(10), 5),
            Err(CatalogError::NotQuasiRegular { .. })
        ));
    }

    #[test]
    fn decomposition_soundness_over_reference_types() {
        let groups: Vec<GroupId> = vec![
            GroupId::Su(4),
            GroupId::Su(8),
            GroupId::Su(13),
            GroupId::Sp(3),
            GroupId::Sp(7),
            GroupId::So(9),
            GroupId::So(12),
            GroupId::Spin(10),
            GroupId::U(5),
            GroupId::G2,
            GroupId::F4,
            GroupId::E6,
            GroupId::E7,
            GroupId::E8,
            GroupId::PSp4,
            GroupId::Su8Quot,
            GroupId::Ss16,
        ];
        for g in &groups {
            for &p in &[5u32, 7, 11, 13, 17, 19, 23, 29, 31] {
                match qr_decomposition(g, p) {
                    Ok(expr) => {
                        let mut expected = g.reference_type();
                        expected.sort_unstable();
                        assert_eq!(
                            expr.rational_type().unwrap().0,
                            expected,
                            "type mismatch for {g} at p={p}"
                        );
                    }
                    Err(CatalogError::NotQuasiRegular { .. }) => {}
                    Err(e) => panic!("unexpected error for {g} at p={p}: {e}"),
                }
            }
        }
    }

    #[test]
    fn slot_index_examples() {
        assert_eq!(slot_index(&Atom::Sphere(27), 11).unwrap(), 4);
        assert_eq!(slot_index(&Atom::BCell(vec![15, 23]), 5).unwrap(), 4);
        assert_eq!(slot_index(&Atom::Sphere(3), 7).unwrap(), 2);
        assert_eq!(slot_index(&Atom::Sphere(3), 29).unwrap(), 2);
        assert!(slot_index(&Atom::Circle, 5).is_err());
    }

    #[test]
    fn slot_totality_and_uniqueness_on_group_atoms() {
        let groups = [GroupId::Su(9), GroupId::Sp(6), GroupId::E7, GroupId::E8, GroupId::F4];
        for g in &groups {
            for &p in &[5u32, 7, 11, 13, 17, 19, 23, 29, 31] {
                let Ok(atoms) = group_atoms(g, p) else { continue };
                let mut seen = std::collections::BTreeSet::new();
                for a in &atoms {
                    if a == &Atom::Circle {
                        continue;
                    }
                    let m = slot_index(a, p).unwrap_or_else(|e| panic!("{g} p={p}: {e}"));
                    assert!((2..=p).contains(&m));
                    assert!(seen.insert(m), "{g} at p={p} places two atoms in slot {m}");
                }
            }
        }
    }

    #[test]
    fn case_parse_and_conditions() {
        assert!(case_record(&CaseId::parse("FII", "").unwrap(), 5).is_ok());
        assert!(matches!(
            case_record(&CaseId::EV, 5),
            Err(CatalogError::Prime { .. })
        ));
        assert!(matches!(
            case_record(&CaseId::parse("CII", "n=5,m=3").unwrap(), 7),
            Err(CatalogError::Parameter { .. })
        ));
        assert!(matches!(
            case_record(&CaseId::parse("CII", "n=5,m=2").unwrap(), 5),
            Err(CatalogError::Prime { .. })
        ));
        let r = case_record(&CaseId::parse("CII", "n=5,m=2").unwrap(), 7).unwrap();
        assert_eq!(r.d_degrees, vec![3, 7, 11]);
        assert_eq!(r.recipe_kind, RecipeKind::ProductSplit);

        let r = case_record(&CaseId::FII, 5).unwrap();
        assert_eq!(r.d_degrees, vec![3, 11, 15]);
        assert_eq!(r.recipe_kind, RecipeKind::SlotMatch);

        let r = case_record(&CaseId::EVII, 11).unwrap();
        assert_eq!(r.d_degrees, vec![3, 11, 15, 23]);
        assert_eq!(r.recipe_kind, RecipeKind::SlotMatchWithS1);
    }

    #[test]
    fn d_containment_in_both_types() {
        // D ⊆ type(G) and D ⊆ type(H) for every populated record
        let cases: Vec<(CaseId, Vec<Prime>)> = vec![
            (CaseId::G, vec![5, 7, 11]),
            (CaseId::FI, vec![5, 7, 11, 13]),
            (CaseId::FII, vec![5, 7, 11, 13]),
            (CaseId::EII, vec![5, 7, 11]),
            (CaseId::EIII, vec![5, 7, 11]),
            (CaseId::EV, vec![11, 13, 17]),
            (CaseId::EVI, vec![11, 13]),
            (CaseId::EVII, vec![11, 13]),
            (CaseId::EVIII, vec![11, 13, 17]),
            (CaseId::EIX, vec![11, 13]),
            (CaseId::CI { n: 5 }, vec![7, 11]),
            (CaseId::AIII { n: 6, m: 2 }, vec![5, 7]),
            (CaseId::CII { n: 5, m: 2 }, vec![7, 11]),
            (CaseId::BDI { n: 5, m: 2, variant: BdiVariant::OddEven }, vec![7, 11]),
            (CaseId::DIII { n: 6 }, vec![7, 11]),
        ];
        for (case, primes) in cases {
            for p in primes {
                let r = case_record(&case, p).unwrap();
                let core = match &r.recipe {
                    Recipe::SlotMatch(core) => core.clone(),
                    Recipe::ProductSplit { core, .. } | Recipe::Reduction { core, .. } => {
                        core.clone()
                    }
                    _ => continue,
                };
                let g_type: Vec<u32> = core.g.reference_type();
                let mut h_type: Vec<u32> = Vec::new();
                for part in &core.h_parts {
                    if let HPart::Group(g) = part {
                        h_type.extend(g.reference_type());
                    }
                }
                for d in &r.d_degrees {
                    assert!(g_type.contains(d), "{case} p={p}: {d} not in type(G)");
                    assert!(h_type.contains(d), "{case} p={p}: {d} not in type(H)");
                }
            }
        }
    }
}

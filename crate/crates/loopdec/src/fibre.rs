//! The core engine: pair subgroup-side skeleta with group-side atoms slot
//! by slot, classify each matching map from the degrees where the induced
//! map of indecomposables is nonzero, identify the homotopy fibre of each
//! classified map, and assemble the loop space of the symmetric space as
//! the product of those fibres.
//!
//! Only eight shapes of nonzero maps can occur between the admissible
//! slot shapes; each has a known fibre (after the `M(A) ≃ B` rewrite):
//!
//! | class                      | map                              | fibre                       |
//! |----------------------------|----------------------------------|-----------------------------|
//! | `Equivalence`              | `A -> A` (unit)                  | point                       |
//! | `BottomInclusion`          | `S^(2m-1) -> A(2m-1,2m+2p-3)`    | `ΩS^(2m+2p-3)`              |
//! | `TopPinch`                 | `A(2m-1,..) -> S^(2m+2p-3)`      | `S^(2m-1)`                  |
//! | `PinchInclude`             | `A(2m-1,..) -> A(2m+2p-3,..)`    | `S^(2m-1) x ΩS^(2m+4p-5)`   |
//! | `WedgeUnits`               | `S ∨ S -> S`                     | `S^(2m-1)`                  |
//! | `WedgeBottomInclusions`    | `S ∨ S -> A`                     | `S^(2m-1) x ΩS^(2m+2p-3)`   |
//! | `WedgeMixed`               | `S ∨ A -> A`                     | `S^(2m-1)`                  |
//! | `WedgeEquivalences`        | `A ∨ A -> A`                     | `B(2m-1,2m+2p-3)`           |
//!
//! A slot with an empty side contributes the other side unlooped (domain)
//! or looped (codomain), and a map that is null for connectivity reasons
//! contributes `domain x Ω(codomain)`; both are instances of the
//! product-fibre lemma for `h·g` with `h` null. Any other slot is
//! `Undetermined` and the engine refuses to guess.

use std::fmt;

use serde::Serialize;

use crate::catalog::{
    case_record, group_atoms, slot_index, CaseId, CaseRecord, CatalogError, ExtensionCase,
    Recipe, RecipeKind, SlotCore,
};
use crate::space::{Atom, Factor, Prime, SpaceError, SpaceExpr};
use crate::tables::{maps_vanish, TableError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FibreError {
    #[error("slot {slot}: the map {domain} -> {codomain} is undetermined (no matching degree and nullity is not forced)")]
    UndeterminedSlot { slot: u32, domain: String, codomain: String },
    #[error("{case} at p={prime} is undetermined: {obstruction}")]
    UndeterminedCase { case: String, prime: Prime, obstruction: String },
    #[error("slot {slot} carries {count} domain summands; at most two are admissible")]
    TooManySummands { slot: u32, count: usize },
    #[error("slot {slot} carries two codomain atoms; the quasi-regular indexing is a partition")]
    DuplicateCodomain { slot: u32 },
    #[error("configuration error: cross-slot pair ({domain}, {target}) is the excluded vanishing case")]
    ExcludedConfiguration { domain: String, target: String },
    #[error("complement subtraction failed: {atom} is not a factor of {group}")]
    SubtractionMismatch { atom: String, group: String },
    #[error("extension matching failed: {0}")]
    ExtensionMismatch(String),
    #[error("rational balance applies to slot-matched cases, not {kind}")]
    NotSlotMatched { kind: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Classification of the slot map, by shape and hit degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QClass {
    Equivalence,
    BottomInclusion,
    TopPinch,
    PinchInclude,
    WedgeUnits,
    WedgeBottomInclusions,
    WedgeMixed,
    WedgeEquivalences,
    NullMap,
    DomainEmpty,
    CodomainEmpty,
    Undetermined,
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QClass::Equivalence => "equivalence",
            QClass::BottomInclusion => "bottom-cell inclusion",
            QClass::TopPinch => "top-cell pinch",
            QClass::PinchInclude => "pinch then include",
            QClass::WedgeUnits => "wedge of units",
            QClass::WedgeBottomInclusions => "wedge of bottom-cell inclusions",
            QClass::WedgeMixed => "bottom-cell inclusion ∨ equivalence",
            QClass::WedgeEquivalences => "wedge of equivalences",
            QClass::NullMap => "null map",
            QClass::DomainEmpty => "empty domain",
            QClass::CodomainEmpty => "empty codomain",
            QClass::Undetermined => "undetermined",
        };
        write!(f, "{s}")
    }
}

/// One slot of the matching: up to two domain skeleta against at most one
/// codomain skeleton, all sharing the slot index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotAssignment {
    pub slot: u32,
    /// Skeleta of the subgroup-side atoms in this slot (0, 1, or 2).
    pub domain: Vec<Atom>,
    /// Skeleton of the group-side atom in this slot, if any.
    pub codomain: Option<Atom>,
}

/// Classify the slot map against the nonzero-degree set `d`.
///
/// `NullMap` is declared in exactly one situation beyond the empty-side
/// cases: the codomain bottom cell exceeds every domain cell, so no
/// nonzero class exists for connectivity reasons. Everything else without
/// a matching degree is `Undetermined`.
pub fn classify_q(s: &SlotAssignment, d: &[u32], _p: Prime) -> Result<QClass, FibreError> {
    let hit = |deg: u32| d.contains(&deg);
    let cod = match &s.codomain {
        None => {
            return Ok(if s.domain.is_empty() { QClass::Undetermined } else { QClass::CodomainEmpty })
        }
        Some(c) => c,
    };
    if s.domain.is_empty() {
        return Ok(QClass::DomainEmpty);
    }
    if s.domain.len() > 2 {
        return Err(FibreError::TooManySummands { slot: s.slot, count: s.domain.len() });
    }
    let cc = cod.cells();
    let connectivity_null = s
        .domain
        .iter()
        .all(|a| a.top().map_or(true, |t| t < cc.first().copied().unwrap_or(0)));

    if s.domain.len() == 1 {
        let dc = s.domain[0].cells();
        let class = match (dc.as_slice(), cc.as_slice()) {
            (a, b) if a == b && a.iter().any(|x| hit(*x)) => Some(QClass::Equivalence),
            ([x], [y, _]) if x == y && hit(*x) => Some(QClass::BottomInclusion),
            ([_, y], [z]) if y == z && hit(*y) => Some(QClass::TopPinch),
            ([_, y], [z, _]) if y == z && hit(*y) => Some(QClass::PinchInclude),
            _ => None,
        };
        if let Some(c) = class {
            return Ok(c);
        }
    } else {
        let (a1, a2) = (&s.domain[0], &s.domain[1]);
        let (c1, c2) = (a1.cells(), a2.cells());
        let class = match (c1.as_slice(), c2.as_slice(), cc.as_slice()) {
            ([x], [y], [z]) if x == y && y == z && hit(*x) => Some(QClass::WedgeUnits),
            ([x], [y], [z, _]) if x == y && y == z && hit(*x) => {
                Some(QClass::WedgeBottomInclusions)
            }
            _ => {
                let sphere_and_cell = (c1.len() == 1 && c2 == cc && c1[0] == cc[0])
                    || (c2.len() == 1 && c1 == cc && c2[0] == cc[0]);
                let both_cells = c1 == cc && c2 == cc;
                if both_cells && cc.iter().any(|x| hit(*x)) {
                    Some(QClass::WedgeEquivalences)
                } else if sphere_and_cell && cc.iter().any(|x| hit(*x)) {
                    Some(QClass::WedgeMixed)
                } else {
                    None
                }
            }
        };
        if let Some(c) = class {
            return Ok(c);
        }
    }
    if connectivity_null {
        return Ok(QClass::NullMap);
    }
    Ok(QClass::Undetermined)
}

/// Homotopy fibre of the classified slot map, as a list of factors.
/// Two-cell skeleta in the output are rewritten to their `B`-forms.
pub fn fibre(class: QClass, s: &SlotAssignment, _p: Prime) -> Result<Vec<Factor>, FibreError> {
    let cod = |s: &SlotAssignment| s.codomain.clone().expect("classified slot has a codomain");
    let sphere = |d: u32| Factor::plain(Atom::Sphere(d));
    let loop_of = |a: &Atom| Factor::looped(a.b_form());
    Ok(match class {
        QClass::Undetermined => {
            let domain = s.domain.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ∨ ");
            return Err(FibreError::UndeterminedSlot {
                slot: s.slot,
                domain: if domain.is_empty() { "*".into() } else { domain },
                codomain: s.codomain.as_ref().map_or("*".into(), |c| c.to_string()),
            });
        }
        QClass::Equivalence => vec![],
        QClass::BottomInclusion => {
            vec![Factor::looped(Atom::Sphere(cod(s).top().unwrap()))]
        }
        QClass::TopPinch => vec![sphere(s.domain[0].bottom().unwrap())],
        QClass::PinchInclude => vec![
            sphere(s.domain[0].bottom().unwrap()),
            Factor::looped(Atom::Sphere(cod(s).top().unwrap())),
        ],
        QClass::WedgeUnits => vec![sphere(cod(s).bottom().unwrap())],
        QClass::WedgeBottomInclusions => vec![
            sphere(cod(s).bottom().unwrap()),
            Factor::looped(Atom::Sphere(cod(s).top().unwrap())),
        ],
        QClass::WedgeMixed => vec![sphere(cod(s).bottom().unwrap())],
        QClass::WedgeEquivalences => vec![Factor::plain(cod(s).b_form())],
        QClass::NullMap => {
            let mut out: Vec<Factor> =
                s.domain.iter().map(|a| Factor::plain(a.b_form())).collect();
            out.push(loop_of(&cod(s)));
            out
        }
        QClass::DomainEmpty => vec![loop_of(&cod(s))],
        QClass::CodomainEmpty => s.domain.iter().map(|a| Factor::plain(a.b_form())).collect(),
    })
}

/// Degrees of the codomain generators consumed by the classified map.
pub fn consumed_degrees(class: QClass, s: &SlotAssignment) -> Vec<u32> {
    let cod_cells = s.codomain.as_ref().map(|c| c.cells()).unwrap_or_default();
    match class {
        QClass::Equivalence | QClass::WedgeMixed | QClass::WedgeEquivalences => cod_cells,
        QClass::BottomInclusion | QClass::PinchInclude | QClass::WedgeBottomInclusions => {
            vec![cod_cells[0]]
        }
        QClass::TopPinch => vec![cod_cells[0]],
        QClass::WedgeUnits => vec![cod_cells[0]],
        _ => vec![],
    }
}

/// Per-slot audit record.
#[derive(Debug, Clone, Serialize)]
pub struct SlotReport {
    pub slot: u32,
    pub domain: Vec<String>,
    pub codomain: Option<String>,
    pub class: QClass,
    pub fibre: String,
    pub consumed: Vec<u32>,
}

/// Multiset balance of consumed and surviving generator degrees against
/// the types of both sides.
#[derive(Debug, Clone, Serialize)]
pub struct BalanceReport {
    pub ok: bool,
    pub consumed: Vec<u32>,
    pub h_type: Vec<u32>,
    pub h_accounted: Vec<u32>,
    pub g_type: Vec<u32>,
    pub g_accounted: Vec<u32>,
}

/// A computed loop space decomposition with its audit trail.
#[derive(Debug, Clone)]
pub struct LoopSpace {
    pub record: CaseRecord,
    pub expr: SpaceExpr,
    pub consumed: Vec<u32>,
    pub slots: Vec<SlotReport>,
    pub balance: Option<BalanceReport>,
}

struct CoreOutcome {
    factors: Vec<Factor>,
    consumed: Vec<u32>,
    slots: Vec<SlotReport>,
    balance: BalanceReport,
}

// Group atoms by slot index; circles are split off to ride through
// unlooped (a circle summand of the subgroup maps trivially into the
// simply-connected group).
fn split_circles(atoms: Vec<Atom>) -> (usize, Vec<Atom>) {
    let mut circles = 0;
    let mut rest = Vec::with_capacity(atoms.len());
    for a in atoms {
        if a == Atom::Circle {
            circles += 1;
        } else {
            rest.push(a);
        }
    }
    (circles, rest)
}

fn cross_slot_vanishing(h_atoms: &[Atom], g_atoms: &[Atom], p: Prime) -> Result<(), FibreError> {
    for h in h_atoms {
        let (Ok(hs), Some(_)) = (slot_index(h, p), h.bottom()) else { continue };
        for g in g_atoms {
            let Ok(gs) = slot_index(g, p) else { continue };
            if hs == gs || g.cells().len() > 2 {
                continue;
            }
            match maps_vanish(&h.skeleton(), g, p) {
                Ok(true) => {}
                Err(TableError::ExcludedCase) => {
                    return Err(FibreError::ExcludedConfiguration {
                        domain: h.skeleton().to_string(),
                        target: g.to_string(),
                    })
                }
                // shapes outside the vanishing lemma (top-indexed sphere
                // sources) are handled by the connectivity rule per slot
                Err(TableError::BadSource(_)) | Err(TableError::BadTarget(_)) => {}
                Err(e) => return Err(e.into()),
                Ok(false) => unreachable!(),
            }
        }
    }
    Ok(())
}

fn run_slot_core(core: &SlotCore, p: Prime) -> Result<CoreOutcome, FibreError> {
    let mut h_atoms = Vec::new();
    for part in &core.h_parts {
        h_atoms.extend(part.atoms(p)?);
    }
    let (circles, h_atoms) = split_circles(h_atoms);
    let g_atoms = group_atoms(&core.g, p)?;

    cross_slot_vanishing(&h_atoms, &g_atoms, p)?;

    let mut slots: std::collections::BTreeMap<u32, SlotAssignment> = Default::default();
    for a in &h_atoms {
        let m = slot_index(a, p)?;
        let entry = slots
            .entry(m)
            .or_insert_with(|| SlotAssignment { slot: m, domain: vec![], codomain: None });
        entry.domain.push(a.skeleton());
    }
    for g in &g_atoms {
        let m = slot_index(g, p)?;
        let entry = slots
            .entry(m)
            .or_insert_with(|| SlotAssignment { slot: m, domain: vec![], codomain: None });
        if entry.codomain.is_some() {
            return Err(FibreError::DuplicateCodomain { slot: m });
        }
        entry.codomain = Some(g.skeleton());
    }

    let mut factors: Vec<Factor> = (0..circles).map(|_| Factor::plain(Atom::Circle)).collect();
    let mut consumed = Vec::new();
    let mut reports = Vec::new();
    for s in slots.values_mut() {
        s.domain.sort();
        if s.domain.len() > 2 {
            return Err(FibreError::TooManySummands { slot: s.slot, count: s.domain.len() });
        }
        let class = classify_q(s, &core.d, p)?;
        let fib = fibre(class, s, p)?;
        let hits = consumed_degrees(class, s);
        reports.push(SlotReport {
            slot: s.slot,
            domain: s.domain.iter().map(|a| a.to_string()).collect(),
            codomain: s.codomain.as_ref().map(|a| a.to_string()),
            class,
            fibre: SpaceExpr::new(p, fib.clone())?.to_string(),
            consumed: hits.clone(),
        });
        consumed.extend(hits);
        factors.extend(fib);
    }
    consumed.sort_unstable();

    // rational balance bookkeeping
    let mut h_type: Vec<u32> = h_atoms.iter().flat_map(|a| a.cells()).collect();
    let mut g_type: Vec<u32> = g_atoms.iter().flat_map(|a| a.cells()).collect();
    h_type.sort_unstable();
    g_type.sort_unstable();
    let mut h_accounted = consumed.clone();
    let mut g_accounted = consumed.clone();
    for f in &factors {
        if f.atom == Atom::Circle {
            continue;
        }
        if f.looped {
            g_accounted.extend(f.atom.cells());
        } else {
            h_accounted.extend(f.atom.cells());
        }
    }
    h_accounted.sort_unstable();
    g_accounted.sort_unstable();
    let balance = BalanceReport {
        ok: h_accounted == h_type && g_accounted == g_type,
        consumed: consumed.clone(),
        h_type,
        h_accounted,
        g_type,
        g_accounted,
    };

    Ok(CoreOutcome { factors, consumed, slots: reports, balance })
}

// Multiset subtraction of Harris-factor atoms from a group decomposition.
fn subtract_atoms(
    mut g_atoms: Vec<Atom>,
    sub_atoms: &[Atom],
    group: &str,
) -> Result<Vec<Atom>, FibreError> {
    for s in sub_atoms {
        match g_atoms.iter().position(|a| a == s) {
            Some(i) => {
                g_atoms.remove(i);
            }
            None => {
                return Err(FibreError::SubtractionMismatch {
                    atom: s.to_string(),
                    group: group.to_string(),
                })
            }
        }
    }
    Ok(g_atoms)
}

fn run_extension(ext: &ExtensionCase, p: Prime) -> Result<CoreOutcome, FibreError> {
    let mut h_atoms = Vec::new();
    for part in &ext.h_parts {
        h_atoms.extend(part.atoms(p)?);
    }
    let (circles, h_atoms) = split_circles(h_atoms);
    let g_atoms = group_atoms(&ext.g, p)?;

    // assign each subgroup skeleton to the unique group atom it can hit
    let mut assigned: Vec<Vec<(Atom, Vec<u32>)>> = vec![Vec::new(); g_atoms.len()];
    let mut unmatched: Vec<Atom> = Vec::new();
    for a in &h_atoms {
        let skel = a.skeleton();
        let cells = skel.cells();
        let mut targets = Vec::new();
        for (i, g) in g_atoms.iter().enumerate() {
            let hits: Vec<u32> = cells
                .iter()
                .copied()
                .filter(|c| g.cells().contains(c) && ext.d.contains(c))
                .collect();
            if !hits.is_empty() {
                targets.push((i, hits));
            }
        }
        match targets.len() {
            0 => unmatched.push(skel),
            1 => {
                let (i, hits) = targets.pop().unwrap();
                assigned[i].push((skel, hits));
            }
            n => {
                return Err(FibreError::ExtensionMismatch(format!(
                    "{skel} hits {n} group atoms; the matching must be unique"
                )))
            }
        }
    }

    let mut factors: Vec<Factor> = (0..circles).map(|_| Factor::plain(Atom::Circle)).collect();
    let mut consumed: Vec<u32> = Vec::new();
    let mut reports = Vec::new();

    for a in &unmatched {
        // only spheres with recorded vanishing targets may drop out
        match a {
            Atom::Sphere(d) if ext.null_dims.contains(d) => {
                factors.push(Factor::plain(a.clone()));
            }
            _ => {
                return Err(FibreError::ExtensionMismatch(format!(
                    "{a} matches no group atom and has no recorded vanishing"
                )))
            }
        }
    }

    for (g, doms) in g_atoms.iter().zip(assigned.iter()) {
        let g_cells = g.cells();
        if doms.is_empty() {
            factors.push(Factor::looped(g.b_form()));
            reports.push(SlotReport {
                slot: slot_index(g, p).unwrap_or(0),
                domain: vec![],
                codomain: Some(g.to_string()),
                class: QClass::DomainEmpty,
                fibre: format!("Ω{}", g.b_form()),
                consumed: vec![],
            });
            continue;
        }
        // principal summand: maximal coverage; extras must be redundant
        let mut doms = doms.clone();
        doms.sort_by_key(|(_, hits)| std::cmp::Reverse(hits.len()));
        let (principal, coverage) = doms[0].clone();
        for (extra, hits) in doms.iter().skip(1) {
            if !hits.iter().all(|h| coverage.contains(h)) {
                return Err(FibreError::ExtensionMismatch(format!(
                    "summands {principal} and {extra} cover incomparable degree sets of {g}"
                )));
            }
            factors.push(Factor::plain(extra.b_form()));
        }
        // coverage must be an initial segment of the codomain cells and a
        // final segment of the principal's cells (skeletal compression
        // composed with a pinch)
        let k = coverage.len();
        if g_cells[..k] != coverage[..] {
            return Err(FibreError::ExtensionMismatch(format!(
                "coverage {coverage:?} is not an initial segment of {g}"
            )));
        }
        let pc = principal.cells();
        if pc[pc.len() - k..] != coverage[..] {
            return Err(FibreError::ExtensionMismatch(format!(
                "coverage {coverage:?} is not a final segment of {principal}"
            )));
        }
        let mut fib: Vec<Factor> = Vec::new();
        let dom_left = &pc[..pc.len() - k];
        match dom_left.len() {
            0 => {}
            1 => fib.push(Factor::plain(Atom::Sphere(dom_left[0]))),
            _ => fib.push(Factor::plain(Atom::BCell(dom_left.to_vec()))),
        }
        let cod_left = &g_cells[k..];
        match cod_left.len() {
            0 => {}
            1 => fib.push(Factor::looped(Atom::Sphere(cod_left[0]))),
            _ => fib.push(Factor::looped(Atom::BCell(cod_left.to_vec()))),
        }
        reports.push(SlotReport {
            slot: slot_index(g, p).unwrap_or(0),
            domain: doms.iter().map(|(a, _)| a.to_string()).collect(),
            codomain: Some(g.to_string()),
            class: QClass::Equivalence,
            fibre: SpaceExpr::new(p, fib.clone())?.to_string(),
            consumed: coverage.clone(),
        });
        consumed.extend(coverage);
        factors.extend(fib);
    }
    consumed.sort_unstable();

    let balance = BalanceReport {
        ok: true,
        consumed: consumed.clone(),
        h_type: vec![],
        h_accounted: vec![],
        g_type: vec![],
        g_accounted: vec![],
    };
    Ok(CoreOutcome { factors, consumed, slots: reports, balance })
}

/// Compute the loop space decomposition prescribed by a case record.
pub fn loop_decomposition(record: &CaseRecord) -> Result<LoopSpace, FibreError> {
    let p = record.prime;
    let (factors, consumed, slots, balance) = match &record.recipe {
        Recipe::SlotMatch(core) => {
            let out = run_slot_core(core, p)?;
            (out.factors, out.consumed, out.slots, Some(out.balance))
        }
        Recipe::ProductSplit { split_off, core } => {
            let mut factors = Vec::new();
            for part in split_off {
                factors.extend(part.atoms(p)?.into_iter().map(Factor::plain));
            }
            let out = run_slot_core(core, p)?;
            factors.extend(out.factors);
            (factors, out.consumed, out.slots, None)
        }
        Recipe::Reduction { unlooped, unlooped_spheres, looped_spheres, core } => {
            let mut factors = Vec::new();
            for part in unlooped {
                factors.extend(part.atoms(p)?.into_iter().map(Factor::plain));
            }
            factors.extend(unlooped_spheres.iter().map(|d| Factor::plain(Atom::Sphere(*d))));
            factors.extend(looped_spheres.iter().map(|d| Factor::looped(Atom::Sphere(*d))));
            let out = run_slot_core(core, p)?;
            factors.extend(out.factors);
            (factors, out.consumed, out.slots, None)
        }
        Recipe::HarrisComplement { g, subtract, extra_even_loop } => {
            let g_atoms = group_atoms(g, p)?;
            let mut sub_atoms = Vec::new();
            for s in subtract {
                sub_atoms.extend(group_atoms(s, p)?);
            }
            let complement = subtract_atoms(g_atoms, &sub_atoms, &g.to_string())?;
            let mut factors: Vec<Factor> = complement.into_iter().map(Factor::looped).collect();
            if let Some(even) = extra_even_loop {
                factors.push(Factor::looped(Atom::Sphere(*even)));
            }
            (factors, vec![], vec![], None)
        }
        Recipe::BoundaryAi2 { n } => {
            let n = *n;
            debug_assert_eq!(p, 2 * n + 1);
            let mut factors = Vec::new();
            for i in 1..n {
                factors.push(Factor::looped(Atom::BCell(vec![4 * i + 1, 4 * i + 2 * p - 1])));
            }
            factors.push(Factor::looped(Atom::Sphere(8 * n + 1)));
            factors.push(Factor::looped(Atom::Sphere(8 * n + 3)));
            (factors, vec![], vec![], None)
        }
        Recipe::Assembly { parts } => {
            let mut factors = Vec::new();
            let mut consumed = Vec::new();
            let mut slots = Vec::new();
            for part in parts {
                let sub = loop_decomposition(&case_record(part, p)?)?;
                factors.extend(sub.expr.factors().to_vec());
                consumed.extend(sub.consumed);
                slots.extend(sub.slots);
            }
            consumed.sort_unstable();
            (factors, consumed, slots, None)
        }
        Recipe::ExtensionP7(ext) => {
            let out = run_extension(ext, p)?;
            (out.factors, out.consumed, out.slots, None)
        }
        Recipe::UndeterminedP7 { obstruction } => {
            return Err(FibreError::UndeterminedCase {
                case: record.case.to_string(),
                prime: p,
                obstruction: obstruction.clone(),
            })
        }
    };
    Ok(LoopSpace {
        record: record.clone(),
        expr: SpaceExpr::new(p, factors)?,
        consumed,
        slots,
        balance,
    })
}

/// Degrees of the nonzero rational homotopy groups of the symmetric space
/// itself: an unlooped factor of the loop space contributes its cells
/// shifted up by one, a looped factor contributes its cells, and a circle
/// contributes 2.
pub fn rational_homotopy_degrees(ls: &LoopSpace) -> Vec<u32> {
    let mut out = Vec::new();
    for f in ls.expr.factors() {
        if f.atom == Atom::Circle && !f.looped {
            out.push(2);
        } else if f.looped {
            out.extend(f.atom.cells());
        } else {
            out.extend(f.atom.cells().iter().map(|c| c + 1));
        }
    }
    out.sort_unstable();
    out
}

/// Check the generator bookkeeping of a slot-matched case: consumed
/// degrees plus unlooped output cells account for the subgroup type, and
/// consumed degrees plus looped output cells account for the group type.
pub fn verify_rational_balance(record: &CaseRecord) -> Result<BalanceReport, FibreError> {
    if !matches!(record.recipe_kind, RecipeKind::SlotMatch | RecipeKind::SlotMatchWithS1) {
        return Err(FibreError::NotSlotMatched { kind: record.recipe_kind.to_string() });
    }
    let ls = loop_decomposition(record)?;
    Ok(ls.balance.expect("slot-matched case carries a balance report"))
}

/// Serializable result object for one computed case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub quotient: String,
    pub prime: Prime,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<SpaceExpr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rendered: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub consumed: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
    pub recipe: String,
    pub citations: Vec<String>,
}

impl CaseResult {
    pub fn ok(ls: &LoopSpace) -> Self {
        CaseResult {
            case: ls.record.case.to_string(),
            quotient: ls.record.quotient.clone(),
            prime: ls.record.prime,
            status: "ok".into(),
            expression: Some(ls.expr.clone()),
            rendered: Some(ls.expr.to_string()),
            consumed: ls.consumed.clone(),
            obstruction: None,
            recipe: ls.record.recipe_kind.to_string(),
            citations: ls.record.citations.clone(),
        }
    }

    pub fn undetermined(record: &CaseRecord, obstruction: &str) -> Self {
        CaseResult {
            case: record.case.to_string(),
            quotient: record.quotient.clone(),
            prime: record.prime,
            status: "undetermined".into(),
            expression: None,
            rendered: None,
            consumed: vec![],
            obstruction: Some(obstruction.to_string()),
            recipe: record.recipe_kind.to_string(),
            citations: record.citations.clone(),
        }
    }
}

/// Convenience entry point: build the record and run it.
pub fn decompose_case(case: &CaseId, p: Prime) -> Result<LoopSpace, FibreError> {
    loop_decomposition(&case_record(case, p)?)
}

//! Formal p-local space expressions and their canonical forms.
//!
//! The whole engine works with finite products of a small set of atoms:
//! odd spheres, the circle, and the two-cell complexes `A(2n-1, 2n+2p-3)`
//! together with the three-cell sphere bundles `B(2n-1, 2n+2p-3)` they
//! skeletize (Mimura-Nishida-Toda also use three- and four-cell `B`-spaces
//! such as `B(3,15,27)`, which are first-class here). Each factor may carry
//! a loop, so a value of [`SpaceExpr`] denotes something like
//! `S^7 x ΩB(15,23)`.
//!
//! Everything is localized at an odd prime `p >= 5` carried by the
//! expression. Equality is syntactic equality of canonical forms, so
//! [`SpaceExpr::normalize`] is the workhorse: it validates every atom,
//! sorts factors, drops `ΩS^1` (no p-torsion above degree 1), and rewrites
//! a looped even sphere `ΩS^{2n}` into `S^{2n-1} x ΩS^{4n-1}` using the
//! odd-primary Serre splitting, so canonical atoms always have odd cells.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The odd prime everything is localized at. The engine requires `p >= 5`.
pub type Prime = u32;

/// Errors raised by expression construction and normalization.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("prime {0} is not admissible: the engine requires a prime p >= 5")]
    BadPrime(Prime),
    #[error("unlooped even sphere S^{0} has no canonical odd-cell form")]
    EvenSphere(u32),
    #[error("sphere dimension {0} is not a positive cell dimension")]
    BadSphereDimension(u32),
    #[error("cell list {0:?} must hold at least two ascending odd dimensions")]
    BadCellList(Vec<u32>),
    #[error("cell list {cells:?} breaks the gap law at p={p}: consecutive cells must differ by {gap}")]
    BadCellGap { cells: Vec<u32>, p: Prime, gap: u32 },
    #[error("double looping: factor {0} is already looped")]
    DoubleLoop(String),
    #[error("rational type is only defined for loop-free expressions, found {0}")]
    LoopedFactor(String),
    #[error("malformed factor kind {0:?} in serialized expression")]
    BadKind(String),
}

/// An indecomposable p-local factor.
///
/// `ACell`/`BCell` hold the ascending list of odd cell dimensions; for the
/// two-cell `A` and three-cell `B` spaces this is `[2n-1, 2n+2p-3]`, and
/// consecutive entries always differ by `2(p-1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Point,
    Circle,
    Sphere(u32),
    ACell(Vec<u32>),
    BCell(Vec<u32>),
}

impl Atom {
    /// Cell dimensions of the atom, ascending. The point has none.
    pub fn cells(&self) -> Vec<u32> {
        match self {
            Atom::Point => Vec::new(),
            Atom::Circle => vec![1],
            Atom::Sphere(d) => vec![*d],
            Atom::ACell(cs) | Atom::BCell(cs) => cs.clone(),
        }
    }

    /// Bottom cell dimension, if the atom has any cell.
    pub fn bottom(&self) -> Option<u32> {
        self.cells().first().copied()
    }

    /// Top cell dimension, if the atom has any cell.
    pub fn top(&self) -> Option<u32> {
        self.cells().last().copied()
    }

    /// The skeletal truncation used on the domain side of the fibre
    /// machinery: `B(..) -> A(..)`, everything else is its own skeleton.
    pub fn skeleton(&self) -> Atom {
        match self {
            Atom::BCell(cs) => Atom::ACell(cs.clone()),
            other => other.clone(),
        }
    }

    /// The `M(A) ≃ B` rewrite applied to fibre outputs: `A(..) -> B(..)`.
    pub fn b_form(&self) -> Atom {
        match self {
            Atom::ACell(cs) => Atom::BCell(cs.clone()),
            other => other.clone(),
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Atom::Point => 0,
            Atom::Circle => 1,
            Atom::Sphere(_) => 2,
            Atom::ACell(_) => 3,
            Atom::BCell(_) => 4,
        }
    }

    fn validate(&self, p: Prime) -> Result<(), SpaceError> {
        match self {
            Atom::Point | Atom::Circle => Ok(()),
            Atom::Sphere(d) => {
                if *d == 0 {
                    Err(SpaceError::BadSphereDimension(*d))
                } else if *d % 2 == 0 {
                    Err(SpaceError::EvenSphere(*d))
                } else {
                    Ok(())
                }
            }
            Atom::ACell(cs) | Atom::BCell(cs) => {
                if cs.len() < 2 || cs.iter().any(|c| c % 2 == 0 || *c < 3) {
                    return Err(SpaceError::BadCellList(cs.clone()));
                }
                let gap = 2 * (p - 1);
                for w in cs.windows(2) {
                    if w[1] != w[0] + gap {
                        return Err(SpaceError::BadCellGap { cells: cs.clone(), p, gap });
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Point => write!(f, "*"),
            Atom::Circle => write!(f, "S^1"),
            Atom::Sphere(d) => write!(f, "S^{d}"),
            Atom::ACell(cs) => write!(f, "A({})", join(cs)),
            Atom::BCell(cs) => write!(f, "B({})", join(cs)),
        }
    }
}

fn join(cs: &[u32]) -> String {
    cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// One factor of a product: an atom, possibly looped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub atom: Atom,
    pub looped: bool,
}

impl Factor {
    pub fn plain(atom: Atom) -> Self {
        Factor { atom, looped: false }
    }

    pub fn looped(atom: Atom) -> Self {
        Factor { atom, looped: true }
    }

    fn sort_key(&self) -> (u32, u8, Vec<u32>, bool) {
        (
            self.atom.bottom().unwrap_or(0),
            self.atom.kind_rank(),
            self.atom.cells(),
            self.looped,
        )
    }

    /// Degrees of the nonzero rational homotopy groups this factor feeds
    /// into `π_*` of the ambient product. A looped even sphere `ΩS^{2n}`
    /// contributes both `2n-1` and `4n-2` (even spheres have two rational
    /// homotopy groups), which is what makes the Serre-splitting rewrite
    /// degree-preserving.
    pub fn rational_degrees(&self) -> Vec<u32> {
        match (&self.atom, self.looped) {
            (Atom::Sphere(d), true) if d % 2 == 0 => vec![d - 1, 2 * d - 2],
            (atom, true) => atom.cells().iter().map(|c| c - 1).collect(),
            (atom, false) => atom.cells(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.looped {
            write!(f, "Ω{}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

/// A finite p-local product of (possibly looped) atoms.
///
/// Construct via [`SpaceExpr::raw`] and canonicalize with
/// [`SpaceExpr::normalize`], or use [`SpaceExpr::new`] which does both.
/// The empty product is the point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceExpr {
    prime: Prime,
    factors: Vec<Factor>,
}

/// Multiset of odd degrees `2m_i - 1` recording the rational type of a
/// loop-free expression, stored sorted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeList(pub Vec<u32>);

impl TypeList {
    pub fn from_degrees(mut degrees: Vec<u32>) -> Self {
        degrees.sort_unstable();
        TypeList(degrees)
    }
}

impl fmt::Display for TypeList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(&self.0))
    }
}

pub fn check_prime(p: Prime) -> Result<(), SpaceError> {
    if p < 5 || !is_prime(p) {
        return Err(SpaceError::BadPrime(p));
    }
    Ok(())
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl SpaceExpr {
    /// Build without normalizing. Factors may still hold recipe tokens like
    /// a looped even sphere; call [`SpaceExpr::normalize`] before comparing.
    pub fn raw(prime: Prime, factors: Vec<Factor>) -> Self {
        SpaceExpr { prime, factors }
    }

    /// Build and canonicalize in one step.
    pub fn new(prime: Prime, factors: Vec<Factor>) -> Result<Self, SpaceError> {
        SpaceExpr::raw(prime, factors).normalize()
    }

    pub fn point(prime: Prime) -> Self {
        SpaceExpr { prime, factors: Vec::new() }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_point(&self) -> bool {
        self.factors.is_empty()
    }

    /// Canonical form: validated atoms, sorted factors, `Point` factors and
    /// `ΩS^1` dropped, looped even spheres split as `S^{2n-1} x ΩS^{4n-1}`,
    /// and `S^1` tokens folded into `Circle`. Idempotent.
    pub fn normalize(&self) -> Result<SpaceExpr, SpaceError> {
        check_prime(self.prime)?;
        let mut out: Vec<Factor> = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            match (&f.atom, f.looped) {
                (Atom::Point, _) => {}
                (Atom::Circle, true) => {}
                (Atom::Circle, false) => out.push(f.clone()),
                (Atom::Sphere(1), true) => {}
                (Atom::Sphere(1), false) => out.push(Factor::plain(Atom::Circle)),
                (Atom::Sphere(d), looped) if d % 2 == 0 => {
                    if !looped {
                        return Err(SpaceError::EvenSphere(*d));
                    }
                    // ΩS^{2n} ≃ S^{2n-1} x ΩS^{4n-1} at odd primes
                    out.push(Factor::plain(Atom::Sphere(d - 1)));
                    out.push(Factor::looped(Atom::Sphere(2 * d - 1)));
                }
                (atom, _) => {
                    atom.validate(self.prime)?;
                    out.push(f.clone());
                }
            }
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(SpaceExpr { prime: self.prime, factors: out })
    }

    /// Loop the whole product: `Ω(X x Y) = ΩX x ΩY`. Rejects factors that
    /// are already looped; the point loops to itself.
    pub fn loop_space(&self) -> Result<SpaceExpr, SpaceError> {
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            if f.looped {
                return Err(SpaceError::DoubleLoop(f.to_string()));
            }
            factors.push(Factor::looped(f.atom.clone()));
        }
        SpaceExpr::new(self.prime, factors)
    }

    /// Rational type of a loop-free expression: the multiset of all cell
    /// dimensions of all atoms.
    pub fn rational_type(&self) -> Result<TypeList, SpaceError> {
        let mut degrees = Vec::new();
        for f in &self.factors {
            if f.looped {
                return Err(SpaceError::LoopedFactor(f.to_string()));
            }
            degrees.extend(f.atom.cells());
        }
        Ok(TypeList::from_degrees(degrees))
    }

    /// Degrees of the nonzero rational homotopy groups of the expression.
    pub fn rational_degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.factors.iter().flat_map(|f| f.rational_degrees()).collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "point");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

// Stable JSON shape:
//   {"prime":p,"factors":[{"kind":"S"|"A"|"B"|"S1","cells":[..],"looped":bool},..]}
#[derive(Serialize, Deserialize)]
struct FactorWire {
    kind: String,
    cells: Vec<u32>,
    looped: bool,
}

#[derive(Serialize, Deserialize)]
struct ExprWire {
    prime: Prime,
    factors: Vec<FactorWire>,
}

impl Serialize for SpaceExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let kind = match &f.atom {
                    Atom::Point => "pt",
                    Atom::Circle => "S1",
                    Atom::Sphere(_) => "S",
                    Atom::ACell(_) => "A",
                    Atom::BCell(_) => "B",
                };
                FactorWire { kind: kind.to_string(), cells: f.atom.cells(), looped: f.looped }
            })
            .collect();
        ExprWire { prime: self.prime, factors }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpaceExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = ExprWire::deserialize(d)?;
        let mut factors = Vec::with_capacity(wire.factors.len());
        for fw in wire.factors {
            let atom = match (fw.kind.as_str(), fw.cells.as_slice()) {
                ("pt", _) => Atom::Point,
                ("S1", _) => Atom::Circle,
                ("S", [d]) => Atom::Sphere(*d),
                ("A", cs) if cs.len() >= 2 => Atom::ACell(cs.to_vec()),
                ("B", cs) if cs.len() >= 2 => Atom::BCell(cs.to_vec()),
                _ => return Err(D::Error::custom(SpaceError::BadKind(fw.kind).to_string())),
            };
            factors.push(Factor { atom, looped: fw.looped });
        }
        SpaceExpr::new(wire.prime, factors).map_err(|e| D::Error::custom(e.to_string()))
    }
}

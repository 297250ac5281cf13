//! Sparse exact multivariate polynomial arithmetic over F_p.
//!
//! Terms are kept in a `BTreeMap` from exponent vectors to nonzero
//! coefficients, so iteration order (and therefore printing, hashing of
//! matrices built from polynomials, and pivot selection downstream) is
//! deterministic. Coefficients live in `0..p`; all divisions go through
//! Fermat inversion, which is exact for the primes in play.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials over different contexts: p={0}/{1} vars, p={2}/{3} vars")]
    ContextMismatch(u64, usize, u64, usize),
    #[error("variable index {0} out of range for {1} variables")]
    VarOutOfRange(usize, usize),
    #[error("elementary symmetric index {0} out of range for {1} generators")]
    ElemSymOutOfRange(usize, usize),
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),
    #[error("substitution needs {0} images, got {1}")]
    BadSubstitution(usize, usize),
}

pub fn inv_mod(a: u64, p: u64) -> Result<u64, PolyError> {
    let a = a % p;
    if a == 0 {
        return Err(PolyError::NotInvertible(a, p));
    }
    Ok(pow_mod(a, p - 2, p))
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub type Monomial = Vec<u16>;

/// A sparse polynomial over F_p in a fixed number of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(p: u64, nvars: usize) -> Self {
        Polynomial { p, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, nvars: usize, c: i64) -> Self {
        let mut out = Polynomial::zero(p, nvars);
        let c = c.rem_euclid(p as i64) as u64;
        if c != 0 {
            out.terms.insert(vec![0; nvars], c);
        }
        out
    }

    pub fn one(p: u64, nvars: usize) -> Self {
        Polynomial::constant(p, nvars, 1)
    }

    pub fn var(p: u64, nvars: usize, i: usize) -> Result<Self, PolyError> {
        if i >= nvars {
            return Err(PolyError::VarOutOfRange(i, nvars));
        }
        let mut m = vec![0u16; nvars];
        m[i] = 1;
        let mut out = Polynomial::zero(p, nvars);
        out.terms.insert(m, 1);
        Ok(out)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &[u16]) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.p != other.p || self.nvars != other.nvars {
            return Err(PolyError::ContextMismatch(self.p, self.nvars, other.p, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_insert(0);
            *e = (*e + c) % self.p;
            if *e == 0 {
                out.terms.remove(m);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.p, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.p - c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: i64) -> Polynomial {
        let s = s.rem_euclid(self.p as i64) as u64;
        let mut out = Polynomial::zero(self.p, self.nvars);
        if s == 0 {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * s % self.p);
        }
        out
    }

    /// Scale by the inverse of a constant (exact division in F_p).
    pub fn scale_inv(&self, s: i64) -> Result<Polynomial, PolyError> {
        let s = s.rem_euclid(self.p as i64) as u64;
        Ok(self.scale(inv_mod(s, self.p)? as i64))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut terms: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let e = terms.entry(m).or_insert(0);
                *e = (*e + c1 * c2) % self.p;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(Polynomial { p: self.p, nvars: self.nvars, terms })
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(self.p, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Substitute each variable by the given image polynomial.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::BadSubstitution(self.nvars, images.len()));
        }
        let target = images
            .first()
            .map(|f| (f.p, f.nvars))
            .unwrap_or((self.p, self.nvars));
        // memoized powers of each image
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|f| vec![Polynomial::one(target.0, target.1), f.clone()]).collect();
        let mut out = Polynomial::zero(target.0, target.1);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target.0, target.1, *c as i64);
            for (i, &e) in m.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Total degree of each monomial must agree; returns that degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: u32 = m.iter().map(|e| *e as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Smallest exponent of variable `i` over all monomials; `None` for
    /// the zero polynomial (valuation is infinite).
    pub fn min_exponent(&self, i: usize) -> Option<u16> {
        self.terms.keys().map(|m| m[i]).min()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// k-th elementary symmetric polynomial of the given generators, by the
/// product expansion `prod (1 + x g_i)` truncated at degree k.
pub fn elem_sym(k: usize, gens: &[Polynomial]) -> Result<Polynomial, PolyError> {
    if gens.is_empty() {
        return Err(PolyError::ElemSymOutOfRange(k, 0));
    }
    let (p, nvars) = (gens[0].p, gens[0].nvars);
    if k > gens.len() {
        return Err(PolyError::ElemSymOutOfRange(k, gens.len()));
    }
    let mut e: Vec<Polynomial> = vec![Polynomial::zero(p, nvars); k + 1];
    e[0] = Polynomial::one(p, nvars);
    for g in gens {
        for j in (1..=k).rev() {
            let add = e[j - 1].mul(g)?;
            e[j] = e[j].add(&add)?;
        }
    }
    Ok(e.swap_remove(k))
}

//! Monomials, degrees and graded monomial bases.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x1^e1 * ... * xd^ed`.
///
/// Ordered graded-lexicographically with `x1 < x2 < ... < xd`: lower total
/// degree first, then the exponent of `xd` decides, then `x(d-1)`, and so on.
/// In two variables the degree-2 slice therefore reads `x^2 < x*y < y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// The monomial `x_axis` (0-based axis).
    pub fn var(arity: usize, axis: usize) -> Self {
        let mut e = vec![0; arity];
        e[axis] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::expr::default_var_names(self.arity());
        f.write_str(&crate::expr::format_monomial(self, &names).unwrap_or_else(|| "1".into()))
    }
}

/// Polynomial degree; the zero polynomial has degree `NegInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInf => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_u32(*d),
        }
    }
}

/// Which graded slice a basis spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "degree")]
pub enum SliceKind {
    /// Homogeneous polynomials of exactly this degree.
    Homogeneous(u32),
    /// All polynomials of degree at most this.
    Filtered(u32),
}

impl SliceKind {
    pub fn degree(self) -> u32 {
        match self {
            SliceKind::Homogeneous(n) | SliceKind::Filtered(n) => n,
        }
    }
}

/// Ordered monomial basis of a graded slice.
#[derive(Clone, Debug)]
pub struct Basis {
    arity: usize,
    kind: SliceKind,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    /// Enumerates the slice in increasing graded-lex order.
    pub fn new(arity: usize, kind: SliceKind) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArity);
        }
        let mut monomials = Vec::new();
        match kind {
            SliceKind::Homogeneous(n) => push_homogeneous(arity, n, &mut monomials),
            SliceKind::Filtered(n) => {
                for k in 0..=n {
                    push_homogeneous(arity, k, &mut monomials);
                }
            }
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Basis { arity, kind, monomials, index })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> SliceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> Option<&Monomial> {
        self.monomials.get(i)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }
}

fn push_homogeneous(arity: usize, degree: u32, out: &mut Vec<Monomial>) {
    let start = out.len();
    let mut exps = vec![0u32; arity];
    compositions(&mut exps, 0, degree, out);
    out[start..].sort();
}

fn compositions(exps: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining;
        out.push(Monomial(exps.to_vec()));
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e;
        compositions(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

/// Convenience wrapper around [`Basis::new`].
pub fn monomials(arity: usize, kind: SliceKind) -> Result<Basis> {
    Basis::new(arity, kind)
}

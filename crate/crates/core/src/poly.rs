//! Sparse multivariate polynomials over `Q` or `Q(i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Degree, Monomial};
use crate::scalar::{Field, Scalar};

/// A polynomial in a fixed number of variables with exact coefficients.
///
/// Terms live in a `BTreeMap` keyed by graded-lex order and zero coefficients
/// are never stored, so equal polynomials have identical term maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(arity: usize, field: Field) -> Self {
        Poly { arity, field, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize, field: Field) -> Self {
        Self::constant(arity, Scalar::one(field))
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        Self::term(arity, c, Monomial::one(arity))
    }

    /// Single term `c * m`. Panics if the exponent vector length differs from `arity`.
    pub fn term(arity: usize, c: Scalar, m: Monomial) -> Self {
        assert_eq!(m.arity(), arity, "monomial arity");
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { arity, field, terms }
    }

    /// The coordinate function `x_axis` (0-based).
    pub fn var(arity: usize, field: Field, axis: usize) -> Result<Self> {
        if axis >= arity {
            return Err(Error::AxisOutOfRange { axis, arity });
        }
        Ok(Self::term(arity, Scalar::one(field), Monomial::var(arity, axis)))
    }

    /// `x1^2 + ... + xd^2`.
    pub fn norm_squared(arity: usize, field: Field) -> Self {
        let mut p = Poly::zero(arity, field);
        for axis in 0..arity {
            let mut e = vec![0; arity];
            e[axis] = 2;
            p.add_term(Monomial::new(e), Scalar::one(field));
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats
    /// and dropping zeros.
    pub fn from_terms<I>(arity: usize, field: Field, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        if arity == 0 {
            return Err(Error::InvalidArity);
        }
        let mut p = Poly::zero(arity, field);
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(Error::ArityMismatch { left: arity, right: exps.len() });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch { left: field, right: c.field() });
            }
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }

    /// Integer-coefficient shorthand used heavily in tests.
    pub fn from_int_terms(arity: usize, field: Field, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::from_terms(arity, field, terms.iter().map(|(e, c)| (e.to_vec(), Scalar::from_i64(field, *c))))
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Coefficient of `m`, zero if absent.
    pub fn coeff_or_zero(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff_or_zero(&Monomial::one(self.arity))
    }

    pub fn degree(&self) -> Degree {
        // the last key has maximal total degree
        self.terms.keys().next_back().map_or(Degree::NegInf, |m| Degree::Finite(m.degree()))
    }

    pub fn is_constant(&self) -> bool {
        self.degree() <= Degree::Finite(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Sum of the terms of total degree `n`.
    pub fn homogeneous_component(&self, n: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == n).map(|(m, c)| (m.clone(), c.clone())).collect();
        Poly { arity: self.arity, field: self.field, terms }
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.arity, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Poly> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field, right: c.field() });
        }
        if c.is_zero() {
            return Ok(Poly::zero(self.arity, self.field));
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Ok(Poly { arity: self.arity, field: self.field, terms })
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.arity, self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Re-tags every coefficient into `field`; `None` if some coefficient does
    /// not belong there.
    pub fn convert_field(&self, field: Field) -> Option<Poly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| c.convert(field).map(|c| (m.clone(), c)))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(Poly { arity: self.arity, field, terms })
    }

    /// Formal partial derivative along the 0-based `axis`.
    pub fn partial_derivative(&self, axis: usize) -> Result<Poly> {
        if axis >= self.arity {
            return Err(Error::AxisOutOfRange { axis, arity: self.arity });
        }
        let mut out = Poly::zero(self.arity, self.field);
        for (m, c) in &self.terms {
            let e = m.exponents()[axis];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[axis] -= 1;
            out.add_term(Monomial::new(exps), c * &Scalar::from_i64(self.field, e as i64));
        }
        Ok(out)
    }

    pub fn laplacian(&self) -> Poly {
        let mut out = Poly::zero(self.arity, self.field);
        for (m, c) in &self.terms {
            for axis in 0..self.arity {
                let e = m.exponents()[axis];
                if e < 2 {
                    continue;
                }
                let mut exps = m.exponents().to_vec();
                exps[axis] -= 2;
                out.add_term(Monomial::new(exps), c * &Scalar::from_i64(self.field, (e * (e - 1)) as i64));
            }
        }
        out
    }

    /// Constant-coefficient differential operator `P(D)` applied to `self`: each
    /// monomial `x^a` of `operator` becomes the mixed partial `d^a`.
    pub fn apply_operator(&self, operator: &Poly) -> Result<Poly> {
        self.check_compatible(operator)?;
        let mut out = Poly::zero(self.arity, self.field);
        for (alpha, a) in &operator.terms {
            for (beta, b) in &self.terms {
                let Some(rest) = beta.checked_div(alpha) else { continue };
                let mut factor = BigInt::from(1);
                for (&eb, &ea) in beta.exponents().iter().zip(alpha.exponents()) {
                    for k in 0..ea {
                        factor *= eb - k;
                    }
                }
                let factor = Scalar::from_rational(self.field, BigRational::from_integer(factor));
                out.add_term(rest, &(a * b) * &factor);
            }
        }
        Ok(out)
    }

    /// Float evaluation through a per-variable power table. Only defined for
    /// real coefficients; `Q(i)` polynomials with a nonzero imaginary part error.
    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.arity {
            return Err(Error::DimensionMismatch { expected: self.arity, got: point.len() });
        }
        let powers = self.power_table(point, 1.0, |a, b| a * b);
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let c =
                c.to_f64().ok_or_else(|| Error::InvalidParameter("float evaluation needs real coefficients".into()))?;
            let mut t = c;
            for (axis, &e) in m.exponents().iter().enumerate() {
                t *= powers[axis][e as usize];
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation at a point with coordinates in the polynomial's field.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.arity {
            return Err(Error::DimensionMismatch { expected: self.arity, got: point.len() });
        }
        if let Some(bad) = point.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch { left: self.field, right: bad.field() });
        }
        let powers = self.power_table(point, Scalar::one(self.field), |a, b| a * b);
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (axis, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[axis][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    fn power_table<T: Clone>(&self, point: &[T], one: T, mul: impl Fn(&T, &T) -> T) -> Vec<Vec<T>> {
        let mut max = vec![0u32; self.arity];
        for m in self.terms.keys() {
            for (slot, &e) in max.iter_mut().zip(m.exponents()) {
                *slot = (*slot).max(e);
            }
        }
        point
            .iter()
            .zip(max)
            .map(|(x, top)| {
                let mut row = Vec::with_capacity(top as usize + 1);
                row.push(one.clone());
                for k in 1..=top as usize {
                    let next = mul(&row[k - 1], x);
                    row.push(next);
                }
                row
            })
            .collect()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on arity or field mismatch; see [`Poly::checked_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly { arity: self.arity, field: self.field, terms }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::expr::default_var_names(self.arity);
        f.write_str(&crate::expr::format_polynomial(self, &names))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    arity: usize,
    field: Field,
    terms: Vec<TermJson>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            arity: self.arity,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { exps: m.exponents().to_vec(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PolyJson::deserialize(d)?;
        if j.arity == 0 {
            return Err(D::Error::custom("arity must be at least 1"));
        }
        let mut terms = BTreeMap::new();
        for t in j.terms {
            if t.exps.len() != j.arity {
                return Err(D::Error::custom(format!("term has {} exponents, arity is {}", t.exps.len(), j.arity)));
            }
            if t.coeff.field() != j.field {
                return Err(D::Error::custom("coefficient field differs from polynomial field"));
            }
            if t.coeff.is_zero() {
                return Err(D::Error::custom("zero coefficients are not stored"));
            }
            if terms.insert(Monomial::new(t.exps), t.coeff).is_some() {
                return Err(D::Error::custom("duplicate monomial"));
            }
        }
        Ok(Poly { arity: j.arity, field: j.field, terms })
    }
}

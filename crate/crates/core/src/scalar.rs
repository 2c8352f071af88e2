//! Exact coefficient fields: the rationals `Q` and the Gaussian rationals `Q(i)`.
//!
//! Arithmetic between scalars of different fields is a logic error and panics.
//! Every container in this crate (`Poly`, `ExactMatrix`) carries a field tag and
//! rejects mixed input with an [`Error::FieldMismatch`](crate::Error) before any
//! scalar arithmetic happens, so the panic is only reachable by hand-built values.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient field tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Q,
    Qi,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => f.write_str("Q"),
            Field::Qi => f.write_str("Qi"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" => Ok(Field::Q),
            "Qi" | "qi" | "QI" => Ok(Field::Qi),
            other => Err(format!("unknown field `{other}` (expected Q or Qi)")),
        }
    }
}

/// An exact field element. `BigRational` keeps itself in lowest terms with a
/// positive denominator, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        Self::from_rational(field, rat(n))
    }

    /// `num/den` in the given field. Panics if `den == 0`.
    pub fn ratio(field: Field, num: i64, den: i64) -> Self {
        Self::from_rational(field, BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(field: Field, r: BigRational) -> Self {
        match field {
            Field::Q => Scalar::Rational(r),
            Field::Qi => Scalar::Gaussian { re: r, im: BigRational::zero() },
        }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar::Gaussian { re, im }
    }

    /// The imaginary unit of `Q(i)`.
    pub fn i() -> Self {
        Scalar::Gaussian { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Q,
            Scalar::Gaussian { .. } => Field::Qi,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian { re, im } => re.is_zero() && im.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Gaussian { re, im } => re.is_one() && im.is_zero(),
        }
    }

    /// Real part (the value itself for `Q`).
    pub fn re(&self) -> &BigRational {
        match self {
            Scalar::Rational(r) => r,
            Scalar::Gaussian { re, .. } => re,
        }
    }

    /// Imaginary part, `None` for `Q` scalars.
    pub fn im(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Gaussian { im, .. } => Some(im),
        }
    }

    /// `true` when the value is a rational number (im = 0 for `Q(i)`).
    pub fn is_real(&self) -> bool {
        self.im().is_none_or(Zero::is_zero)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Gaussian { re, im } => {
                let norm = re * re + im * im;
                Scalar::Gaussian { re: re / &norm, im: -(im / &norm) }
            }
        })
    }

    /// Total bit length of numerators and denominators; the pivot-size measure
    /// used by elimination.
    pub fn bit_size(&self) -> u64 {
        fn bits(r: &BigRational) -> u64 {
            r.numer().bits() + r.denom().bits()
        }
        match self {
            Scalar::Rational(r) => bits(r),
            Scalar::Gaussian { re, im } => bits(re) + bits(im),
        }
    }

    /// Nearest `f64` of a real value; `None` if the imaginary part is nonzero.
    pub fn to_f64(&self) -> Option<f64> {
        if !self.is_real() {
            return None;
        }
        self.re().to_f64()
    }

    /// `(re, im)` as floats.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let re = self.re().to_f64().unwrap_or(f64::NAN);
        let im = self.im().map_or(0.0, |v| v.to_f64().unwrap_or(f64::NAN));
        (re, im)
    }

    /// Re-tags a scalar into `field`. Only `Q -> Qi` and real `Qi -> Q` succeed.
    pub fn convert(&self, field: Field) -> Option<Self> {
        match (self, field) {
            (s, f) if s.field() == f => Some(s.clone()),
            (Scalar::Rational(r), Field::Qi) => Some(Self::from_rational(Field::Qi, r.clone())),
            (Scalar::Gaussian { re, im }, Field::Q) if im.is_zero() => Some(Scalar::Rational(re.clone())),
            _ => None,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn mismatch(a: &Self, b: &Self) -> ! {
        panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian { re: a + c, im: b + d }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian { re: a - c, im: b - d }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                // skip the cross terms when both sides are real, the common case
                if b.is_zero() && d.is_zero() {
                    Scalar::Gaussian { re: a * c, im: BigRational::zero() }
                } else {
                    Scalar::Gaussian { re: a * c - b * d, im: a * d + b * c }
                }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gaussian { re, im } => Scalar::Gaussian { re: -re, im: -im },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&fmt_rational(r)),
            Scalar::Gaussian { re, im } => {
                if im.is_zero() {
                    f.write_str(&fmt_rational(re))
                } else if re.is_zero() {
                    write!(f, "{}*i", fmt_rational(im))
                } else {
                    let sign = if im.is_negative() { "-" } else { "+" };
                    write!(f, "{} {} {}*i", fmt_rational(re), sign, fmt_rational(&im.abs()))
                }
            }
        }
    }
}

/// `{"num": "...", "den": "..."}` with decimal-string integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl TryFrom<RationalJson> for BigRational {
    type Error = String;

    fn try_from(j: RationalJson) -> Result<Self, Self::Error> {
        let num: BigInt = j.num.parse().map_err(|_| format!("bad numerator `{}`", j.num))?;
        let den: BigInt = j.den.parse().map_err(|_| format!("bad denominator `{}`", j.den))?;
        if !den.is_positive() {
            return Err(format!("denominator must be positive, got {den}"));
        }
        Ok(BigRational::new(num, den))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarJson {
    Gaussian { re: RationalJson, im: RationalJson },
    Rational(RationalJson),
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let j = match self {
            Scalar::Rational(r) => ScalarJson::Rational(r.into()),
            Scalar::Gaussian { re, im } => ScalarJson::Gaussian { re: re.into(), im: im.into() },
        };
        j.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        match ScalarJson::deserialize(deserializer)? {
            ScalarJson::Rational(r) => Ok(Scalar::Rational(r.try_into().map_err(D::Error::custom)?)),
            ScalarJson::Gaussian { re, im } => Ok(Scalar::Gaussian {
                re: re.try_into().map_err(D::Error::custom)?,
                im: im.try_into().map_err(D::Error::custom)?,
            }),
        }
    }
}

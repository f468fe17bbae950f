//! Exact scalars: rationals, the real quadratic field Q(sqrt 5), and their
//! complexification by `i`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// An exact field element.
///
/// Invariants: `Quad(a, b)` always has `b != 0`, and `Complex` always has a
/// nonzero imaginary part and real (non-complex) components. Every value has a
/// single representation, so derived `Eq` and `Hash` are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// `a + b·√5`
    Quad(BigRational, BigRational),
    /// `re + i·im`
    Complex(Box<(Scalar, Scalar)>),
}

#[derive(Clone, Debug, PartialEq)]
struct Q5 {
    a: BigRational,
    b: BigRational,
}

impl Q5 {
    fn zero() -> Self {
        Q5 {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, o: &Q5) -> Q5 {
        Q5 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    fn sub(&self, o: &Q5) -> Q5 {
        Q5 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    fn neg(&self) -> Q5 {
        Q5 {
            a: -&self.a,
            b: -&self.b,
        }
    }

    fn mul(&self, o: &Q5) -> Q5 {
        if self.b.is_zero() && o.b.is_zero() {
            return Q5 {
                a: &self.a * &o.a,
                b: BigRational::zero(),
            };
        }
        let five = BigRational::from_integer(BigInt::from(5));
        Q5 {
            a: &self.a * &o.a + five * (&self.b * &o.b),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    /// `a² - 5b²`, nonzero for nonzero elements since √5 is irrational.
    fn norm(&self) -> BigRational {
        let five = BigRational::from_integer(BigInt::from(5));
        &self.a * &self.a - five * (&self.b * &self.b)
    }

    fn inv(&self) -> Q5 {
        let n = self.norm();
        Q5 {
            a: &self.a / &n,
            b: -(&self.b / &n),
        }
    }

    fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // Opposite signs: compare a² with 5b².
        let lhs = &self.a * &self.a;
        let rhs = BigRational::from_integer(BigInt::from(5)) * (&self.b * &self.b);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    fn into_scalar(self) -> Scalar {
        if self.b.is_zero() {
            Scalar::Rational(self.a)
        } else {
            Scalar::Quad(self.a, self.b)
        }
    }
}

fn sign_of(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::complex(Scalar::zero(), Scalar::one())
    }

    /// `√5`
    pub fn sqrt5() -> Self {
        Scalar::quad(BigRational::zero(), BigRational::one())
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Scalar::quad(half.clone(), half)
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar::Rational(q)
    }

    pub fn quad(a: BigRational, b: BigRational) -> Self {
        Q5 { a, b }.into_scalar()
    }

    /// Builds `re + i·im`. Both parts must be real.
    pub fn complex(re: Scalar, im: Scalar) -> Self {
        debug_assert!(re.is_real() && im.is_real());
        if im.is_zero() {
            re
        } else {
            Scalar::Complex(Box::new((re, im)))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_one())
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, Scalar::Complex(_))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// The integer value, if this is a rational with denominator one that fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        match self {
            Scalar::Rational(q) if q.is_integer() => q.to_integer().to_i64(),
            _ => None,
        }
    }

    pub fn re(&self) -> Scalar {
        match self {
            Scalar::Complex(p) => p.0.clone(),
            s => s.clone(),
        }
    }

    pub fn im(&self) -> Scalar {
        match self {
            Scalar::Complex(p) => p.1.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Complex(p) => Scalar::Complex(Box::new((p.0.clone(), -&p.1))),
            s => s.clone(),
        }
    }

    /// Sign of a real scalar.
    pub fn signum(&self) -> Result<i8, AlgebraError> {
        match self {
            Scalar::Rational(q) => Ok(sign_of(q)),
            Scalar::Quad(..) => Ok(self.q5().signum()),
            Scalar::Complex(_) => Err(AlgebraError::NotReal(self.to_string())),
        }
    }

    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Quad(..) => self.q5().inv().into_scalar(),
            Scalar::Complex(p) => {
                let (re, im) = (p.0.q5(), p.1.q5());
                let n = re.mul(&re).add(&im.mul(&im)).inv();
                Scalar::complex(re.mul(&n).into_scalar(), im.neg().mul(&n).into_scalar())
            }
        })
    }

    /// Approximate value as `(re, im)` for display and numeric oracles.
    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let real = |s: &Scalar| -> f64 {
            let q = s.q5();
            q.a.to_f64().unwrap_or(f64::NAN) + q.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
        };
        (real(&self.re()), real(&self.im()))
    }

    fn q5(&self) -> Q5 {
        match self {
            Scalar::Rational(q) => Q5 {
                a: q.clone(),
                b: BigRational::zero(),
            },
            Scalar::Quad(a, b) => Q5 {
                a: a.clone(),
                b: b.clone(),
            },
            Scalar::Complex(_) => unreachable!("q5 of a complex scalar"),
        }
    }

    fn parts(&self) -> (Q5, Q5) {
        match self {
            Scalar::Complex(p) => (p.0.q5(), p.1.q5()),
            s => (s.q5(), Q5::zero()),
        }
    }

    fn from_parts(re: Q5, im: Q5) -> Scalar {
        if im.is_zero() {
            re.into_scalar()
        } else {
            Scalar::Complex(Box::new((re.into_scalar(), im.into_scalar())))
        }
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, o) {
            return Scalar::Rational(a + b);
        }
        let (a, b) = self.parts();
        let (c, d) = o.parts();
        Scalar::from_parts(a.add(&c), b.add(&d))
    }

    fn sub_ref(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, o) {
            return Scalar::Rational(a - b);
        }
        let (a, b) = self.parts();
        let (c, d) = o.parts();
        Scalar::from_parts(a.sub(&c), b.sub(&d))
    }

    fn mul_ref(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, o) {
            return Scalar::Rational(a * b);
        }
        let (a, b) = self.parts();
        let (c, d) = o.parts();
        Scalar::from_parts(a.mul(&c).sub(&b.mul(&d)), a.mul(&d).add(&b.mul(&c)))
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Quad(a, b) => Scalar::Quad(-a, -b),
            Scalar::Complex(p) => Scalar::Complex(Box::new((-&p.0, -&p.1))),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$imp(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$imp(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
    };
}

scalar_binop!(Add, add, add_ref);
scalar_binop!(Sub, sub, sub_ref);
scalar_binop!(Mul, mul, mul_ref);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a fallible path.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        &self / &o
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

fn fmt_real(f: &mut fmt::Formatter<'_>, s: &Scalar) -> fmt::Result {
    match s {
        Scalar::Rational(q) => write!(f, "{q}"),
        Scalar::Quad(a, b) => {
            if a.is_zero() {
                write!(f, "{b}*sqrt5")
            } else if b.is_negative() {
                write!(f, "{a}-{}*sqrt5", -b)
            } else {
                write!(f, "{a}+{b}*sqrt5")
            }
        }
        Scalar::Complex(_) => unreachable!(),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Complex(p) => {
                let (re, im) = (&p.0, &p.1);
                if !re.is_zero() {
                    write!(f, "(")?;
                    fmt_real(f, re)?;
                    write!(f, ")+")?;
                }
                write!(f, "(")?;
                fmt_real(f, im)?;
                write!(f, ")*i")
            }
            s => fmt_real(f, s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt5_squared_is_five() {
        let s = Scalar::sqrt5();
        assert_eq!(&s * &s, Scalar::int(5));
    }

    #[test]
    fn golden_ratio_relation() {
        let p = Scalar::phi();
        assert_eq!(&p * &p, &p + &Scalar::one());
        assert_eq!(p.inv().unwrap(), &p - &Scalar::one());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::int(-1));
        assert_eq!(i.conj(), -&i);
    }

    #[test]
    fn quad_signs() {
        let a = Scalar::quad(
            BigRational::from_integer(3.into()),
            BigRational::from_integer((-1).into()),
        );
        assert_eq!(a.signum().unwrap(), 1);
        let b = Scalar::quad(
            BigRational::from_integer(2.into()),
            BigRational::from_integer((-1).into()),
        );
        assert_eq!(b.signum().unwrap(), -1);
        assert!(Scalar::i().signum().is_err());
    }

    #[test]
    fn complex_inverse() {
        let z = Scalar::complex(Scalar::phi(), Scalar::frac(-2, 3));
        assert_eq!(&z * &z.inv().unwrap(), Scalar::one());
        assert_eq!(Scalar::zero().inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn normal_forms_collapse() {
        let s = Scalar::sqrt5();
        assert!((&s - &s).is_rational());
        let z = &Scalar::i() - &Scalar::i();
        assert!(z.is_zero());
    }
}

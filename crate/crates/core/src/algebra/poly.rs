//! Sparse multivariate polynomials and Laurent polynomials with exact coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order, so equality is structural and the leading term is the
//! last entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::{AlgebraError, Matrix, Scalar};

pub type Exponents = SmallVec<[i32; 8]>;

/// An exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Distinguishes ordinary polynomials from Laurent polynomials at the type level.
pub trait PolyKind:
    Clone + fmt::Debug + PartialEq + Eq + std::hash::Hash + Default + Send + Sync + 'static
{
    const LAURENT: bool;
    const VAR: &'static str;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ordinary;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent;

impl PolyKind for Ordinary {
    const LAURENT: bool = false;
    const VAR: &'static str = "x";
}

impl PolyKind for Laurent {
    const LAURENT: bool = true;
    const VAR: &'static str = "t";
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<K: PolyKind> {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
    kind: PhantomData<K>,
}

/// Polynomials in `x_1..x_n` (plus any adjoined parameters).
pub type Polynomial = Poly<Ordinary>;
/// Laurent polynomials in `t_i = e^{x_i}` (plus any adjoined parameters).
pub type LaurentPolynomial = Poly<Laurent>;

impl<K: PolyKind> Poly<K> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The generator with index `k` (`x_k`, or `t_k` in Laurent mode).
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = Monomial::one(nvars);
        e.0[k] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.0.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms. Panics if an exponent vector has the wrong length, or if
    /// a negative exponent is given to an ordinary polynomial.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, Scalar)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            assert!(
                K::LAURENT || e.iter().all(|&x| x >= 0),
                "negative exponent in polynomial"
            );
            p.add_term(Monomial(e.into_iter().collect()), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree among the terms, restricted to the first `n` variables.
    pub fn degree_in(&self, n: usize) -> i64 {
        self.terms
            .keys()
            .map(|m| m.0[..n].iter().map(|&e| e as i64).sum())
            .max()
            .unwrap_or(0)
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
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c·m·other`
    fn add_scaled(&mut self, c: &Scalar, m: &Monomial, other: &Self) {
        for (om, oc) in &other.terms {
            self.add_term(m.mul(om), c * oc);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        Poly {
            nvars: self.nvars,
            terms,
            kind: PhantomData,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Self {
        let mut p = Self::zero(self.nvars);
        p.add_scaled(c, m, self);
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.conj()))
            .collect();
        Poly {
            nvars: self.nvars,
            terms,
            kind: PhantomData,
        }
    }

    /// Whether every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    /// Substitutes scalar values for the variables at `indices`.
    pub fn specialize(&self, indices: &[usize], values: &[Scalar]) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let mut c = c.clone();
            for (&k, v) in indices.iter().zip(values) {
                let e = m.0[k];
                m.0[k] = 0;
                if e >= 0 {
                    c = c * v.pow(e as u32);
                } else {
                    c = c * v.inv().expect("specialize to zero").pow((-e) as u32);
                }
            }
            p.add_term(m, c);
        }
        p
    }

    /// Pads with extra trailing variables.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        Poly {
            nvars,
            terms,
            kind: PhantomData,
        }
    }

    /// Numeric evaluation, returning `(re, im)`.
    pub fn eval_f64(&self, point: &[f64]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in &self.terms {
            let mut v = 1.0;
            for (k, &e) in m.0.iter().enumerate() {
                v *= point[k].powi(e);
            }
            let (cr, ci) = c.to_f64();
            re += v * cr;
            im += v * ci;
        }
        (re, im)
    }

    /// Canonical text with variable names `names[k]`, highest term first.
    pub fn render_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[k].clone()),
                    _ => factors.push(format!("{}^{}", names[k], e)),
                }
            }
            let (neg, mag) = match c {
                Scalar::Rational(q) if q < &num_rational::BigRational::from_integer(0.into()) => {
                    (true, Scalar::Rational(-q))
                }
                _ => (false, c.clone()),
            };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let coeff = if mag.is_rational() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            if factors.is_empty() {
                out.push_str(&coeff);
            } else {
                if !mag.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|k| format!("{}{}", K::VAR, k)).collect()
    }

    /// Canonical graded-lex term list, highest first, as `(exponents, coefficient text)`.
    pub fn term_list(&self) -> Vec<(Vec<i32>, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| (m.0.to_vec(), c.to_string()))
            .collect()
    }

    fn add_ref(&self, o: &Self) -> Self {
        debug_assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let (big, small) = if self.terms.len() >= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut p = big.clone();
        for (m, c) in &small.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    fn sub_ref(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }

    fn mul_ref(&self, o: &Self) -> Self {
        debug_assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        if o.terms.len() == 1 {
            let (m, c) = o.terms.iter().next().unwrap();
            return self.mul_monomial(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return o.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1 * c2;
                acc.entry(m1.mul(m2))
                    .and_modify(|x| *x = &*x + &c)
                    .or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Poly {
            nvars: self.nvars,
            terms,
            kind: PhantomData,
        }
    }

    fn neg_ref(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }
}

impl<K: PolyKind> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&Self::default_names(self.nvars)))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<K: PolyKind> $tr<&Poly<K>> for &Poly<K> {
            type Output = Poly<K>;
            fn $m(self, o: &Poly<K>) -> Poly<K> {
                self.$imp(o)
            }
        }
        impl<K: PolyKind> $tr<Poly<K>> for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, o: Poly<K>) -> Poly<K> {
                (&self).$imp(&o)
            }
        }
        impl<K: PolyKind> $tr<&Poly<K>> for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, o: &Poly<K>) -> Poly<K> {
                (&self).$imp(o)
            }
        }
        impl<K: PolyKind> $tr<Poly<K>> for &Poly<K> {
            type Output = Poly<K>;
            fn $m(self, o: Poly<K>) -> Poly<K> {
                self.$imp(&o)
            }
        }
    };
}

poly_binop!(Add, add, add_ref);
poly_binop!(Sub, sub, sub_ref);
poly_binop!(Mul, mul, mul_ref);

impl<K: PolyKind> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.neg_ref()
    }
}

impl<K: PolyKind> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.neg_ref()
    }
}

impl Polynomial {
    /// `Σ c_k x_k` over the first `coeffs.len()` variables.
    pub fn linear_form(nvars: usize, coeffs: &[Scalar]) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut m = Monomial::one(nvars);
            m.0[k] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[k] = e - 1;
                p.add_term(m2, c * &Scalar::int(e as i64));
            }
        }
        p
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v = v * point[k].pow(e as u32);
                }
            }
            acc = acc + v;
        }
        acc
    }

    /// Multivariate division by a single divisor: `self = q·d + r` where no term of
    /// `r` is divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial), AlgebraError> {
        let (lm, lc) = d.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), lc.inv()?);
        let mut p = self.clone();
        let mut q = Self::zero(self.nvars);
        let mut r = Self::zero(self.nvars);
        while let Some((m, c)) = p
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            if lm.divides(&m) {
                let t = m.div(&lm);
                let tc = &c * &lc_inv;
                p.add_scaled(&-&tc, &t, d);
                q.add_term(t, tc);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }

    /// The exact quotient `self / d`.
    pub fn divide_exact(&self, d: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible {
                remainder: r.to_string(),
            })
        }
    }

    /// `f(x·M)`: the variable `x_j` becomes `Σ_i M_ij x_i` for `j < M.n()`; the
    /// remaining variables are untouched parameters.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Polynomial, AlgebraError> {
        let n = m.n();
        if n > self.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars,
                found: n,
            });
        }
        let images: Vec<Polynomial> = (0..n)
            .map(|j| Polynomial::linear_form(self.nvars, &m.column(j)))
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|l| vec![Self::one(self.nvars), l.clone()])
            .collect();
        let mut out = Self::zero(self.nvars);
        for (mono, c) in &self.terms {
            let mut rest = mono.clone();
            let mut acc = Self::one(self.nvars);
            for j in 0..n {
                let e = mono.0[j] as usize;
                rest.0[j] = 0;
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e {
                    let next = powers[j].last().unwrap() * &images[j];
                    powers[j].push(next);
                }
                acc = &acc * &powers[j][e];
            }
            out.add_scaled(c, &rest, &acc);
        }
        Ok(out)
    }

    pub fn to_laurent(&self) -> LaurentPolynomial {
        Poly {
            nvars: self.nvars,
            terms: self.terms.clone(),
            kind: PhantomData,
        }
    }
}

impl LaurentPolynomial {
    /// `∏ t_i^{a_i}`
    pub fn t_power(nvars: usize, a: &[i32]) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[..a.len()].copy_from_slice(a);
        Self::monomial(m, Scalar::one())
    }

    /// Derivative along `x_k` where `t_k = e^{x_k}`: `t^a ↦ a_k t^a`.
    pub fn partial(&self, k: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e != 0 {
                p.add_term(m.clone(), c * &Scalar::int(e as i64));
            }
        }
        p
    }

    /// Componentwise minimum exponent over all terms (zero for the zero polynomial).
    pub fn min_exponents(&self) -> Monomial {
        let mut lo = Monomial::one(self.nvars);
        for (i, m) in self.terms.keys().enumerate() {
            for k in 0..self.nvars {
                lo.0[k] = if i == 0 { m.0[k] } else { lo.0[k].min(m.0[k]) };
            }
        }
        lo
    }

    /// Writes `self = t^s·P` with `P` an ordinary polynomial not divisible by any `t_i`.
    pub fn split_shift(&self) -> (Monomial, Polynomial) {
        let s = self.min_exponents();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.div(&s), c.clone()))
            .collect();
        (
            s,
            Poly {
                nvars: self.nvars,
                terms,
                kind: PhantomData,
            },
        )
    }

    pub fn divide_exact(&self, d: &LaurentPolynomial) -> Result<LaurentPolynomial, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (sf, f) = self.split_shift();
        let (sd, dd) = d.split_shift();
        let q = f.divide_exact(&dd)?;
        Ok(q.to_laurent().mul_monomial(&sf.div(&sd), &Scalar::one()))
    }

    /// Pullback along `x ↦ x·g`: `t^a ↦ t^{b}` with `b = g·a`, which must be integral.
    pub fn pullback_exponents(&self, g: &Matrix) -> Result<LaurentPolynomial, AlgebraError> {
        let n = g.n();
        if n > self.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars,
                found: n,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.clone();
            for j in 0..n {
                let b = (0..n).fold(Scalar::zero(), |acc, i| {
                    acc + g.get(j, i) * &Scalar::int(m.0[i] as i64)
                });
                e.0[j] = b
                    .as_i64()
                    .and_then(|v| i32::try_from(v).ok())
                    .ok_or_else(|| AlgebraError::NonIntegerExponent(b.to_string()))?;
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::int_vec;

    fn x(n: usize, k: usize) -> Polynomial {
        Polynomial::var(n, k)
    }

    #[test]
    fn exact_division_examples() {
        let f = &(&x(2, 0) * &x(2, 0)) - &(&x(2, 1) * &x(2, 1));
        let d = &x(2, 0) - &x(2, 1);
        assert_eq!(f.divide_exact(&d).unwrap(), &x(2, 0) + &x(2, 1));
        assert!(Polynomial::zero(2)
            .divide_exact(&x(2, 0))
            .unwrap()
            .is_zero());
        let g = &x(2, 0) * &x(2, 0);
        match g.divide_exact(&d) {
            Err(AlgebraError::NotDivisible { remainder }) => assert_eq!(remainder, "x2^2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn substitution_by_swap() {
        let swap = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(x(2, 0).substitute_linear(&swap).unwrap(), x(2, 1));
        let xy = &x(2, 0) * &x(2, 1);
        assert_eq!(xy.substitute_linear(&swap).unwrap(), xy);
        let f = &xy + &x(2, 0).pow(3);
        assert_eq!(f.substitute_linear(&Matrix::identity(2)).unwrap(), f);
    }

    #[test]
    fn substitution_leaves_parameters() {
        let k = Polynomial::var(3, 2);
        let m = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let f = &k * &x(3, 0);
        assert_eq!(f.substitute_linear(&m).unwrap(), &k * &x(3, 1));
    }

    #[test]
    fn render_is_grlex_descending() {
        let f = &(&x(2, 0) * &x(2, 0)).scale(&Scalar::int(3)) - &x(2, 1)
            + Polynomial::constant(2, Scalar::frac(1, 2));
        assert_eq!(f.to_string(), "3*x1^2 - x2 + 1/2");
    }

    #[test]
    fn laurent_division_and_shift() {
        let t1 = LaurentPolynomial::var(2, 0);
        let t2 = LaurentPolynomial::var(2, 1);
        let inv = LaurentPolynomial::t_power(2, &[0, -1]);
        let f = &(&t1 * &inv) - &LaurentPolynomial::one(2);
        let d = &t1 - &t2;
        let q = f.divide_exact(&d).unwrap();
        assert_eq!(q, inv);
        let (s, p) = f.split_shift();
        assert_eq!(s.0.to_vec(), vec![0, -1]);
        assert_eq!(p.to_string(), "x1 - x2");
    }

    #[test]
    fn laurent_pullback_requires_integrality() {
        let t = LaurentPolynomial::t_power(2, &[1, 0]);
        let swap = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(
            t.pullback_exponents(&swap).unwrap(),
            LaurentPolynomial::t_power(2, &[0, 1])
        );
        let half = Matrix::from_rows(vec![
            vec![Scalar::frac(1, 2), Scalar::zero()],
            int_vec(&[0, 1]),
        ])
        .unwrap();
        assert!(matches!(
            t.pullback_exponents(&half),
            Err(AlgebraError::NonIntegerExponent(_))
        ));
    }

    #[test]
    fn laurent_derivation() {
        let t = LaurentPolynomial::t_power(1, &[-2]);
        assert_eq!(t.partial(0), t.scale(&Scalar::int(-2)));
    }
}

//! Fractions over a polynomial ring with a factored denominator.
//!
//! The denominator is a multiset of normalized factors, so sums of terms that
//! share factors (the common case: products of `1/⟨x,α⟩`) stay small without
//! any gcd computation. Equality is cross-multiplied.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{Laurent, Ordinary, Poly, PolyKind};
use super::{AlgebraError, Matrix, Scalar};

/// The operations a coefficient ring must offer for fraction and form arithmetic.
pub trait PolyRing: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    const LAURENT: bool;

    fn zero(nvars: usize) -> Self;
    fn one(nvars: usize) -> Self;
    fn constant(nvars: usize, c: Scalar) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn scale(&self, c: &Scalar) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn divide_exact(&self, d: &Self) -> Result<Self, AlgebraError>;
    /// Splits `self = unit · normal` with `normal` canonical among associates.
    /// Returns `(normal, unit)`; `unit` is invertible in the ring.
    fn normalize(&self) -> (Self, Self);
    fn partial(&self, k: usize) -> Self;
    /// Pullback along `x ↦ x·g`.
    fn pullback(&self, g: &Matrix) -> Result<Self, AlgebraError>;
    fn conj(&self) -> Self;
    fn render(&self) -> String;
    fn eval_f64(&self, point: &[f64]) -> (f64, f64);
}

impl<K: PolyKind> Poly<K> {
    fn normalize_generic(&self) -> (Self, Self) {
        match self.leading_term() {
            None => (self.clone(), Self::one(self.nvars())),
            Some((_, lc)) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                (self.scale(&inv), Self::constant(self.nvars(), lc.clone()))
            }
        }
    }
}

impl PolyRing for Poly<Ordinary> {
    const LAURENT: bool = false;

    fn zero(nvars: usize) -> Self {
        Poly::zero(nvars)
    }
    fn one(nvars: usize) -> Self {
        Poly::one(nvars)
    }
    fn constant(nvars: usize, c: Scalar) -> Self {
        Poly::constant(nvars, c)
    }
    fn nvars(&self) -> usize {
        Poly::nvars(self)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Poly::is_one(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Poly::scale(self, c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn divide_exact(&self, d: &Self) -> Result<Self, AlgebraError> {
        Poly::<Ordinary>::divide_exact(self, d)
    }
    fn normalize(&self) -> (Self, Self) {
        self.normalize_generic()
    }
    fn partial(&self, k: usize) -> Self {
        Poly::<Ordinary>::partial(self, k)
    }
    fn pullback(&self, g: &Matrix) -> Result<Self, AlgebraError> {
        self.substitute_linear(g)
    }
    fn conj(&self) -> Self {
        Poly::conj(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn eval_f64(&self, point: &[f64]) -> (f64, f64) {
        Poly::eval_f64(self, point)
    }
}

impl PolyRing for Poly<Laurent> {
    const LAURENT: bool = true;

    fn zero(nvars: usize) -> Self {
        Poly::zero(nvars)
    }
    fn one(nvars: usize) -> Self {
        Poly::one(nvars)
    }
    fn constant(nvars: usize, c: Scalar) -> Self {
        Poly::constant(nvars, c)
    }
    fn nvars(&self) -> usize {
        Poly::nvars(self)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Poly::is_one(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Poly::scale(self, c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn divide_exact(&self, d: &Self) -> Result<Self, AlgebraError> {
        Poly::<Laurent>::divide_exact(self, d)
    }
    fn normalize(&self) -> (Self, Self) {
        if self.is_zero() {
            return (self.clone(), Poly::one(self.nvars()));
        }
        // Dividing by the lowest term keeps exponents inside the lattice spanned by
        // exponent differences, so pullbacks by non-unimodular group elements stay integral.
        let s = self.terms().next().expect("nonzero").0.clone();
        let shifted = self.mul_monomial(&Poly::<Laurent>::inverse_monomial(&s), &Scalar::one());
        let (normal, lc) = shifted.normalize_generic();
        let unit = lc.mul_monomial(&s, &Scalar::one());
        (normal, unit)
    }
    fn partial(&self, k: usize) -> Self {
        Poly::<Laurent>::partial(self, k)
    }
    fn pullback(&self, g: &Matrix) -> Result<Self, AlgebraError> {
        self.pullback_exponents(g)
    }
    fn conj(&self) -> Self {
        Poly::conj(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn eval_f64(&self, point: &[f64]) -> (f64, f64) {
        Poly::eval_f64(self, point)
    }
}

impl Poly<Laurent> {
    fn inverse_monomial(m: &super::poly::Monomial) -> super::poly::Monomial {
        super::poly::Monomial(m.0.iter().map(|e| -e).collect())
    }
}

/// `num / ∏ f_i^{e_i}` with each `f_i` normalized and non-unit.
#[derive(Clone, Debug)]
pub struct Frac<P: PolyRing> {
    num: P,
    den: Vec<(P, u32)>,
}

pub type RationalFunction = Frac<Poly<Ordinary>>;
pub type LaurentRational = Frac<Poly<Laurent>>;

impl<P: PolyRing> Frac<P> {
    pub fn zero(nvars: usize) -> Self {
        Frac {
            num: P::zero(nvars),
            den: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Frac {
            num: P::one(nvars),
            den: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Frac {
            num: P::constant(nvars, c),
            den: Vec::new(),
        }
    }

    pub fn from_poly(p: P) -> Self {
        Frac {
            num: p,
            den: Vec::new(),
        }
    }

    /// `num / den`; errors on a zero denominator.
    pub fn new(num: P, den: P) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let (normal, unit) = den.normalize();
        let num = num.divide_exact(&unit)?;
        let den = if normal.is_one() {
            Vec::new()
        } else {
            vec![(normal, 1)]
        };
        Ok(Frac { num, den })
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &P {
        &self.num
    }

    pub fn factors(&self) -> &[(P, u32)] {
        &self.den
    }

    /// The expanded denominator `∏ f_i^{e_i}`.
    pub fn denominator(&self) -> P {
        let mut d = P::one(self.nvars());
        for (f, e) in &self.den {
            for _ in 0..*e {
                d = d.mul(f);
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the value is a polynomial after cancellation.
    pub fn as_poly(&self) -> Option<P> {
        let r = self.reduced();
        if r.den.is_empty() {
            Some(r.num)
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Frac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &P) -> Self {
        Frac {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return Frac::zero(self.nvars());
        }
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let mut e = *e;
            while e > 0 {
                match num.divide_exact(f) {
                    Ok(q) => {
                        num = q;
                        e -= 1;
                    }
                    Err(_) => break,
                }
            }
            if e > 0 {
                den.push((f.clone(), e));
            }
        }
        Frac { num, den }
    }

    fn find(den: &[(P, u32)], f: &P) -> Option<usize> {
        den.iter().position(|(g, _)| g == f)
    }

    fn add_ref(&self, o: &Self) -> Self {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        // Least common multiple of the factored denominators.
        let mut lcm = self.den.clone();
        for (f, e) in &o.den {
            match Self::find(&lcm, f) {
                Some(i) => lcm[i].1 = lcm[i].1.max(*e),
                None => lcm.push((f.clone(), *e)),
            }
        }
        let lift = |x: &Self| -> P {
            let mut n = x.num.clone();
            for (f, e) in &lcm {
                let have = Self::find(&x.den, f).map(|i| x.den[i].1).unwrap_or(0);
                for _ in have..*e {
                    n = n.mul(f);
                }
            }
            n
        };
        let num = lift(self).add(&lift(o));
        if num.is_zero() {
            return Frac::zero(self.nvars());
        }
        Frac { num, den: lcm }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Frac::zero(self.nvars());
        }
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            match Self::find(&den, f) {
                Some(i) => den[i].1 += e,
                None => den.push((f.clone(), *e)),
            }
        }
        Frac {
            num: self.num.mul(&o.num),
            den,
        }
    }

    pub fn neg(&self) -> Self {
        Frac {
            num: self.num.scale(&Scalar::int(-1)),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Frac::new(self.denominator(), self.num.clone())
    }

    /// Derivative along the `k`-th variable by the quotient rule on factored denominators.
    pub fn partial(&self, k: usize) -> Self {
        let derivs: Vec<P> = self.den.iter().map(|(f, _)| f.partial(k)).collect();
        let active: Vec<usize> = (0..self.den.len())
            .filter(|&i| !derivs[i].is_zero())
            .collect();
        let prod_except = |skip: Option<usize>| -> P {
            let mut p = P::one(self.nvars());
            for &j in &active {
                if Some(j) != skip {
                    p = p.mul(&self.den[j].0);
                }
            }
            p
        };
        let mut num = self.num.partial(k).mul(&prod_except(None));
        for &i in &active {
            let e = Scalar::int(self.den[i].1 as i64);
            let t = self.num.mul(&derivs[i]).mul(&prod_except(Some(i)));
            num = num.sub(&t.scale(&e));
        }
        if num.is_zero() {
            return Frac::zero(self.nvars());
        }
        let mut den = self.den.clone();
        for &i in &active {
            den[i].1 += 1;
        }
        Frac { num, den }
    }

    pub fn pullback(&self, g: &Matrix) -> Result<Self, AlgebraError> {
        let mut num = self.num.pullback(g)?;
        let mut den: Vec<(P, u32)> = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let (normal, unit) = f.pullback(g)?.normalize();
            for _ in 0..*e {
                num = num.divide_exact(&unit)?;
            }
            match Self::find(&den, &normal) {
                Some(i) => den[i].1 += e,
                None => den.push((normal, *e)),
            }
        }
        Ok(Frac { num, den })
    }

    pub fn conj(&self) -> Self {
        let mut num = self.num.conj();
        let mut den: Vec<(P, u32)> = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let (normal, unit) = f.conj().normalize();
            for _ in 0..*e {
                num = num.divide_exact(&unit).expect("unit division");
            }
            den.push((normal, *e));
        }
        Frac { num, den }
    }

    pub fn eval_f64(&self, point: &[f64]) -> (f64, f64) {
        let (nr, ni) = self.num.eval_f64(point);
        let (dr, di) = self.denominator().eval_f64(point);
        let m = dr * dr + di * di;
        ((nr * dr + ni * di) / m, (ni * dr - nr * di) / m)
    }

    /// Text of the form `num` or `(num)/(den)` with the expanded denominator.
    pub fn render(&self) -> String {
        let r = self.reduced();
        if r.den.is_empty() {
            r.num.render()
        } else {
            let den: Vec<String> = r
                .den
                .iter()
                .map(|(f, e)| {
                    if *e == 1 {
                        format!("({})", f.render())
                    } else {
                        format!("({})^{}", f.render(), e)
                    }
                })
                .collect();
            format!("({})/{}", r.num.render(), den.join("*"))
        }
    }
}

impl<P: PolyRing> PartialEq for Frac<P> {
    fn eq(&self, o: &Self) -> bool {
        self.add_ref(&o.neg()).is_zero()
    }
}

impl<P: PolyRing> fmt::Display for Frac<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<P: PolyRing> Add<&Frac<P>> for &Frac<P> {
    type Output = Frac<P>;
    fn add(self, o: &Frac<P>) -> Frac<P> {
        self.add_ref(o)
    }
}

impl<P: PolyRing> Sub<&Frac<P>> for &Frac<P> {
    type Output = Frac<P>;
    fn sub(self, o: &Frac<P>) -> Frac<P> {
        self.add_ref(&o.neg())
    }
}

impl<P: PolyRing> Mul<&Frac<P>> for &Frac<P> {
    type Output = Frac<P>;
    fn mul(self, o: &Frac<P>) -> Frac<P> {
        self.mul_ref(o)
    }
}

impl<P: PolyRing> Neg for &Frac<P> {
    type Output = Frac<P>;
    fn neg(self) -> Frac<P> {
        Frac::neg(self)
    }
}

/// `(T^α + 1)/(T^α − 1)` with `T^α = ∏ t_i^{α_i}`: the Laurent form of `coth(⟨x,α⟩/2)`.
pub fn laurent_coth_half(alpha: &[i64], nvars: usize) -> Result<LaurentRational, AlgebraError> {
    if alpha.iter().all(|&a| a == 0) {
        return Err(AlgebraError::ZeroDenominator);
    }
    let exps: Vec<i32> = alpha
        .iter()
        .map(|&a| i32::try_from(a).map_err(|_| AlgebraError::NonIntegerExponent(a.to_string())))
        .collect::<Result<_, _>>()?;
    let t = Poly::<Laurent>::t_power(nvars, &exps);
    let one = Poly::<Laurent>::one(nvars);
    Frac::new(PolyRing::add(&t, &one), PolyRing::sub(&t, &one))
}

/// Like [`laurent_coth_half`] for a root given by scalars, which must all be integers.
pub fn laurent_coth_half_scalar(
    alpha: &[Scalar],
    nvars: usize,
) -> Result<LaurentRational, AlgebraError> {
    let ints: Vec<i64> = alpha
        .iter()
        .map(|a| {
            a.as_i64()
                .ok_or_else(|| AlgebraError::NonIntegerExponent(a.to_string()))
        })
        .collect::<Result<_, _>>()?;
    laurent_coth_half(&ints, nvars)
}

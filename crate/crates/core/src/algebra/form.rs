//! Horizontal differential forms: the exterior algebra on `θ_1..θ_n` with
//! fractional coefficients, the de Rham differential, and the right action of
//! linear maps by pullback.

use std::collections::BTreeMap;
use std::fmt;

use super::frac::{Frac, PolyRing};
use super::poly::{Laurent, Ordinary, Poly};
use super::{AlgebraError, Matrix, Scalar};

/// A form `Σ_I c_I θ_I`, where `I` is a bitmask over `0..dim`.
#[derive(Clone, Debug)]
pub struct HorizontalForm<P: PolyRing> {
    dim: usize,
    nvars: usize,
    comps: BTreeMap<u32, Frac<P>>,
}

pub type RationalForm = HorizontalForm<Poly<Ordinary>>;
pub type LaurentForm = HorizontalForm<Poly<Laurent>>;

/// Sign of `θ_A ∧ θ_B` relative to `θ_{A∪B}`; zero if the sets overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    // Count pairs (i in a, j in b) with i > j.
    let mut inversions = 0;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|k| mask & (1 << k) != 0).collect()
}

impl<P: PolyRing> HorizontalForm<P> {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        assert!(dim <= nvars && dim < 32);
        HorizontalForm {
            dim,
            nvars,
            comps: BTreeMap::new(),
        }
    }

    /// A degree-0 form.
    pub fn function(dim: usize, f: Frac<P>) -> Self {
        let mut w = Self::zero(dim, f.nvars());
        w.insert(0, f);
        w
    }

    pub fn from_poly(dim: usize, p: P) -> Self {
        Self::function(dim, Frac::from_poly(p))
    }

    pub fn one(dim: usize, nvars: usize) -> Self {
        Self::function(dim, Frac::one(nvars))
    }

    /// `θ_k` (zero-based `k`).
    pub fn theta(dim: usize, nvars: usize, k: usize) -> Self {
        let mut w = Self::zero(dim, nvars);
        w.insert(1 << k, Frac::one(nvars));
        w
    }

    /// `Σ_k v_k θ_k` with scalar coefficients.
    pub fn one_form(dim: usize, nvars: usize, v: &[Scalar]) -> Self {
        let mut w = Self::zero(dim, nvars);
        for (k, c) in v.iter().enumerate() {
            w.insert(1 << k, Frac::constant(nvars, c.clone()));
        }
        w
    }

    /// `Σ_k c_k θ_k` with function coefficients.
    pub fn one_form_from(dim: usize, coeffs: Vec<Frac<P>>) -> Self {
        let nvars = coeffs.first().map(|c| c.nvars()).unwrap_or(dim);
        let mut w = Self::zero(dim, nvars);
        for (k, c) in coeffs.into_iter().enumerate() {
            w.insert(1 << k, c);
        }
        w
    }

    pub fn from_components(
        dim: usize,
        nvars: usize,
        comps: impl IntoIterator<Item = (u32, Frac<P>)>,
    ) -> Self {
        let mut w = Self::zero(dim, nvars);
        for (m, c) in comps {
            w.insert(m, c);
        }
        w
    }

    fn insert(&mut self, mask: u32, c: Frac<P>) {
        debug_assert!(mask < (1 << self.dim));
        if c.is_zero() {
            return;
        }
        let next = match self.comps.remove(&mask) {
            Some(old) => &old + &c,
            None => c,
        };
        if !next.is_zero() {
            self.comps.insert(mask, next);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &BTreeMap<u32, Frac<P>> {
        &self.comps
    }

    pub fn component(&self, mask: u32) -> Frac<P> {
        self.comps
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Frac::zero(self.nvars))
    }

    /// The coefficient of `θ_k θ_l` for `k < l` (zero-based), with antisymmetry for `k > l`.
    pub fn coeff2(&self, k: usize, l: usize) -> Frac<P> {
        match k.cmp(&l) {
            std::cmp::Ordering::Equal => Frac::zero(self.nvars),
            std::cmp::Ordering::Less => self.component((1 << k) | (1 << l)),
            std::cmp::Ordering::Greater => self.component((1 << k) | (1 << l)).neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Frac::is_zero)
    }

    /// The degree if all components share one.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.comps.keys().map(|m| m.count_ones() as usize);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Self> {
        let mut out: BTreeMap<usize, Self> = BTreeMap::new();
        for (m, c) in &self.comps {
            out.entry(m.count_ones() as usize)
                .or_insert_with(|| Self::zero(self.dim, self.nvars))
                .insert(*m, c.clone());
        }
        out
    }

    fn check(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.dim != o.dim || self.nvars != o.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: o.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o).expect("form dimension mismatch");
        let mut w = self.clone();
        for (m, c) in &o.comps {
            w.insert(*m, c.clone());
        }
        w
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut w = Self::zero(self.dim, self.nvars);
        for (m, x) in &self.comps {
            w.insert(*m, x.scale(c));
        }
        w
    }

    /// Multiplies every component by a function.
    pub fn mul_fn(&self, f: &Frac<P>) -> Self {
        let mut w = Self::zero(self.dim, self.nvars);
        for (m, x) in &self.comps {
            w.insert(*m, x * f);
        }
        w
    }

    /// The graded-commutative product.
    pub fn wedge(&self, o: &Self) -> Self {
        self.try_wedge(o).expect("form dimension mismatch")
    }

    pub fn try_wedge(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        let mut w = Self::zero(self.dim, self.nvars);
        for (a, x) in &self.comps {
            for (b, y) in &o.comps {
                let s = wedge_sign(*a, *b);
                if s == 0 {
                    continue;
                }
                let c = x * y;
                w.insert(a | b, if s < 0 { c.neg() } else { c });
            }
        }
        Ok(w)
    }

    /// The de Rham differential `D`.
    pub fn de_rham(&self) -> Self {
        let mut w = Self::zero(self.dim, self.nvars);
        for (m, c) in &self.comps {
            for k in 0..self.dim {
                if m & (1 << k) != 0 {
                    continue;
                }
                let dc = c.partial(k);
                if dc.is_zero() {
                    continue;
                }
                let s = wedge_sign(1 << k, *m);
                w.insert(m | (1 << k), if s < 0 { dc.neg() } else { dc });
            }
        }
        w
    }

    /// Pullback along `x ↦ x·g`: coefficients `c(x) ↦ c(xg)` and `θ_i ↦ Σ_j g_{ji} θ_j`.
    pub fn pullback(&self, g: &Matrix) -> Result<Self, AlgebraError> {
        if g.n() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: g.n(),
            });
        }
        let theta_images: Vec<Self> = (0..self.dim)
            .map(|i| Self::one_form(self.dim, self.nvars, &g.column(i)))
            .collect();
        let mut basis_cache: BTreeMap<u32, Self> = BTreeMap::new();
        let mut w = Self::zero(self.dim, self.nvars);
        for (m, c) in &self.comps {
            let image = basis_cache
                .entry(*m)
                .or_insert_with(|| {
                    mask_indices(*m)
                        .into_iter()
                        .fold(Self::one(self.dim, self.nvars), |acc, i| {
                            acc.wedge(&theta_images[i])
                        })
                })
                .clone();
            let c = c.pullback(g)?;
            w = w.add(&image.mul_fn(&c));
        }
        Ok(w)
    }

    /// Complex conjugation of coefficients; the `θ_k` are real.
    pub fn conj(&self) -> Self {
        let mut w = Self::zero(self.dim, self.nvars);
        for (m, c) in &self.comps {
            w.insert(*m, c.conj());
        }
        w
    }

    /// Cancels common factors in every coefficient.
    pub fn reduced(&self) -> Self {
        let comps = self.comps.iter().map(|(m, c)| (*m, c.reduced())).collect();
        HorizontalForm {
            dim: self.dim,
            nvars: self.nvars,
            comps,
        }
    }

    /// Component list `(indices, coefficient text)` with one-based indices.
    pub fn render_components(&self) -> Vec<(Vec<usize>, String)> {
        self.comps
            .iter()
            .map(|(m, c)| {
                (
                    mask_indices(*m).into_iter().map(|k| k + 1).collect(),
                    c.render(),
                )
            })
            .collect()
    }
}

impl<P: PolyRing> PartialEq for HorizontalForm<P> {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.sub(o).is_zero()
    }
}

impl<P: PolyRing> fmt::Display for HorizontalForm<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .render_components()
            .into_iter()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    format!("({c})")
                } else {
                    let th: Vec<String> = idx.iter().map(|k| format!("θ{k}")).collect();
                    format!("({c})*{}", th.join("∧"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A form in either coefficient mode, for callers that choose the mode at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyForm {
    Rational(RationalForm),
    Laurent(LaurentForm),
}

impl AnyForm {
    pub fn mode(&self) -> &'static str {
        match self {
            AnyForm::Rational(_) => "rational",
            AnyForm::Laurent(_) => "laurent",
        }
    }

    pub fn wedge(&self, o: &AnyForm) -> Result<AnyForm, AlgebraError> {
        match (self, o) {
            (AnyForm::Rational(a), AnyForm::Rational(b)) => Ok(AnyForm::Rational(a.try_wedge(b)?)),
            (AnyForm::Laurent(a), AnyForm::Laurent(b)) => Ok(AnyForm::Laurent(a.try_wedge(b)?)),
            _ => Err(AlgebraError::ModeMismatch {
                left: self.mode(),
                right: o.mode(),
            }),
        }
    }

    pub fn add(&self, o: &AnyForm) -> Result<AnyForm, AlgebraError> {
        match (self, o) {
            (AnyForm::Rational(a), AnyForm::Rational(b)) => {
                a.check(b)?;
                Ok(AnyForm::Rational(a.add(b)))
            }
            (AnyForm::Laurent(a), AnyForm::Laurent(b)) => {
                a.check(b)?;
                Ok(AnyForm::Laurent(a.add(b)))
            }
            _ => Err(AlgebraError::ModeMismatch {
                left: self.mode(),
                right: o.mode(),
            }),
        }
    }

    pub fn de_rham(&self) -> AnyForm {
        match self {
            AnyForm::Rational(a) => AnyForm::Rational(a.de_rham()),
            AnyForm::Laurent(a) => AnyForm::Laurent(a.de_rham()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    fn th(k: usize) -> RationalForm {
        RationalForm::theta(2, 2, k)
    }

    #[test]
    fn antisymmetry() {
        let a = th(0).wedge(&th(1));
        let b = th(1).wedge(&th(0));
        assert_eq!(a.component(0b11), Frac::one(2));
        assert_eq!(b, a.neg());
        assert!(th(0).wedge(&th(0)).is_zero());
    }

    #[test]
    fn bilinearity_example() {
        let x1 = RationalForm::from_poly(2, Polynomial::var(2, 0));
        let x2 = RationalForm::from_poly(2, Polynomial::var(2, 1));
        let lhs = x1.wedge(&th(0)).wedge(&x2.wedge(&th(1)));
        assert_eq!(
            lhs.component(0b11),
            Frac::from_poly(&Polynomial::var(2, 0) * &Polynomial::var(2, 1))
        );
    }

    #[test]
    fn de_rham_of_product() {
        let f = RationalForm::from_poly(2, &Polynomial::var(2, 0) * &Polynomial::var(2, 1));
        let df = f.de_rham();
        let expected = RationalForm::from_poly(2, Polynomial::var(2, 1))
            .wedge(&th(0))
            .add(&RationalForm::from_poly(2, Polynomial::var(2, 0)).wedge(&th(1)));
        assert_eq!(df, expected);
        assert!(df.de_rham().is_zero());
    }

    #[test]
    fn wedge_sign_counts_inversions() {
        assert_eq!(wedge_sign(0b010, 0b001), -1);
        assert_eq!(wedge_sign(0b001, 0b110), 1);
        assert_eq!(wedge_sign(0b100, 0b011), 1);
        assert_eq!(wedge_sign(0b110, 0b001), 1);
        assert_eq!(wedge_sign(0b010, 0b101), -1);
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let a = AnyForm::Rational(RationalForm::theta(1, 1, 0));
        let b = AnyForm::Laurent(LaurentForm::theta(1, 1, 0));
        assert!(matches!(
            a.wedge(&b),
            Err(AlgebraError::ModeMismatch { .. })
        ));
    }
}

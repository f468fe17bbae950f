//! Seeded generators for random test inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::frac::Frac;
use crate::algebra::{HorizontalForm, Polynomial, RationalForm, Scalar};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A nonzero integer in `[-bound, bound]`.
    pub fn nonzero_int(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.rng.random_range(-bound..=bound);
            if v != 0 {
                return v;
            }
        }
    }

    /// A rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
    pub fn rational(&mut self, bound: i64) -> Scalar {
        let p = self.rng.random_range(-bound..=bound);
        let q = self.rng.random_range(1..=bound);
        Scalar::frac(p, q)
    }

    /// A vector with small distinct-looking rational entries, usable as a generic direction.
    pub fn vector(&mut self, dim: usize) -> Vec<Scalar> {
        (0..dim).map(|_| self.rational(9)).collect()
    }

    /// A polynomial in `vars` of total degree `≤ degree` with at most `terms` terms.
    pub fn polynomial(
        &mut self,
        nvars: usize,
        vars: &[usize],
        degree: u32,
        terms: usize,
    ) -> Polynomial {
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let mut exps = vec![0i32; nvars];
            let d = self.rng.random_range(0..=degree);
            for _ in 0..d {
                let v = vars[self.rng.random_range(0..vars.len())];
                exps[v] += 1;
            }
            out.push((exps, Scalar::int(self.nonzero_int(5))));
        }
        Polynomial::from_terms(nvars, out)
    }

    /// A homogeneous horizontal form of the given degree with polynomial coefficients.
    pub fn form(
        &mut self,
        dim: usize,
        nvars: usize,
        degree: usize,
        poly_degree: u32,
    ) -> RationalForm {
        let vars: Vec<usize> = (0..dim).collect();
        let masks: Vec<u32> = (0u32..1 << dim)
            .filter(|m| m.count_ones() as usize == degree)
            .collect();
        let mut comps: Vec<(u32, Frac<Polynomial>)> = Vec::new();
        for m in masks {
            if self.rng.random_bool(0.7) {
                comps.push((
                    m,
                    Frac::from_poly(self.polynomial(nvars, &vars, poly_degree, 3)),
                ));
            }
        }
        HorizontalForm::from_components(dim, nvars, comps)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_output_is_reproducible() {
        let a = Sampler::new(7).polynomial(3, &[0, 1, 2], 4, 5);
        let b = Sampler::new(7).polynomial(3, &[0, 1, 2], 4, 5);
        assert_eq!(a, b);
    }

    #[test]
    fn forms_have_requested_degree() {
        let f = Sampler::new(3).form(3, 3, 2, 2);
        assert!(f.is_zero() || f.degree() == Some(2));
    }
}

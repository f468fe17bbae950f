//! The function Hopf algebra of a finite group and its bicovariant first-order
//! calculus determined by a conjugation-invariant, inverse-closed set `S`.
//!
//! Functions are expanded in the Kronecker basis `{g}`; tensors are sparse maps
//! on index pairs. The germ `[ε]` is never a basis element: it is expanded as
//! `−Σ_s [s]` wherever it appears.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::Scalar;
use crate::coxeter::CoxeterGroup;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcalcError {
    #[error("set is not invariant under conjugation: {0}")]
    NotAdInvariant(String),
    #[error("set is not closed under inverses: {0}")]
    NotInverseClosed(usize),
    #[error("set contains the identity")]
    ContainsIdentity,
    #[error("element {0} is not in the calculus")]
    NotInCalculus(usize),
}

/// A function on the group, `Σ_g f(g)·g`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction(pub Vec<Scalar>);

/// An element of `A⊗A` in the basis `{g⊗h}`.
pub type FunctionTensor = BTreeMap<(usize, usize), Scalar>;

/// An element of the invariant germs, over the basis `{[s] : s ∈ S}`.
pub type Germ = BTreeMap<usize, Scalar>;

/// An element of `Γ_inv ⊗ Γ_inv` over `{[s]⊗[t]}`.
pub type GermTensor = BTreeMap<(usize, usize), Scalar>;

/// An element of `Γ = A ⊗ Γ_inv` over `{g·[s]}`.
pub type GammaElement = BTreeMap<(usize, usize), Scalar>;

fn add_to<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(k).or_insert_with(Scalar::zero);
    *e = &*e + &c;
}

/// Drops zero coefficients.
pub fn prune<K: Ord + Clone>(m: &BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
    m.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k.clone(), c.clone()))
        .collect()
}

impl GroupFunction {
    pub fn zero(order: usize) -> Self {
        GroupFunction(vec![Scalar::zero(); order])
    }

    /// The constant function `1 = Σ_g g`.
    pub fn one(order: usize) -> Self {
        GroupFunction(vec![Scalar::one(); order])
    }

    /// The Kronecker function of `g`.
    pub fn delta(order: usize, g: usize) -> Self {
        let mut f = Self::zero(order);
        f.0[g] = Scalar::one();
        f
    }

    pub fn mul(&self, o: &Self) -> Self {
        GroupFunction(self.0.iter().zip(&o.0).map(|(a, b)| a * b).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        GroupFunction(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn value(&self, g: usize) -> &Scalar {
        &self.0[g]
    }
}

/// The calculus on a finite group defined by the set `S`.
#[derive(Clone, Debug)]
pub struct Calculus<'a> {
    group: &'a CoxeterGroup,
    s: Vec<usize>,
}

impl<'a> Calculus<'a> {
    /// The distinguished calculus with `S` the set of all reflections.
    pub fn reflections(group: &'a CoxeterGroup) -> Self {
        Calculus {
            group,
            s: group.reflections().to_vec(),
        }
    }

    /// A calculus for any conjugation-invariant, inverse-closed `S ∌ ε`.
    pub fn new(group: &'a CoxeterGroup, mut s: Vec<usize>) -> Result<Self, QcalcError> {
        s.sort_unstable();
        s.dedup();
        if s.contains(&0) {
            return Err(QcalcError::ContainsIdentity);
        }
        for &x in &s {
            if s.binary_search(&group.inv(x)).is_err() {
                return Err(QcalcError::NotInverseClosed(x));
            }
            for h in 0..group.order() {
                let c = group.conjugate(h, x);
                if s.binary_search(&c).is_err() {
                    return Err(QcalcError::NotAdInvariant(format!("{h}·{x}·{h}⁻¹ = {c}")));
                }
            }
        }
        Ok(Calculus { group, s })
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.group
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn in_s(&self, g: usize) -> bool {
        self.s.binary_search(&g).is_ok()
    }

    /// `φ(g) = Σ_h h ⊗ h⁻¹g`
    pub fn coproduct(&self, g: usize) -> FunctionTensor {
        let gr = self.group;
        (0..gr.order())
            .map(|h| ((h, gr.mul(gr.inv(h), g)), Scalar::one()))
            .collect()
    }

    /// `φ` extended linearly to tensors in the first or second slot.
    fn coproduct_left(&self, t: &FunctionTensor) -> BTreeMap<(usize, usize, usize), Scalar> {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in t {
            for ((x, y), d) in self.coproduct(a) {
                add_to(&mut out, (x, y, b), c * &d);
            }
        }
        prune(&out)
    }

    fn coproduct_right(&self, t: &FunctionTensor) -> BTreeMap<(usize, usize, usize), Scalar> {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in t {
            for ((x, y), d) in self.coproduct(b) {
                add_to(&mut out, (a, x, y), c * &d);
            }
        }
        prune(&out)
    }

    /// `ε(f) = f(identity)`, so `ε(g) = δ_{g,ε}`.
    pub fn counit(&self, g: usize) -> Scalar {
        if g == 0 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// The antipode on basis elements: `g ↦ g⁻¹`.
    pub fn antipode(&self, g: usize) -> usize {
        self.group.inv(g)
    }

    /// `ad(g) = Σ_h hgh⁻¹ ⊗ h`
    pub fn adjoint_action(&self, g: usize) -> FunctionTensor {
        let gr = self.group;
        let mut out = FunctionTensor::new();
        for h in 0..gr.order() {
            add_to(&mut out, (gr.conjugate(h, g), h), Scalar::one());
        }
        out
    }

    /// Coassociativity, both counit laws and both antipode laws on the basis element `g`.
    pub fn check_hopf(&self, g: usize) -> Result<(), String> {
        let phi = self.coproduct(g);
        if self.coproduct_left(&phi) != self.coproduct_right(&phi) {
            return Err(format!("coassociativity fails at {g}"));
        }
        let mut left = GroupFunction::zero(self.group.order());
        let mut right = GroupFunction::zero(self.group.order());
        let mut m_left = GroupFunction::zero(self.group.order());
        let mut m_right = GroupFunction::zero(self.group.order());
        for ((a, b), c) in &phi {
            // (ε⊗id)φ and (id⊗ε)φ
            left.0[*b] = &left.0[*b] + &(c * &self.counit(*a));
            right.0[*a] = &right.0[*a] + &(c * &self.counit(*b));
            // m(S⊗id)φ and m(id⊗S)φ: products of Kronecker functions.
            if self.antipode(*a) == *b {
                m_left.0[*b] = &m_left.0[*b] + c;
            }
            if *a == self.antipode(*b) {
                m_right.0[*a] = &m_right.0[*a] + c;
            }
        }
        let delta = GroupFunction::delta(self.group.order(), g);
        if left != delta || right != delta {
            return Err(format!("counit law fails at {g}"));
        }
        let expected = if g == 0 {
            GroupFunction::one(self.group.order())
        } else {
            GroupFunction::zero(self.group.order())
        };
        if m_left != expected || m_right != expected {
            return Err(format!("antipode law fails at {g}"));
        }
        Ok(())
    }

    /// `π(g)`: `[s]` on `S`, `−Σ_s[s]` on `ε`, zero otherwise.
    pub fn germ_of(&self, g: usize) -> Germ {
        if g == 0 {
            self.s.iter().map(|&s| (s, Scalar::int(-1))).collect()
        } else if self.in_s(g) {
            [(g, Scalar::one())].into_iter().collect()
        } else {
            Germ::new()
        }
    }

    /// `π` extended linearly.
    pub fn germ_project(&self, f: &GroupFunction) -> Germ {
        let mut out = Germ::new();
        for (g, c) in f.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (s, d) in self.germ_of(g) {
                add_to(&mut out, s, c * &d);
            }
        }
        prune(&out)
    }

    /// `δ(g) = (π⊗π)φ(g)`, computed from the definition.
    pub fn delta_map(&self, g: usize) -> GermTensor {
        let mut out = GermTensor::new();
        for ((a, b), c) in self.coproduct(g) {
            let pa = self.germ_of(a);
            if pa.is_empty() {
                continue;
            }
            let pb = self.germ_of(b);
            for (s, x) in &pa {
                for (t, y) in &pb {
                    add_to(&mut out, (*s, *t), &(&c * x) * y);
                }
            }
        }
        prune(&out)
    }

    /// `δ(g)` from the case analysis: identity, elements of `S`, products of two
    /// elements of `S`, and zero otherwise.
    pub fn delta_closed_form(&self, g: usize) -> GermTensor {
        let eps = self.germ_of(0);
        let mut out = GermTensor::new();
        let add_product = |out: &mut GermTensor, a: &Germ, b: &Germ| {
            for (s, x) in a {
                for (t, y) in b {
                    add_to(out, (*s, *t), x * y);
                }
            }
        };
        if g == 0 {
            add_product(&mut out, &eps, &eps);
            for &s in &self.s {
                add_to(&mut out, (s, s), Scalar::one());
            }
        } else if self.in_s(g) {
            add_product(&mut out, &eps, &self.germ_of(g));
            add_product(&mut out, &self.germ_of(g), &eps);
        }
        if g != 0 {
            for &s in &self.s {
                let t = self.group.mul(self.group.inv(s), g);
                if self.in_s(t) {
                    add_to(&mut out, (s, t), Scalar::one());
                }
            }
        }
        prune(&out)
    }

    /// `[s]∘f = f(s)[s]`, extended linearly in the germ.
    pub fn module_circ(&self, germ: &Germ, f: &GroupFunction) -> Germ {
        prune(&germ.iter().map(|(&s, c)| (s, c * f.value(s))).collect())
    }

    /// `π(a)∘b = π(ab) − ε(a)π(b)` on basis functions, an independent route to [`Calculus::module_circ`].
    pub fn module_circ_via_product(&self, a: usize, f: &GroupFunction) -> Germ {
        let ab = GroupFunction::delta(self.group.order(), a).mul(f);
        let mut out = self.germ_project(&ab);
        if a == 0 {
            for (s, c) in self.germ_project(f) {
                add_to(&mut out, s, -c);
            }
        }
        prune(&out)
    }

    /// `[s]·f` in `Γ`, from the rule `[g]h = (hg⁻¹)[g]`.
    pub fn right_module(&self, germ: &Germ, f: &GroupFunction) -> GammaElement {
        let gr = self.group;
        let mut out = GammaElement::new();
        for (&s, c) in germ {
            for (h, v) in f.0.iter().enumerate() {
                if !v.is_zero() {
                    add_to(&mut out, (gr.mul(h, gr.inv(s)), s), c * v);
                }
            }
        }
        prune(&out)
    }

    /// `ϑ·a = a⁽¹⁾(ϑ∘a⁽²⁾)`, the bicovariant module rule, for comparison with [`Calculus::right_module`].
    pub fn right_module_via_coproduct(&self, germ: &Germ, f: &GroupFunction) -> GammaElement {
        let mut out = GammaElement::new();
        for (h, v) in f.0.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for ((a1, a2), c) in self.coproduct(h) {
                let circ = self.module_circ(germ, &GroupFunction::delta(self.group.order(), a2));
                for (s, d) in circ {
                    add_to(&mut out, (a1, s), &(v * &c) * &d);
                }
            }
        }
        prune(&out)
    }

    /// `σ([h]⊗[g]) = [hgh⁻¹]⊗[h]`
    pub fn braid(&self, h: usize, g: usize) -> Result<(usize, usize), QcalcError> {
        if !self.in_s(h) {
            return Err(QcalcError::NotInCalculus(h));
        }
        if !self.in_s(g) {
            return Err(QcalcError::NotInCalculus(g));
        }
        Ok((self.group.conjugate(h, g), h))
    }

    /// Orbits of the braid operator on `S×S`.
    pub fn braid_orbits(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut orbits = Vec::new();
        for &h in &self.s {
            for &g in &self.s {
                if seen.contains(&(h, g)) {
                    continue;
                }
                let mut orbit = vec![(h, g)];
                seen.insert((h, g));
                let mut cur = self.braid(h, g).expect("in S");
                while cur != (h, g) {
                    seen.insert(cur);
                    orbit.push(cur);
                    cur = self.braid(cur.0, cur.1).expect("in S");
                }
                orbits.push(orbit);
            }
        }
        orbits
    }

    /// Whether the braid operator permutes `S×S` and flips commuting pairs.
    pub fn braid_is_bijective(&self) -> bool {
        let mut images = std::collections::BTreeSet::new();
        for &h in &self.s {
            for &g in &self.s {
                let (a, b) = self.braid(h, g).expect("in S");
                if self.group.mul(h, g) == self.group.mul(g, h) && (a, b) != (g, h) {
                    return false;
                }
                images.insert((a, b));
            }
        }
        images.len() == self.s.len() * self.s.len()
    }

    /// For each `h ∉ S ∪ {ε}` that is a product of two elements of `S`, the tensor
    /// `Σ_{gq=h} [g]⊗[q]`. Keys are the elements `h`.
    pub fn quadratic_relations(&self) -> BTreeMap<usize, GermTensor> {
        let mut out: BTreeMap<usize, GermTensor> = BTreeMap::new();
        for &g in &self.s {
            for &q in &self.s {
                let h = self.group.mul(g, q);
                if h != 0 && !self.in_s(h) {
                    add_to(out.entry(h).or_default(), (g, q), Scalar::one());
                }
            }
        }
        out
    }

    /// Every group element's `δ` computed both ways, in parallel.
    pub fn delta_sweep(&self) -> Vec<(usize, GermTensor, GermTensor)> {
        par::map_range(self.group.order(), |g| {
            (g, self.delta_map(g), self.delta_closed_form(g))
        })
    }
}

/// Whether `t` is invariant under the flip `[s]⊗[t] ↦ [t]⊗[s]`.
pub fn is_symmetric(t: &GermTensor) -> bool {
    t.iter()
        .all(|(&(a, b), c)| t.get(&(b, a)).map(|d| d == c).unwrap_or(false))
}

/// `Σ t1_{ab}·t2_{ab}`
pub fn pair(t1: &GermTensor, t2: &GermTensor) -> Scalar {
    t1.iter()
        .fold(Scalar::zero(), |acc, (k, c)| match t2.get(k) {
            Some(d) => acc + c * d,
            None => acc,
        })
}

/// `[a]⊗[b] − [b]⊗[a]`
pub fn antisymmetric_product(a: usize, b: usize) -> GermTensor {
    let mut t = GermTensor::new();
    add_to(&mut t, (a, b), Scalar::one());
    add_to(&mut t, (b, a), Scalar::int(-1));
    prune(&t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::RootSystem;

    fn group(name: &str) -> CoxeterGroup {
        CoxeterGroup::generate(&RootSystem::standard(name).unwrap()).unwrap()
    }

    #[test]
    fn rank_one_coproduct() {
        let g = group("A1");
        let c = Calculus::reflections(&g);
        let phi = c.coproduct(0);
        let expected: FunctionTensor = [((0, 0), Scalar::one()), ((1, 1), Scalar::one())]
            .into_iter()
            .collect();
        assert_eq!(phi, expected);
        assert!(c.quadratic_relations().is_empty());
    }

    #[test]
    fn hopf_axioms_on_a2() {
        let g = group("A2");
        let c = Calculus::reflections(&g);
        for x in 0..g.order() {
            c.check_hopf(x).unwrap();
        }
    }

    #[test]
    fn germs_of_one_and_rotations() {
        let g = group("A2");
        let c = Calculus::reflections(&g);
        assert!(c.germ_project(&GroupFunction::one(g.order())).is_empty());
        let rot = (0..g.order())
            .find(|&x| x != 0 && !g.is_reflection(x))
            .unwrap();
        assert!(c.germ_of(rot).is_empty());
    }

    #[test]
    fn delta_shapes() {
        let g = group("A2");
        let c = Calculus::reflections(&g);
        assert!(is_symmetric(&c.delta_map(0)));
        for &s in g.reflections() {
            assert!(is_symmetric(&c.delta_map(s)));
        }
        let rot = (0..g.order())
            .find(|&x| x != 0 && !g.is_reflection(x))
            .unwrap();
        let d = c.delta_map(rot);
        assert_eq!(d.len(), 3);
        assert!(!is_symmetric(&d));
        let quad = c.quadratic_relations();
        assert_eq!(quad.len(), 2);
        assert!(quad.values().all(|t| t.len() == 3));
        assert_eq!(group("B2").reflections().len(), 4);
        let b2 = group("B2");
        assert_eq!(Calculus::reflections(&b2).quadratic_relations().len(), 3);
    }

    #[test]
    fn non_invariant_set_rejected() {
        let g = group("A2");
        let s = vec![g.reflections()[0]];
        assert!(matches!(
            Calculus::new(&g, s),
            Err(QcalcError::NotAdInvariant(_))
        ));
    }
}

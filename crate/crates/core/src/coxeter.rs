//! Finite reflection groups: closure, multiplication table, conjugacy classes,
//! 2-rotations and rank-2 classification.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::matrix::{self, fmt_vec, lex_cmp, vec_add, Vector};
use crate::algebra::{Matrix, Scalar};
use crate::par;
use crate::rootsystem::RootSystem;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("group order exceeds the cap of {0}")]
    OrderCapExceeded(usize),
    #[error("sequence needs at least 3 vectors, got {0}")]
    SequenceTooShort(usize),
    #[error("element {0} is not a 2-rotation")]
    NotARotation(usize),
}

/// A finite group of orthogonal matrices generated by the reflections of a root system.
///
/// Elements act on row vectors from the right, so `elements[table[a][b]] = M_a·M_b`
/// and `x(ab) = (xa)b`. Index 0 is the identity.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    dim: usize,
    elements: Vec<Matrix>,
    perms: Vec<Vec<u32>>,
    table: Vec<u32>,
    inverse: Vec<usize>,
    reflections: Vec<usize>,
    root_reflection: Vec<usize>,
    reflection_root: BTreeMap<usize, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// Bivector coordinates `(a∧b)_{kl}` for `k < l`, in lexicographic pair order.
pub fn bivector(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len();
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for k in 0..n {
        for l in k + 1..n {
            out.push(&a[k] * &b[l] - &a[l] * &b[k]);
        }
    }
    out
}

/// The pairs `(k, l)`, `k < l`, matching [`bivector`] coordinates.
pub fn bivector_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
        .collect()
}

/// `c` with `a = c·b` for proportional bivectors; `None` if not proportional or `b = 0`.
pub fn bivector_ratio(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let c = &a[k] / &b[k];
    a.iter().zip(b).all(|(x, y)| &(&c * y) == x).then_some(c)
}

fn positive_rep(rs: &RootSystem, i: usize) -> usize {
    let j = rs.negative_of(i);
    if lex_cmp(rs.root(i), rs.root(j)) == std::cmp::Ordering::Greater {
        i
    } else {
        j
    }
}

impl CoxeterGroup {
    pub fn generate(rs: &RootSystem) -> Result<Self, CoxeterError> {
        Self::generate_with_cap(rs, DEFAULT_ORDER_CAP)
    }

    /// Breadth-first closure under right multiplication by reflections. Elements are
    /// deduplicated by their permutation of the roots, which determines the matrix
    /// because reflections fix the orthogonal complement of the roots.
    pub fn generate_with_cap(rs: &RootSystem, cap: usize) -> Result<Self, CoxeterError> {
        let n = rs.dim();
        let nroots = rs.len();
        let perm_of = |m: &Matrix| -> Vec<u32> {
            rs.roots()
                .iter()
                .map(|r| {
                    rs.index_of(&m.apply(r))
                        .expect("root system closed under its group") as u32
                })
                .collect()
        };
        let mut gens: Vec<(Matrix, Vec<u32>)> = Vec::new();
        for i in 0..nroots {
            let m = rs.reflection(i);
            let p = perm_of(&m);
            if !gens.iter().any(|(_, q)| *q == p) {
                gens.push((m, p));
            }
        }
        let mut elements = vec![Matrix::identity(n)];
        let mut perms: Vec<Vec<u32>> = vec![(0..nroots as u32).collect()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(perms[0].clone(), 0);
        let mut k = 0;
        while k < elements.len() {
            for (gm, gp) in &gens {
                let p: Vec<u32> = perms[k].iter().map(|&i| gp[i as usize]).collect();
                if index.contains_key(&p) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(CoxeterError::OrderCapExceeded(cap));
                }
                index.insert(p.clone(), elements.len());
                elements.push(elements[k].mul(gm));
                perms.push(p);
            }
            k += 1;
        }
        let order = elements.len();
        let rows: Vec<Vec<u32>> = par::map_range(order, |a| {
            (0..order)
                .map(|b| {
                    let p: Vec<u32> = perms[a].iter().map(|&i| perms[b][i as usize]).collect();
                    index[&p] as u32
                })
                .collect()
        });
        let table: Vec<u32> = rows.into_iter().flatten().collect();
        let inverse: Vec<usize> = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == 0)
                    .expect("group")
            })
            .collect();
        let root_reflection: Vec<usize> = (0..nroots)
            .map(|i| index[&perm_of(&rs.reflection(i))])
            .collect();
        let mut reflections: Vec<usize> = root_reflection.clone();
        reflections.sort_unstable();
        reflections.dedup();
        let reflection_root = reflections
            .iter()
            .map(|&s| {
                let i = (0..nroots).find(|&i| root_reflection[i] == s).unwrap();
                (s, positive_rep(rs, i))
            })
            .collect();
        let mut class_of = vec![usize::MAX; order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in 0..order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..order)
                .map(|h| table[table[h * order + g] as usize * order + inverse[h]] as usize)
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = classes.len();
            }
            classes.push(class);
        }
        Ok(CoxeterGroup {
            dim: n,
            elements,
            perms,
            table,
            inverse,
            reflections,
            root_reflection,
            reflection_root,
            classes,
            class_of,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, g: usize) -> &Matrix {
        &self.elements[g]
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    /// Root index permutation: `α_i·g = α_{perm[i]}`.
    pub fn root_permutation(&self, g: usize) -> &[u32] {
        &self.perms[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g h g⁻¹`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// Element indices of the distinct reflections, ascending.
    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn is_reflection(&self, g: usize) -> bool {
        self.reflections.binary_search(&g).is_ok()
    }

    /// Element index of `σ_{α_i}`.
    pub fn reflection_of_root(&self, i: usize) -> usize {
        self.root_reflection[i]
    }

    /// The lexicographically positive root `α` with `σ_α = s`.
    pub fn root_of_reflection(&self, s: usize) -> usize {
        self.reflection_root[&s]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Index of the element with matrix `m`, if present.
    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// Exhaustive group-axiom check on the table: identity, inverses, Latin rows
    /// and columns, and associativity on all triples when `|G| ≤ assoc_limit`.
    pub fn check_table(&self, assoc_limit: usize) -> Result<(), String> {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(format!("inverse fails at {a}"));
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
                col[self.mul(b, a)] = true;
            }
            if row.iter().chain(&col).any(|x| !x) {
                return Err(format!("not a Latin square at {a}"));
            }
        }
        if n <= assoc_limit {
            let bad = par::map_range(n, |a| {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Some((a, b, c));
                        }
                    }
                }
                None
            });
            if let Some((a, b, c)) = bad.into_iter().flatten().next() {
                return Err(format!("associativity fails at ({a}, {b}, {c})"));
            }
        }
        Ok(())
    }

    /// Every product `st ≠ ε` of reflections, with its exhaustive ordered decomposition list.
    pub fn two_rotations(&self, rs: &RootSystem) -> Vec<TwoRotation> {
        let mut decomps: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for &s in &self.reflections {
            for &t in &self.reflections {
                let p = self.mul(s, t);
                if p != 0 {
                    decomps.entry(p).or_default().push((s, t));
                }
            }
        }
        let items: Vec<(usize, Vec<(usize, usize)>)> = decomps.into_iter().collect();
        let mut rots: Vec<TwoRotation> = par::map(&items, |(rho, d)| {
            let order = self.element_order(*rho);
            TwoRotation {
                element: *rho,
                order,
                proper: order > 2,
                decompositions: d.clone(),
                oriented: Vec::new(),
                volume: Vec::new(),
            }
        });
        let index: BTreeMap<usize, usize> = rots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.element, i))
            .collect();
        for i in 0..rots.len() {
            if !rots[i].proper {
                continue;
            }
            let inv = self.inv(rots[i].element);
            let j = index[&inv];
            if !rots[i].volume.is_empty() {
                continue;
            }
            // Orient the pair from whichever of ρ, ρ⁻¹ has the smaller index; the other gets −w.
            let (lead, other) = if rots[i].element < inv {
                (i, j)
            } else {
                (j, i)
            };
            let w = self.canonical_volume(rs, &rots[lead]);
            rots[other].volume = w.iter().map(|x| -x).collect();
            rots[lead].volume = w;
            for k in [lead, other] {
                rots[k].oriented = self.orient_pairs(rs, &rots[k]);
            }
        }
        rots
    }

    /// `w_ρ = α∧β` for the decomposition with the lexicographically least first root,
    /// with `β`'s sign chosen so `α∧β` is a positive multiple of `α∧(αρ)`.
    fn canonical_volume(&self, rs: &RootSystem, rot: &TwoRotation) -> Vec<Scalar> {
        let (s, t) = rot
            .decompositions
            .iter()
            .min_by(|a, b| {
                lex_cmp(
                    rs.root(self.root_of_reflection(a.0)),
                    rs.root(self.root_of_reflection(b.0)),
                )
            })
            .copied()
            .expect("nonempty");
        let alpha = rs.root(self.root_of_reflection(s));
        let beta = rs.root(self.root_of_reflection(t));
        let reference = bivector(alpha, &self.elements[rot.element].apply(alpha));
        let w = bivector(alpha, beta);
        let c = bivector_ratio(&w, &reference).expect("coplanar");
        if c.signum().expect("real") > 0 {
            w
        } else {
            w.iter().map(|x| -x).collect()
        }
    }

    /// For each decomposition `(σ_α, σ_β)`, roots with `α∧β` a positive multiple of `w_ρ`.
    fn orient_pairs(&self, rs: &RootSystem, rot: &TwoRotation) -> Vec<(usize, usize)> {
        rot.decompositions
            .iter()
            .map(|&(s, t)| {
                let a = self.root_of_reflection(s);
                let b = self.root_of_reflection(t);
                let c = bivector_ratio(&bivector(rs.root(a), rs.root(b)), &rot.volume)
                    .expect("coplanar");
                if c.signum().expect("real") > 0 {
                    (a, b)
                } else {
                    (a, rs.negative_of(b))
                }
            })
            .collect()
    }

    /// The roots lying in the plane of a 2-rotation.
    pub fn plane_roots(&self, rs: &RootSystem, rot: &TwoRotation) -> Vec<usize> {
        let (s, t) = rot.decompositions[0];
        let a = rs.root(self.root_of_reflection(s)).clone();
        let b = rs.root(self.root_of_reflection(t)).clone();
        (0..rs.len())
            .filter(|&i| matrix::rank(&[a.clone(), b.clone(), rs.root(i).clone()]) == 2)
            .collect()
    }

    /// Classifies the rank-2 subsystem in the plane of `rot`.
    pub fn classify_rank2(&self, rs: &RootSystem, rot: &TwoRotation) -> Rank2Class {
        if !rot.proper {
            return Rank2Class {
                kind: Rank2Kind::Orthogonal,
                roots_in_plane: 2,
                arithmetic_half: None,
            };
        }
        let plane = self.plane_roots(rs, rot);
        let kind = match plane.len() {
            6 => Rank2Kind::Hexagonal,
            8 => Rank2Kind::Octagonal,
            12 => Rank2Kind::Dodecagonal,
            n => Rank2Kind::Other(n / 2),
        };
        let arithmetic_half = arithmetic_half(rs, &plane, &rot.volume);
        Rank2Class {
            kind,
            roots_in_plane: plane.len(),
            arithmetic_half,
        }
    }
}

/// A product of two distinct reflections.
#[derive(Clone, Debug)]
pub struct TwoRotation {
    pub element: usize,
    pub order: usize,
    /// Whether the order exceeds two.
    pub proper: bool,
    /// Ordered reflection pairs `(s, t)` with `st = ρ`.
    pub decompositions: Vec<(usize, usize)>,
    /// Root pairs `(α, β)` per decomposition with `α∧β` a positive multiple of `w_ρ`; empty unless proper.
    pub oriented: Vec<(usize, usize)>,
    /// Bivector coordinates of `w_ρ`; empty unless proper. `w_{ρ⁻¹} = −w_ρ`.
    pub volume: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank2Kind {
    Hexagonal,
    Octagonal,
    Dodecagonal,
    Orthogonal,
    /// A dihedral plane with `2m` roots outside the three classical cases.
    Other(usize),
}

impl std::fmt::Display for Rank2Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rank2Kind::Hexagonal => f.write_str("hexagonal"),
            Rank2Kind::Octagonal => f.write_str("octagonal"),
            Rank2Kind::Dodecagonal => f.write_str("dodecagonal"),
            Rank2Kind::Orthogonal => f.write_str("orthogonal"),
            Rank2Kind::Other(m) => write!(f, "other({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rank2Class {
    pub kind: Rank2Kind,
    pub roots_in_plane: usize,
    /// A positive half in angular order that is of arithmetic type, if one exists.
    pub arithmetic_half: Option<Vec<Vector>>,
}

/// Sign of `a∧b` relative to the plane orientation `w`.
fn orientation(a: &[Scalar], b: &[Scalar], w: &[Scalar]) -> i8 {
    match bivector_ratio(&bivector(a, b), w) {
        Some(c) => c.signum().expect("real"),
        None => 0,
    }
}

fn arithmetic_half(rs: &RootSystem, plane: &[usize], w: &[Scalar]) -> Option<Vec<Vector>> {
    for &start in plane {
        let g = rs.root(start);
        let mut half: Vec<Vector> = plane
            .iter()
            .map(|&i| rs.root(i).clone())
            .filter(|d| orientation(g, d, w) > 0)
            .collect();
        half.push(g.clone());
        // Within an open half-plane the orientation sign is a strict angular order.
        half.sort_by(|a, b| match orientation(a, b, w) {
            1 => std::cmp::Ordering::Less,
            -1 => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        });
        if arithmetic_type_check(&half).unwrap_or(false) {
            return Some(half);
        }
    }
    None
}

/// Whether `v` is of arithmetic type: repeatedly deleting an interior vector equal to
/// the sum of its current neighbours can reduce the sequence to its two endpoints.
/// This is exactly the situation in which consecutive coth-products telescope.
pub fn arithmetic_type_check(v: &[Vector]) -> Result<bool, CoxeterError> {
    if v.len() < 3 {
        return Err(CoxeterError::SequenceTooShort(v.len()));
    }
    fn reduce(v: &[Vector]) -> bool {
        if v.len() == 2 {
            return true;
        }
        (1..v.len() - 1).any(|i| {
            vec_add(&v[i - 1], &v[i + 1]) == v[i] && {
                let mut w = v.to_vec();
                w.remove(i);
                reduce(&w)
            }
        })
    }
    Ok(reduce(v))
}

/// Human-readable form of a vector list.
pub fn fmt_vectors(v: &[Vector]) -> String {
    v.iter().map(|x| fmt_vec(x)).collect::<Vec<_>>().join(", ")
}

//! Finite diagonal symmetry groups as rational phase vectors mod 1.
//!
//! A diagonal symmetry `(e^{2πiΘ_1}, ..., e^{2πiΘ_N})` is stored as its
//! phase vector `(Θ_1, ..., Θ_N)` with every phase reduced into `[0,1)`,
//! which realizes the unique canonical form of a group element.

use crate::error::{Error, Result};
use crate::linalg;
use crate::qpoly::{exponent_matrix, Polynomial, WeightSystem};
use crate::rational::{is_integer, mod1, qi, qr, Q};
use num::{Signed, Zero};
use std::collections::BTreeSet;

/// Canonical phase vector: each entry in `[0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseVector {
    phases: Vec<Q>,
}

impl PhaseVector {
    /// Reduces every phase mod 1 into `[0,1)`.
    pub fn new(phases: Vec<Q>) -> Self {
        PhaseVector {
            phases: phases.iter().map(mod1).collect(),
        }
    }

    pub fn identity(num_vars: usize) -> Self {
        PhaseVector {
            phases: vec![Q::zero(); num_vars],
        }
    }

    pub fn phases(&self) -> &[Q] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.phases.iter().all(|p| p.is_zero())
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.phases.iter().map(|p| p.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Componentwise addition mod 1.
pub fn group_op(a: &PhaseVector, b: &PhaseVector) -> Result<PhaseVector> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(PhaseVector::new(
        a.phases.iter().zip(&b.phases).map(|(x, y)| x + y).collect(),
    ))
}

/// Componentwise negation mod 1.
pub fn inverse(a: &PhaseVector) -> PhaseVector {
    PhaseVector::new(a.phases.iter().map(|x| -x).collect())
}

/// Indices of the variables fixed by `g` (phase zero).
pub fn fixed_locus(g: &PhaseVector) -> Vec<usize> {
    (0..g.len()).filter(|&i| g.phases[i].is_zero()).collect()
}

/// The exponential grading element `J`: phases equal to the weights.
pub fn grading_element_j(q: &WeightSystem) -> PhaseVector {
    PhaseVector::new(q.weights.clone())
}

/// The maximal group of diagonal symmetries of an invertible potential,
/// enumerated explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalGroup {
    /// All elements in canonical sorted order; index 0 is not necessarily
    /// the identity.
    pub elements: Vec<PhaseVector>,
    pub generators: Vec<PhaseVector>,
    pub num_vars: usize,
}

impl DiagonalGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &PhaseVector) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &PhaseVector) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    /// Exhibits a single element whose iterates enumerate the whole group,
    /// if one exists.
    pub fn cyclic_generator(&self) -> Option<&PhaseVector> {
        self.elements.iter().find(|g| {
            let mut seen = BTreeSet::new();
            let mut cur = PhaseVector::identity(self.num_vars);
            for _ in 0..self.order() {
                seen.insert(cur.clone());
                cur = group_op(&cur, g).unwrap();
            }
            seen.len() == self.order()
        })
    }
}

/// The group of all phase vectors `θ` with `E·θ ∈ Z^M`, generated by the
/// columns of `E^{-1}` reduced mod 1 and enumerated by closure.
pub fn symmetry_group(w: &Polynomial) -> Result<DiagonalGroup> {
    let e = exponent_matrix(w);
    if !e.is_square() {
        return Err(Error::NotInvertible(format!(
            "{} monomials in {} variables",
            e.num_monomials(),
            w.num_vars()
        )));
    }
    let mat = e.as_rational();
    let inv = linalg::invert(&mat)
        .ok_or_else(|| Error::DegenerateWeights("det E = 0".into()))?;
    let n = w.num_vars();
    let generators: Vec<PhaseVector> = (0..n)
        .map(|j| PhaseVector::new((0..n).map(|i| inv[i][j].clone()).collect()))
        .collect();

    // Breadth-first closure under addition.
    let mut elements: BTreeSet<PhaseVector> = BTreeSet::new();
    let mut frontier = vec![PhaseVector::identity(n)];
    elements.insert(frontier[0].clone());
    while let Some(g) = frontier.pop() {
        for gen in &generators {
            let h = group_op(&g, gen)?;
            if elements.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }

    let order = e.det().abs();
    if qi(elements.len() as i64) != order {
        return Err(Error::DegenerateWeights(format!(
            "group closure produced {} elements, |det E| = {}",
            elements.len(),
            order
        )));
    }
    Ok(DiagonalGroup {
        elements: elements.into_iter().collect(),
        generators,
        num_vars: n,
    })
}

/// Membership certificate: `E·θ ∈ Z^M`.
pub fn is_symmetry_of(w: &Polynomial, g: &PhaseVector) -> bool {
    w.terms().all(|(m, _)| {
        let s = m
            .0
            .iter()
            .zip(g.phases())
            .fold(Q::zero(), |acc, (&e, p)| acc + qi(e as i64) * p);
        is_integer(&s)
    })
}

/// The two distinguished generators of the loop symmetry group:
/// `g1 = (-1/|G|, a1/|G|)` and `g2 = (a2/|G|, -1/|G|)` reduced mod 1.
pub fn loop_generators(a1: u32, a2: u32) -> (PhaseVector, PhaseVector) {
    assert!(a1 >= 2 && a2 >= 2);
    let g = (a1 as i64) * (a2 as i64) - 1;
    (
        PhaseVector::new(vec![qr(-1, g), qr(a1 as i64, g)]),
        PhaseVector::new(vec![qr(a2 as i64, g), qr(-1, g)]),
    )
}

/// Raw (unreduced) phase representatives of the loop generators, used in
/// the form-based line-bundle computations: `θ^(1) = (-1/|G|, a1/|G|)`,
/// `θ^(2) = (a2/|G|, -1/|G|)`.
pub fn loop_generator_representatives(a1: u32, a2: u32) -> (Vec<Q>, Vec<Q>) {
    let g = (a1 as i64) * (a2 as i64) - 1;
    (
        vec![qr(-1, g), qr(a1 as i64, g)],
        vec![qr(a2 as i64, g), qr(-1, g)],
    )
}

/// Addresses the element `J·g1^α·g2^β` of a loop group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopForm {
    /// in `[0, a2-1]`
    pub alpha: u32,
    /// in `[0, a1-1]`
    pub beta: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopFormResult {
    Unique(LoopForm),
    /// The identity `i_W`, which has exactly the two representations
    /// `(a2-1, 0)` and `(0, a1-1)`.
    Identity,
}

/// The group element addressed by the form `J·g1^α·g2^β`.
pub fn form_element(a1: u32, a2: u32, q: &WeightSystem, alpha: u32, beta: u32) -> PhaseVector {
    let (g1, g2) = loop_generators(a1, a2);
    let mut cur = grading_element_j(q);
    for _ in 0..alpha {
        cur = group_op(&cur, &g1).unwrap();
    }
    for _ in 0..beta {
        cur = group_op(&cur, &g2).unwrap();
    }
    cur
}

/// The unique `(α, β)` with `g = J·g1^α·g2^β`, or the identity marker.
pub fn unique_loop_form(
    g: &PhaseVector,
    a1: u32,
    a2: u32,
    q: &WeightSystem,
) -> Result<LoopFormResult> {
    if g.is_identity() {
        return Ok(LoopFormResult::Identity);
    }
    let mut hit = None;
    for alpha in 0..a2 {
        for beta in 0..a1 {
            if &form_element(a1, a2, q, alpha, beta) == g {
                // uniqueness for non-identity elements is a theorem; assert it
                assert!(
                    hit.is_none(),
                    "non-identity element has two loop forms"
                );
                hit = Some(LoopForm { alpha, beta });
            }
        }
    }
    hit.map(LoopFormResult::Unique).ok_or(Error::NotInGroup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{
        direct_sum, fermat_potential, loop_potential, weights_of,
    };

    #[test]
    fn loop_group_orders_and_cyclicity() {
        for (a1, a2) in [(2u32, 3u32), (2, 2), (3, 4)] {
            let w = loop_potential(a1, a2);
            let g = symmetry_group(&w).unwrap();
            assert_eq!(g.order(), (a1 * a2 - 1) as usize);
            assert!(g.cyclic_generator().is_some());
        }
    }

    #[test]
    fn fermat_group() {
        let g = symmetry_group(&fermat_potential(3)).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.contains(&PhaseVector::new(vec![qr(1, 3)])));
    }

    #[test]
    fn sum_group_is_product() {
        let w = direct_sum(&[loop_potential(2, 2), fermat_potential(3)]);
        let g = symmetry_group(&w).unwrap();
        assert_eq!(g.order(), 9);
    }

    #[test]
    fn loop_generator_phases() {
        let (g1, g2) = loop_generators(2, 3);
        assert_eq!(g1.phases(), &[qr(4, 5), qr(2, 5)]);
        assert_eq!(g2.phases(), &[qr(3, 5), qr(4, 5)]);
        let (g1, g2) = loop_generators(2, 2);
        assert_eq!(g1, g2);
        assert_eq!(g1.phases(), &[qr(2, 3), qr(2, 3)]);
    }

    #[test]
    fn each_loop_generator_generates() {
        for (a1, a2) in [(2u32, 3u32), (4, 3), (2, 2)] {
            let w = loop_potential(a1, a2);
            let grp = symmetry_group(&w).unwrap();
            for g in [loop_generators(a1, a2).0, loop_generators(a1, a2).1] {
                let mut seen = BTreeSet::new();
                let mut cur = PhaseVector::identity(2);
                for _ in 0..grp.order() {
                    seen.insert(cur.clone());
                    cur = group_op(&cur, &g).unwrap();
                }
                assert_eq!(seen.len(), grp.order());
            }
        }
    }

    #[test]
    fn j_belongs_to_group() {
        for w in [loop_potential(2, 3), fermat_potential(3)] {
            let q = weights_of(&w).unwrap();
            let j = grading_element_j(&q);
            assert!(symmetry_group(&w).unwrap().contains(&j));
        }
        let q = weights_of(&loop_potential(2, 3)).unwrap();
        assert_eq!(grading_element_j(&q).phases(), &[qr(2, 5), qr(1, 5)]);
    }

    #[test]
    fn fixed_loci() {
        let id = PhaseVector::identity(3);
        assert_eq!(fixed_locus(&id), vec![0, 1, 2]);
        let q = weights_of(&loop_potential(2, 3)).unwrap();
        let j = grading_element_j(&q);
        assert!(fixed_locus(&j).is_empty());
        // nonzero powers of loop generators fix nothing
        let (g1, _) = loop_generators(2, 3);
        let mut cur = g1.clone();
        for _ in 0..4 {
            assert!(fixed_locus(&cur).is_empty());
            cur = group_op(&cur, &g1).unwrap();
        }
    }

    #[test]
    fn group_law() {
        let q = weights_of(&loop_potential(2, 2)).unwrap();
        let j = grading_element_j(&q);
        let jj = group_op(&j, &j).unwrap();
        let (g1, _) = loop_generators(2, 2);
        assert_eq!(jj, g1);
        let id = PhaseVector::identity(2);
        assert_eq!(group_op(&g1, &id).unwrap(), g1);
        assert!(group_op(&g1, &inverse(&g1)).unwrap().is_identity());
    }

    #[test]
    fn remark_generator_relation() {
        // g1^{-a2} = g2
        let (g1, g2) = loop_generators(2, 3);
        let mut acc = PhaseVector::identity(2);
        for _ in 0..3 {
            acc = group_op(&acc, &inverse(&g1)).unwrap();
        }
        assert_eq!(acc, g2);
    }

    #[test]
    fn unique_forms_cover_group() {
        let (a1, a2) = (2u32, 3u32);
        let q = weights_of(&loop_potential(a1, a2)).unwrap();
        let grp = symmetry_group(&loop_potential(a1, a2)).unwrap();
        let j = grading_element_j(&q);
        assert_eq!(
            unique_loop_form(&j, a1, a2, &q).unwrap(),
            LoopFormResult::Unique(LoopForm { alpha: 0, beta: 0 })
        );
        // identity is hit by exactly the two expected forms
        let id_forms: Vec<(u32, u32)> = (0..a2)
            .flat_map(|al| (0..a1).map(move |be| (al, be)))
            .filter(|&(al, be)| form_element(a1, a2, &q, al, be).is_identity())
            .collect();
        assert_eq!(id_forms, vec![(0, a1 - 1), (a2 - 1, 0)]);
        // 3x2 forms cover all 5 elements with i_W doubly covered
        let mut hit: BTreeSet<PhaseVector> = BTreeSet::new();
        for al in 0..a2 {
            for be in 0..a1 {
                hit.insert(form_element(a1, a2, &q, al, be));
            }
        }
        assert_eq!(hit.len(), grp.order());
    }

    #[test]
    fn membership_certificates() {
        let w = loop_potential(3, 4);
        let grp = symmetry_group(&w).unwrap();
        for g in &grp.elements {
            assert!(is_symmetry_of(&w, g));
        }
        assert!(!is_symmetry_of(&w, &PhaseVector::new(vec![qr(1, 2), Q::zero()])));
    }
}

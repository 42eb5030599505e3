//! Language-neutral container for graded Frobenius algebras: structural
//! validation, tensor products, Poincare polynomials, and isomorphism
//! verification.

use crate::linalg::{self, Matrix};
use crate::rational::Q;
use num::Zero;
use std::collections::BTreeMap;

/// A finite-dimensional graded Frobenius algebra presented by a basis,
/// rational degrees, a pairing matrix, and sparse structure constants.
/// Missing `(i, j)` keys denote a zero product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFrobeniusAlgebra {
    pub basis_labels: Vec<String>,
    pub degrees: Vec<Q>,
    pub unit_index: usize,
    pub pairing: Matrix,
    pub structure_constants: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
}

impl GradedFrobeniusAlgebra {
    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn top_degree(&self) -> Q {
        self.degrees.iter().cloned().max().unwrap_or_else(Q::zero)
    }

    /// Product of two basis elements as a dense coefficient vector.
    pub fn product(&self, i: usize, j: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        if let Some(terms) = self.structure_constants.get(&(i, j)) {
            for (k, c) in terms {
                out[*k] = c.clone();
            }
        }
        out
    }

    /// Bilinear extension of the product to coefficient vectors.
    pub fn multiply(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some(terms) = self.structure_constants.get(&(i, j)) {
                    let f = ca * cb;
                    for (k, c) in terms {
                        out[*k] += c * &f;
                    }
                }
            }
        }
        out
    }

    pub fn pairing_of(&self, a: &[Q], b: &[Q]) -> Q {
        let mut out = Q::zero();
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if !cb.is_zero() {
                    out += ca * cb * &self.pairing[i][j];
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = num::One::one();
        v
    }

    /// The one-dimensional unit algebra.
    pub fn unit_algebra() -> Self {
        let mut sc = BTreeMap::new();
        sc.insert((0, 0), vec![(0, num::One::one())]);
        GradedFrobeniusAlgebra {
            basis_labels: vec!["1".into()],
            degrees: vec![Q::zero()],
            unit_index: 0,
            pairing: vec![vec![num::One::one()]],
            structure_constants: sc,
        }
    }
}

/// Degree multiset of a graded algebra.
pub type PoincarePolynomial = BTreeMap<Q, usize>;

pub fn poincare(a: &GradedFrobeniusAlgebra) -> PoincarePolynomial {
    let mut p = PoincarePolynomial::new();
    for d in &a.degrees {
        *p.entry(d.clone()).or_default() += 1;
    }
    p
}

/// Exhaustive structural check over all basis pairs and triples.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(a: &GradedFrobeniusAlgebra) -> ValidationReport {
    let n = a.dim();
    let mut rep = ValidationReport::default();
    if a.degrees.len() != n || a.pairing.len() != n || a.pairing.iter().any(|r| r.len() != n) {
        rep.violations.push("inconsistent dimensions".into());
        return rep;
    }

    for j in 0..n {
        if a.product(a.unit_index, j) != a.basis_vector(j) {
            rep.violations
                .push(format!("unit does not act as identity on {}", a.basis_labels[j]));
        }
    }

    for i in 0..n {
        for j in 0..n {
            if a.pairing[i][j] != a.pairing[j][i] {
                rep.violations
                    .push(format!("pairing not symmetric at ({i},{j})"));
            }
        }
    }
    if linalg::det(&a.pairing).is_zero() {
        rep.violations.push("NondegeneracyViolation: pairing matrix is singular".into());
    }

    let top = a.top_degree();
    for i in 0..n {
        for j in 0..n {
            if !a.pairing[i][j].is_zero() && &a.degrees[i] + &a.degrees[j] != top {
                rep.violations.push(format!(
                    "pairing nonzero off complementary degrees at ({i},{j})"
                ));
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            let pij = a.product(i, j);
            if pij != a.product(j, i) {
                rep.violations
                    .push(format!("product not commutative at ({i},{j})"));
            }
            let dij = &a.degrees[i] + &a.degrees[j];
            for (k, c) in pij.iter().enumerate() {
                if !c.is_zero() && a.degrees[k] != dij {
                    rep.violations
                        .push(format!("product not graded at ({i},{j})->{k}"));
                }
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            for k in 0..n {
                let left = a.multiply(&ij, &a.basis_vector(k));
                let right = a.multiply(&a.basis_vector(i), &a.product(j, k));
                if left != right {
                    rep.violations
                        .push(format!("product not associative at ({i},{j},{k})"));
                }
                let eta_left = a.pairing_of(&ij, &a.basis_vector(k));
                let eta_right = a.pairing_of(&a.basis_vector(i), &a.product(j, k));
                if eta_left != eta_right {
                    rep.violations
                        .push(format!("Frobenius compatibility fails at ({i},{j},{k})"));
                }
            }
        }
    }
    rep
}

/// Tensor product of algebras: basis pairs, degrees add, pairings and
/// structure constants multiply componentwise.
pub fn tensor(a: &GradedFrobeniusAlgebra, b: &GradedFrobeniusAlgebra) -> GradedFrobeniusAlgebra {
    let (na, nb) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * nb + j;
    let mut labels = Vec::with_capacity(na * nb);
    let mut degrees = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!("{}⊗{}", a.basis_labels[i], b.basis_labels[j]));
            degrees.push(&a.degrees[i] + &b.degrees[j]);
        }
    }
    let mut pairing = vec![vec![Q::zero(); na * nb]; na * nb];
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    pairing[idx(i, j)][idx(k, l)] = &a.pairing[i][k] * &b.pairing[j][l];
                }
            }
        }
    }
    let mut sc = BTreeMap::new();
    for ((i, k), ta) in &a.structure_constants {
        for ((j, l), tb) in &b.structure_constants {
            let mut terms = Vec::new();
            for (p, cp) in ta {
                for (q, cq) in tb {
                    terms.push((idx(*p, *q), cp * cq));
                }
            }
            terms.sort_by_key(|(k, _)| *k);
            if !terms.is_empty() {
                sc.insert((idx(*i, *j), idx(*k, *l)), terms);
            }
        }
    }
    GradedFrobeniusAlgebra {
        basis_labels: labels,
        degrees,
        unit_index: idx(a.unit_index, b.unit_index),
        pairing,
        structure_constants: sc,
    }
}

/// Result of checking a candidate graded ring isomorphism with single-scalar
/// pairing proportionality.
#[derive(Debug, Clone)]
pub struct IsoReport {
    pub is_iso: bool,
    pub scalar_c: Option<Q>,
    pub violations: Vec<String>,
}

/// Checks that the basis bijection `map : A -> B` (basis index `i` of `A`
/// maps to basis index `map[i]` of `B`) is a degree-preserving, unital ring
/// isomorphism with `η_B(map x, map y) = c · η_A(x, y)` for a single
/// nonzero scalar `c`.
pub fn verify_isomorphism(
    a: &GradedFrobeniusAlgebra,
    b: &GradedFrobeniusAlgebra,
    map: &[usize],
) -> IsoReport {
    let mut violations = Vec::new();
    let n = a.dim();
    if b.dim() != n || map.len() != n {
        return IsoReport {
            is_iso: false,
            scalar_c: None,
            violations: vec!["dimension mismatch".into()],
        };
    }
    let mut seen = vec![false; n];
    for &m in map {
        if m >= n || seen[m] {
            return IsoReport {
                is_iso: false,
                scalar_c: None,
                violations: vec!["map is not a bijection".into()],
            };
        }
        seen[m] = true;
    }

    for i in 0..n {
        if a.degrees[i] != b.degrees[map[i]] {
            violations.push(format!(
                "DegreeViolation: {} has degree {}, image {} has degree {}",
                a.basis_labels[i], a.degrees[i], b.basis_labels[map[i]], b.degrees[map[i]]
            ));
        }
    }
    if map[a.unit_index] != b.unit_index {
        violations.push("unit is not mapped to unit".into());
    }

    let push = |v: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, c) in v.iter().enumerate() {
            out[map[i]] = c.clone();
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            let lhs = push(&a.product(i, j));
            let rhs = b.product(map[i], map[j]);
            if lhs != rhs {
                violations.push(format!(
                    "ring map fails at ({}, {})",
                    a.basis_labels[i], a.basis_labels[j]
                ));
            }
        }
    }

    let mut scalar: Option<Q> = None;
    for i in 0..n {
        for j in 0..n {
            let ea = &a.pairing[i][j];
            let eb = &b.pairing[map[i]][map[j]];
            if ea.is_zero() {
                if !eb.is_zero() {
                    violations.push(format!("pairing proportionality fails at ({i},{j})"));
                }
                continue;
            }
            let c = eb / ea;
            match &scalar {
                None => {
                    if c.is_zero() {
                        violations.push(format!("pairing scalar is zero at ({i},{j})"));
                    } else {
                        scalar = Some(c);
                    }
                }
                Some(s) => {
                    if &c != s {
                        violations.push(format!("pairing scalar not unique at ({i},{j})"));
                    }
                }
            }
        }
    }

    IsoReport {
        is_iso: violations.is_empty() && scalar.is_some(),
        scalar_c: scalar,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qi, qr};
    use num::One;

    /// The two-dimensional algebra C[x]/(x^2) with deg x = d and
    /// <1, x> = s.
    fn dual_numbers(d: Q, s: Q) -> GradedFrobeniusAlgebra {
        let mut sc = BTreeMap::new();
        sc.insert((0, 0), vec![(0, Q::one())]);
        sc.insert((0, 1), vec![(1, Q::one())]);
        sc.insert((1, 0), vec![(1, Q::one())]);
        GradedFrobeniusAlgebra {
            basis_labels: vec!["1".into(), "x".into()],
            degrees: vec![Q::zero(), d],
            unit_index: 0,
            pairing: vec![vec![Q::zero(), s.clone()], vec![s, Q::zero()]],
            structure_constants: sc,
        }
    }

    #[test]
    fn valid_small_algebra() {
        let a = dual_numbers(qr(2, 3), Q::one());
        assert!(validate(&a).is_valid());
    }

    #[test]
    fn zeroed_pairing_row_is_flagged() {
        let mut a = dual_numbers(qr(2, 3), Q::one());
        a.pairing[0] = vec![Q::zero(), Q::zero()];
        let rep = validate(&a);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.contains("NondegeneracyViolation") || v.contains("symmetric")));
    }

    #[test]
    fn tensor_dimensions_and_poincare() {
        let a = dual_numbers(qr(2, 3), Q::one());
        let b = dual_numbers(qr(1, 2), qi(2));
        let t = tensor(&a, &b);
        assert_eq!(t.dim(), 4);
        assert!(validate(&t).is_valid());
        // poincare(tensor) = convolution of poincare polynomials
        let pt = poincare(&t);
        let mut conv = PoincarePolynomial::new();
        for (da, ma) in poincare(&a) {
            for (db, mb) in poincare(&b) {
                *conv.entry(&da + &db).or_default() += ma * mb;
            }
        }
        assert_eq!(pt, conv);
        // tensor with the unit algebra preserves everything
        let u = GradedFrobeniusAlgebra::unit_algebra();
        let t = tensor(&a, &u);
        assert_eq!(poincare(&t), poincare(&a));
        assert!(verify_isomorphism(&a, &t, &[0, 1]).is_iso);
    }

    #[test]
    fn identity_map_scalar_is_one() {
        let a = dual_numbers(qr(2, 3), qi(5));
        let rep = verify_isomorphism(&a, &a, &[0, 1]);
        assert!(rep.is_iso);
        assert_eq!(rep.scalar_c, Some(Q::one()));
    }

    #[test]
    fn pairing_proportionality() {
        let a = dual_numbers(qr(2, 3), Q::one());
        let b = dual_numbers(qr(2, 3), qr(1, 3));
        let rep = verify_isomorphism(&a, &b, &[0, 1]);
        assert!(rep.is_iso);
        assert_eq!(rep.scalar_c, Some(qr(1, 3)));
    }

    #[test]
    fn degree_scramble_is_flagged() {
        let a = dual_numbers(qr(2, 3), Q::one());
        let rep = verify_isomorphism(&a, &a, &[1, 0]);
        assert!(!rep.is_iso);
        assert!(rep.violations.iter().any(|v| v.contains("DegreeViolation")));
    }
}

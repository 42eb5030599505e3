//! The transpose construction, the dual-side grid algebra, the explicit
//! loop mirror map, and the end-to-end isomorphism verification.

use crate::correlators::{
    loop_relations_check, loop_ring, CrossCheckStats, LoopSpace, RelationReport,
};
use crate::error::{Error, Result};
use crate::frobenius::{
    poincare, validate, verify_isomorphism, GradedFrobeniusAlgebra, IsoReport,
    PoincarePolynomial,
};
use crate::linalg::{self, Matrix};
use crate::milnor::{build_quotient, GradedQuotient};
use crate::qpoly::{
    central_charge, exponent_matrix, loop_potential, weights_of, Monomial, Polynomial,
    WeightSystem,
};
use crate::rational::{qi, qr, Q};
use num::{One, Zero};
use std::collections::BTreeMap;

/// A potential together with its transpose and the dual weight system.
#[derive(Debug, Clone)]
pub struct MirrorPair {
    pub source: Polynomial,
    pub dual: Polynomial,
    pub dual_weights: WeightSystem,
    /// `(q̄1, q̄2)` as generator phase sums, loops only.
    pub generator_phase_sums: Option<(Q, Q)>,
}

/// Transposes the exponent matrix. Two-variable loops are rendered in the
/// presentation `X̄1 X̄2^{a1} + X̄2 X̄1^{a2}` (equivalent to the matrix
/// transpose up to swapping the dual variables), so the loop dual-side
/// formulas hold verbatim.
pub fn transpose(w: &Polynomial) -> Result<Polynomial> {
    if w.terms().any(|(_, c)| !c.is_one()) {
        return Err(Error::NonUnitCoefficients);
    }
    if let Some((a1, a2)) = as_two_loop(w) {
        return Ok(loop_potential(a2, a1));
    }
    let e = exponent_matrix(w);
    if !e.is_square() {
        return Err(Error::NotInvertible(format!(
            "{} monomials in {} variables",
            e.num_monomials(),
            w.num_vars()
        )));
    }
    let t = e.transposed();
    Ok(Polynomial::from_terms(
        w.num_vars(),
        t.entries.into_iter().map(|r| (Monomial(r), Q::one())),
    ))
}

/// Matches `x1^{a1} x2 + x2^{a2} x1` exactly (variable order significant).
pub fn as_two_loop(w: &Polynomial) -> Option<(u32, u32)> {
    if w.num_vars() != 2 || w.num_terms() != 2 {
        return None;
    }
    let ms: Vec<&Monomial> = w.terms().map(|(m, _)| m).collect();
    let mut a1 = None;
    let mut a2 = None;
    for m in ms {
        match m.0.as_slice() {
            [p, 1] if *p >= 2 => a1 = Some(*p),
            [1, q] if *q >= 2 => a2 = Some(*q),
            _ => return None,
        }
    }
    Some((a1?, a2?))
}

/// Dual loop weights from the quasi-homogeneity system
/// `a1 q̄2 + q̄1 = 1`, `a2 q̄1 + q̄2 = 1`; checked against the generator
/// phase sums `q̄_i = θ1^{(i)} + θ2^{(i)}`.
pub fn dual_weights(a1: u32, a2: u32) -> WeightSystem {
    assert!(a1 >= 2 && a2 >= 2);
    let mat: Matrix = vec![
        vec![Q::one(), qi(a1 as i64)],
        vec![qi(a2 as i64), Q::one()],
    ];
    let sol = linalg::solve(&mat, &[Q::one(), Q::one()]).expect("loop dual system is regular");
    let g = (a1 as i64) * (a2 as i64) - 1;
    let phase_sums = (qr(a1 as i64 - 1, g), qr(a2 as i64 - 1, g));
    assert_eq!(sol[0], phase_sums.0);
    assert_eq!(sol[1], phase_sums.1);
    WeightSystem { weights: sol }
}

/// Builds the mirror pair of a loop, keeping the literal exponent order.
pub fn loop_mirror_pair(a1: u32, a2: u32) -> MirrorPair {
    let source = loop_potential(a1, a2);
    let dual = transpose(&source).expect("loops are invertible");
    let qbar = dual_weights(a1, a2);
    let sums = (qbar.weights[0].clone(), qbar.weights[1].clone());
    MirrorPair {
        source,
        dual,
        dual_weights: qbar,
        generator_phase_sums: Some(sums),
    }
}

/// The dual-side quotient expressed on the monomial grid
/// `ȳ1^α ȳ2^β`, `0 ≤ α ≤ a2−1`, `0 ≤ β ≤ a1−1`. The engine's echelon
/// basis may differ from the grid; a change-of-basis matrix converts
/// between the two, with grid independence certified by exact inversion.
#[derive(Debug, Clone)]
pub struct GridAlgebra {
    pub a1: u32,
    pub a2: u32,
    pub quotient: GradedQuotient,
    pub grid: Vec<Monomial>,
    pub dual_weights: WeightSystem,
    /// Maps echelon coordinates to grid coordinates.
    from_echelon: Matrix,
}

impl GridAlgebra {
    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    /// Grid slot of `ȳ1^α ȳ2^β`.
    pub fn grid_index(&self, alpha: u32, beta: u32) -> usize {
        (alpha * self.a1 + beta) as usize
    }

    pub fn grid_form(&self, idx: usize) -> (u32, u32) {
        ((idx as u32) / self.a1, (idx as u32) % self.a1)
    }

    fn to_grid(&self, echelon: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.from_echelon, echelon)
    }

    /// Product of grid coordinate vectors, reduced by the Jacobian ideal
    /// and re-expressed on the grid.
    pub fn grid_product(&self, a: &[Q], b: &[Q]) -> Result<Vec<Q>> {
        let lift = |v: &[Q]| {
            Polynomial::from_terms(
                2,
                v.iter()
                    .enumerate()
                    .map(|(i, c)| (self.grid[i].clone(), c.clone())),
            )
        };
        let nf = self.quotient.normal_form(&lift(a).mul(&lift(b)))?;
        Ok(self.to_grid(&nf))
    }

    pub fn grid_pairing(&self, i: usize, j: usize) -> Result<Q> {
        let ei = self.quotient.element_of(&self.grid[i])?;
        let ej = self.quotient.element_of(&self.grid[j])?;
        self.quotient.residue_pairing(&ei, &ej)
    }

    /// Exports the grid-basis Frobenius algebra with doubled weighted
    /// degrees.
    pub fn as_frobenius(&self) -> Result<GradedFrobeniusAlgebra> {
        let n = self.dim();
        let mut pairing = vec![vec![Q::zero(); n]; n];
        let mut sc = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                pairing[i][j] = self.grid_pairing(i, j)?;
                let mut unit_i = vec![Q::zero(); n];
                unit_i[i] = Q::one();
                let mut unit_j = vec![Q::zero(); n];
                unit_j[j] = Q::one();
                let prod = self.grid_product(&unit_i, &unit_j)?;
                let terms: Vec<(usize, Q)> = prod
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !terms.is_empty() {
                    sc.insert((i, j), terms);
                }
            }
        }
        Ok(GradedFrobeniusAlgebra {
            basis_labels: self.grid.iter().map(|m| m.display("y")).collect(),
            degrees: self
                .grid
                .iter()
                .map(|m| qi(2) * m.weighted_degree(&self.dual_weights))
                .collect(),
            unit_index: self.grid_index(0, 0),
            pairing,
            structure_constants: sc,
        })
    }
}

/// Builds the dual quotient of `loop(a1, a2)` and aligns it with the grid.
pub fn grid_algebra(a1: u32, a2: u32) -> Result<GridAlgebra> {
    let pair = loop_mirror_pair(a1, a2);
    let quotient = build_quotient(&pair.dual)?;
    if weights_of(&pair.dual)? != pair.dual_weights {
        return Err(Error::DegenerateWeights(
            "dual weights disagree with the transposed system".into(),
        ));
    }
    let mut grid = Vec::new();
    for alpha in 0..a2 {
        for beta in 0..a1 {
            grid.push(Monomial(vec![alpha, beta]));
        }
    }
    if grid.len() != quotient.dim() {
        return Err(Error::BasisMismatch(format!(
            "grid has {} monomials, quotient dimension {}",
            grid.len(),
            quotient.dim()
        )));
    }
    // columns of `to_echelon` are the grid monomials in echelon coordinates
    let n = grid.len();
    let mut to_echelon = vec![vec![Q::zero(); n]; n];
    for (j, m) in grid.iter().enumerate() {
        let col = quotient.element_of(m)?;
        for i in 0..n {
            to_echelon[i][j] = col[i].clone();
        }
    }
    let from_echelon = linalg::invert(&to_echelon).ok_or_else(|| {
        Error::BasisMismatch("grid monomials are linearly dependent in the quotient".into())
    })?;
    Ok(GridAlgebra {
        a1,
        a2,
        quotient,
        grid,
        dual_weights: pair.dual_weights,
        from_echelon,
    })
}

/// The basis bijection `φ`: grid slot `(α, β)` on the dual side to the
/// state-space element addressed by the form `J g1^α g2^β`, with the two
/// identity forms landing on the broad elements.
pub fn mirror_map(grid: &GridAlgebra, ls: &LoopSpace) -> Vec<usize> {
    (0..grid.dim())
        .map(|i| {
            let (alpha, beta) = grid.grid_form(i);
            ls.form_basis_index(alpha, beta)
        })
        .collect()
}

/// Everything the end-to-end check produces for one loop.
#[derive(Debug, Clone)]
pub struct MirrorReport {
    pub a1: u32,
    pub a2: u32,
    pub source: String,
    pub dual: String,
    pub dim_a: usize,
    pub dim_b: usize,
    pub central_charge: Q,
    pub poincare_a: PoincarePolynomial,
    pub poincare_b: PoincarePolynomial,
    pub poincare_equal: bool,
    pub a_model_valid: bool,
    pub b_model_valid: bool,
    pub iso: IsoReport,
    pub crosscheck: CrossCheckStats,
    pub relations: RelationReport,
}

impl MirrorReport {
    pub fn passed(&self) -> bool {
        self.iso.is_iso
            && self.poincare_equal
            && self.a_model_valid
            && self.b_model_valid
            && self.crosscheck.mismatches.is_empty()
            && self.dim_a == self.dim_b
    }
}

/// Full pipeline for one loop: A-model state space and ring with axiom
/// cross-checks, power-rule and relation verification, dual-side grid
/// algebra, and the graded-Frobenius isomorphism check through `φ`.
pub fn verify_mirror(a1: u32, a2: u32) -> Result<MirrorReport> {
    let ls = LoopSpace::new(a1, a2)?;
    let grid = grid_algebra(a1, a2)?;
    let ring = loop_ring(&ls, &grid)?;
    let relations = loop_relations_check(&ls, &ring.algebra)?;
    let b_alg = grid.as_frobenius()?;
    let map = mirror_map(&grid, &ls);
    let iso = verify_isomorphism(&b_alg, &ring.algebra, &map);
    let pa = poincare(&ring.algebra);
    let pb = poincare(&b_alg);
    let cc = central_charge(&ls.space.weights);
    if central_charge(&grid.dual_weights) != cc {
        return Err(Error::CrossCheckMismatch(
            "central charges of the two sides differ".into(),
        ));
    }
    Ok(MirrorReport {
        a1,
        a2,
        source: ls.space.potential.display("x"),
        dual: grid.quotient.source().display("y"),
        dim_a: ring.algebra.dim(),
        dim_b: b_alg.dim(),
        central_charge: cc,
        poincare_equal: pa == pb,
        poincare_a: pa,
        poincare_b: pb,
        a_model_valid: validate(&ring.algebra).is_valid(),
        b_model_valid: validate(&b_alg).is_valid(),
        iso,
        crosscheck: ring.crosscheck,
        relations,
    })
}

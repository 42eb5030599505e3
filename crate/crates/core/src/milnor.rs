//! Graded Milnor rings `C[x]/Jac(W)` by exact degreewise elimination.
//!
//! Weighted degrees of a quasi-homogeneous potential live in `(1/L)Z` for
//! `L = lcm` of the weight denominators, so the quotient decomposes into
//! finite slices. Each slice up to degree `2ĉ` is row-reduced exactly; the
//! non-pivot monomials form the basis and every pivot monomial gets a stored
//! normal form. Products never exceed degree `2ĉ` when both factors are
//! basis elements, so the table is complete for ring arithmetic.

use crate::error::{Error, Result};
use crate::frobenius::GradedFrobeniusAlgebra;
use crate::linalg;
use crate::qpoly::{
    central_charge, milnor_number_formula, weights_of, Monomial, Polynomial, WeightSystem,
};
use crate::rational::{denominator_lcm, qi, Q};
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

/// Dense coefficient vector over the echelon basis of a quotient.
pub type RingElement = Vec<Q>;

/// A graded quotient `C[x_1..x_N]/Jac(W)` with an explicit monomial basis.
///
/// The basis is the set of non-pivot monomials of the degreewise row
/// reduction, ordered by weighted degree and canonically within a slice.
/// It need not coincide with any hand-picked monomial grid; all pairing
/// values computed from it are basis-independent.
#[derive(Debug, Clone)]
pub struct GradedQuotient {
    source: Polynomial,
    weights: WeightSystem,
    central_charge: Q,
    basis: Vec<Monomial>,
    basis_index: HashMap<Monomial, usize>,
    /// Normal forms of pivot monomials up to degree `2ĉ`; an absent entry
    /// means the monomial is itself a basis element.
    table: HashMap<Monomial, Vec<(usize, Q)>>,
    unit_index: usize,
    /// Index of the unique basis monomial of top degree `ĉ`.
    top_index: usize,
    /// Coefficient `h` with `hessian(W) ≡ h · top` in the quotient.
    hessian_top: Q,
}

/// Partial derivatives `(∂W/∂x_1, ..., ∂W/∂x_N)`.
pub fn jacobian(w: &Polynomial) -> Vec<Polynomial> {
    (0..w.num_vars()).map(|i| w.diff(i)).collect()
}

/// Determinant of the matrix of second partials, computed exactly as a
/// polynomial by cofactor expansion.
pub fn hessian(w: &Polynomial) -> Polynomial {
    let n = w.num_vars();
    let rows: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| w.diff(i).diff(j)).collect())
        .collect();
    poly_det(&rows, &(0..n).collect::<Vec<_>>(), n)
}

fn poly_det(rows: &[Vec<Polynomial>], cols: &[usize], num_vars: usize) -> Polynomial {
    if cols.is_empty() {
        let mut p = Polynomial::zero(num_vars);
        p.add_term(Monomial::one(num_vars), Q::one());
        return p;
    }
    let mut acc = Polynomial::zero(num_vars);
    let row = rows.len() - cols.len();
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = poly_det(rows, &rest, num_vars);
        let term = rows[row][c].mul(&minor);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// All monomials with `Σ b_i n_i = k`, in canonical order.
fn slice_monomials(numerators: &[i64], k: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; numerators.len()];
    fn rec(numerators: &[i64], idx: usize, remaining: i64, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == numerators.len() {
            if remaining == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let n = numerators[idx];
        let max = remaining / n;
        for b in 0..=max {
            current[idx] = b as u32;
            rec(numerators, idx + 1, remaining - b * n, current, out);
        }
        current[idx] = 0;
    }
    rec(numerators, 0, k, &mut current, &mut out);
    out.sort();
    out
}

impl GradedQuotient {
    /// The zero-variable quotient: one-dimensional, basis `{1}`,
    /// `<1,1> = 1`. Used for group sectors whose fixed locus is the origin.
    pub fn point() -> Self {
        let one = Monomial::one(0);
        GradedQuotient {
            source: Polynomial::zero(0),
            weights: WeightSystem { weights: vec![] },
            central_charge: Q::zero(),
            basis: vec![one.clone()],
            basis_index: HashMap::from([(one, 0)]),
            table: HashMap::new(),
            unit_index: 0,
            top_index: 0,
            hessian_top: Q::one(),
        }
    }

    pub fn source(&self) -> &Polynomial {
        &self.source
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn central_charge(&self) -> &Q {
        &self.central_charge
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    pub fn top_index(&self) -> usize {
        self.top_index
    }

    pub fn basis_index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis_index.get(m).copied()
    }

    pub fn num_vars(&self) -> usize {
        self.source.num_vars()
    }

    /// Weighted degree of basis element `i`.
    pub fn degree_of(&self, i: usize) -> Q {
        self.basis[i].weighted_degree(&self.weights)
    }

    /// Reduces a polynomial to its dense coefficient vector over the basis.
    /// Fails when a term's weighted degree exceeds `2ĉ`.
    pub fn normal_form(&self, p: &Polynomial) -> Result<RingElement> {
        let mut out = vec![Q::zero(); self.dim()];
        for (m, c) in p.terms() {
            if let Some(&i) = self.basis_index.get(m) {
                out[i] += c;
            } else if let Some(combo) = self.table.get(m) {
                for (i, s) in combo {
                    out[*i] += c * s;
                }
            } else {
                return Err(Error::OutOfTableRange(format!(
                    "monomial {} of degree {}",
                    m.display("x"),
                    m.weighted_degree(&self.weights)
                )));
            }
        }
        Ok(out)
    }

    pub fn element_of(&self, m: &Monomial) -> Result<RingElement> {
        self.normal_form(&Polynomial::monomial(m.clone(), Q::one()))
    }

    pub fn unit(&self) -> RingElement {
        let mut v = vec![Q::zero(); self.dim()];
        v[self.unit_index] = Q::one();
        v
    }

    pub fn to_polynomial(&self, e: &RingElement) -> Polynomial {
        let n = self.num_vars();
        Polynomial::from_terms(
            n,
            e.iter()
                .enumerate()
                .map(|(i, c)| (self.basis[i].clone(), c.clone())),
        )
    }

    /// Product in the quotient ring.
    pub fn ring_product(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let p = self.to_polynomial(a).mul(&self.to_polynomial(b));
        self.normal_form(&p)
    }

    /// Residue pairing `<f, g> = μ λ / h`, where `λ` is the top-degree
    /// coefficient of the reduced product and `h` the top coefficient of
    /// the reduced hessian. Independent of the choice of monomial basis.
    pub fn residue_pairing(&self, a: &RingElement, b: &RingElement) -> Result<Q> {
        let prod = self.ring_product(a, b)?;
        let lambda = prod[self.top_index].clone();
        Ok(qi(self.dim() as i64) * lambda / &self.hessian_top)
    }

    /// Exports the quotient as a graded Frobenius algebra under the residue
    /// pairing. Degrees are doubled weighted degrees, matching the orbifold
    /// grading convention.
    pub fn as_frobenius(&self) -> GradedFrobeniusAlgebra {
        let n = self.dim();
        let degrees: Vec<Q> = (0..n).map(|i| qi(2) * self.degree_of(i)).collect();
        let labels: Vec<String> = self.basis.iter().map(|m| m.display("x")).collect();
        let mut pairing = vec![vec![Q::zero(); n]; n];
        let mut sc = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.basis_vec(i), self.basis_vec(j));
                pairing[i][j] = self.residue_pairing(&a, &b).expect("basis product in range");
                let prod = self.ring_product(&a, &b).expect("basis product in range");
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
        GradedFrobeniusAlgebra {
            basis_labels: labels,
            degrees,
            unit_index: self.unit_index,
            pairing,
            structure_constants: sc,
        }
    }

    fn basis_vec(&self, i: usize) -> RingElement {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }
}

/// Builds the graded quotient of an invertible quasi-homogeneous potential.
///
/// Performs the nondegeneracy checks: the basis count must equal the Milnor
/// number `Π(1/q_i - 1)`, the top degree `ĉ` slice must be one-dimensional,
/// every slice in `(ĉ, 2ĉ]` must reduce to zero, and the hessian must be a
/// nonzero multiple of the top basis element.
pub fn build_quotient(w: &Polynomial) -> Result<GradedQuotient> {
    if w.num_vars() == 0 {
        return Ok(GradedQuotient::point());
    }
    let weights = weights_of(w)?;
    let cc = central_charge(&weights);
    if cc.is_negative() {
        return Err(Error::DegeneratePotential(format!(
            "negative central charge {cc}"
        )));
    }
    let mu_q = milnor_number_formula(&weights);
    if !mu_q.is_integer() || !mu_q.is_positive() {
        return Err(Error::DegeneratePotential(format!(
            "Milnor number formula gives {mu_q}"
        )));
    }
    let mu = mu_q
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::DegeneratePotential("Milnor number overflow".into()))?;

    let l: BigInt = denominator_lcm(weights.weights.iter());
    let l_q = Q::from_integer(l.clone());
    let numerators: Vec<i64> = weights
        .weights
        .iter()
        .map(|q| (q * &l_q).to_integer().to_i64().unwrap())
        .collect();
    let top_num = (&cc * &l_q).to_integer().to_i64().unwrap();
    let max_num = 2 * top_num;

    let partials = jacobian(w);
    // numerator of deg(∂W/∂x_i) = L - n_i
    let partial_nums: Vec<i64> = numerators.iter().map(|n| l.to_i64().unwrap() - n).collect();

    let mut basis: Vec<Monomial> = Vec::new();
    let mut basis_index: HashMap<Monomial, usize> = HashMap::new();
    let mut table: HashMap<Monomial, Vec<(usize, Q)>> = HashMap::new();

    for k in 0..=max_num {
        let cols = slice_monomials(&numerators, k);
        if cols.is_empty() {
            continue;
        }
        let col_pos: HashMap<&Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m, i)).collect();

        let mut rows: linalg::Matrix = Vec::new();
        for (i, d) in partials.iter().enumerate() {
            let rem = k - partial_nums[i];
            if rem < 0 || d.is_zero() {
                continue;
            }
            for mult in slice_monomials(&numerators, rem) {
                let mut row = vec![Q::zero(); cols.len()];
                for (m, c) in d.terms() {
                    let prod = mult.mul(m);
                    row[col_pos[&prod]] += c;
                }
                rows.push(row);
            }
        }
        let pivots = linalg::rref(&mut rows);
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; cols.len()];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };

        // Non-pivot columns survive into the quotient.
        let slice_basis: Vec<usize> = (0..cols.len()).filter(|&c| !pivot_set[c]).collect();
        if k > top_num && !slice_basis.is_empty() {
            return Err(Error::DegeneratePotential(format!(
                "monomial {} of degree {}/{} survives above the socle",
                cols[slice_basis[0]].display("x"),
                k,
                l
            )));
        }
        let mut local_index: HashMap<usize, usize> = HashMap::new();
        for &c in &slice_basis {
            let idx = basis.len();
            basis.push(cols[c].clone());
            basis_index.insert(cols[c].clone(), idx);
            local_index.insert(c, idx);
        }
        // Each pivot row reads `m_pivot + Σ coeff · m_nonpivot = 0`.
        for (r, &p) in pivots.iter().enumerate() {
            let combo: Vec<(usize, Q)> = slice_basis
                .iter()
                .filter(|&&c| !rows[r][c].is_zero())
                .map(|&c| (local_index[&c], -&rows[r][c]))
                .collect();
            table.insert(cols[p].clone(), combo);
        }
    }

    if basis.len() != mu {
        return Err(Error::DegeneratePotential(format!(
            "quotient dimension {} does not match Milnor number {}",
            basis.len(),
            mu
        )));
    }
    let tops: Vec<usize> = (0..basis.len())
        .filter(|&i| basis[i].weighted_degree(&weights) == cc)
        .collect();
    let [top_index] = tops[..] else {
        return Err(Error::DegeneratePotential(format!(
            "{} basis monomials at top degree {}",
            tops.len(),
            cc
        )));
    };
    let unit_index = basis_index[&Monomial::one(w.num_vars())];

    let mut q = GradedQuotient {
        source: w.clone(),
        weights,
        central_charge: cc,
        basis,
        basis_index,
        table,
        unit_index,
        top_index,
        hessian_top: Q::one(),
    };
    let h = q.normal_form(&hessian(w))?;
    for (i, c) in h.iter().enumerate() {
        if i != top_index && !c.is_zero() {
            return Err(Error::DegeneratePotential(
                "hessian is not concentrated in top degree".into(),
            ));
        }
    }
    if h[top_index].is_zero() {
        return Err(Error::DegeneratePotential("hessian reduces to zero".into()));
    }
    q.hessian_top = h[top_index].clone();
    Ok(q)
}

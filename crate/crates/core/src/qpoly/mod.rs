//! Exact multivariate polynomials, exponent matrices, weight systems, and
//! structural classification of invertible potentials.

mod classify;
mod parse;

pub use classify::{classify, Atom, AtomKind, PotentialClass};
pub use parse::parse_potential;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{qi, Q};
use num::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a single monomial. Length is fixed by the ambient
/// variable count of the polynomial it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, idx: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn weighted_degree(&self, w: &WeightSystem) -> Q {
        self.0
            .iter()
            .zip(&w.weights)
            .fold(Q::zero(), |acc, (&e, q)| acc + q * qi(e as i64))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// Render with the given variable prefix, e.g. `x1^2*x2`.
    pub fn display(&self, prefix: &str) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{}{}", prefix, i + 1)),
                _ => parts.push(format!("{}{}^{}", prefix, i + 1, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Canonical term order: graded by total degree, then lexicographic on
/// exponent vectors with the lexicographically larger vector first (so
/// `x1^2*x2` precedes `x2^3`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over exact rationals. No zero coefficients are stored
/// and terms are kept in canonical order, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
    num_vars: usize,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            terms: BTreeMap::new(),
            num_vars,
        }
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Polynomial::zero(num_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let n = m.num_vars();
        Polynomial::from_terms(n, [(m, c)])
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        assert_eq!(m.num_vars(), self.num_vars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            num_vars: self.num_vars,
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Q) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
            num_vars: self.num_vars,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Polynomial::zero(self.num_vars);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Exact partial derivative with respect to variable `idx`.
    pub fn diff(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in self.terms() {
            let e = m.0[idx];
            if e > 0 {
                let mut d = m.clone();
                d.0[idx] = e - 1;
                out.add_term(d, c * qi(e as i64));
            }
        }
        out
    }

    /// Sets the variables *not* listed in `kept` to zero and re-indexes the
    /// kept variables in increasing order.
    pub fn restrict(&self, kept: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(kept.len());
        'terms: for (m, c) in self.terms() {
            for i in 0..self.num_vars {
                if m.0[i] > 0 && !kept.contains(&i) {
                    continue 'terms;
                }
            }
            let e = kept.iter().map(|&i| m.0[i]).collect();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Applies a variable permutation: variable `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in self.terms() {
            let mut e = vec![0u32; self.num_vars];
            for i in 0..self.num_vars {
                e[perm[i]] = m.0[i];
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn display(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms() {
            let mstr = m.display(prefix);
            let part = if c.is_one() {
                mstr
            } else if mstr == "1" {
                c.to_string()
            } else {
                format!("{}*{}", c, mstr)
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    pub fn is_quasi_homogeneous(&self, w: &WeightSystem) -> bool {
        self.terms()
            .all(|(m, _)| m.weighted_degree(w) == Q::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

/// The M x N matrix of monomial exponents, rows in canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub entries: Vec<Vec<u32>>,
}

impl ExponentMatrix {
    pub fn num_monomials(&self) -> usize {
        self.entries.len()
    }

    pub fn num_vars(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn is_square(&self) -> bool {
        self.num_monomials() == self.num_vars() && self.num_monomials() > 0
    }

    pub fn as_rational(&self) -> linalg::Matrix {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&e| qi(e as i64)).collect())
            .collect()
    }

    pub fn det(&self) -> Q {
        linalg::det(&self.as_rational())
    }

    pub fn transposed(&self) -> ExponentMatrix {
        let m = self.num_monomials();
        let n = self.num_vars();
        ExponentMatrix {
            entries: (0..n)
                .map(|j| (0..m).map(|i| self.entries[i][j]).collect())
                .collect(),
        }
    }
}

pub fn exponent_matrix(w: &Polynomial) -> ExponentMatrix {
    ExponentMatrix {
        entries: w.terms().map(|(m, _)| m.0.clone()).collect(),
    }
}

/// Rational weights, one per variable, each in (0,1); every monomial of the
/// source potential has weighted degree exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    pub weights: Vec<Q>,
}

impl WeightSystem {
    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }
}

/// Solves `E q = (1,...,1)` for the unique weight system of an invertible
/// candidate (or a sum of invertible atoms).
pub fn weights_of(w: &Polynomial) -> Result<WeightSystem> {
    if w.is_zero() {
        return Err(Error::NotInvertible("zero potential".into()));
    }
    let e = exponent_matrix(w);
    if !e.is_square() {
        return Err(Error::NotInvertible(format!(
            "{} monomials in {} variables",
            e.num_monomials(),
            w.num_vars()
        )));
    }
    let mat = e.as_rational();
    let ones = vec![Q::one(); e.num_vars()];
    let q = linalg::solve(&mat, &ones)
        .ok_or_else(|| Error::DegenerateWeights("det E = 0".into()))?;
    for qi_ in &q {
        if *qi_ <= Q::zero() || *qi_ >= Q::one() {
            return Err(Error::DegenerateWeights(format!(
                "weight {} outside (0,1)",
                qi_
            )));
        }
    }
    Ok(WeightSystem { weights: q })
}

/// Central charge `Σ(1 - 2 q_i)`.
pub fn central_charge(q: &WeightSystem) -> Q {
    q.weights
        .iter()
        .fold(Q::zero(), |acc, w| acc + (Q::one() - qi(2) * w))
}

/// Milnor number formula `Π(1/q_i - 1)`; the empty product is 1.
pub fn milnor_number_formula(q: &WeightSystem) -> Q {
    q.weights
        .iter()
        .fold(Q::one(), |acc, w| acc * (w.recip() - Q::one()))
}

/// The loop potential `x1^a1*x2 + x2^a2*x1`.
pub fn loop_potential(a1: u32, a2: u32) -> Polynomial {
    assert!(a1 >= 2 && a2 >= 2, "loop exponents must be >= 2");
    Polynomial::from_terms(
        2,
        [
            (Monomial(vec![a1, 1]), Q::one()),
            (Monomial(vec![1, a2]), Q::one()),
        ],
    )
}

/// The Fermat potential `x1^a` in one variable.
pub fn fermat_potential(a: u32) -> Polynomial {
    assert!(a >= 2);
    Polynomial::from_terms(1, [(Monomial(vec![a]), Q::one())])
}

/// The chain potential `x1^a1*x2 + ... + xN^aN`.
pub fn chain_potential(exponents: &[u32]) -> Polynomial {
    let n = exponents.len();
    assert!(n >= 1 && exponents.iter().all(|&a| a >= 2));
    let mut terms = Vec::new();
    for (i, &a) in exponents.iter().enumerate() {
        let mut e = vec![0u32; n];
        e[i] = a;
        if i + 1 < n {
            e[i + 1] = 1;
        }
        terms.push((Monomial(e), Q::one()));
    }
    Polynomial::from_terms(n, terms)
}

/// Disjoint sum of potentials on fresh variables.
pub fn direct_sum(parts: &[Polynomial]) -> Polynomial {
    let total: usize = parts.iter().map(|p| p.num_vars()).sum();
    let mut out = Polynomial::zero(total);
    let mut offset = 0;
    for p in parts {
        for (m, c) in p.terms() {
            let mut e = vec![0u32; total];
            e[offset..offset + p.num_vars()].copy_from_slice(&m.0);
            out.add_term(Monomial(e), c.clone());
        }
        offset += p.num_vars();
    }
    out
}

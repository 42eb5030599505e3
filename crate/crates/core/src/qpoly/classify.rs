//! Structural classification of invertible potentials into Fermat, loop,
//! and chain atoms over disjoint variable sets.

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use num::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomKind {
    Fermat,
    Loop,
    Chain,
}

/// One invertible atom: its kind, the exponent parameters in canonical
/// order, and the (sorted) ambient variable indices it uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub kind: AtomKind,
    pub exponents: Vec<u32>,
    pub vars: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PotentialClass {
    /// A single Fermat/loop/chain atom.
    Atom(Atom),
    /// A disjoint-variable sum of two or more atoms, ordered by smallest
    /// variable index.
    Sum(Vec<Atom>),
    NotInvertible,
}

impl PotentialClass {
    pub fn atoms(&self) -> Option<&[Atom]> {
        match self {
            PotentialClass::Atom(a) => Some(std::slice::from_ref(a)),
            PotentialClass::Sum(v) => Some(v),
            PotentialClass::NotInvertible => None,
        }
    }

    pub fn describe(&self) -> String {
        fn atom(a: &Atom) -> String {
            let kind = match a.kind {
                AtomKind::Fermat => "Fermat",
                AtomKind::Loop => "Loop",
                AtomKind::Chain => "Chain",
            };
            let params: Vec<String> = a.exponents.iter().map(|e| e.to_string()).collect();
            format!("{}({})", kind, params.join(","))
        }
        match self {
            PotentialClass::Atom(a) => atom(a),
            PotentialClass::Sum(v) => {
                let parts: Vec<String> = v.iter().map(atom).collect();
                format!("Sum[{}]", parts.join(", "))
            }
            PotentialClass::NotInvertible => "NotInvertible".to_string(),
        }
    }
}

/// Decomposes `W` into disjoint-variable atoms and matches each atom
/// against the Fermat/loop/chain patterns up to variable relabeling.
///
/// Requires unit coefficients; the structural theory is stated for the
/// normalized form.
pub fn classify(w: &Polynomial) -> Result<PotentialClass> {
    if w.is_zero() {
        return Ok(PotentialClass::NotInvertible);
    }
    if w.terms().any(|(_, c)| !c.is_one()) {
        return Err(Error::NonUnitCoefficients);
    }
    let n = w.num_vars();
    let monomials: Vec<&Monomial> = w.terms().map(|(m, _)| m).collect();

    // Union-find over variables connected by shared monomials.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for m in &monomials {
        let sup = m.support();
        for wnd in sup.windows(2) {
            let (a, b) = (find(&mut parent, wnd[0]), find(&mut parent, wnd[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }

    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }

    let mut atoms = Vec::new();
    for vars in comps.values() {
        let ms: Vec<&Monomial> = monomials
            .iter()
            .copied()
            .filter(|m| m.support().iter().all(|v| vars.contains(v)) && !m.support().is_empty())
            .collect();
        match classify_atom(vars, &ms) {
            Some(a) => atoms.push(a),
            None => return Ok(PotentialClass::NotInvertible),
        }
    }
    // Every monomial must belong to some component (constants excluded above).
    if monomials.iter().any(|m| m.support().is_empty()) {
        return Ok(PotentialClass::NotInvertible);
    }
    match atoms.len() {
        0 => Ok(PotentialClass::NotInvertible),
        1 => Ok(PotentialClass::Atom(atoms.pop().unwrap())),
        _ => Ok(PotentialClass::Sum(atoms)),
    }
}

fn classify_atom(vars: &[usize], monomials: &[&Monomial]) -> Option<Atom> {
    if monomials.len() != vars.len() {
        return None;
    }
    // Fermat: one variable, one monomial x^a with a >= 2.
    if vars.len() == 1 {
        let a = monomials[0].0[vars[0]];
        if a >= 2 {
            return Some(Atom {
                kind: AtomKind::Fermat,
                exponents: vec![a],
                vars: vars.to_vec(),
            });
        }
        return None;
    }

    // Each monomial must be x_head^a * x_tail (a >= 2, head != tail) or a
    // pure power x_head^a (chain terminal).
    struct Link {
        head: usize,
        tail: Option<usize>,
        exp: u32,
    }
    let mut links = Vec::new();
    for m in monomials {
        let sup = m.support();
        match sup.as_slice() {
            [v] => {
                let a = m.0[*v];
                if a < 2 {
                    return None;
                }
                links.push(Link {
                    head: *v,
                    tail: None,
                    exp: a,
                });
            }
            [u, v] => {
                let (eu, ev) = (m.0[*u], m.0[*v]);
                let (head, tail, exp) = if eu >= 2 && ev == 1 {
                    (*u, *v, eu)
                } else if ev >= 2 && eu == 1 {
                    (*v, *u, ev)
                } else {
                    return None;
                };
                links.push(Link {
                    head,
                    tail: Some(tail),
                    exp,
                });
            }
            _ => return None,
        }
    }

    // Every variable must be a head exactly once.
    let mut head_of: std::collections::BTreeMap<usize, &Link> = Default::default();
    for l in &links {
        if head_of.insert(l.head, l).is_some() {
            return None;
        }
    }
    if head_of.len() != vars.len() {
        return None;
    }
    let terminals: Vec<usize> = links.iter().filter(|l| l.tail.is_none()).map(|l| l.head).collect();

    match terminals.len() {
        0 => {
            // Loop candidate: head -> tail edges must form one cycle.
            let mut tail_count: std::collections::BTreeMap<usize, usize> = Default::default();
            for l in &links {
                *tail_count.entry(l.tail.unwrap()).or_default() += 1;
            }
            if tail_count.len() != vars.len() || tail_count.values().any(|&c| c != 1) {
                return None;
            }
            // Walk the cycle from the smallest variable.
            let start = vars[0];
            let mut cycle_exps = Vec::new();
            let mut cur = start;
            loop {
                let l = head_of[&cur];
                cycle_exps.push(l.exp);
                cur = l.tail.unwrap();
                if cur == start {
                    break;
                }
                if cycle_exps.len() > vars.len() {
                    return None;
                }
            }
            if cycle_exps.len() != vars.len() {
                return None;
            }
            Some(Atom {
                kind: AtomKind::Loop,
                exponents: canonical_rotation(&cycle_exps),
                vars: vars.to_vec(),
            })
        }
        1 => {
            // Chain candidate: path ending at the terminal.
            let terminal = terminals[0];
            let tails: std::collections::BTreeSet<usize> =
                links.iter().filter_map(|l| l.tail).collect();
            // chain start: the unique head that is never a tail
            let starts: Vec<usize> = vars.iter().copied().filter(|v| !tails.contains(v)).collect();
            if starts.len() != 1 {
                return None;
            }
            let mut exps = Vec::new();
            let mut cur = starts[0];
            loop {
                let l = head_of[&cur];
                exps.push(l.exp);
                match l.tail {
                    Some(t) => cur = t,
                    None => break,
                }
                if exps.len() > vars.len() {
                    return None;
                }
            }
            if exps.len() != vars.len() || cur != terminal {
                return None;
            }
            Some(Atom {
                kind: AtomKind::Chain,
                exponents: exps,
                vars: vars.to_vec(),
            })
        }
        _ => None,
    }
}

/// Lexicographically smallest rotation, so loop parameters are invariant
/// under variable relabeling.
fn canonical_rotation(xs: &[u32]) -> Vec<u32> {
    let n = xs.len();
    (0..n)
        .map(|s| {
            let mut r = Vec::with_capacity(n);
            r.extend_from_slice(&xs[s..]);
            r.extend_from_slice(&xs[..s]);
            r
        })
        .min()
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{direct_sum, fermat_potential, loop_potential, parse_potential};

    #[test]
    fn loop_classification() {
        let c = classify(&parse_potential("x1^2*x2 + x2^2*x1").unwrap()).unwrap();
        assert_eq!(c.describe(), "Loop(2,2)");
        let c = classify(&loop_potential(2, 3)).unwrap();
        assert_eq!(c.describe(), "Loop(2,3)");
        // loop(3,2) is the same loop up to relabeling
        let c = classify(&loop_potential(3, 2)).unwrap();
        assert_eq!(c.describe(), "Loop(2,3)");
    }

    #[test]
    fn chain_classification() {
        let c = classify(&parse_potential("x1^2*x2 + x2^3").unwrap()).unwrap();
        assert_eq!(c.describe(), "Chain(2,3)");
    }

    #[test]
    fn sum_classification() {
        let c = classify(&parse_potential("x1^2*x2 + x2^2*x1 + x3^3").unwrap()).unwrap();
        assert_eq!(c.describe(), "Sum[Loop(2,2), Fermat(3)]");
    }

    #[test]
    fn not_invertible() {
        let c = classify(&parse_potential("x1*x2").unwrap()).unwrap();
        assert_eq!(c, PotentialClass::NotInvertible);
        // too many monomials on one variable set
        let c = classify(&parse_potential("x1^3 + x1^2*x2 + x2^2*x1").unwrap()).unwrap();
        assert_eq!(c, PotentialClass::NotInvertible);
    }

    #[test]
    fn non_unit_coefficients_rejected() {
        let e = classify(&parse_potential("2*x1^3").unwrap()).unwrap_err();
        assert_eq!(e, Error::NonUnitCoefficients);
    }

    #[test]
    fn relabeling_invariance() {
        let w = direct_sum(&[loop_potential(2, 3), fermat_potential(4)]);
        let base = classify(&w).unwrap();
        // rotate the three variables
        let relabeled = w.relabel(&[1, 2, 0]);
        let c = classify(&relabeled).unwrap();
        let kinds =
            |cl: &PotentialClass| -> Vec<(AtomKind, Vec<u32>)> {
                let mut v: Vec<_> = cl
                    .atoms()
                    .unwrap()
                    .iter()
                    .map(|a| (a.kind.clone(), a.exponents.clone()))
                    .collect();
                v.sort_by_key(|(_, e)| e.clone());
                v
            };
        assert_eq!(kinds(&base), kinds(&c));
    }
}

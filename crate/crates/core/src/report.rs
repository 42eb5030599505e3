//! Deterministic report assembly: every number a canonical `p/q` string,
//! every collection in canonical order, one struct per CLI schema key.

use crate::correlators::{CorrelatorValue, LoopSpace, Multiplier};
use crate::error::{Error, Result};
use crate::fjrw::{build_state_space, StateSpace};
use crate::frobenius::{GradedFrobeniusAlgebra, PoincarePolynomial};
use crate::milnor::build_quotient;
use crate::mirror::{as_two_loop, grid_algebra, verify_mirror, MirrorReport};
use crate::qpoly::{
    central_charge, classify, milnor_number_formula, weights_of, Polynomial, PotentialClass,
};
use crate::rational::{is_integer, q_to_string};
use crate::symmetry::symmetry_group;
use num::{ToPrimitive, Zero};
use serde::Serialize;

/// The single report shape all commands share; absent sections are omitted
/// from the serialized output. Field order is the canonical key order.
#[derive(Debug, Clone, Serialize, Default)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central_charge: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub milnor_number: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_space: Option<StateSpaceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring_table: Option<RingTableReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror: Option<MirrorCheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub cyclic: bool,
    pub generators: Vec<String>,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateSpaceEntry {
    pub label: String,
    pub sector: String,
    pub narrow: bool,
    pub degree: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateSpaceReport {
    pub dimension: usize,
    pub elements: Vec<StateSpaceEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RingTerm {
    pub coefficient: String,
    pub basis: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RingProduct {
    pub left: String,
    pub right: String,
    pub terms: Vec<RingTerm>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RingTableReport {
    pub basis: Vec<String>,
    pub degrees: Vec<String>,
    pub unit: String,
    pub products: Vec<RingProduct>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoincareTerm {
    pub degree: String,
    pub dimension: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoSummary {
    pub is_iso: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar_c: Option<String>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckSummary {
    pub determined: usize,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationSummary {
    pub power_rule_checked: usize,
    pub index_zero: [String; 2],
    pub mixed_four_point: String,
    pub relations_hold: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MirrorCheckReport {
    pub source: String,
    pub dual: String,
    pub dims: [usize; 2],
    pub central_charge: String,
    pub poincare_a: Vec<PoincareTerm>,
    pub poincare_b: Vec<PoincareTerm>,
    pub poincare_equal: bool,
    pub a_model_valid: bool,
    pub b_model_valid: bool,
    pub iso: IsoSummary,
    pub correlator_crosscheck: CrossCheckSummary,
    pub relations: RelationSummary,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub insertions: [String; 3],
    pub degrees: [String; 3],
    pub l_values: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub a1: u32,
    pub a2: u32,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar_c: Option<String>,
    pub crosschecked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Summary {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_crosschecked_correlators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub results: Option<Vec<CorpusEntry>>,
}

fn poincare_terms(p: &PoincarePolynomial) -> Vec<PoincareTerm> {
    p.iter()
        .map(|(d, n)| PoincareTerm {
            degree: q_to_string(d),
            dimension: *n,
        })
        .collect()
}

fn base_sections(w: &Polynomial) -> Result<Report> {
    let q = weights_of(w)?;
    let mu = milnor_number_formula(&q);
    if !is_integer(&mu) {
        return Err(Error::DegenerateWeights(format!(
            "Milnor number {} is not an integer",
            mu
        )));
    }
    Ok(Report {
        potential: Some(w.display("x")),
        weights: Some(q.weights.iter().map(q_to_string).collect()),
        central_charge: Some(q_to_string(&central_charge(&q))),
        milnor_number: mu.to_integer().to_u64(),
        class: Some(describe_class(w)?),
        ..Report::default()
    })
}

fn describe_class(w: &Polynomial) -> Result<String> {
    match classify(w)? {
        PotentialClass::NotInvertible => Err(Error::NotInvertible(
            "potential is not a sum of invertible atoms".into(),
        )),
        c => Ok(c.describe()),
    }
}

pub fn analyze_report(w: &Polynomial) -> Result<Report> {
    let mut r = base_sections(w)?;
    r.summary = Some(Summary {
        status: format!(
            "{}: invertible, class {}",
            r.potential.as_deref().unwrap_or(""),
            r.class.as_deref().unwrap_or("")
        ),
        ..Summary::default()
    });
    Ok(r)
}

fn group_section(w: &Polynomial) -> Result<GroupReport> {
    let g = symmetry_group(w)?;
    Ok(GroupReport {
        order: g.order(),
        cyclic: g.cyclic_generator().is_some(),
        generators: g.generators.iter().map(|e| e.display()).collect(),
        elements: g.elements.iter().map(|e| e.display()).collect(),
    })
}

pub fn group_report(w: &Polynomial) -> Result<Report> {
    let mut r = base_sections(w)?;
    let g = group_section(w)?;
    r.summary = Some(Summary {
        status: format!(
            "group of order {}, {}",
            g.order,
            if g.cyclic { "cyclic" } else { "not cyclic" }
        ),
        ..Summary::default()
    });
    r.group = Some(g);
    Ok(r)
}

fn ring_table_section(alg: &GradedFrobeniusAlgebra) -> RingTableReport {
    let n = alg.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = alg.product(i, j);
            let terms: Vec<RingTerm> = p
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| RingTerm {
                    coefficient: q_to_string(c),
                    basis: alg.basis_labels[k].clone(),
                })
                .collect();
            if !terms.is_empty() {
                products.push(RingProduct {
                    left: alg.basis_labels[i].clone(),
                    right: alg.basis_labels[j].clone(),
                    terms,
                });
            }
        }
    }
    RingTableReport {
        basis: alg.basis_labels.clone(),
        degrees: alg.degrees.iter().map(q_to_string).collect(),
        unit: alg.basis_labels[alg.unit_index].clone(),
        products,
    }
}

fn pairing_section(basis: Vec<String>, matrix: &[Vec<crate::rational::Q>]) -> PairingReport {
    PairingReport {
        basis,
        matrix: matrix
            .iter()
            .map(|row| row.iter().map(q_to_string).collect())
            .collect(),
    }
}

pub fn milnor_report(w: &Polynomial) -> Result<Report> {
    let mut r = base_sections(w)?;
    let q = build_quotient(w)?;
    let alg = q.as_frobenius();
    r.milnor_number = Some(q.dim() as u64);
    r.pairing = Some(pairing_section(alg.basis_labels.clone(), &alg.pairing));
    r.ring_table = Some(ring_table_section(&alg));
    r.summary = Some(Summary {
        status: format!("quotient ring of dimension {}", q.dim()),
        ..Summary::default()
    });
    Ok(r)
}

fn state_space_sections(space: &StateSpace) -> (StateSpaceReport, PairingReport) {
    let elements: Vec<StateSpaceEntry> = space
        .basis
        .iter()
        .enumerate()
        .map(|(i, e)| StateSpaceEntry {
            label: e.label.clone(),
            sector: e.element.display(),
            narrow: space.sectors[e.sector_index].is_narrow(),
            degree: q_to_string(&space.degrees[i]),
        })
        .collect();
    let labels: Vec<String> = space.basis.iter().map(|e| e.label.clone()).collect();
    (
        StateSpaceReport {
            dimension: space.basis.len(),
            elements,
        },
        pairing_section(labels, &space.pairing),
    )
}

pub fn state_space_report(w: &Polynomial) -> Result<Report> {
    let mut r = base_sections(w)?;
    let group = symmetry_group(w)?;
    let space = build_state_space(w, &group)?;
    let (ss, pairing) = state_space_sections(&space);
    r.group = Some(group_section(w)?);
    r.summary = Some(Summary {
        status: format!("state space of dimension {}", ss.dimension),
        ..Summary::default()
    });
    r.state_space = Some(ss);
    r.pairing = Some(pairing);
    Ok(r)
}

/// Trace of every determined nonzero correlator, deduplicated by sorted
/// index triple, in canonical order.
fn correlator_trace(space: &StateSpace) -> Result<Vec<TraceEntry>> {
    let mult = Multiplier::new(space)?;
    let n = space.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                if let CorrelatorValue::Determined { value, axiom } =
                    mult.three_point([i, j, k])?
                {
                    if value.is_zero() {
                        continue;
                    }
                    let t = crate::correlators::trace_three_point(space, [i, j, k])?;
                    out.push(TraceEntry {
                        insertions: t.insertions,
                        degrees: t.degrees.map(|d| q_to_string(&d)),
                        l_values: t.l.iter().map(q_to_string).collect(),
                        axiom: Some(axiom.name().into()),
                        value: Some(q_to_string(&value)),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The loop orbifold ring: state space, pairing, transported table with
/// cross-checks, and the trace of axiom-determined correlators.
pub fn ring_report(w: &Polynomial) -> Result<Report> {
    let (a1, a2) = as_two_loop(w).ok_or_else(|| {
        Error::WrongShape(format!(
            "ring table requires a two-variable loop, got {}",
            classify(w).map(|c| c.describe()).unwrap_or_default()
        ))
    })?;
    let mut r = base_sections(w)?;
    let ls = LoopSpace::new(a1, a2)?;
    let grid = grid_algebra(a1, a2)?;
    let ring = crate::correlators::loop_ring(&ls, &grid)?;
    let (ss, pairing) = state_space_sections(&ls.space);
    r.group = Some(group_section(w)?);
    r.state_space = Some(ss);
    r.pairing = Some(pairing);
    r.ring_table = Some(ring_table_section(&ring.algebra));
    r.trace = Some(correlator_trace(&ls.space)?);
    r.summary = Some(Summary {
        status: format!(
            "ring table closed; {} of {} products determined by axioms, 0 mismatches",
            ring.crosscheck.pairs_determined, ring.crosscheck.pairs_total
        ),
        ..Summary::default()
    });
    Ok(r)
}

fn mirror_section(m: &MirrorReport) -> MirrorCheckReport {
    MirrorCheckReport {
        source: m.source.clone(),
        dual: m.dual.clone(),
        dims: [m.dim_b, m.dim_a],
        central_charge: q_to_string(&m.central_charge),
        poincare_a: poincare_terms(&m.poincare_a),
        poincare_b: poincare_terms(&m.poincare_b),
        poincare_equal: m.poincare_equal,
        a_model_valid: m.a_model_valid,
        b_model_valid: m.b_model_valid,
        iso: IsoSummary {
            is_iso: m.iso.is_iso,
            scalar_c: m.iso.scalar_c.as_ref().map(q_to_string),
            violations: m.iso.violations.clone(),
        },
        correlator_crosscheck: CrossCheckSummary {
            determined: m.crosscheck.pairs_determined,
            checked: m.crosscheck.entries_checked,
            mismatches: m.crosscheck.mismatches.clone(),
        },
        relations: RelationSummary {
            power_rule_checked: m.relations.power_rule_checked,
            index_zero: [
                q_to_string(&m.relations.index_zero.0),
                q_to_string(&m.relations.index_zero.1),
            ],
            mixed_four_point: q_to_string(&m.relations.mixed_four_point),
            relations_hold: m.relations.relations_hold,
        },
        passed: m.passed(),
    }
}

pub fn mirror_check_report(w: &Polynomial) -> Result<Report> {
    let (a1, a2) = as_two_loop(w).ok_or_else(|| {
        Error::WrongShape(format!(
            "mirror check requires a two-variable loop, got {}",
            classify(w).map(|c| c.describe()).unwrap_or_default()
        ))
    })?;
    let mut r = base_sections(w)?;
    let m = verify_mirror(a1, a2)?;
    let section = mirror_section(&m);
    r.summary = Some(Summary {
        status: if section.passed {
            format!(
                "mirror isomorphism verified, scalar c = {}",
                section.iso.scalar_c.as_deref().unwrap_or("?")
            )
        } else {
            "mirror verification FAILED".into()
        },
        ..Summary::default()
    });
    r.mirror = Some(section);
    Ok(r)
}

/// Runs the whole family `2 ≤ a1, a2 ≤ max_exponent`; the report carries
/// one entry per pair in lexicographic order.
pub fn corpus_report(max_exponent: u32) -> Report {
    let mut results = Vec::new();
    let mut passed = 0;
    let mut total_crosschecked = 0;
    for a1 in 2..=max_exponent {
        for a2 in 2..=max_exponent {
            match verify_mirror(a1, a2) {
                Ok(m) => {
                    let ok = m.passed();
                    if ok {
                        passed += 1;
                    }
                    total_crosschecked += m.crosscheck.entries_checked;
                    results.push(CorpusEntry {
                        a1,
                        a2,
                        passed: ok,
                        scalar_c: m.iso.scalar_c.as_ref().map(q_to_string),
                        crosschecked: m.crosscheck.entries_checked,
                        error: None,
                    });
                }
                Err(e) => results.push(CorpusEntry {
                    a1,
                    a2,
                    passed: false,
                    scalar_c: None,
                    crosschecked: 0,
                    error: Some(e.to_string()),
                }),
            }
        }
    }
    let pairs = results.len();
    let failed = pairs - passed;
    Report {
        summary: Some(Summary {
            status: format!("{} of {} loops verified", passed, pairs),
            pairs: Some(pairs),
            passed: Some(passed),
            failed: Some(failed),
            total_crosschecked_correlators: Some(total_crosschecked),
            results: Some(results),
        }),
        ..Report::default()
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// Plain-text rendering with the same section order as the JSON keys.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(p) = &self.potential {
            s.push_str(&format!("potential: {}\n", p));
        }
        if let Some(w) = &self.weights {
            s.push_str(&format!("weights: {}\n", w.join(", ")));
        }
        if let Some(c) = &self.central_charge {
            s.push_str(&format!("central charge: {}\n", c));
        }
        if let Some(m) = &self.milnor_number {
            s.push_str(&format!("milnor number: {}\n", m));
        }
        if let Some(c) = &self.class {
            s.push_str(&format!("class: {}\n", c));
        }
        if let Some(g) = &self.group {
            s.push_str(&format!(
                "group: order {} ({})\n",
                g.order,
                if g.cyclic { "cyclic" } else { "not cyclic" }
            ));
            for gen in &g.generators {
                s.push_str(&format!("  generator {}\n", gen));
            }
        }
        if let Some(ss) = &self.state_space {
            s.push_str(&format!("state space: dimension {}\n", ss.dimension));
            for e in &ss.elements {
                s.push_str(&format!(
                    "  {}  degree {}  [{}]\n",
                    e.label,
                    e.degree,
                    if e.narrow { "narrow" } else { "broad" }
                ));
            }
        }
        if let Some(p) = &self.pairing {
            s.push_str("pairing:\n");
            for (label, row) in p.basis.iter().zip(&p.matrix) {
                s.push_str(&format!("  {}: {}\n", label, row.join(" ")));
            }
        }
        if let Some(t) = &self.ring_table {
            s.push_str(&format!("ring table: unit {}\n", t.unit));
            for p in &t.products {
                let rhs: Vec<String> = p
                    .terms
                    .iter()
                    .map(|t| format!("{}·{}", t.coefficient, t.basis))
                    .collect();
                s.push_str(&format!(
                    "  {} ⋆ {} = {}\n",
                    p.left,
                    p.right,
                    rhs.join(" + ")
                ));
            }
        }
        if let Some(m) = &self.mirror {
            s.push_str(&format!(
                "mirror: {} | {}\n  dims {} = {}, iso {}, scalar c {}\n  crosschecked {} determined products, {} mismatches\n  relations hold: {}\n",
                m.source,
                m.dual,
                m.dims[0],
                m.dims[1],
                m.iso.is_iso,
                m.iso.scalar_c.as_deref().unwrap_or("-"),
                m.correlator_crosscheck.determined,
                m.correlator_crosscheck.mismatches.len(),
                m.relations.relations_hold
            ));
        }
        if let Some(tr) = &self.trace {
            s.push_str(&format!("trace: {} determined correlators\n", tr.len()));
            for t in tr {
                s.push_str(&format!(
                    "  <{}; {}; {}> = {} [{}]\n",
                    t.insertions[0],
                    t.insertions[1],
                    t.insertions[2],
                    t.value.as_deref().unwrap_or("open"),
                    t.axiom.as_deref().unwrap_or("-")
                ));
            }
        }
        if let Some(sum) = &self.summary {
            s.push_str(&format!("summary: {}\n", sum.status));
            if let Some(results) = &sum.results {
                for r in results {
                    s.push_str(&format!(
                        "  loop({},{}): {}{}\n",
                        r.a1,
                        r.a2,
                        if r.passed { "passed" } else { "FAILED" },
                        r.scalar_c
                            .as_deref()
                            .map(|c| format!(", c = {}", c))
                            .unwrap_or_default()
                    ));
                }
            }
        }
        s
    }

    /// A verification-style report that did not fully pass.
    pub fn verification_failed(&self) -> bool {
        if let Some(m) = &self.mirror {
            if !m.passed {
                return true;
            }
        }
        if let Some(s) = &self.summary {
            if s.failed.map_or(false, |f| f > 0) {
                return true;
            }
        }
        false
    }
}

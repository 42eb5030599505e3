//! The acceptance gate: one line per criterion, exact checks over the full
//! loop family 2 ≤ a1, a2 ≤ 7. Runs without the libtest harness so the
//! per-criterion results always reach the console.

use fjrw_core::correlators::{loop_ring, three_point, LoopSpace};
use fjrw_core::error::Error;
use fjrw_core::fjrw::build_state_space;
use fjrw_core::frobenius::{tensor, validate, verify_isomorphism};
use fjrw_core::milnor::build_quotient;
use fjrw_core::mirror::{
    grid_algebra, loop_mirror_pair, mirror_map, verify_mirror, MirrorReport,
};
use fjrw_core::qpoly::{
    central_charge, loop_potential, milnor_number_formula, parse_potential, weights_of,
};
use fjrw_core::rational::{qi, qr, Q};
use fjrw_core::report::analyze_report;
use fjrw_core::symmetry::{
    grading_element_j, group_op, inverse, loop_generators, symmetry_group, PhaseVector,
};
use num::One;

const MAX: u32 = 7;

fn loops() -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for a1 in 2..=MAX {
        for a2 in 2..=MAX {
            v.push((a1, a2));
        }
    }
    v
}

fn check(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn orbit_size(g: &PhaseVector) -> usize {
    let id = PhaseVector::identity(g.len());
    let mut cur = g.clone();
    let mut n = 1;
    while cur != id {
        cur = group_op(&cur, g).unwrap();
        n += 1;
        assert!(n < 10_000, "runaway orbit");
    }
    n
}

fn c1_group_structure() -> Result<(), String> {
    for (a1, a2) in loops() {
        let w = loop_potential(a1, a2);
        let g = symmetry_group(&w).map_err(|e| e.to_string())?;
        let expect = (a1 as usize) * (a2 as usize) - 1;
        check(g.order() == expect, &format!("order at ({},{})", a1, a2))?;
        check(
            g.cyclic_generator().is_some(),
            &format!("cyclicity at ({},{})", a1, a2),
        )?;
        let (g1, g2) = loop_generators(a1, a2);
        check(
            orbit_size(&g1) == expect && orbit_size(&g2) == expect,
            &format!("generators at ({},{})", a1, a2),
        )?;
    }
    Ok(())
}

fn c2_state_space() -> Result<(), String> {
    for (a1, a2) in loops() {
        let ls = LoopSpace::new(a1, a2).map_err(|e| e.to_string())?;
        check(
            ls.space.dim() == (a1 * a2) as usize,
            &format!("dimension at ({},{})", a1, a2),
        )?;
        let broad: Vec<String> = ls
            .space
            .basis
            .iter()
            .filter(|e| !ls.space.sectors[e.sector_index].is_narrow())
            .map(|e| e.monomial.display("x"))
            .collect();
        check(
            broad.len() == 2
                && broad.contains(&format!("x1^{}", a1 - 1).replace("^1", ""))
                && broad.contains(&format!("x2^{}", a2 - 1).replace("^1", "")),
            &format!("broad elements at ({},{}): {:?}", a1, a2, broad),
        )?;
    }
    Ok(())
}

fn c3_milnor_numbers() -> Result<(), String> {
    for (a1, a2) in loops() {
        for w in [loop_potential(a1, a2), loop_mirror_pair(a1, a2).dual] {
            let q = build_quotient(&w).map_err(|e| e.to_string())?;
            let formula = milnor_number_formula(&weights_of(&w).map_err(|e| e.to_string())?);
            check(
                qi(q.dim() as i64) == formula && q.dim() == (a1 * a2) as usize,
                &format!("Milnor number at ({},{})", a1, a2),
            )?;
        }
    }
    Ok(())
}

fn c4_degree_formula() -> Result<(), String> {
    for (a1, a2) in loops() {
        let ls = LoopSpace::new(a1, a2).map_err(|e| e.to_string())?;
        let cc = central_charge(&ls.space.weights);
        for alpha in 0..a2 {
            for beta in 0..a1 {
                let i = ls.form_basis_index(alpha, beta);
                check(
                    ls.space.degrees[i] == ls.form_degree(alpha, beta),
                    &format!("degree of form ({},{}) at ({},{})", alpha, beta, a1, a2),
                )?;
            }
        }
        for (i, e) in ls.space.basis.iter().enumerate() {
            if !ls.space.sectors[e.sector_index].is_narrow() {
                check(
                    ls.space.degrees[i] == cc,
                    &format!("broad degree at ({},{})", a1, a2),
                )?;
            }
        }
    }
    Ok(())
}

fn c5_power_rule_and_relations(reports: &[MirrorReport]) -> Result<(), String> {
    for m in reports {
        let r = &m.relations;
        check(
            r.relations_hold
                && r.power_rule_checked as u32 == (m.a1 - 1) + (m.a2 - 1)
                && r.index_zero == (qi(-(m.a1 as i64)), qi(-(m.a2 as i64)))
                && r.mixed_four_point.is_one(),
            &format!("relations at ({},{})", m.a1, m.a2),
        )?;
    }
    Ok(())
}

fn c6_mirror_theorem(reports: &[MirrorReport]) -> Result<(), String> {
    for m in reports {
        check(
            m.passed() && m.iso.scalar_c.is_some() && m.poincare_equal && m.dim_a == m.dim_b,
            &format!("mirror at ({},{}): {:?}", m.a1, m.a2, m.iso.violations),
        )?;
    }
    // spot values at the smallest loop
    let w = loop_potential(2, 2);
    let group = symmetry_group(&w).map_err(|e| e.to_string())?;
    let s = build_state_space(&w, &group).map_err(|e| e.to_string())?;
    let j = grading_element_j(&s.weights);
    let ij = s.index_of_narrow(&j).unwrap();
    let itop = s.index_of_narrow(&inverse(&j)).unwrap();
    check(s.pairing[ij][itop] == Q::one(), "narrow top pair at (2,2)")?;
    let g = grid_algebra(2, 2).map_err(|e| e.to_string())?;
    check(
        g.grid_pairing(g.grid_index(0, 0), g.grid_index(1, 1))
            .map_err(|e| e.to_string())?
            == qr(1, 3),
        "dual pairing <1, y1y2> at (2,2)",
    )?;
    let m22 = reports.iter().find(|m| (m.a1, m.a2) == (2, 2)).unwrap();
    check(m22.iso.scalar_c == Some(qi(3)), "scalar c at (2,2)")
}

fn c7_frobenius_suites(reports: &[MirrorReport]) -> Result<(), String> {
    for m in reports {
        check(
            m.a_model_valid && m.b_model_valid,
            &format!("validation at ({},{})", m.a1, m.a2),
        )?;
    }
    // tensor product of two loop A-models
    let ring = |a1, a2| -> Result<_, String> {
        let ls = LoopSpace::new(a1, a2).map_err(|e| e.to_string())?;
        let grid = grid_algebra(a1, a2).map_err(|e| e.to_string())?;
        Ok(loop_ring(&ls, &grid).map_err(|e| e.to_string())?.algebra)
    };
    let a = ring(2, 2)?;
    let b = ring(2, 3)?;
    let t = tensor(&a, &b);
    check(
        t.dim() == a.dim() * b.dim() && validate(&t).is_valid(),
        "tensor of loop(2,2) and loop(2,3)",
    )
}

fn c8_axiom_consistency(reports: &[MirrorReport]) -> Result<(), String> {
    let mut total_determined = 0;
    let mut bound = 0;
    for m in reports {
        check(
            m.crosscheck.mismatches.is_empty(),
            &format!("cross-check at ({},{})", m.a1, m.a2),
        )?;
        total_determined += m.crosscheck.pairs_determined;
        bound += ((m.a1 - 2) + (m.a2 - 2) + 2) as usize;
    }
    check(
        total_determined >= bound,
        &format!("coverage {} below bound {}", total_determined, bound),
    )?;
    // permutation invariance, exhaustively at one loop
    let ls = LoopSpace::new(2, 3).map_err(|e| e.to_string())?;
    let n = ls.space.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let base = three_point(&ls.space, [i, j, k]).map_err(|e| e.to_string())?;
                for p in [[j, k, i], [k, i, j], [j, i, k]] {
                    check(
                        three_point(&ls.space, p).map_err(|e| e.to_string())? == base,
                        "permutation invariance at (2,3)",
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn c9_negative_controls() -> Result<(), String> {
    let ls = LoopSpace::new(2, 3).map_err(|e| e.to_string())?;
    let grid = grid_algebra(2, 3).map_err(|e| e.to_string())?;
    let ring = loop_ring(&ls, &grid).map_err(|e| e.to_string())?;
    let b = grid.as_frobenius().map_err(|e| e.to_string())?;
    let mut map = mirror_map(&grid, &ls);
    map.swap(0, 1);
    check(
        !verify_isomorphism(&b, &ring.algebra, &map).is_iso,
        "scrambled map must fail",
    )?;
    let degenerate = parse_potential("x1^2*x2^2 + x1*x2").unwrap();
    check(
        matches!(
            analyze_report(&degenerate),
            Err(Error::DegenerateWeights(_))
        ),
        "degenerate exponent matrix must be rejected",
    )?;
    let non_invertible = parse_potential("x1*x2").unwrap();
    check(
        matches!(analyze_report(&non_invertible), Err(Error::NotInvertible(_))),
        "non-invertible input must be rejected",
    )
}

fn main() {
    let reports: Vec<MirrorReport> = loops()
        .into_iter()
        .map(|(a1, a2)| verify_mirror(a1, a2).unwrap_or_else(|e| {
            panic!("verify_mirror({}, {}) errored: {}", a1, a2, e)
        }))
        .collect();

    let criteria: Vec<(&str, Box<dyn FnOnce() -> Result<(), String>>)> = vec![
        ("group structure", Box::new(c1_group_structure)),
        ("state space", Box::new(c2_state_space)),
        ("milnor numbers", Box::new(c3_milnor_numbers)),
        ("degree formula", Box::new(c4_degree_formula)),
        (
            "power rule and relations",
            Box::new({
                let r = reports.clone();
                move || c5_power_rule_and_relations(&r)
            }),
        ),
        (
            "mirror theorem",
            Box::new({
                let r = reports.clone();
                move || c6_mirror_theorem(&r)
            }),
        ),
        (
            "frobenius suites",
            Box::new({
                let r = reports.clone();
                move || c7_frobenius_suites(&r)
            }),
        ),
        (
            "axiom consistency",
            Box::new({
                let r = reports.clone();
                move || c8_axiom_consistency(&r)
            }),
        ),
        ("negative controls", Box::new(c9_negative_controls)),
    ];

    let mut failures = 0;
    for (n, (name, f)) in criteria.into_iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {} ({}): pass", n + 1, name),
            Err(e) => {
                println!("criterion {} ({}): FAIL — {}", n + 1, name, e);
                failures += 1;
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

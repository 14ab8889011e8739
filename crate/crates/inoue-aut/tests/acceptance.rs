//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `cargo test --test acceptance --
//! --nocapture`).  Every tolerance is pinned here; the symbolic
//! identities are exact and the numeric re-verifications use relative
//! tolerance 1e-9 with 20 samples.

use inoue_aut::autgroup::{verify_relations, window_charts, CoverAut};
use inoue_aut::quotient::{
    branched_cover_base, build_branched_cover, cover_surface_for, quotient_by_mixed_cyclic,
    quotient_by_torus_cyclic, quotient_free_cyclic, quotient_involution, QuotientReport,
};
use inoue_aut::report::CheckSet;
use inoue_aut::surface::{verify_corollary_1_2, verify_homomorphisms, verify_theorem_1_1, Surface};

fn conclude(criterion: &str, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {}{}",
        if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() || ok {
            String::new()
        } else {
            format!(" - {detail}")
        }
    );
    assert!(ok, "{criterion}: {detail}");
}

fn failures(checks: &CheckSet) -> String {
    checks
        .failures()
        .iter()
        .map(|c| c.name.clone())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Criterion 1: the relation suite for every m in 1..8, exact normal-form
/// equalities plus numeric re-verification at 20 random assignments
/// within 1e-9.
#[test]
fn criterion_1_relation_suite() {
    let mut ok = true;
    let mut detail = String::new();
    for m in 1..=8 {
        let surface = Surface::standard(m).unwrap();
        let checks = verify_relations(surface.context(), 3 * m).unwrap();
        if !checks.all_pass() {
            ok = false;
            detail = format!("m={m}: {}", failures(&checks));
        }
    }
    conclude("1 (relation suite, m = 1..8)", ok, &detail);
}

/// Criterion 2: the structure suite for every m in 1..8: center, the
/// commutative mu_m x C*, the conjugation twist, the m subgroups M_j and
/// their conjugacy, and the exhaustive mu_m x mu_m Cayley table.
#[test]
fn criterion_2_structure_suite() {
    let mut ok = true;
    let mut detail = String::new();
    for m in 1..=8 {
        let surface = Surface::standard(m).unwrap();
        let theorem = verify_theorem_1_1(&surface).unwrap();
        let corollary = verify_corollary_1_2(&surface).unwrap();
        if !theorem.all_pass() || !corollary.all_pass() {
            ok = false;
            detail = format!(
                "m={m}: {} {}",
                failures(&theorem),
                failures(&corollary)
            );
        }
    }
    conclude("2 (structure suite, m = 1..8)", ok, &detail);
}

fn example_1_reports() -> Vec<QuotientReport> {
    let mut reports = Vec::new();
    for m in [2, 3, 4, 6] {
        let s = Surface::standard(m).unwrap();
        for i in 0..m {
            reports.push(quotient_free_cyclic(&s, i).unwrap());
        }
    }
    reports
}

fn example_2_reports() -> Vec<(i64, i64, QuotientReport)> {
    [(1, 2), (2, 2), (2, 3), (3, 2)]
        .into_iter()
        .map(|(m, l)| {
            let s = Surface::with_modulus(m, 2 * m * l).unwrap();
            (m, l, quotient_by_torus_cyclic(&s, l).unwrap())
        })
        .collect()
}

fn prop_4_2_reports() -> Vec<(i64, i64, i64, QuotientReport)> {
    [(4, 2, 0), (4, 2, 1), (6, 2, 1), (6, 3, 0)]
        .into_iter()
        .map(|(m, l, j)| {
            let s = Surface::standard(m).unwrap();
            (m, l, j, quotient_by_mixed_cyclic(&s, j, l).unwrap())
        })
        .collect()
}

fn example_4_reports() -> Vec<(i64, QuotientReport)> {
    [2, 4, 6]
        .into_iter()
        .map(|m| {
            let s = Surface::standard(m).unwrap();
            (m, quotient_involution(&s).unwrap())
        })
        .collect()
}

fn all_reports() -> Vec<QuotientReport> {
    let mut reports = example_1_reports();
    reports.extend(example_2_reports().into_iter().map(|(_, _, r)| r));
    reports.extend(prop_4_2_reports().into_iter().map(|(_, _, _, r)| r));
    reports.extend(example_4_reports().into_iter().map(|(_, r)| r));
    for (n, l) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
        let base = branched_cover_base(n, l).unwrap();
        for root in 0..l {
            reports.push(build_branched_cover(&base, l, root).unwrap());
        }
    }
    reports
}

/// Criterion 3: the quotient identities, exact with tolerance zero.
#[test]
fn criterion_3_quotient_identities() {
    let mut ok = true;
    let mut detail = String::new();
    let mut fail = |msg: String| {
        ok = false;
        detail = msg;
    };

    // Example 1: m quotients S(1, zeta_m^i beta) for m in {2, 3, 4, 6}.
    for m in [2, 3, 4, 6] {
        let s = Surface::standard(m).unwrap();
        for i in 0..m {
            let report = quotient_free_cyclic(&s, i).unwrap();
            let expected_param = s
                .scalars()
                .rho()
                .pow(i)
                .mul(&s.scalars().beta())
                .unwrap();
            if report.result.m != 1
                || report.result.param != expected_param
                || !report.all_checks_pass()
            {
                fail(format!("Example 1 (m={m}, i={i}): {}", failures(&report.checks)));
            }
        }
    }

    // Example 2: S(ml, alpha) with m singular points of type A_{l-1},
    // resolved cycle of length ml, E^2 = -ml.
    for (m, l, report) in example_2_reports() {
        let a_type = format!("A_{}", l - 1);
        if report.result.m != m * l
            || report.result.param != Surface::with_modulus(m, 2 * m * l).unwrap().alpha()
            || report.singularities.len() as i64 != m
            || !report.singularities.iter().all(|s| s.label == a_type)
            || report.final_cycle.len() as i64 != m * l
            || report.elliptic_self_int != -m * l
            || !report.all_checks_pass()
        {
            fail(format!("Example 2 (m={m}, l={l}): {}", failures(&report.checks)));
        }
    }

    // Prop 4.2: S(m/l, alpha^l), independent of j.
    let mixed = prop_4_2_reports();
    for (m, l, j, report) in &mixed {
        let s = Surface::standard(*m).unwrap();
        if report.result.m != m / l
            || report.result.param != s.alpha().pow(*l)
            || !report.all_checks_pass()
        {
            fail(format!("Prop 4.2 (m={m}, l={l}, j={j}): {}", failures(&report.checks)));
        }
    }
    let (j0, j1) = (
        quotient_by_mixed_cyclic(&Surface::standard(4).unwrap(), 0, 2).unwrap(),
        quotient_by_mixed_cyclic(&Surface::standard(4).unwrap(), 1, 2).unwrap(),
    );
    if j0.result != j1.result || j0.final_cycle != j1.final_cycle {
        fail("Prop 4.2: quotient depends on j".into());
    }

    // Example 4: alternating -4 / -1 image self-intersections, final
    // S(m/2, alpha^2).
    for (m, report) in example_4_reports() {
        let s = Surface::standard(m).unwrap();
        let alternating: Vec<i64> = (0..m).map(|k| if k % 2 == 0 { -4 } else { -1 }).collect();
        if report.resolved_cycle != alternating
            || report.result.m != m / 2
            || report.result.param != s.alpha().pow(2)
            || !report.all_checks_pass()
        {
            fail(format!("Example 4 (m={m}): {}", failures(&report.checks)));
        }
    }

    // Lemma 4.3 round trip over all root choices.
    for (n, l) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
        let base = branched_cover_base(n, l).unwrap();
        for root in 0..l {
            let up = build_branched_cover(&base, l, root).unwrap();
            let cover = cover_surface_for(&base, l, root).unwrap();
            let down = quotient_by_mixed_cyclic(&cover, 0, l).unwrap();
            if up.result.m != n * l
                || up.result.param != cover.alpha()
                || down.result.m != n
                || down.result.param != base.alpha()
                || !up.all_checks_pass()
                || !down.all_checks_pass()
            {
                fail(format!("Lemma 4.3 round trip (n={n}, l={l}, root={root})"));
            }
        }
    }

    conclude("3 (quotient identities)", ok, &detail);
}

/// Criterion 4: the fan/lattice route and the degree-rule route agree on
/// singularity lists, cycle lengths, and self-intersections for every
/// report of criterion 3.
#[test]
fn criterion_4_cross_route_agreement() {
    let mut ok = true;
    let mut detail = String::new();
    for report in all_reports() {
        if !report.routes_agree {
            ok = false;
            detail = format!("{:?} quotient of S({})", report.kind, report.input.m);
        }
    }
    conclude("4 (cross-route agreement)", ok, &detail);
}

/// Criterion 5: normal-form composition agrees with chart-level monomial
/// composition for all pairs from the generating set over m <= 6 on the
/// window |k| <= 3m.
#[test]
fn criterion_5_oracle_equivalence() {
    let mut ok = true;
    let mut detail = String::new();
    'outer: for m in 1..=6 {
        let surface = Surface::standard(m).unwrap();
        let actx = surface.context();
        let sctx = surface.scalars();
        let mut generators = vec![
            CoverAut::gamma_beta(actx),
            CoverAut::nu(actx).unwrap(),
            CoverAut::torus(actx, sctx.s(), sctx.t()),
        ];
        for a in 0..m {
            for b in 0..m {
                generators.push(CoverAut::torus(
                    actx,
                    surface.rho().pow(a),
                    surface.rho().pow(b),
                ));
            }
        }
        for g in &generators {
            for h in &generators {
                let composed = g.compose(h).unwrap();
                for chart in window_charts(3 * m) {
                    let left = g.realize(chart).unwrap();
                    let right = h.realize(left.target).unwrap();
                    if left.compose(&right).unwrap() != composed.realize(chart).unwrap() {
                        ok = false;
                        detail = format!("m={m}: pair mismatch on {chart}");
                        break 'outer;
                    }
                }
            }
        }
    }
    conclude("5 (oracle equivalence, m <= 6, window 3m)", ok, &detail);
}

/// Criterion 6: cycle_rotation, induced_on_E and h2_action are
/// homomorphisms on H, and the image in D_m is exactly the rotation
/// subgroup.
#[test]
fn criterion_6_homomorphism_properties() {
    let mut ok = true;
    let mut detail = String::new();
    for m in 1..=6 {
        let surface = Surface::standard(m).unwrap();
        let checks = verify_homomorphisms(&surface, 3 * m).unwrap();
        if !checks.all_pass() {
            ok = false;
            detail = format!("m={m}: {}", failures(&checks));
        }
    }
    conclude("6 (homomorphism properties)", ok, &detail);
}

/// Criterion 7: Euler-number conservation holds for every generated
/// quotient report.
#[test]
fn criterion_7_euler_conservation() {
    let mut ok = true;
    let mut detail = String::new();
    for report in all_reports() {
        let euler_ok = report.euler.e_final == report.result.m
            && report
                .checks
                .checks()
                .iter()
                .filter(|c| c.name.contains("Euler"))
                .all(|c| c.status == inoue_aut::report::CheckStatus::Pass);
        if !euler_ok {
            ok = false;
            detail = format!(
                "{:?} quotient of S({}): e_final = {}, m' = {}",
                report.kind, report.input.m, report.euler.e_final, report.result.m
            );
        }
    }
    conclude("7 (Euler-number conservation)", ok, &detail);
}

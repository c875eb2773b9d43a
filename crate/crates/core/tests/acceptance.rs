//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use polybinom::chromatic::{chi_star, chi_star_via_orders, chromatic_decomposition, monomial_form_report};
use polybinom::flows::flow_polynomials;
use polybinom::graph::{connected_simple_graphs, enumerate_totally_cyclic_orientations};
use polybinom::order::{
    ehrhart_polynomial, hstar_via_descents, interior_hstar, lattice_hstar, omega_star, order_decomposition,
    order_polytope_points,
};
use polybinom::poset::{all_posets, distinct_classes};
use polybinom::stapledon::{check_partial_sum_inequalities, Family};
use polybinom::survey::flow_fixtures;
use polybinom::{binomial_transform, inverse_transform, stapledon_ab, stapledon_ca, IntPolynomial, Mode, Multigraph, Poset, Start};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

fn graphs_up_to_six() -> Result<Vec<Multigraph>, String> {
    let mut all = Vec::new();
    for d in 1..=6 {
        all.extend(connected_simple_graphs(d).map_err(|e| e.to_string())?);
    }
    Ok(all)
}

fn posets_up_to_five() -> Result<Vec<Poset>, String> {
    let mut all = Vec::new();
    for d in 1..=5 {
        all.extend(all_posets(d).map_err(|e| e.to_string())?);
    }
    Ok(all)
}

fn monomial_forms() -> Outcome {
    let report = monomial_form_report().map_err(|e| e.to_string())?;
    let matched = report.matches.iter().filter(|m| !m.matched_j.is_empty()).count();
    ensure(report.all_matched, || format!("only {matched} of {} rows matched", report.matches.len()))?;
    Ok(format!("{matched} of 4 reference rows reproduced exactly"))
}

fn chromatic_split() -> Outcome {
    let graphs = graphs_up_to_six()?;
    ensure(graphs.len() == 143, || format!("{} graphs instead of 143", graphs.len()))?;
    for g in &graphs {
        let r = chromatic_decomposition(g, Mode::Verify).map_err(|e| format!("{g:?}: {e}"))?;
        ensure(r.split.p[0] == BigInt::from(r.acyclic_count), || format!("{g:?}: a0"))?;
    }
    Ok("143 connected graphs, zero counterexamples".into())
}

fn chromatic_via_orders() -> Outcome {
    for g in graphs_up_to_six()? {
        let direct = chi_star(&g).map_err(|e| e.to_string())?;
        let summed = chi_star_via_orders(&g).map_err(|e| e.to_string())?;
        ensure(direct == summed, || format!("{g:?}: {direct} != {summed}"))?;
    }
    Ok("143 of 143 equal".into())
}

fn order_split() -> Outcome {
    let counts: Vec<usize> = (1..=5).map(|d| all_posets(d).map(|v| v.len()).unwrap_or(0)).collect();
    ensure(counts == [1, 2, 5, 16, 63], || format!("generator counts {counts:?}"))?;
    for d in 1..=5 {
        let ps = all_posets(d).map_err(|e| e.to_string())?;
        let classes = distinct_classes(&ps).map_err(|e| e.to_string())?;
        ensure(classes == ps.len(), || format!("d={d}: repeated isomorphism classes"))?;
    }
    let posets = posets_up_to_five()?;
    for p in &posets {
        order_decomposition(p, Mode::Verify).map_err(|e| format!("{p:?}: {e}"))?;
        let w = omega_star(p).map_err(|e| e.to_string())?;
        let d = p.len();
        for family in [Family::MirrorSums, Family::BinomialGrowth] {
            let audit = check_partial_sum_inequalities(w.entries(), d, family);
            ensure(!audit.is_violated(), || format!("{p:?}: {family} violated"))?;
        }
    }
    Ok(format!("{} poset classes, zero counterexamples", posets.len()))
}

fn order_polytope_oracles() -> Outcome {
    let posets = posets_up_to_five()?;
    for p in &posets {
        let d = p.len();
        hstar_via_descents(p).map_err(|e| format!("{p:?}: {e}"))?;
        let ehr = ehrhart_polynomial(p).map_err(|e| e.to_string())?;
        let sign = if d.is_multiple_of(2) { BigInt::from(1) } else { BigInt::from(-1) };
        for n in 1..=d as u64 + 2 {
            let inner = order_polytope_points(p, n, true).map_err(|e| e.to_string())?;
            ensure(&sign * ehr.evaluate(-(n as i64)) == BigInt::from(inner), || {
                format!("{p:?}: reciprocity fails at n={n}")
            })?;
        }
        let w = omega_star(p).map_err(|e| e.to_string())?;
        let inner = interior_hstar(p).map_err(|e| e.to_string())?;
        ensure(inner.get(0).is_zero() && inner.entries()[1..] == *w.entries(), || {
            format!("{p:?}: Omega* = {w}, interior h* = {inner}")
        })?;
    }
    Ok(format!("{} posets: descents, reciprocity and interior shift agree", posets.len()))
}

fn flow_splits() -> Outcome {
    let mut instances: Vec<Multigraph> = graphs_up_to_six()?
        .into_iter()
        .filter(|g| g.is_bridgeless() && (1..=5).contains(&g.cyclomatic_number()))
        .collect();
    let simple = instances.len();
    instances.extend(flow_fixtures().into_iter().map(|(_, g)| g));
    for g in &instances {
        let r = flow_polynomials(g, Mode::Verify).map_err(|e| format!("{g:?}: {e}"))?;
        ensure(r.kochol.len() == r.xi + 2 && r.kochol.iter().all(|k| k.orientation_sum == k.integral), || {
            format!("{g:?}: orientation sums")
        })?;
    }
    Ok(format!("{simple} bridgeless graphs and {} fixtures, zero counterexamples", instances.len() - simple))
}

fn fixture_regressions() -> Outcome {
    let k3 = chi_star(&Multigraph::complete(3)).map_err(|e| e.to_string())?;
    ensure(k3.entries() == ints(&[0, 0, 0, 6]).as_slice(), || format!("K3 chi* = {k3}"))?;

    let p3 = chromatic_decomposition(&Multigraph::path(3), Mode::Verify).map_err(|e| e.to_string())?;
    ensure(p3.split.p == ints(&[4, 6, 6, 4]) && p3.split.q == ints(&[4, 6, 4]), || "P3 split".into())?;

    let dipole = flow_polynomials(&Multigraph::dipole(2), Mode::Verify).map_err(|e| e.to_string())?;
    ensure(dipole.phi_star.entries() == ints(&[0, 0, 1]).as_slice(), || "double edge phi*".into())?;
    ensure(dipole.f_star.entries() == ints(&[0, 0, 2]).as_slice(), || "double edge f*".into())?;

    let theta = Multigraph::theta();
    let tr = flow_polynomials(&theta, Mode::Verify).map_err(|e| e.to_string())?;
    let tc = enumerate_totally_cyclic_orientations(&theta).map_err(|e| e.to_string())?.len();
    ensure(tr.f_split.p == ints(&[6, 6, 6, 6]) && tc == 6, || "theta c".into())?;

    let square = Poset::antichain(2);
    let h = lattice_hstar(&square).map_err(|e| e.to_string())?;
    ensure(h.entries() == ints(&[1, 1, 0]).as_slice(), || format!("unit square h* = {h}"))?;
    let ab = stapledon_ab(&h).map_err(|e| e.to_string())?;
    let inner = interior_hstar(&square).map_err(|e| e.to_string())?;
    let ca = stapledon_ca(&h, Some(&inner)).map_err(|e| e.to_string())?;
    ensure(ab.a == ints(&[1, 2, 1]) && ca.c == ints(&[1, 2, 2, 1]), || "unit square split".into())?;
    Ok("6 fixtures match".into())
}

fn transform_round_trip() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let strategy = (prop::collection::vec(-1000i64..=1000, 1..=11), 0usize..=2, any::<bool>());
    let cases = std::cell::Cell::new(0u32);
    runner
        .run(&strategy, |(coeffs, slack, one)| {
            let p = IntPolynomial::from_integers(coeffs.clone());
            let d = coeffs.len() - 1 + slack;
            let start = if one { Start::One } else { Start::Zero };
            let v = binomial_transform(&p, d, start).expect("degree fits");
            prop_assert_eq!(inverse_transform(&v), p);
            cases.set(cases.get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{} random polynomials, both start conventions", cases.get()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("monomial-basis forms for d = 5, 6, 7", monomial_forms, Duration::from_secs(1)),
        ("chromatic split on all connected graphs with d <= 6", chromatic_split, Duration::from_secs(300)),
        ("chi* equals the sum of Omega* over acyclic orientations", chromatic_via_orders, Duration::from_secs(300)),
        ("order split and inequalities on all posets with d <= 5", order_split, Duration::from_secs(120)),
        ("order polytope oracles agree for d <= 5", order_polytope_oracles, Duration::from_secs(120)),
        ("flow splits on bridgeless graphs with xi <= 5 and fixtures", flow_splits, Duration::from_secs(600)),
        ("fixture regressions", fixture_regressions, Duration::from_secs(10)),
        ("transform round trip", transform_round_trip, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}, but took longer than {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(detail) => {
                failures += 1;
                println!("FAIL {}: {name} ({detail}; {:.2} s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Run with `cargo test -p reldiv --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use reldiv::builder::Builder;
use reldiv::classical::{detect_pommaret, janet_general, pommaret_on_slice};
use reldiv::closures::{
    compliant_closure, escalier_from_seed, ideal_from_seed, is_borel_fixed_slice, revenant_closure,
};
use reldiv::enumerate::{all_divisions, canonical_form, enumerate_divisions, EnumerateOptions};
use reldiv::graphs::{generalized_graph, ufnarovsky_graph};
use reldiv::oracle::{brute_compliant, verify_division_covering, verify_ideal_equality, verify_order_ideal};
use reldiv::{enumerate_terms, sigma_expected, vandermonde_identity_check, RelDivision, TermSet, Violation};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn binomial_identity() -> Outcome {
    for n in 1..=6 {
        for d in 1..=6 {
            ensure(vandermonde_identity_check(n, d, 12), format!("fails at n={n} D={d}"))?;
        }
    }
    Ok(())
}

fn profiles() -> Outcome {
    let p = pommaret_on_slice(3, 2, &[0, 1, 2]).map_err(|e| e.to_string())?;
    ensure(p.sigma_profile() == vec![3, 2, 1], format!("profile {:?}", p.sigma_profile()))?;
    ensure(sigma_expected(3, 2) == vec![3, 2, 1], "expected (3,2,1)")?;
    let e = sigma_expected(4, 3);
    ensure(e == vec![10, 6, 3, 1], format!("expected(4,3) = {e:?}"))?;
    ensure(e.iter().sum::<usize>() == 20, "sum is not 20")?;
    let four = load("four_vars_peak_yzt.json");
    ensure(four.sigma_profile() == e, "four-variable fixture profile")
}

fn janet_equals_pommaret() -> Outcome {
    for n in 1..=4 {
        for d in 1..=4 {
            let janet = janet_general(&enumerate_terms(n, d), n).map_err(|e| e.to_string())?;
            let pom = pommaret_on_slice(n, d, &(0..n).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
            let same = janet.len() == pom.len()
                && janet.entries().zip(pom.entries()).all(|(a, b)| a == b);
            ensure(same, format!("maps differ at n={n} D={d}"))?;
        }
    }
    Ok(())
}

fn rejections() -> Outcome {
    let cyclic = load("cyclic31.json");
    let r = cyclic.validate();
    ensure(!r.valid, "cyclic division accepted")?;
    ensure(
        r.violations.contains(&Violation::ProfileMismatch { observed: vec![0, 3, 0], expected: vec![1, 1, 1] }),
        "no profile mismatch (0,3,0) vs (1,1,1)",
    )?;
    ensure(
        verify_division_covering(&cyclic, 2).violations.contains(&Violation::Uncovered { term: term("xyz", 3) }),
        "xyz not reported uncovered",
    )?;
    let two = load("general_two_vars.json");
    ensure(
        verify_division_covering(&two, 1).violations.contains(&Violation::Uncovered { term: term("xz", 3) }),
        "x1*x3 not reported uncovered",
    )?;
    let nested = load("general_nested.json");
    ensure(
        nested.validate().violations.contains(&Violation::Overlap {
            u: term("x", 2),
            v: term("x^2", 2),
            witness: term("x^2", 2),
        }),
        "overlap at x1^2 not reported",
    )
}

fn orbit_representatives() -> Outcome {
    let listed = enumerate_divisions(3, 2, EnumerateOptions { up_to_symmetry: true, parallel: false })
        .map_err(|e| e.to_string())?;
    ensure(listed.divisions.len() == 8, format!("{} representatives", listed.divisions.len()))?;
    let mut ours: Vec<Vec<u8>> = listed.divisions.iter().map(|d| canonical_form(d).unwrap()).collect();
    let mut reference: Vec<Vec<u8>> =
        slice32_representatives().iter().map(|d| canonical_form(d).unwrap()).collect();
    ours.sort();
    reference.sort();
    ensure(ours == reference, "canonical forms differ from the reference tables")
}

fn worked_closures() -> Outcome {
    let check = |file: &str, n: usize, seed: &[&str], ideal: bool, expected: TermSet| -> Outcome {
        let d = load(file);
        let (got, certified) = if ideal {
            let r = ideal_from_seed(&d, &set(seed, n), 3).map_err(|e| e.to_string())?;
            (r.generators, r.certified)
        } else {
            let r = escalier_from_seed(&d, &set(seed, n), 3).map_err(|e| e.to_string())?;
            (r.slice, r.certified)
        };
        ensure(got == expected, format!("{file} {seed:?}: got {got:?}"))?;
        ensure(certified, format!("{file} {seed:?}: not certified"))
    };
    check("peak_x2.json", 3, &["xy"], true, set(&["xy", "x^2"], 3))?;
    check("deg3_peak_xyz.json", 3, &["x*y^2"], true, enumerate_terms(3, 3).into_iter().collect())?;
    check("peak_x2.json", 3, &["xz"], false, set(&["xz", "z^2"], 3))?;
    check("peak_xy.json", 3, &["xz"], true, set(&["xz", "xy"], 3))?;
    check("peak_xy.json", 3, &["xz"], false, set(&["xz", "x^2", "z^2"], 3))?;
    check("pommaret32.json", 3, &["xy"], true, set(&["xy", "y^2", "yz", "z^2"], 3))?;
    check("four_vars_peak_yzt.json", 4, &["x^2*y"], true, set(&["x^2*y", "x^2*z", "x^2*t", "y*z*t"], 4))
}

fn labelled_edges(div: &RelDivision) -> Result<Vec<String>, String> {
    let g = ufnarovsky_graph(div).map_err(|e| e.to_string())?;
    let mut edges: Vec<String> = g
        .edges()
        .map(|(a, b, l)| format!("{a}->{b}:{}", l.map(|x| reldiv::term::var_name(x, div.n())).unwrap_or_default()))
        .collect();
    edges.sort();
    Ok(edges)
}

fn graph_golden() -> Outcome {
    let sorted = |v: &[&str]| {
        let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    };
    let pom = labelled_edges(&load("pommaret32.json"))?;
    let expected = sorted(&[
        "x*y->x^2:y", "x*z->x^2:z", "y^2->x*y:y", "y*z->x*y:z", "y*z->x*z:y", "z^2->x*z:z", "z^2->y*z:z",
        "y*z->y^2:z",
    ]);
    ensure(pom == expected, format!("pommaret edges {pom:?}"))?;
    let alt = labelled_edges(&load("peak_xy_alt.json"))?;
    let expected = sorted(&[
        "x*y->x*z:y", "x*y->x^2:y", "x*y->y^2:x", "x*y->y*z:x", "z^2->y*z:z", "x*z->x^2:z", "x*z->z^2:x",
        "y*z->y^2:z",
    ]);
    ensure(alt == expected, format!("peak-xy edges {alt:?}"))?;
    let four = load("four_vars_peak_yzt.json");
    let g = generalized_graph(&four).map_err(|e| e.to_string())?;
    ensure(
        g.reachability_equivalent(&reference_graph(&four)).map_err(|e| e.to_string())?,
        "generalized graph reachability differs from the reference edge list",
    )
}

fn labelled_graph_insufficient() -> Outcome {
    let four = load("four_vars_peak_yzt.json");
    let seed = set(&["x^2*y"], 4);
    let by_labels = ufnarovsky_graph(&four).unwrap().reachable_backward(&seed).unwrap();
    ensure(by_labels == set(&["x^2*y", "x^2*z", "x^2*t"], 4), format!("labelled closure {by_labels:?}"))?;
    let v = verify_ideal_equality(&four, &by_labels, 3).unwrap();
    ensure(!v.holds, "labelled closure unexpectedly certified")?;
    ensure(v.counterexample == Some(term("x^2*y*z*t", 4)), format!("counterexample {:?}", v.counterexample))?;
    let by_pairs = generalized_graph(&four).unwrap().reachable_backward(&seed).unwrap();
    ensure(verify_ideal_equality(&four, &by_pairs, 3).unwrap().holds, "generalized closure not certified")
}

fn oracle_equivalence() -> Outcome {
    for div in all_divisions(3, 2, false).map_err(|e| e.to_string())? {
        let g = generalized_graph(&div).unwrap();
        for bits in 0u32..64 {
            let seed: TermSet = div
                .support()
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect();
            let comp = compliant_closure(&div, &seed).unwrap().closure;
            ensure(comp == brute_compliant(&div, &seed).unwrap(), format!("first form differs, {seed:?} in {div:?}"))?;
            ensure(comp == g.reachable_backward(&seed).unwrap(), format!("backward reach differs, {seed:?}"))?;
            let rev = revenant_closure(&div, &seed).unwrap().closure;
            ensure(rev == g.reachable_forward(&seed).unwrap(), format!("forward reach differs, {seed:?}"))?;
            ensure(verify_ideal_equality(&div, &comp, 3).unwrap().holds, format!("ideal not certified, {seed:?}"))?;
            ensure(verify_order_ideal(&div, &rev, 3).unwrap().holds, format!("escalier not certified, {seed:?}"))?;
            // dropping any non-seed member leaves a set that is no longer closed
            for extra in comp.difference(&seed) {
                let mut cut = comp.clone();
                cut.remove(extra);
                ensure(!verify_ideal_equality(&div, &cut, 3).unwrap().holds, format!("truncated ideal passes, {cut:?}"))?;
            }
            for extra in rev.difference(&seed) {
                let mut cut = rev.clone();
                cut.remove(extra);
                ensure(!verify_order_ideal(&div, &cut, 3).unwrap().holds, format!("truncated escalier passes, {cut:?}"))?;
            }
        }
    }
    Ok(())
}

fn pommaret_detection() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for i in 0..20 {
        let n = 1 + i % 4;
        let d = 1 + (i / 4) as u32 % 3;
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let p = pommaret_on_slice(n, d, &order).unwrap();
        let found = detect_pommaret(&p).map_err(|e| e.to_string())?;
        let Some(found) = found else { return Err(format!("not detected: n={n} D={d} order={order:?}")) };
        ensure(pommaret_on_slice(n, d, &found).unwrap() == p, format!("reconstruction differs for {order:?}"))?;
    }
    ensure(detect_pommaret(&load("peak_xy_alt.json")).unwrap().is_none(), "peak-xy division detected")?;
    for div in all_divisions(3, 2, false).unwrap() {
        let mut sets: Vec<_> = div.entries().map(|(_, m)| m).collect();
        sets.sort_by_key(|m| m.len());
        let chain = sets.windows(2).all(|w| w[0].is_subset(w[1]));
        let found = detect_pommaret(&div).unwrap();
        ensure(found.is_some() == chain, format!("chain={chain} but detection gave {found:?} for {div:?}"))?;
    }
    Ok(())
}

fn borel_fixed() -> Outcome {
    ensure(!is_borel_fixed_slice(&set(&["xy", "y^2", "yz", "z^2"], 3), 3).unwrap(), "{xy,y^2,yz,z^2} accepted")?;
    for (n, d) in [(2, 3), (3, 2), (4, 2)] {
        let full: TermSet = enumerate_terms(n, d).into_iter().collect();
        ensure(is_borel_fixed_slice(&full, n).unwrap(), format!("full T_{d} in {n} variables rejected"))?;
    }
    Ok(())
}

fn scripted_builder() -> Outcome {
    let mut b = Builder::new(3, 2).unwrap();
    for line in read_data("config_peak_xy.script").lines() {
        b.apply_line(line).map_err(|e| e.to_string())?;
    }
    b.autocomplete().map_err(|e| e.to_string())?;
    let json = b.finish().map_err(|e| e.to_string())?.to_json();
    let expected = r#"{"n":3,"degree":2,"variables":["x","y","z"],"multiplicative":{"x^2":["x"],"x*y":["x","y","z"],"y^2":["y"],"x*z":["x","z"],"y*z":["y"],"z^2":["y","z"]}}"#;
    ensure(json == expected, format!("got {json}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("binomial identity on n<=6, D<=6, d<=12", binomial_identity),
        ("profiles (3,2) and (4,3)", profiles),
        ("Janet equals Pommaret on slices n<=4, D<=4", janet_equals_pommaret),
        ("invalid divisions rejected", rejections),
        ("eight orbit representatives on T_2 in 3 variables", orbit_representatives),
        ("worked closures, certified at k=3", worked_closures),
        ("graph edge lists and reference reachability", graph_golden),
        ("labelled-graph closure fails where the generalized one passes", labelled_graph_insufficient),
        ("closure/graph/oracle agreement on all (3,2) divisions x 64 seeds", oracle_equivalence),
        ("Pommaret detection", pommaret_detection),
        ("Borel-fixed slice test", borel_fixed),
        ("scripted builder reproduces the peak-xy table", scripted_builder),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

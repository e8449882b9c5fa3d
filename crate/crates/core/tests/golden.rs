//! Worked examples on the fixtures in `data/`.

mod common;

use common::*;
use reldiv::classical::{detect_pommaret, pommaret_general, pommaret_on_slice};
use reldiv::closures::{compliant_closure, escalier_from_seed, ideal_from_seed, revenant_closure};
use reldiv::enumerate::{canonical_form, enumerate_divisions, EnumerateOptions};
use reldiv::graphs::{generalized_graph, redundant_graph, ufnarovsky_graph};
use reldiv::oracle::{brute_compliant, verify_division_covering, verify_ideal_equality};
use reldiv::{enumerate_terms, TermSet, VarSet, Violation};

#[test]
fn fixtures_round_trip() {
    for name in [
        "pommaret32.json",
        "cyclic31.json",
        "peak_x2.json",
        "peak_xy.json",
        "peak_xy_alt.json",
        "deg3_peak_xyz.json",
        "four_vars_peak_yzt.json",
        "single.json",
        "general_two_vars.json",
        "general_nested.json",
    ] {
        let div = load(name);
        assert_eq!(reldiv::RelDivision::from_json(&div.to_json()).unwrap(), div, "{name}");
        assert_eq!(read_data(name).trim(), div.to_json_pretty(), "{name} is not in canonical form");
    }
}

#[test]
fn fixture_validity() {
    for name in ["pommaret32.json", "peak_x2.json", "peak_xy.json", "peak_xy_alt.json", "deg3_peak_xyz.json", "four_vars_peak_yzt.json", "single.json"] {
        let div = load(name);
        assert!(div.validate().valid, "{name}");
        assert!(verify_division_covering(&div, 3).valid, "{name}");
    }
    assert!(!load("cyclic31.json").validate().valid);
}

#[test]
fn four_variable_table() {
    let d = load("four_vars_peak_yzt.json");
    assert_eq!(d.multiplicative_set(&term("y*z*t", 4)).unwrap(), VarSet::full(4));
    assert_eq!(d.peak().unwrap(), term("y*z*t", 4));
    assert_eq!(d.sigma_profile(), vec![10, 6, 3, 1]);
    assert_eq!(d.len(), 20);
    assert_eq!(generalized_graph(&d).unwrap().to_dot().lines().filter(|l| !l.contains("->")).count(), 22);
}

#[test]
fn x_of_examples() {
    let d = load("peak_x2.json");
    assert_eq!(d.x_of(&term("x^2", 3), &term("xy", 3)).unwrap(), term("x^2", 3));
    let d3 = load("deg3_peak_xyz.json");
    assert_eq!(d3.x_of(&term("y*z^2", 3), &term("z^3", 3)).unwrap(), term("z^3", 3));
}

#[test]
fn general_support_rejections() {
    let two = load("general_two_vars.json");
    assert_eq!(two, pommaret_general(&[term("x", 3), term("y", 3)], 3).unwrap());
    let r = two.validate();
    assert!(r.valid && r.coverage_unverified);
    let bounded = verify_division_covering(&two, 1);
    assert!(bounded.violations.contains(&Violation::Uncovered { term: term("x*z", 3) }));

    let nested = load("general_nested.json");
    assert!(nested.validate().violations.contains(&Violation::Overlap {
        u: term("x", 2),
        v: term("x^2", 2),
        witness: term("x^2", 2)
    }));
}

#[test]
fn graph_figures() {
    let p = load("pommaret32.json");
    let g = ufnarovsky_graph(&p).unwrap();
    let mut edges: Vec<String> =
        g.edges().map(|(a, b, l)| format!("{a}->{b}:{}", reldiv::term::var_name(l.unwrap(), 3))).collect();
    edges.sort();
    let mut expected = vec![
        "x*y->x^2:y", "x*z->x^2:z", "y^2->x*y:y", "y*z->x*y:z", "y*z->x*z:y", "z^2->x*z:z", "z^2->y*z:z",
        "y*z->y^2:z",
    ];
    expected.sort();
    assert_eq!(edges, expected);

    let alt = load("peak_xy_alt.json");
    let g = ufnarovsky_graph(&alt).unwrap();
    let mut edges: Vec<String> =
        g.edges().map(|(a, b, l)| format!("{a}->{b}:{}", reldiv::term::var_name(l.unwrap(), 3))).collect();
    edges.sort();
    let mut expected = vec![
        "x*y->x*z:y", "x*y->x^2:y", "x*y->y^2:x", "x*y->y*z:x", "z^2->y*z:z", "x*z->x^2:z", "x*z->z^2:x",
        "y*z->y^2:z",
    ];
    expected.sort();
    assert_eq!(edges, expected);
}

#[test]
fn four_variable_reference_reachability() {
    let d = load("four_vars_peak_yzt.json");
    let reference = reference_graph(&d);
    let g = generalized_graph(&d).unwrap();
    let r = redundant_graph(&d).unwrap();
    assert!(g.reachability_equivalent(&reference).unwrap());
    assert!(r.reachability_equivalent(&reference).unwrap());
    assert!(g.edge_count() <= r.edge_count());

    // the four cone vertices of the x^2-block: a 3-cycle fed by the peak
    let n = 4;
    let m = g.closure_matrix();
    let idx = |s: &str| d.index_of(&term(s, n)).unwrap();
    for (a, b) in [("x^2*y", "x^2*t"), ("x^2*t", "x^2*z"), ("x^2*z", "x^2*y"), ("y*z*t", "x^2*y")] {
        assert!(m[idx(a)][idx(b)], "{a} should reach {b}");
    }
}

#[test]
fn ufnarovsky_closure_is_not_enough_in_four_variables() {
    let d = load("four_vars_peak_yzt.json");
    let seed = set(&["x^2*y"], 4);
    let by_labels = ufnarovsky_graph(&d).unwrap().reachable_backward(&seed).unwrap();
    assert_eq!(by_labels, set(&["x^2*y", "x^2*z", "x^2*t"], 4));
    let v = verify_ideal_equality(&d, &by_labels, 2).unwrap();
    assert!(!v.holds);
    assert_eq!(v.counterexample, Some(term("x^2*y*z*t", 4)));

    let by_pairs = generalized_graph(&d).unwrap().reachable_backward(&seed).unwrap();
    assert_eq!(by_pairs, set(&["x^2*y", "x^2*z", "x^2*t", "y*z*t"], 4));
    assert!(verify_ideal_equality(&d, &by_pairs, 3).unwrap().holds);
}

#[test]
fn worked_closures() {
    let ideal = |file: &str, n, seed: &[&str]| {
        let d = load(file);
        let r = ideal_from_seed(&d, &set(seed, n), 3).unwrap();
        assert!(r.certified, "{file} {seed:?}");
        r.generators
    };
    let escalier = |file: &str, n, seed: &[&str]| {
        let d = load(file);
        let r = escalier_from_seed(&d, &set(seed, n), 3).unwrap();
        assert!(r.certified, "{file} {seed:?}");
        r.slice
    };
    assert_eq!(ideal("peak_x2.json", 3, &["xy"]), set(&["xy", "x^2"], 3));
    assert_eq!(ideal("deg3_peak_xyz.json", 3, &["x*y^2"]).len(), 10);
    assert_eq!(escalier("peak_x2.json", 3, &["xz"]), set(&["xz", "z^2"], 3));
    assert_eq!(ideal("peak_xy.json", 3, &["xz"]), set(&["xz", "xy"], 3));
    assert_eq!(escalier("peak_xy.json", 3, &["xz"]), set(&["xz", "x^2", "z^2"], 3));
    assert_eq!(ideal("pommaret32.json", 3, &["xy"]), set(&["xy", "y^2", "yz", "z^2"], 3));
    assert_eq!(
        ideal("four_vars_peak_yzt.json", 4, &["x^2*y"]),
        set(&["x^2*y", "x^2*z", "x^2*t", "y*z*t"], 4)
    );
    let all: TermSet = enumerate_terms(3, 2).into_iter().collect();
    assert_eq!(escalier("pommaret32.json", 3, &["z^2"]), all);
    assert_eq!(escalier("pommaret32.json", 3, &["xy", "x^2", "y^2", "xz", "yz", "z^2"]), all);
}

#[test]
fn brute_compliant_examples() {
    let d3 = load("deg3_peak_xyz.json");
    assert_eq!(brute_compliant(&d3, &set(&["x*y^2"], 3)).unwrap().len(), 10);
    let peak_xy = load("peak_xy.json");
    assert_eq!(brute_compliant(&peak_xy, &set(&["xz"], 3)).unwrap(), set(&["xz", "xy"], 3));
    let peak = set(&["xy"], 3);
    assert_eq!(brute_compliant(&peak_xy, &peak).unwrap(), peak);
    assert_eq!(compliant_closure(&peak_xy, &peak).unwrap().closure, peak);
}

#[test]
fn revenant_via_graph_on_pommaret() {
    let p = load("pommaret32.json");
    let g = ufnarovsky_graph(&p).unwrap();
    for t in p.support() {
        let seed: TermSet = [t.clone()].into();
        assert_eq!(g.reachable_backward(&seed).unwrap(), compliant_closure(&p, &seed).unwrap().closure);
        assert_eq!(g.reachable_forward(&seed).unwrap(), revenant_closure(&p, &seed).unwrap().closure);
    }
}

#[test]
fn representatives_of_slice32() {
    let listed = enumerate_divisions(3, 2, EnumerateOptions { up_to_symmetry: true, parallel: false }).unwrap();
    let mut ours: Vec<Vec<u8>> = listed.divisions.iter().map(|d| canonical_form(d).unwrap()).collect();
    let mut reference: Vec<Vec<u8>> =
        slice32_representatives().iter().map(|d| canonical_form(d).unwrap()).collect();
    ours.sort();
    reference.sort();
    reference.dedup();
    assert_eq!(reference.len(), 8);
    assert_eq!(ours, reference);
}

#[test]
fn two_variable_classes() {
    let listed = enumerate_divisions(2, 2, EnumerateOptions { up_to_symmetry: true, parallel: false }).unwrap();
    let forms: Vec<Vec<u8>> = listed.divisions.iter().map(|d| canonical_form(d).unwrap()).collect();
    let a = reldiv::RelDivision::from_rows(2, Some(2), &[("x^2", "x,y"), ("xy", "y"), ("y^2", "y")]).unwrap();
    let b = reldiv::RelDivision::from_rows(2, Some(2), &[("x^2", "x"), ("xy", "x,y"), ("y^2", "y")]).unwrap();
    assert_eq!(forms.len(), 2);
    assert!(forms.contains(&canonical_form(&a).unwrap()));
    assert!(forms.contains(&canonical_form(&b).unwrap()));
}

#[test]
fn pommaret_detection_on_fixtures() {
    assert_eq!(detect_pommaret(&load("pommaret32.json")).unwrap(), Some(vec![0, 1, 2]));
    assert_eq!(detect_pommaret(&load("peak_xy_alt.json")).unwrap(), None);
    assert_eq!(detect_pommaret(&pommaret_on_slice(3, 2, &[2, 1, 0]).unwrap()).unwrap(), Some(vec![2, 1, 0]));
}

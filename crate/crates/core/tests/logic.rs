mod common;

use common::{brute_entails, f, formula, models, truth, valuations};
use nafl_core::logic::{
    entails, entails_with, formula_count, formulas_up_to_depth, is_satisfiable_with, Strategy,
};
use nafl_core::{parse_formula, Formula};
use proptest::prelude::*;

const ABCD: &[&str] = &["A", "B", "C", "D"];

#[test]
fn depth_three_enumeration_size() {
    let all = formulas_up_to_depth(&common::atoms(&["A", "B"]), 3);
    assert_eq!(all.len(), 1622);
    assert_eq!(formula_count(2, 3), 1622);
    assert!(all.iter().all(|x| x.depth() <= 3));
}

#[test]
fn enumerated_formulas_roundtrip_through_text() {
    for phi in formulas_up_to_depth(&common::atoms(&["A", "B"]), 3) {
        assert_eq!(parse_formula(&phi.to_string()).unwrap(), phi, "{phi}");
    }
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(f("A | B & C"), Formula::or(f("A"), f("B & C")));
    assert_eq!(f("A -> B -> C"), Formula::implies(f("A"), f("B -> C")));
    assert_eq!(f("A & B & C"), Formula::and(f("A & B"), f("C")));
    assert_eq!(f("A <-> B <-> C"), Formula::iff(f("A <-> B"), f("C")));
    assert_eq!(f("~A & B"), Formula::and(f("~A"), f("B")));
    assert_eq!(f("A -> B <-> C"), Formula::iff(f("A -> B"), f("C")));
}

#[test]
fn classic_tautologies() {
    for t in ["(A & (A -> B)) -> B", "~~A <-> A", "P | ~P", "~(P & ~P)"] {
        assert!(entails(&[], &f(t)).unwrap(), "{t}");
    }
    assert!(!entails(&[], &f("A -> B")).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn display_parse_roundtrip(phi in formula(ABCD, 5)) {
        prop_assert_eq!(parse_formula(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn strategies_agree_with_truth_tables(
        axioms in proptest::collection::vec(formula(ABCD, 4), 0..4),
        phi in formula(ABCD, 4),
    ) {
        let oracle = brute_entails(ABCD, &axioms, &phi);
        for s in [Strategy::Exhaustive, Strategy::Search] {
            prop_assert_eq!(entails_with(&axioms, &phi, s).unwrap(), oracle);
        }
        let sat = !models(ABCD, &axioms).is_empty();
        for s in [Strategy::Exhaustive, Strategy::Search] {
            prop_assert_eq!(is_satisfiable_with(&axioms, s).unwrap(), sat);
        }
    }

    #[test]
    fn entailment_is_monotone(
        axioms in proptest::collection::vec(formula(ABCD, 3), 0..3),
        extra in formula(ABCD, 3),
        phi in formula(ABCD, 3),
    ) {
        if entails(&axioms, &phi).unwrap() {
            let mut more = axioms.clone();
            more.push(extra);
            prop_assert!(entails(&more, &phi).unwrap());
        }
    }

    #[test]
    fn satisfiable_axioms_never_entail_a_contradiction(
        axioms in proptest::collection::vec(formula(ABCD, 3), 1..4),
        phi in formula(ABCD, 3),
    ) {
        if !models(ABCD, &axioms).is_empty() {
            let contra = Formula::contradiction_of(phi.clone());
            prop_assert!(!entails(&axioms, &contra).unwrap());
            prop_assert!(!(entails(&axioms, &phi).unwrap()
                && entails(&axioms, &Formula::not(phi)).unwrap()));
        }
    }

    #[test]
    fn nnf_preserves_meaning(phi in formula(ABCD, 5)) {
        let nnf = phi.nnf();
        for v in valuations(ABCD) {
            let expected = truth(&phi, &v);
            prop_assert_eq!(nnf.eval(&|a: &nafl_core::Atom, pos: bool| v[a.name()] == pos), expected);
        }
    }
}

#![allow(dead_code)]

use std::collections::BTreeMap;

use nafl_core::{Atom, Formula};
use proptest::prelude::*;

/// Straightforward recursive evaluation, kept separate from the library's.
pub fn truth(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Atom(a) => v[a.name()],
        Formula::Not(x) => !truth(x, v),
        Formula::And(a, b) => truth(a, v) && truth(b, v),
        Formula::Or(a, b) => truth(a, v) || truth(b, v),
        Formula::Implies(a, b) => !truth(a, v) || truth(b, v),
        Formula::Iff(a, b) => truth(a, v) == truth(b, v),
    }
}

/// Every valuation of `names`.
pub fn valuations(names: &[&str]) -> Vec<BTreeMap<String, bool>> {
    (0..1u32 << names.len())
        .map(|bits| {
            names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.to_string(), bits >> i & 1 == 1))
                .collect()
        })
        .collect()
}

pub fn models(names: &[&str], axioms: &[Formula]) -> Vec<BTreeMap<String, bool>> {
    valuations(names)
        .into_iter()
        .filter(|v| axioms.iter().all(|a| truth(a, v)))
        .collect()
}

pub fn brute_entails(names: &[&str], axioms: &[Formula], phi: &Formula) -> bool {
    models(names, axioms).iter().all(|v| truth(phi, v))
}

pub fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::new(n).unwrap()).collect()
}

pub fn f(s: &str) -> Formula {
    nafl_core::parse_formula(s).unwrap()
}

/// Random formulas over `names` with at most `depth` levels of connectives.
pub fn formula(names: &'static [&'static str], depth: u32) -> BoxedStrategy<Formula> {
    let leaf = proptest::sample::select(names).prop_map(Formula::atom);
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
    .boxed()
}

mod common;

use proptest::prelude::*;

use common::LOracle;
use lambek::algebra::{eval_sequent, library_models, supports, valuations};
use lambek::rewrite::normalize;
use lambek::sequent::{check_derivation, eliminate_cut, prove, Derivation, ProveOutcome, SearchBudget};
use lambek::syntax::sexp::{
    formula_from_sexp, formula_to_sexp, sequent_from_sexp, sequent_to_sexp, term_from_sexp,
    term_to_sexp, Sexp,
};
use lambek::syntax::{alpha_eq, parse_formula, parse_sequent, parse_term, CalculusLevel, Formula, Sequent};
use lambek::testgen::{cut_derivations, terms};
use lambek::typing::typecheck;

fn formula(modal: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop_oneof![Just("a"), Just("b"), Just("c")].prop_map(Formula::atom),
        1 => Just(Formula::Unit),
    ];
    leaf.prop_recursive(3, 12, 2, move |inner| {
        let binary = prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::rimp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::limp(a, b)),
        ];
        if modal {
            prop_oneof![
                3 => binary,
                1 => inner.clone().prop_map(Formula::bang),
                1 => inner.prop_map(Formula::kappa),
            ]
            .boxed()
        } else {
            binary.boxed()
        }
    })
}

fn sequent(modal: bool, max_ante: usize) -> impl Strategy<Value = Sequent> {
    (prop::collection::vec(formula(modal), 0..=max_ante), formula(modal))
        .prop_map(|(ctx, goal)| Sequent::new(ctx, goal))
}

/// Atomic sequents with small formulas, where provability is not trivial.
fn l_sequent() -> impl Strategy<Value = Sequent> {
    let atom = prop_oneof![Just("a"), Just("b")].prop_map(Formula::atom);
    let small = prop_oneof![
        2 => atom.clone(),
        1 => (atom.clone(), atom.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
        1 => (atom.clone(), atom.clone()).prop_map(|(a, b)| Formula::rimp(a, b)),
        1 => (atom.clone(), atom.clone()).prop_map(|(a, b)| Formula::limp(a, b)),
        1 => Just(Formula::Unit),
    ];
    let goal = small.clone().prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::rimp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::limp(a, b)),
        ]
    });
    (prop::collection::vec(small, 0..=4), goal).prop_map(|(ctx, g)| Sequent::new(ctx, g))
}

fn level() -> impl Strategy<Value = CalculusLevel> {
    prop::sample::select(CalculusLevel::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn formula_text_and_sexp_round_trip(f in formula(true)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f.clone());
        let s = Sexp::parse(&formula_to_sexp(&f).to_string()).unwrap();
        prop_assert_eq!(formula_from_sexp(&s).unwrap(), f);
    }

    #[test]
    fn sequent_text_and_sexp_round_trip(s in sequent(true, 3)) {
        prop_assert_eq!(parse_sequent(&s.to_string()).unwrap(), s.clone());
        let x = Sexp::parse(&sequent_to_sexp(&s).to_string()).unwrap();
        prop_assert_eq!(sequent_from_sexp(&x).unwrap(), s);
    }

    #[test]
    fn prover_agrees_with_oracle_in_l(s in l_sequent()) {
        let expected = LOracle::new().provable(&s);
        match prove(&s, CalculusLevel::L, SearchBudget::default()) {
            ProveOutcome::Found(d) => {
                prop_assert!(expected, "prover found a derivation of {}", s);
                prop_assert_eq!(check_derivation(&d, CalculusLevel::L).unwrap(), s);
                prop_assert!(d.is_cut_free());
            }
            ProveOutcome::NotProvable => prop_assert!(!expected, "prover missed {}", s),
            ProveOutcome::BudgetExceeded => prop_assert!(false, "L search must terminate: {}", s),
        }
    }

    #[test]
    fn proofs_are_sound_in_finite_models(s in sequent(true, 2), lvl in level()) {
        prop_assume!(s.legal_at(lvl));
        let budget = SearchBudget { max_depth: 12, max_visited: 20_000 };
        if let ProveOutcome::Found(d) = prove(&s, lvl, budget) {
            prop_assert_eq!(check_derivation(&d, lvl).unwrap(), s.clone());
            let atoms: Vec<String> = s.atoms().into_iter().collect();
            for m in library_models().iter().filter(|m| supports(m, &s)) {
                for v in valuations(m, &atoms, 40, 1) {
                    prop_assert_eq!(eval_sequent(m, &v, &s), Ok(true), "{} in {}", s, m.label);
                }
            }
        }
    }

    #[test]
    fn derivation_sexp_round_trip(s in sequent(true, 2), lvl in level()) {
        prop_assume!(s.legal_at(lvl));
        let budget = SearchBudget { max_depth: 12, max_visited: 20_000 };
        if let ProveOutcome::Found(d) = prove(&s, lvl, budget) {
            let text = d.to_sexp().to_string();
            let back = Derivation::from_sexp(&Sexp::parse(&text).unwrap()).unwrap();
            prop_assert_eq!(back, d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_terms_type_and_normalize(seed in any::<u64>(), lvl in level()) {
        for g in terms(lvl, 4, seed) {
            prop_assert_eq!(typecheck(&g.context, &g.term, lvl), Ok(g.ty.clone()));
            let text = g.term.to_string();
            let reparsed = parse_term(&text).unwrap();
            prop_assert!(alpha_eq(&reparsed, &g.term), "{}", text);
            let sx = Sexp::parse(&term_to_sexp(&g.term).to_string()).unwrap();
            prop_assert_eq!(term_from_sexp(&sx).unwrap(), g.term.clone());
            let nf = normalize(&g.term, 10_000).unwrap();
            prop_assert_eq!(typecheck(&g.context, &nf.term, lvl), Ok(g.ty.clone()), "{}", g.term);
        }
    }

    #[test]
    fn cut_elimination_preserves_endsequent(seed in any::<u64>(), lvl in level()) {
        for d in cut_derivations(lvl, 2, seed) {
            prop_assert!(d.count_cuts() > 0);
            let e = eliminate_cut(&d, 100_000).unwrap();
            prop_assert!(e.is_cut_free());
            prop_assert_eq!(check_derivation(&e, lvl).unwrap(), d.conclusion.clone());
        }
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reconf_core::cnf::{parse_dimacs, CnfFormula};
use reconf_core::gadget_sat::{
    extract_assignment, gen_sat, minspr_decide, phi, sat_witness, validate_facts, FactKind, VertexKind,
};
use reconf_core::search::{Outcome, SearchLimits};
use reconf_core::Error;

fn arb_formula() -> impl Strategy<Value = CnfFormula> {
    (1usize..=3, 1usize..=3, any::<u64>())
        .prop_map(|(n, m, seed)| reconf_core::random::cnf(&mut ChaCha8Rng::seed_from_u64(seed), n, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn structure_of_generated_instances(f in arb_formula()) {
        let (n, m) = (f.num_vars(), f.num_clauses());
        let inst = gen_sat(&f);
        prop_assert_eq!(inst.g.n(), 8 * n * m + 4 * m + 2);
        prop_assert_eq!(inst.budget, 2 * m * (n + 2));
        prop_assert!(validate_facts(&inst).is_empty());
        for j in 1..=2 * m {
            prop_assert_eq!(inst.attrs[inst.beg(j)].level, 0);
            prop_assert_eq!(inst.attrs[inst.end(j)].level, n + 1);
            prop_assert_eq!(inst.attrs[inst.end(j)].cs, 1);
        }
        prop_assert_eq!(phi(&inst, &inst.p_b), 0);
        prop_assert_eq!(phi(&inst, &inst.p_e), inst.budget);
    }

    #[test]
    fn shortest_paths_are_single_valued(f in arb_formula()) {
        let inst = gen_sat(&f);
        let m = f.num_clauses();
        let paths = inst.space().enumerate(200_000).unwrap();
        for p in &paths {
            prop_assert_eq!(p.len(), 2 * m + 2);
            for (d, &v) in p.vertices().iter().enumerate() {
                prop_assert_eq!(inst.attrs[v].depth, d);
            }
            // No level is visited with both v-states.
            let mut vs_at_level = std::collections::BTreeMap::new();
            for &v in p.vertices() {
                let a = inst.attrs[v];
                if a.kind == VertexKind::Gadget {
                    prop_assert_eq!(*vs_at_level.entry(a.level).or_insert(a.vs), a.vs);
                }
            }
        }
    }

    #[test]
    fn decision_matches_brute_force(f in arb_formula()) {
        let inst = gen_sat(&f);
        let truth = f.brute_force_satisfiable();
        prop_assert_eq!(minspr_decide(&f).unwrap(), truth.is_some());
        let out = inst.space().bfs(&inst.p_b, &inst.p_e, SearchLimits::with_max_len(inst.budget)).unwrap();
        match (&out, &truth) {
            (Outcome::Found(seq), Some(_)) => {
                prop_assert_eq!(seq.len(), inst.budget);
                for w in seq.states.windows(2) {
                    prop_assert!(phi(&inst, &w[1]) <= phi(&inst, &w[0]) + 1);
                }
                // The found sequence encodes a satisfying assignment.
                let theta = extract_assignment(&inst, seq).unwrap();
                prop_assert_eq!(f.first_unsatisfied(&theta), None);
            }
            (Outcome::BudgetExceeded | Outcome::NotReconfigurable, None) => {}
            _ => prop_assert!(false, "bfs {:?} vs brute force {:?}", out.is_found(), truth),
        }
    }

    #[test]
    fn witness_is_tight(f in arb_formula()) {
        let Some(theta) = f.brute_force_satisfiable() else { return Ok(()) };
        let inst = gen_sat(&f);
        let seq = sat_witness(&f, &theta).unwrap();
        inst.space().validate_sequence(&seq).unwrap();
        prop_assert_eq!(seq.len(), inst.budget);
        prop_assert_eq!(seq.first(), &inst.p_b);
        prop_assert_eq!(seq.last(), &inst.p_e);
        for w in seq.states.windows(2) {
            prop_assert_eq!(phi(&inst, &w[1]), phi(&inst, &w[0]) + 1);
        }
        prop_assert_eq!(extract_assignment(&inst, &seq), Some(theta));
    }
}

#[test]
fn witness_rejects_bad_assignments() {
    let f = CnfFormula::from_ints(2, &[&[1, 2], &[-1, 2]]).unwrap();
    assert!(matches!(sat_witness(&f, &[true, false]), Err(Error::Unsatisfied { clause: 2 })));
    assert!(matches!(sat_witness(&f, &[true]), Err(Error::InvalidArgument(_))));
}

#[test]
fn added_level_jump_is_flagged() {
    let f = CnfFormula::from_ints(1, &[&[1]]).unwrap();
    let mut inst = gen_sat(&f);
    inst.g.add_edge(inst.beg(1), inst.end(2)).unwrap();
    let v = validate_facts(&inst);
    assert!(v.iter().any(|x| x.fact == FactKind::LevelStep && x.edge == (inst.beg(1), inst.end(2))));
}

#[test]
fn dimacs_examples() {
    let a = parse_dimacs("p cnf 1 1\n1 0").unwrap();
    assert!(minspr_decide(&a).unwrap());
    let b = parse_dimacs("p cnf 1 2\n1 0\n-1 0").unwrap();
    assert!(!minspr_decide(&b).unwrap());
    let c = parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0").unwrap();
    assert_eq!((c.num_vars(), c.num_clauses()), (3, 2));
}

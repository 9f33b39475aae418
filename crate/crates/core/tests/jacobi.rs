use rand::rngs::StdRng;
use rand::SeedableRng;

use sl2chain::chainspec::{admissible_tuples, alpha_skeleton, layout, ChainTuple, SlotIndex};
use sl2chain::jacobi::{
    check_chain_general, check_chain_t3, check_chain_t4, check_tuple, jacobi_residual, search, search_with,
    AlphaAssignment, Outcome, SearchOptions,
};
use sl2chain::polyspace::HomPoly;
use sl2chain::rational::{frac, random_nonzero};
use sl2chain::Error;

fn t(v: &[i64]) -> ChainTuple {
    ChainTuple::new(v.to_vec()).unwrap()
}

#[test]
fn witnesses_recompute_to_their_residual() {
    let mut tuples = admissible_tuples(3, 7);
    tuples.extend(admissible_tuples(4, 5));
    let mut seen = 0;
    for tuple in tuples {
        let v = check_tuple(&tuple).unwrap();
        if let Some(w) = v.witness() {
            seen += 1;
            let l = v.layout.as_ref().unwrap();
            let r = w.recompute(l).unwrap();
            assert!(!r.is_zero(), "{tuple}");
            assert_eq!(r, w.residual, "{tuple}");
        }
    }
    assert!(seen > 50);
}

#[test]
fn monomial_checks_decide_random_inputs() {
    let mut rng = StdRng::seed_from_u64(11);
    for (entries, valid) in [(&[3, 1, 1][..], true), (&[4, 1, 2], false), (&[3, 1, 1, 3], true), (&[5, 1, 0, 2], true)] {
        let tuple = t(entries);
        let v = check_tuple(&tuple).unwrap();
        assert_eq!(v.is_valid(), valid, "{tuple}");
        let l = layout(&tuple).unwrap();
        let alphas = v.alphas().unwrap();
        for _ in 0..3 {
            let third = if l.t() == 4 { 2 } else { 1 };
            let f = HomPoly::random(l.degree(1), &mut rng);
            let g = HomPoly::random(l.degree(1), &mut rng);
            let h = HomPoly::random(l.degree(third), &mut rng);
            let r = jacobi_residual(&l, alphas, (&f, 1), (&g, 1), (&h, third)).unwrap();
            assert_eq!(r.is_zero(), valid, "{tuple}");
        }
    }
}

#[test]
fn constraint_instances_pass_the_general_check() {
    let mut rng = StdRng::seed_from_u64(3);
    for entries in [&[3, 1, 1, 3][..], &[6, 1, 3, 5], &[4, 1, 0, 2], &[2, 1, 1, 1]] {
        let tuple = t(entries);
        let c = check_chain_t4(&tuple).unwrap().constraints().unwrap().clone();
        for _ in 0..3 {
            let a = c.instantiate(|_, _| random_nonzero(&mut rng)).unwrap();
            assert!(c.satisfied_by(&a));
            assert!(check_chain_general(&tuple, &a).unwrap().is_valid(), "{tuple} {a}");
        }
    }
}

#[test]
fn sporadic_ratio_is_exact() {
    let tuple = t(&[3, 1, 1, 3]);
    let v = check_chain_t4(&tuple).unwrap();
    assert_eq!(v.alpha_ratio(), Some(frac(7, 5)));
    let l = layout(&tuple).unwrap();
    let wrong = AlphaAssignment::unit_required(&alpha_skeleton(&l)).with(SlotIndex::new(2, 2, 4), frac(1, 1));
    let g = check_chain_general(&tuple, &wrong).unwrap();
    let w = g.witness().expect("α = 1 breaks the identity");
    assert_eq!(w.triple.iter().filter(|m| m.module == 2).count(), 1);
}

#[test]
fn non_chain_family_rejected() {
    for n in 2..=10 {
        let v = check_chain_t3(&t(&[n, 1, 2])).unwrap();
        assert!(matches!(v.outcome, Outcome::JacobiFailure(_)), "n = {n}");
    }
}

#[test]
fn prefixes_of_chains_are_chains() {
    for v in search(4, 10).unwrap() {
        assert!(check_chain_t3(&v.tuple.prefix(3)).unwrap().is_valid(), "{}", v.tuple);
    }
    for n4 in 0..=2 {
        assert!(!check_chain_t4(&t(&[4, 1, 2, n4])).unwrap().is_valid());
    }
}

#[test]
fn search_is_independent_of_worker_count() {
    let one = search_with(4, 8, &SearchOptions { workers: Some(1) }).unwrap();
    let three = search_with(4, 8, &SearchOptions { workers: Some(3) }).unwrap();
    assert_eq!(one, three);
    assert_eq!(one, search(4, 8).unwrap());
}

#[test]
fn inadmissible_tuples_report_violations() {
    let v = check_tuple(&t(&[3, 2, 1])).unwrap();
    assert!(!v.is_valid());
    assert!(v.violations()[0].to_string().contains("n₂ must be odd"));
    assert!(v.witness().is_none());
}

#[test]
fn long_tuples_need_an_assignment() {
    let tuple = t(&[2, 1, 1, 1, 1]);
    assert!(matches!(check_tuple(&tuple), Err(Error::Argument(_))));
    let l = layout(&tuple).unwrap();
    let a = AlphaAssignment::unit_required(&alpha_skeleton(&l));
    // evaluates without error; the verdict depends on the free slots
    check_chain_general(&tuple, &a).unwrap();
}

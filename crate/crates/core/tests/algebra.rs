use num_traits::One;
use rand::rngs::StdRng;
use rand::SeedableRng;

use sl2chain::algebra::{export_dot, export_json, import_json, lower_central_series, ChainAlgebra};
use sl2chain::chainspec::{alpha_skeleton, layout, ChainTuple};
use sl2chain::jacobi::{check_tuple, search, AlphaAssignment};
use sl2chain::polyspace::monomial;
use sl2chain::rational::{frac, int, random_nonzero};
use sl2chain::{Error, Rational};

fn t(v: &[i64]) -> ChainTuple {
    ChainTuple::new(v.to_vec()).unwrap()
}

fn built(entries: &[i64]) -> ChainAlgebra {
    let tuple = t(entries);
    let v = check_tuple(&tuple).unwrap();
    ChainAlgebra::build(&tuple, v.alphas().unwrap()).unwrap()
}

#[test]
fn every_small_chain_builds_a_lie_algebra() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut verdicts = search(3, 6).unwrap();
    verdicts.extend(search(4, 4).unwrap());
    for v in verdicts {
        let c = v.constraints().unwrap();
        let a = c.instantiate(|_, _| random_nonzero(&mut rng)).unwrap();
        let alg = ChainAlgebra::build(&v.tuple, &a).unwrap();
        let report = alg.verify();
        assert!(report.ok(), "{} {:?}", v.tuple, report.failing_triples.first());
        let s = lower_central_series(&alg).unwrap();
        assert_eq!(s.general_type, alg.layout().dims(), "{}", v.tuple);
    }
}

#[test]
fn documented_dimensions_and_series() {
    assert_eq!(built(&[1, 1, 0]).dimension(), 8);
    assert_eq!(built(&[2, 1, 1]).dimension(), 12);
    let g = built(&[3, 1, 1, 3]);
    assert_eq!(g.dimension(), 21);
    assert_eq!(g.alphas().get("224".parse().unwrap()), frac(7, 5));
    assert_eq!(lower_central_series(&built(&[2, 1, 1])).unwrap().dims, vec![9, 6, 3, 0]);
    assert_eq!(lower_central_series(&built(&[4, 1, 0])).unwrap().general_type, vec![5, 7, 11]);
}

#[test]
fn bracket_examples() {
    let g = built(&[4, 1, 0]);
    let e = g.basis_vector(0);
    let h = g.basis_vector(1);
    let f = g.basis_vector(2);
    assert_eq!(g.bracket(&e, &f).unwrap(), h);
    let top = g.embed(1, &monomial(4, 0).unwrap()).unwrap();
    let scaled: Vec<Rational> = top.iter().map(|c| c * int(4)).collect();
    assert_eq!(g.bracket(&h, &top).unwrap(), scaled);
    let u = g.embed(3, &monomial(10, 2).unwrap()).unwrap();
    let v = g.embed(3, &monomial(10, 7).unwrap()).unwrap();
    assert!(g.bracket(&u, &v).unwrap().iter().all(|c| c == &Rational::from_integer(0.into())));
    assert!(matches!(g.bracket(&e, &e[..3]), Err(Error::Argument(_))));
}

#[test]
fn tampered_ratio_fails_with_a_mixed_witness() {
    let tuple = t(&[3, 1, 1, 3]);
    let l = layout(&tuple).unwrap();
    let a = AlphaAssignment::unit_required(&alpha_skeleton(&l)).with("224".parse().unwrap(), Rational::one());
    let g = ChainAlgebra::build(&tuple, &a).unwrap();
    let r = g.verify();
    assert!(!r.jacobi_ok);
    assert!(r.failing_triples.iter().any(|f| {
        f.basis.iter().filter(|&&i| g.basis()[i].level == 2).count() == 1
            && f.basis.iter().filter(|&&i| g.basis()[i].level == 1).count() == 2
    }));
}

#[test]
fn counterexample_triple_fails() {
    let tuple = t(&[4, 1, 2]);
    let l = layout(&tuple).unwrap();
    let g = ChainAlgebra::build(&tuple, &AlphaAssignment::unit_required(&alpha_skeleton(&l))).unwrap();
    let r = g.verify();
    let want = [0, 1, 2].map(|a| g.index_of(1, a).unwrap());
    assert!(r.failing_triples.iter().any(|f| f.basis == want));
}

#[test]
fn exports_round_trip() {
    for entries in [&[1, 1, 0][..], &[3, 1, 1, 3]] {
        let g = built(entries);
        let back = import_json(&export_json(&g).unwrap()).unwrap();
        assert_eq!(back.constants(), g.constants());
        assert!(back.verify().jacobi_ok);
    }
    let dot = export_dot(&built(&[3, 1, 1, 3]));
    assert_eq!(dot.matches("->").count(), 5);
    assert!(dot.contains("dim=21"));
}

#[test]
fn import_rejects_a_mismatched_basis() {
    let text = export_json(&built(&[1, 1, 0])).unwrap();
    let broken = text.replacen("\"m1_0\"", "\"m9_0\"", 1);
    assert!(matches!(import_json(&broken), Err(Error::Parse(_))));
}

/// Scaling one structure scalar of a valid algebra should break the Jacobi
/// identity. This fails for three-module chains: their Jacobi identity is
/// `α112·α123` times a fixed form, so any nonzero rescaling stays valid.
#[test]
#[ignore = "unattainable: three-module Jacobi is invariant under rescaling α112 or α123"]
fn every_single_tamper_breaks_jacobi() {
    for entries in [&[2, 1, 1][..], &[4, 1, 3], &[3, 1, 1, 3], &[4, 1, 0, 2]] {
        let g = built(entries);
        for (slot, value) in g.alphas().iter() {
            let a = g.alphas().clone().with(slot, value + Rational::one());
            let r = ChainAlgebra::build(g.tuple(), &a).unwrap().verify();
            assert!(!r.jacobi_ok, "{} α{slot}", g.tuple());
        }
    }
}

use proptest::prelude::*;

use sl2chain::chainspec::{admissible_tuples, layout, step1_admissible, ChainTuple, SlotIndex};
use sl2chain::polyspace::{act, HomPoly, Sl2Generator};
use sl2chain::rational::{frac, Rational};
use sl2chain::transvection::{cg_components, transvection};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn poly(degree: usize) -> impl Strategy<Value = HomPoly> {
    prop::collection::vec(rational(), degree + 1).prop_map(move |c| HomPoly::from_coeffs(degree, c).unwrap())
}

fn poly_upto(max: usize) -> impl Strategy<Value = HomPoly> {
    (0..=max).prop_flat_map(poly)
}

fn bracket(x: Sl2Generator, y: Sl2Generator, p: &HomPoly) -> HomPoly {
    act(x, &act(y, p)).try_sub(&act(y, &act(x, p))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sl2_relations_hold(p in poly_upto(10)) {
        use Sl2Generator::*;
        prop_assert_eq!(bracket(E, F, &p), act(H, &p));
        prop_assert_eq!(bracket(H, E, &p), act(E, &p).scale(&frac(2, 1)));
        prop_assert_eq!(bracket(H, F, &p), act(F, &p).scale(&frac(-2, 1)));
    }

    #[test]
    fn generators_act_as_derivations(p in poly_upto(6), q in poly_upto(6)) {
        // e, f, h act as derivations on products
        for g in Sl2Generator::ALL {
            let mut rhs = act(g, &p).mul(&q);
            rhs.add_scaled(&Rational::from_integer(1.into()), &p.mul(&act(g, &q))).unwrap();
            prop_assert_eq!(act(g, &p.mul(&q)), rhs);
        }
    }

    #[test]
    fn transvection_is_invariant((f, g, k) in (poly_upto(8), poly_upto(8)).prop_flat_map(|(f, g)| {
        let top = f.degree().min(g.degree());
        (Just(f), Just(g), 0..=top)
    })) {
        let fg = transvection(&f, &g, k).unwrap();
        prop_assert_eq!(fg.degree(), f.degree() + g.degree() - 2 * k);
        for x in Sl2Generator::ALL {
            let mut rhs = transvection(&act(x, &f), &g, k).unwrap();
            rhs.add_scaled(&Rational::from_integer(1.into()), &transvection(&f, &act(x, &g), k).unwrap()).unwrap();
            prop_assert_eq!(act(x, &fg), rhs);
        }
        let sign = if k % 2 == 0 { frac(1, 1) } else { frac(-1, 1) };
        prop_assert_eq!(transvection(&g, &f, k).unwrap(), fg.scale(&sign));
    }

    #[test]
    fn transvection_rejects_large_orders(f in poly_upto(5), g in poly_upto(5)) {
        let k = f.degree().min(g.degree()) + 1;
        prop_assert!(transvection(&f, &g, k).is_err());
    }

    #[test]
    fn clebsch_gordan_dimensions(n in 0usize..15, m in 0usize..15) {
        let total: usize = cg_components(n, m).components.iter().map(|d| d + 1).sum();
        prop_assert_eq!(total, (n + 1) * (m + 1));
    }

    #[test]
    fn tuple_text_round_trip(v in prop::collection::vec(-5i64..40, 1..6)) {
        let t = ChainTuple::new(v).unwrap();
        prop_assert_eq!(t.to_string().parse::<ChainTuple>().unwrap(), t);
    }

    #[test]
    fn admissible_layouts_have_valid_degrees(n1 in 1i64..12, len in 2usize..5) {
        for t in admissible_tuples(len, n1).into_iter().filter(|t| t.n(1) == n1) {
            prop_assert!(step1_admissible(&t).is_admissible());
            let l = layout(&t).unwrap();
            prop_assert_eq!(l.degree(1) as i64, n1);
            prop_assert_eq!(l.nil_dim(), l.dims().iter().sum::<usize>());
        }
    }

    #[test]
    fn slot_text_round_trip(i in 1usize..10, j in 1usize..10, k in 1usize..10) {
        let s = SlotIndex::new(i, j, k);
        prop_assert_eq!(s.to_string().parse::<SlotIndex>().unwrap(), s);
    }
}

//! Exact sparse polynomials in the variables `z_{i,j}^{(k)}`, the four degree
//! reverse lexicographic orders, initial terms, and initial spaces of finite
//! spans computed by ordered elimination.

mod echelon;
mod order;
mod poly;

pub use echelon::{initial_space, span_rank, Echelon};
pub use order::{permutation_sign, MonomialOrder, OrderFamily, WeightReport};
pub(crate) use order::sign_rat;
pub use poly::{rat, Coefficient, Monomial, Polynomial, VarId};

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;

    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::Shape;

    const FAMILIES: [OrderFamily; 4] = [
        OrderFamily::SsFinite,
        OrderFamily::PbwFinite,
        OrderFamily::SsSemiInfinite,
        OrderFamily::PbwSemiInfinite,
    ];

    fn arb_var() -> impl Strategy<Value = VarId> {
        (1u32..=3, 1u32..=5, 0u32..=2).prop_map(|(i, j, k)| VarId::new(i, j, k))
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        prop::collection::vec((arb_var(), 1u32..=2), 0..4).prop_map(Monomial::from_pairs)
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((arb_monomial(), -4i64..=4), 0..6)
            .prop_map(|ts| Polynomial::from_terms(ts.into_iter().map(|(m, c)| (m, rat(c)))))
    }

    fn order(ix: usize) -> MonomialOrder {
        MonomialOrder::new(FAMILIES[ix], Shape::new(3, 5).unwrap())
    }

    fn point(seed: u64) -> impl Fn(VarId) -> BigRational {
        move |v: VarId| {
            let h = (v.i as u64 * 31 + v.j as u64 * 7 + v.k as u64 * 131 + seed * 17) % 23;
            rat(h as i64 - 11)
        }
    }

    proptest! {
        #[test]
        fn order_is_total_and_antisymmetric(ix in 0usize..4, a in arb_monomial(), b in arb_monomial()) {
            let ord = order(ix);
            let ab = ord.compare(&a, &b);
            prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
        }

        #[test]
        fn order_is_transitive(ix in 0usize..4, a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            let ord = order(ix);
            if ord.compare(&a, &b) != Ordering::Greater && ord.compare(&b, &c) != Ordering::Greater {
                prop_assert_ne!(ord.compare(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn order_respects_multiplication(ix in 0usize..4, a in arb_monomial(), b in arb_monomial(), x in arb_var()) {
            let ord = order(ix);
            let x = Monomial::var(x);
            prop_assert_eq!(ord.compare(&a, &b), ord.compare(&(&a * &x), &(&b * &x)));
            prop_assert_eq!(ord.compare(&a, &(&a * &x)), Ordering::Less);
        }

        #[test]
        fn products_agree_with_evaluation(f in arb_poly(), g in arb_poly(), seed in 0u64..50) {
            let v = point(seed);
            let fg = &f * &g;
            prop_assert_eq!(fg.eval(&v), f.eval(&v) * g.eval(&v));
            prop_assert_eq!((&f + &g).eval(&v), f.eval(&v) + g.eval(&v));
        }

        #[test]
        fn initial_terms_multiply(ix in 0usize..4, f in arb_poly(), g in arb_poly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let ord = order(ix);
            let (cf, mf) = ord.initial_term(&f).unwrap();
            let (cg, mg) = ord.initial_term(&g).unwrap();
            let (c, m) = ord.initial_term(&(&f * &g)).unwrap();
            prop_assert_eq!(m, &mf * &mg);
            prop_assert_eq!(c, cf * cg);
        }

        #[test]
        fn initial_space_ignores_input_order(ix in 0usize..4, mut fs in prop::collection::vec(arb_poly(), 0..6)) {
            let ord = order(ix);
            let a = initial_space(&ord, &fs);
            fs.reverse();
            let b = initial_space(&ord, &fs);
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.len(), span_rank(&ord, &fs));
        }

        #[test]
        fn distinct_initial_monomials_force_independence(ix in 0usize..4, fs in prop::collection::vec(arb_poly(), 1..6)) {
            let ord = order(ix);
            let fs: Vec<Polynomial> = fs.into_iter().filter(|f| !f.is_zero()).collect();
            let mut leads: Vec<Monomial> = fs.iter().map(|f| ord.initial_term(f).unwrap().1).collect();
            leads.sort();
            leads.dedup();
            if leads.len() == fs.len() {
                prop_assert_eq!(span_rank(&ord, &fs), fs.len());
            }
        }

        #[test]
        fn truncation_is_multiplicative(f in arb_poly(), g in arb_poly(), d in 0u32..3) {
            let lhs = (&f * &g).truncate(d);
            prop_assert_eq!(&lhs, &(&f.truncate(d) * &g.truncate(d)).truncate(d));
            prop_assert_eq!(&lhs, &(&f.truncate(d) * &g.truncate(d)));
        }
    }

    #[test]
    fn initial_space_small_cases() {
        let ord = order(0);
        let a = Polynomial::var(VarId::new(1, 1, 0));
        let b = Polynomial::var(VarId::new(1, 2, 0));
        let sp = initial_space(&ord, &[&a + &b, &a - &b]);
        assert_eq!(sp.len(), 2);
        assert!(sp.contains(&Monomial::var(VarId::new(1, 1, 0))));
        assert!(sp.contains(&Monomial::var(VarId::new(1, 2, 0))));
        let f = &a + &b;
        let single = initial_space(&ord, std::slice::from_ref(&f));
        assert_eq!(single, vec![ord.initial_term(&f).unwrap().1]);
        assert!(initial_space(&ord, &[]).is_empty());
    }
}

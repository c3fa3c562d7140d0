use polyalg::*;
use proptest::prelude::*;

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

fn vector(dim: usize, max_deg: usize) -> impl Strategy<Value = PolyVector> {
    prop::collection::vec(poly(max_deg), dim).prop_map(PolyVector)
}

/// Matrix built as a product of two random factors so that rank deficiency is common.
fn matrix() -> impl Strategy<Value = PolyMatrix> {
    (1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(r, k, c)| {
        (prop::collection::vec(vector(r, 1), k), prop::collection::vec(vector(k, 1), c)).prop_map(move |(a, b)| {
            let a = PolyMatrix::from_columns(r, &a).unwrap();
            let b = PolyMatrix::from_columns(k, &b).unwrap();
            a.mul(&b).unwrap()
        })
    })
}

fn points() -> impl Strategy<Value = [ExactScalar; 3]> {
    (0i64..1000, 0i64..1000, 0i64..1000)
        .prop_map(|(a, b, c)| [a, b, c].map(|x| ExactScalar::from_ratio(x * 7 + 11, 13)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_evaluation(m in matrix(), zs in points()) {
        let r = rank_ff(&m).unwrap();
        let agree = zs.iter().filter(|z| scalar_rank(&m.eval(z)) == r).count();
        prop_assert!(agree >= 2, "rank {} agrees at {} of 3 points", r, agree);
        for z in &zs {
            prop_assert!(scalar_rank(&m.eval(z)) <= r);
        }
    }

    #[test]
    fn kernel_annihilates(m in matrix()) {
        let k = kernel_ff(&m).unwrap();
        prop_assert!(m.mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.cols() + rank_ff(&m).unwrap(), m.cols());
        if k.cols() > 0 {
            prop_assert_eq!(rank_ff(&k).unwrap(), k.cols());
        }
        // column-reduced: the top-degree coefficient vectors are independent
        let lead: Vec<Vec<ExactScalar>> = (0..k.rows())
            .map(|r| {
                k.columns().iter().map(|c| c[r].coeff(c.degree().unwrap())).collect()
            })
            .collect();
        prop_assert_eq!(scalar_rank(&lead), k.cols());
    }

    #[test]
    fn evaluation_rank_matches_elimination(m in matrix()) {
        prop_assert_eq!(generic_rank(&m), rank_ff(&m).unwrap());
    }

    #[test]
    fn span_membership_and_rank(m in matrix(), coeffs in prop::collection::vec(poly(1), 4), extra in vector(4, 2)) {
        let r = rank_ff(&m).unwrap();
        // a combination of the columns is always in the span
        let mut comb = PolyVector::zero(m.rows());
        for (c, f) in m.columns().iter().zip(&coeffs) {
            comb = &comb + &c.scale(f);
        }
        prop_assert!(in_span(&comb, &m).unwrap());
        let v = PolyVector(extra.0[..m.rows()].to_vec());
        let vm = PolyMatrix::from_columns(m.rows(), std::slice::from_ref(&v)).unwrap();
        let r2 = rank_ff(&m.hcat(&vm).unwrap()).unwrap();
        if in_span(&v, &m).unwrap() {
            prop_assert_eq!(r2, r);
        } else {
            prop_assert_eq!(r2, r + 1);
        }
    }

    #[test]
    fn derivative_is_linear_with_product_rule(a in vector(3, 4), b in vector(3, 4), f in poly(3)) {
        prop_assert_eq!(ddz(&(&a + &b)), &ddz(&a) + &ddz(&b));
        let lhs = ddz(&a.scale(&f));
        let rhs = &a.scale(&f.derivative()) + &ddz(&a).scale(&f);
        prop_assert_eq!(lhs, rhs);
    }
}

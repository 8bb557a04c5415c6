//! Random-input laws: ring axioms for the Laurent arithmetic, semifield
//! laws for the tropical monomials, involutivity and symmetrizer
//! preservation for mutation, and agreement between the serialization keys
//! and the structural identity notions they stand in for.

use cluster_core::explorer::reduce_path;
use cluster_core::invariants::{dmatrix_direct, dmatrix_recurrence, gmatrix};
use cluster_core::{
    find_skew_symmetrizer, mutate_matrix, seeds_equivalent, ExponentVector, IntMatrix, LaurentPoly,
    Mode, Seed, TropicalMonomial,
};
use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;

const RANK: usize = 2;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    vec(
        (
            vec(-3i32..=3, RANK),
            vec(-3i32..=3, RANK),
            prop_oneof![(-5i64..=-1).prop_map(BigInt::from), (1i64..=5).prop_map(BigInt::from)],
        ),
        0..4,
    )
    .prop_map(|terms| {
        let mut p = LaurentPoly::zero(RANK);
        for (xexp, yexp, coeff) in terms {
            let m = LaurentPoly::monomial(RANK, ExponentVector::new(xexp, yexp), coeff);
            p = p.add(&m).unwrap();
        }
        p
    })
}

fn tropical() -> impl Strategy<Value = TropicalMonomial> {
    vec(-4i32..=4, RANK).prop_map(TropicalMonomial::from_exponents)
}

/// Skew-symmetrizable by construction: an integer skew form with its
/// columns rescaled by a positive diagonal. Entries stay small so that
/// random walks keep expansions of manageable size even off finite type.
fn exchange_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    let pairs = n * (n - 1) / 2;
    (vec(-1i64..=1, pairs), vec(1i64..=2, n)).prop_map(move |(upper, d)| {
        let mut b = IntMatrix::zeros(n, n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in (i + 1)..n {
                let s = it.next().unwrap();
                b.set(i, j, s * d[j]);
                b.set(j, i, -s * d[i]);
            }
        }
        b
    })
}

proptest! {
    #[test]
    fn addition_and_multiplication_are_a_commutative_ring(
        p in laurent(), q in laurent(), r in laurent()
    ) {
        let pq = p.add(&q).unwrap();
        prop_assert_eq!(&pq, &q.add(&p).unwrap());
        prop_assert_eq!(
            pq.add(&r).unwrap(),
            p.add(&q.add(&r).unwrap()).unwrap()
        );
        let prod = p.mul(&q).unwrap();
        prop_assert_eq!(&prod, &q.mul(&p).unwrap());
        prop_assert_eq!(
            prod.mul(&r).unwrap(),
            p.mul(&q.mul(&r).unwrap()).unwrap()
        );
        prop_assert_eq!(
            p.mul(&q.add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
        );
        prop_assert!(p.add(&p.neg()).unwrap().is_zero());
        prop_assert_eq!(&p.mul(&LaurentPoly::one(RANK)).unwrap(), &p);
    }

    #[test]
    fn exact_division_inverts_multiplication(p in laurent(), q in laurent()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).unwrap().div_exact(&q).unwrap(), p);
    }

    #[test]
    fn display_and_parse_agree(p in laurent()) {
        let text = p.to_string();
        prop_assert_eq!(LaurentPoly::parse(RANK, &text).unwrap(), p);
    }

    #[test]
    fn tropical_monomials_form_a_semifield(
        a in tropical(), b in tropical(), c in tropical()
    ) {
        prop_assert_eq!(a.oplus(&b).unwrap(), b.oplus(&a).unwrap());
        prop_assert_eq!(
            a.oplus(&b).unwrap().oplus(&c).unwrap(),
            a.oplus(&b.oplus(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(&a.oplus(&a).unwrap(), &a);
        prop_assert_eq!(
            a.mul(&b.oplus(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().oplus(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.mul(&a.inv()).unwrap().is_one());
        prop_assert_eq!(a.pow(2).mul(&a.pow(-3)).unwrap(), a.pow(-1));
    }

    #[test]
    fn matrix_mutation_is_involutive_and_keeps_the_symmetrizer(
        b in exchange_matrix(3), k in 0usize..3
    ) {
        let d = find_skew_symmetrizer(&b).unwrap().diag;
        let m = mutate_matrix(&b, k).unwrap();
        prop_assert_eq!(mutate_matrix(&m, k).unwrap(), b);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(d[i] * m.get(i, j), -d[j] * m.get(j, i));
            }
        }
    }

}

// Seed-level walks multiply Laurent polynomials, so these run fewer cases
// with shorter paths than the pure arithmetic laws above.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn seed_mutation_is_involutive_off_the_initial_seed(
        b in exchange_matrix(3),
        prelude in vec(0usize..3, 0..3),
        k in 0usize..3,
        principal in any::<bool>(),
    ) {
        let mode = if principal { Mode::Principal } else { Mode::Trivial };
        let s = Seed::initial(b, mode).unwrap().walk(&prelude).unwrap();
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }

    #[test]
    fn keys_match_the_identities_they_encode(
        b in exchange_matrix(3),
        p1 in vec(0usize..3, 0..3),
        p2 in vec(0usize..3, 0..3),
    ) {
        let root = Seed::initial(b, Mode::Trivial).unwrap();
        let s1 = root.walk(&p1).unwrap();
        let s2 = root.walk(&p2).unwrap();
        prop_assert_eq!(
            s1.canonical_key() == s2.canonical_key(),
            seeds_equivalent(&s1, &s2).is_some()
        );
        prop_assert_eq!(s1.labeled_key() == s2.labeled_key(), s1 == s2);
    }

    #[test]
    fn reduced_paths_reach_the_same_seed(
        b in exchange_matrix(3),
        path in vec(0usize..3, 0..4),
    ) {
        let root = Seed::initial(b, Mode::Principal).unwrap();
        prop_assert_eq!(
            root.walk(&path).unwrap(),
            root.walk(&reduce_path(path)).unwrap()
        );
    }

    #[test]
    fn denominator_recurrence_tracks_the_expansions(
        path in vec(0usize..3, 0..5),
    ) {
        let b = IntMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let s = Seed::initial(b.clone(), Mode::Trivial).unwrap().walk(&path).unwrap();
        prop_assert_eq!(
            dmatrix_recurrence(&path, &b).unwrap(),
            dmatrix_direct(&s).unwrap()
        );
    }

    #[test]
    fn degree_matrices_stay_unimodular(
        b in exchange_matrix(3),
        path in vec(0usize..3, 0..4),
    ) {
        let s = Seed::initial(b, Mode::Principal).unwrap().walk(&path).unwrap();
        let g = gmatrix(&s).unwrap();
        let det = g.det();
        prop_assert!(det == 1 || det == -1, "determinant {}", det);
    }
}

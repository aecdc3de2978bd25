//! Random matrices over small prime fields: every closed-form count against
//! exhaustive enumeration, with the type read off the matrix.

use num_bigint::BigInt;
use proptest::prelude::*;
use subprofile::fforacle::{self, FpMatrix};
use subprofile::partitions::{partitions_of, WeakComposition};
use subprofile::profiles::{self, ProfileTuple};
use subprofile::ratfunc::BigQ;

fn matrix() -> impl Strategy<Value = FpMatrix> {
    (prop_oneof![Just(2u64), Just(3u64)], 1usize..=3).prop_flat_map(|(p, n)| {
        proptest::collection::vec(proptest::collection::vec(0..p, n), n)
            .prop_map(move |rows| FpMatrix::new(p, rows).unwrap())
    })
}

fn at(p: u64) -> BigQ {
    BigQ::from_integer(BigInt::from(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_table_matches(delta in matrix()) {
        let tau = fforacle::similarity_type(&delta).unwrap();
        let counts = fforacle::profile_counts(&delta).unwrap();
        for (mu, s) in profiles::sigma_table(&tau).unwrap() {
            let v = profiles::eval_count_at_prime(&s, &tau, delta.p()).unwrap();
            prop_assert_eq!(v, BigInt::from(counts.get(&mu).copied().unwrap_or(0)), "mu={} tau={}", mu, tau);
        }
    }

    #[test]
    fn flags_match(delta in matrix()) {
        let tau = fforacle::similarity_type(&delta).unwrap();
        for lam in partitions_of(delta.n()) {
            let x = profiles::x_coeff(&lam, &tau).unwrap().eval(&at(delta.p()));
            let brute = fforacle::flag_count_bruteforce(&WeakComposition::from(&lam), &delta).unwrap();
            prop_assert_eq!(x, BigQ::from_integer(BigInt::from(brute)));
        }
    }

    #[test]
    fn partial_profiles_match(delta in matrix(), rho in proptest::collection::vec(0usize..=2, 1..=3)) {
        let n = delta.n();
        prop_assume!(rho.iter().sum::<usize>() <= n && rho.last() != Some(&0));
        let rho = ProfileTuple(rho);
        let tau = fforacle::similarity_type(&delta).unwrap();
        let f = profiles::eval_count_at_prime(&profiles::pi_partial(&rho, &tau).unwrap(), &tau, delta.p()).unwrap();
        prop_assert_eq!(f, BigInt::from(fforacle::partial_profile_bruteforce(&rho, &delta).unwrap()));
    }

    #[test]
    fn type_is_a_conjugacy_invariant(delta in matrix()) {
        let g = FpMatrix::scrambler(delta.p(), delta.n()).unwrap();
        let conj = delta.conjugate_by(&g).unwrap();
        prop_assert_eq!(fforacle::similarity_type(&delta).unwrap(), fforacle::similarity_type(&conj).unwrap());
    }

    #[test]
    fn krylov_matches(delta in matrix(), k in 1usize..=2, l in 1usize..=2) {
        prop_assume!(delta.p() == 2);
        let tau = fforacle::similarity_type(&delta).unwrap();
        let f = profiles::krylov_prob(k, l, &tau).unwrap().eval_at(&at(2)).unwrap();
        prop_assert_eq!(f, fforacle::krylov_bruteforce(k, l, &delta).unwrap());
    }
}

#[test]
fn subspace_weighted_and_tuple_krylov_agree() {
    for tau in profiles::types_of_size(2) {
        let delta = fforacle::build_matrix_of_type(&tau, 2).unwrap();
        for (k, l) in [(1, 1), (1, 2), (2, 1)] {
            assert_eq!(
                fforacle::krylov_bruteforce(k, l, &delta).unwrap(),
                fforacle::krylov_bruteforce_tuples(k, l, &delta).unwrap(),
                "{tau} k={k} l={l}"
            );
        }
    }
}

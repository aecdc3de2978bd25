//! Symmetric functions checked by evaluating at rational points in four
//! variables against classical finite-variable formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use subprofile::hlwhittaker::{hl_p, hmod, whittaker_dual, whittaker_w};
use subprofile::partitions::{partitions_of, Partition};
use subprofile::ratfunc::BigQ;
use subprofile::symfunc::{from_basis, multiply, Basis, SymFunc};

const N: usize = 4;

fn r(n: i64, d: i64) -> BigQ {
    BigQ::new(BigInt::from(n), BigInt::from(d))
}

fn pow(x: &BigQ, k: usize) -> BigQ {
    (0..k).fold(BigQ::one(), |a, _| a * x)
}

/// `f(x_1..x_N)` at parameter value `t`, through the power-sum expansion.
fn eval(f: &SymFunc, x: &[BigQ], t: &BigQ) -> BigQ {
    let mut acc = BigQ::zero();
    for (rho, c) in f.to_power_sums() {
        let mut term = c.eval_at(t).unwrap();
        for &k in rho.parts() {
            term *= x.iter().map(|xi| pow(xi, k)).fold(BigQ::zero(), |a, b| a + b);
        }
        acc += term;
    }
    acc
}

fn det(mut m: Vec<Vec<BigQ>>) -> BigQ {
    let n = m.len();
    let mut d = BigQ::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigQ::zero();
        };
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    d
}

fn schur_bialternant(lam: &Partition, x: &[BigQ]) -> BigQ {
    let n = x.len();
    if lam.len() > n {
        return BigQ::zero();
    }
    let a = |shift: &dyn Fn(usize) -> usize| {
        det((0..n).map(|i| (0..n).map(|j| pow(&x[i], shift(j) + n - 1 - j)).collect()).collect())
    };
    a(&|j| lam.get(j)) / a(&|_| 0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Hall-Littlewood P by symmetrizing `x^λ Π_{i<j} (x_i - t x_j)/(x_i - x_j)`.
fn hl_p_symmetrized(lam: &Partition, x: &[BigQ], t: &BigQ) -> BigQ {
    let n = x.len();
    if lam.len() > n {
        return BigQ::zero();
    }
    let mut total = BigQ::zero();
    for w in permutations(n) {
        let y: Vec<&BigQ> = w.iter().map(|&i| &x[i]).collect();
        let mut term = (0..n).fold(BigQ::one(), |a, i| a * pow(y[i], lam.get(i)));
        for i in 0..n {
            for j in i + 1..n {
                term *= (y[i] - t * y[j]) / (y[i] - y[j]);
            }
        }
        total += term;
    }
    let v = |m: usize| (1..=m).fold(BigQ::one(), |a, j| a * (BigQ::one() - pow(t, j)) / (BigQ::one() - t));
    let mut mult = vec![0usize; lam.first() + 1];
    mult[0] = n - lam.len();
    for &p in lam.parts() {
        mult[p] += 1;
    }
    total / mult.into_iter().fold(BigQ::one(), |a, m| a * v(m))
}

fn point() -> Vec<BigQ> {
    vec![r(1, 2), r(-2, 3), r(3, 1), r(5, 7)]
}

#[test]
fn schur_matches_bialternant() {
    let x = point();
    for n in 0..=6 {
        for lam in partitions_of(n) {
            let f = SymFunc::schur(&lam);
            assert_eq!(eval(&f, &x, &BigQ::zero()), schur_bialternant(&lam, &x), "s{lam}");
        }
    }
}

#[test]
fn hall_littlewood_matches_symmetrization() {
    let x = point();
    for t in [r(1, 3), r(2, 1), r(-3, 5)] {
        for n in 0..=5 {
            for lam in partitions_of(n) {
                let f = hl_p(&lam).unwrap();
                assert_eq!(eval(&f, &x, &t), hl_p_symmetrized(&lam, &x, &t), "P{lam} at t={t}");
            }
        }
    }
}

#[test]
fn hall_littlewood_endpoints() {
    let x = point();
    for lam in partitions_of(4) {
        let f = hl_p(&lam).unwrap();
        assert_eq!(eval(&f, &x, &BigQ::zero()), schur_bialternant(&lam, &x));
        let m = from_basis(Basis::M, &lam).unwrap();
        assert_eq!(eval(&f, &x, &BigQ::one()), eval(&m, &x, &BigQ::zero()));
    }
}

#[test]
fn modified_hl_at_one_is_h() {
    let x = point();
    for lam in partitions_of(4) {
        let f = hmod(&lam).unwrap();
        let h = from_basis(Basis::H, &lam).unwrap();
        assert_eq!(eval(&f, &x, &BigQ::one()), eval(&h, &x, &BigQ::zero()), "H~{lam}(x;1)");
    }
}

#[test]
fn whittaker_rows_and_columns() {
    let x = point();
    for n in 1..=5 {
        let wd = whittaker_dual(&Partition::row(n)).unwrap();
        let h = from_basis(Basis::H, &Partition::row(n)).unwrap();
        let w = whittaker_w(&Partition::column(n)).unwrap();
        let e = from_basis(Basis::E, &Partition::row(n)).unwrap();
        for t in [r(1, 2), r(4, 1)] {
            assert_eq!(eval(&wd, &x, &t), eval(&h, &x, &t));
            assert_eq!(eval(&w, &x, &t), eval(&e, &x, &t));
        }
    }
}

fn small_partition() -> impl Strategy<Value = Partition> {
    (1usize..=4).prop_flat_map(|n| {
        let ps = partitions_of(n);
        (0..ps.len()).prop_map(move |i| ps[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_is_multiplicative(a in small_partition(), b in small_partition(),
                                    xs in proptest::collection::vec(-5i64..=5, N), t in -3i64..=3) {
        let x: Vec<BigQ> = xs.iter().map(|&v| r(v, 1)).collect();
        let t = r(t, 2);
        let f = hl_p(&a).unwrap();
        let g = whittaker_w(&b).unwrap();
        let fg = multiply(&f, &g).unwrap();
        prop_assert_eq!(eval(&fg, &x, &t), eval(&f, &x, &t) * eval(&g, &x, &t));
    }
}

//! Cross-checks against slow, independent computations.

mod common;

use morsegrowth::complex::FreeComplex;
use morsegrowth::matrix::{rank_ff, IntMatrix, PolyMatrix};
use morsegrowth::novikov::{basic_subcomplex, truncate};
use morsegrowth::oracle::{morse_number_z, mu_series};
use morsegrowth::ring::ExponentVector;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

fn cofactor_det(a: &[Vec<BigInt>]) -> BigInt {
    if a.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..a.len() {
        let minor: Vec<Vec<BigInt>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors `d_1, d_2, ...` up to the rank, by cofactor expansion.
fn divisors(a: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = BigInt::zero();
        for rows in subsets(a.rows(), k) {
            for cols in subsets(a.cols(), k) {
                let sub: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect())
                    .collect();
                g = g.gcd(&cofactor_det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// `Σ b_p + 2 Σ q_p` where `q_p` counts invariant factors of `∂_{p+1}` above 1.
fn brute_morse_number(c: &FreeComplex) -> usize {
    let n = c.num_degrees();
    let mut rank = vec![0usize; n + 1];
    let mut torsion = vec![0usize; n + 1];
    for p in 1..n {
        let d = divisors(&c.boundary(p).unwrap().to_int_matrix().unwrap());
        rank[p] = d.len();
        let mut prev = BigInt::one();
        for x in &d {
            if !(x / &prev).is_one() {
                torsion[p - 1] += 1;
            }
            prev = x.clone();
        }
    }
    let betti: usize = (0..n).map(|p| c.rank(p) - rank[p] - rank[p + 1]).sum();
    betti + 2 * torsion.iter().sum::<usize>()
}

#[test]
fn morse_number_matches_brute_force() {
    let mut r = common::rng(41);
    let mut checked = 0;
    while checked < 150 {
        let c = common::random_univariate_complex(&mut r, 4, 5);
        let k = r.gen_range(1..=2);
        if c.total_rank() * k > 5 {
            continue;
        }
        let a = truncate(&basic_subcomplex(&c).complex, k).unwrap();
        assert_eq!(
            morse_number_z(&a).unwrap(),
            brute_morse_number(&a),
            "ranks {:?}",
            a.ranks()
        );
        checked += 1;
    }
}

#[test]
fn mu_matches_brute_force_on_small_truncations() {
    let mut r = common::rng(43);
    for _ in 0..40 {
        let c = common::random_univariate_complex(&mut r, 2, 5);
        let d = basic_subcomplex(&c).complex;
        let mu = mu_series(&d, 2).unwrap();
        for k in 1..=2 {
            assert_eq!(mu.get(k), brute_morse_number(&truncate(&d, k).unwrap()));
        }
    }
}

fn evaluation_rank(r: &mut impl Rng, a: &PolyMatrix) -> usize {
    let m = a.nvars();
    let low: Vec<i64> = (0..m)
        .map(|i| {
            a.entries()
                .filter(|p| !p.is_zero())
                .map(|p| p.min_exponents().as_slice()[i])
                .min()
                .unwrap_or(0)
        })
        .collect();
    let shift = ExponentVector::new(low.iter().map(|&l| -l.min(0)).collect());
    (0..4)
        .map(|_| {
            let point: Vec<BigInt> = (0..m)
                .map(|_| BigInt::from(r.gen_range(2..10_000)))
                .collect();
            let rows = (0..a.rows())
                .map(|i| {
                    (0..a.cols())
                        .map(|j| common::evaluate(&a.get(i, j).shift(&shift), &point))
                        .collect()
                })
                .collect();
            IntMatrix::from_big_rows(rows, a.cols()).rank()
        })
        .max()
        .unwrap()
}

#[test]
fn fraction_free_rank_matches_evaluation() {
    let mut r = common::rng(47);
    for _ in 0..150 {
        let m = r.gen_range(1..=2);
        let n = r.gen_range(1..=5);
        let inner = r.gen_range(1..=n);
        let cols = r.gen_range(1..=5);
        let x = common::random_poly_matrix(&mut r, m, n, inner);
        let y = common::random_poly_matrix(&mut r, m, inner, cols);
        let a = x.mul(&y);
        assert_eq!(rank_ff(&a), evaluation_rank(&mut r, &a));
    }
}

#[test]
fn integer_rank_matches_divisor_count() {
    let mut r = common::rng(53);
    for _ in 0..100 {
        let (rows, cols) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let inner = r.gen_range(1..=4);
        let a = common::random_int_matrix(&mut r, rows, inner, 4)
            .mul(&common::random_int_matrix(&mut r, inner, cols, 4));
        assert_eq!(a.rank(), divisors(&a).len());
        if rows == cols {
            assert_eq!(a.det(), cofactor_det(&a.to_rows()));
        }
    }
}

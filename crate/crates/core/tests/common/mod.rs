#![allow(dead_code)]

use morsegrowth::complex::{direct_sum, free_model, tau, FreeComplex};
use morsegrowth::matrix::{IntMatrix, PolyMatrix};
use morsegrowth::ring::{ExponentVector, LaurentPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random nonzero coefficient in `[-h, h]`.
pub fn nonzero(r: &mut impl Rng, h: i64) -> i64 {
    loop {
        let c = r.gen_range(-h..=h);
        if c != 0 {
            return c;
        }
    }
}

/// Random element of `Z[t]` with degree at most `deg` and height at most `h`.
pub fn poly_t(r: &mut impl Rng, deg: usize, h: i64) -> LaurentPoly {
    let coeffs: Vec<i64> = (0..=deg).map(|_| r.gen_range(-h..=h)).collect();
    LaurentPoly::univariate(0, &coeffs)
}

pub fn nonzero_poly_t(r: &mut impl Rng, deg: usize, h: i64) -> LaurentPoly {
    loop {
        let p = poly_t(r, deg, h);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random Laurent polynomial in `m` variables, exponents in `[-e, e]`.
pub fn laurent(r: &mut impl Rng, m: usize, terms: usize, e: i64, h: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero(m);
    for _ in 0..terms {
        let exps: Vec<i64> = (0..m).map(|_| r.gen_range(-e..=e)).collect();
        p += &LaurentPoly::monomial(m, r.gen_range(-h..=h), ExponentVector::new(exps));
    }
    p
}

pub fn random_poly_matrix(r: &mut impl Rng, m: usize, rows: usize, cols: usize) -> PolyMatrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| laurent(r, m, 2, 1, 3)).collect())
        .collect();
    PolyMatrix::from_rows(m, data).unwrap()
}

/// `0 <- Λ <-[a b]- Λ^2 <-[-b; a]- Λ <- 0` starting in degree `i`.
pub fn koszul(a: &LaurentPoly, b: &LaurentPoly, i: usize) -> FreeComplex {
    let m = a.nvars();
    let mut ranks = vec![0; i + 3];
    ranks[i] = 1;
    ranks[i + 1] = 2;
    ranks[i + 2] = 1;
    let mut boundaries: Vec<PolyMatrix> = (1..=i)
        .map(|p| PolyMatrix::zeros(m, ranks[p - 1], ranks[p]))
        .collect();
    boundaries.push(PolyMatrix::from_rows(m, vec![vec![a.clone(), b.clone()]]).unwrap());
    boundaries.push(PolyMatrix::from_rows(m, vec![vec![-b], vec![a.clone()]]).unwrap());
    FreeComplex::new(m, ranks, boundaries).unwrap()
}

/// Replaces the degree-`p` basis through `E = I + c E_ij`, keeping entries in `Z[t]`.
pub fn elementary_change(
    c: &FreeComplex,
    p: usize,
    i: usize,
    j: usize,
    x: &LaurentPoly,
) -> FreeComplex {
    let m = c.nvars();
    let n = c.rank(p);
    let mut e = PolyMatrix::identity(m, n);
    e.set(i, j, x.clone());
    let mut e_inv = PolyMatrix::identity(m, n);
    e_inv.set(i, j, -x);
    let mut out = c.clone();
    if p >= 1 {
        out = out.with_boundary(p, c.boundary(p).unwrap().mul(&e));
    }
    if p < c.num_degrees() - 1 {
        out = out.with_boundary(p + 1, e_inv.mul(c.boundary(p + 1).unwrap()));
    }
    out
}

/// A random valid complex over `Z[t]` of total rank at most `max_rank`.
pub fn random_univariate_complex(r: &mut impl Rng, max_rank: usize, h: i64) -> FreeComplex {
    let mut c = FreeComplex::zero(1);
    loop {
        let i = r.gen_range(0..2);
        let piece = match r.gen_range(0..4) {
            0 => free_model(1, i, 1),
            1 => koszul(&nonzero_poly_t(r, 1, h), &nonzero_poly_t(r, 1, h), i),
            _ => tau(&nonzero_poly_t(r, 2, h), i),
        };
        if c.total_rank() + piece.total_rank() > max_rank {
            break;
        }
        c = direct_sum(&c, &piece).unwrap();
        if r.gen_bool(0.3) {
            break;
        }
    }
    if c.total_rank() == 0 {
        c = tau(&nonzero_poly_t(r, 2, h), 0);
    }
    for _ in 0..r.gen_range(0..4) {
        let p = r.gen_range(0..c.num_degrees());
        let n = c.rank(p);
        if n < 2 {
            continue;
        }
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        let x = LaurentPoly::univariate(r.gen_range(0..2), &[nonzero(r, 1)]);
        c = elementary_change(&c, p, i, j, &x);
    }
    c
}

pub fn random_int_matrix(r: &mut impl Rng, rows: usize, cols: usize, h: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| r.gen_range(-h..=h)).collect())
        .collect();
    if rows == 0 {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(&data)
}

/// Value of `p` at an integer point; exponents must be nonnegative.
pub fn evaluate(p: &LaurentPoly, point: &[BigInt]) -> BigInt {
    let mut total = BigInt::zero();
    for (e, c) in p.terms() {
        let mut v = c.clone();
        for (x, &k) in point.iter().zip(e.as_slice()) {
            assert!(k >= 0, "negative exponent in evaluation");
            v *= num_traits::pow(x.clone(), k as usize);
        }
        total += v;
    }
    total
}

pub fn is_diagonal(s: &IntMatrix) -> bool {
    (0..s.rows()).all(|i| (0..s.cols()).all(|j| i == j || s.get(i, j).is_zero()))
}

pub fn is_unimodular(u: &IntMatrix) -> bool {
    let d = u.det();
    d.is_one() || (-d).is_one()
}

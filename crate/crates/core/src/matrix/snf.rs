use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int_matrix::IntMatrix;
use super::poly_matrix::Combinations;

/// `u * a * v = s` with `u`, `v` unimodular and `s` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of invariant factors different from 1.
    pub fn torsion_count(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .count()
    }
}

struct Work {
    s: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in self.s.iter_mut() {
            r.swap(a, b);
        }
        for r in self.v.iter_mut() {
            r.swap(a, b);
        }
    }

    /// row_dst -= q * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.s, &mut self.u] {
            let (d, s) = pick(m, dst, src);
            for (x, y) in d.iter_mut().zip(s) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
    }

    /// col_dst -= q * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.s, &mut self.v] {
            for r in m.iter_mut() {
                if !r[src].is_zero() {
                    let d = q * &r[src];
                    r[dst] -= d;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.s[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }
}

fn pick(m: &mut [Vec<BigInt>], dst: usize, src: usize) -> (&mut Vec<BigInt>, &Vec<BigInt>) {
    if dst < src {
        let (a, b) = m.split_at_mut(src);
        (&mut a[dst], &b[0])
    } else {
        let (a, b) = m.split_at_mut(dst);
        (&mut b[0], &a[src])
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Smith normal form with transforming matrices.
pub fn snf(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        s: a.to_rows(),
        u: identity_rows(m),
        v: identity_rows(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &w.s[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !w.s[i][t].is_zero() {
                    let q = w.s[i][t].div_floor(&w.s[t][t]);
                    w.row_axpy(i, t, &q);
                    clean &= w.s[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.s[t][j].is_zero() {
                    let q = w.s[t][j].div_floor(&w.s[t][t]);
                    w.col_axpy(j, t, &q);
                    clean &= w.s[t][j].is_zero();
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived; make it the pivot.
                let mut best = (t, t);
                for i in t + 1..m {
                    if !w.s[i][t].is_zero() && w.s[i][t].abs() < w.s[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !w.s[t][j].is_zero() && w.s[t][j].abs() < w.s[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let p = w.s[t][t].clone();
            let offender =
                (t + 1..m).find(|&i| w.s[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p)));
            match offender {
                Some(i) => w.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if w.s[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..m.min(n))
        .map(|i| w.s[i][i].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    Snf {
        s: IntMatrix::from_big_rows(w.s, n),
        u: IntMatrix::from_big_rows(w.u, m),
        v: IntMatrix::from_big_rows(w.v, n),
        invariant_factors,
    }
}

/// Determinantal divisors `d_1, d_2, ...` (gcd of all `k x k` minors) up to
/// the rank, by direct minor enumeration. Independent of [`snf`].
pub fn determinantal_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 1..=a.rows().min(a.cols()) {
        let d = minor_gcd(a, k);
        if d.is_zero() {
            break;
        }
        out.push(d);
    }
    out
}

/// gcd of all `k x k` minors, stopping early at 1.
pub fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    'outer: for cols in Combinations::new(a.cols(), k) {
        for rows in Combinations::new(a.rows(), k) {
            g = g.gcd(&a.submatrix(&rows, &cols).det());
            if g.is_one() {
                break 'outer;
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Snf {
        let r = snf(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.s);
        assert!(r.u.det().abs().is_one());
        assert!(r.v.det().abs().is_one());
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    assert!(r.s.get(i, j).is_zero());
                }
            }
        }
        for w in r.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        r
    }

    #[test]
    fn textbook_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let r = check(&a);
        assert_eq!(
            r.invariant_factors,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(
            check(&b).invariant_factors,
            vec![BigInt::from(1), BigInt::from(6)]
        );
        let c = IntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 4, 6]]);
        let r = check(&c);
        assert_eq!(r.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(r.torsion_count(), 1);
        check(&IntMatrix::zeros(2, 3));
        check(&IntMatrix::zeros(0, 2));
    }

    #[test]
    fn divisors_agree_with_snf() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d = determinantal_divisors(&a);
        assert_eq!(
            d,
            vec![BigInt::from(2), BigInt::from(12), BigInt::from(144)]
        );
        let b = IntMatrix::from_rows(&[vec![6, 0], vec![0, 0]]);
        assert_eq!(determinantal_divisors(&b), vec![BigInt::from(6)]);
    }
}

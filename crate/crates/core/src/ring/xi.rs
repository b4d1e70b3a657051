//! Splitting `Z^m = Ker(xi) + Z` along a nonzero integral covector and the
//! induced monomial change of variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::{ExponentVector, LaurentPoly};
use crate::error::{Error, Result};

/// A square integer matrix stored by rows, used for lattice automorphisms.
pub type LatticeMatrix = Vec<Vec<i64>>;

/// A nonzero class `xi: Z^m -> Z` together with a basis adapted to it.
///
/// `basis_change` has columns `k_1..k_{m-1}, T` where the `k_i` span the
/// kernel and `reduced(T) = -1`. In the new coordinates the last variable is
/// the distinguished `t`, so high `xi`-weight becomes low `t`-degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyClass {
    pub covector: Vec<i64>,
    pub divisibility: i64,
    pub reduced: Vec<i64>,
    pub basis_change: LatticeMatrix,
    pub inverse: LatticeMatrix,
}

impl CohomologyClass {
    pub fn lattice_rank(&self) -> usize {
        self.covector.len()
    }

    pub fn evaluate(&self, g: &ExponentVector) -> i64 {
        g.dot(&self.covector)
    }

    /// Kernel basis vectors (the first `m - 1` columns).
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        let m = self.lattice_rank();
        (0..m - 1).map(|j| column(&self.basis_change, j)).collect()
    }

    /// The distinguished vector `T` with `reduced(T) = -1`.
    pub fn transversal(&self) -> Vec<i64> {
        column(&self.basis_change, self.lattice_rank() - 1)
    }

    /// Rewrites `p` in the adapted coordinates `(u_1..u_{m-1}, t)`.
    pub fn to_adapted(&self, p: &LaurentPoly) -> LaurentPoly {
        map_lattice(p, &self.inverse)
    }

    /// Inverse of [`CohomologyClass::to_adapted`].
    pub fn from_adapted(&self, p: &LaurentPoly) -> LaurentPoly {
        map_lattice(p, &self.basis_change)
    }
}

fn column(m: &LatticeMatrix, j: usize) -> Vec<i64> {
    m.iter().map(|row| row[j]).collect()
}

fn identity(m: usize) -> LatticeMatrix {
    (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Splits along `covector`; fails with [`Error::ZeroClass`] for the zero covector.
pub fn split_along_xi(covector: &[i64]) -> Result<CohomologyClass> {
    if covector.iter().all(|&c| c == 0) {
        return Err(Error::ZeroClass);
    }
    let m = covector.len();
    let l = covector.iter().fold(0i64, |g, &c| g.gcd(&c));
    let reduced: Vec<i64> = covector.iter().map(|c| c / l).collect();

    // Column operations on the row vector `reduced`, tracked in `v`
    // (and the inverse row operations in `vinv`), until one entry remains.
    let mut row = reduced.clone();
    let mut v = identity(m);
    let mut vinv = identity(m);
    loop {
        let nonzero: Vec<usize> = (0..m).filter(|&i| row[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let j = *nonzero.iter().min_by_key(|&&i| (row[i].abs(), i)).unwrap();
        for &i in &nonzero {
            if i == j {
                continue;
            }
            let q = row[i] / row[j];
            row[i] -= q * row[j];
            for r in v.iter_mut() {
                r[i] -= q * r[j];
            }
            let (src, dst) = (vinv[i].clone(), &mut vinv[j]);
            for (d, s) in dst.iter_mut().zip(src) {
                *d += q * s;
            }
        }
    }
    let pivot = (0..m).find(|&i| row[i] != 0).unwrap();
    debug_assert_eq!(row[pivot].abs(), 1);
    let last = m - 1;
    if pivot != last {
        row.swap(pivot, last);
        for r in v.iter_mut() {
            r.swap(pivot, last);
        }
        vinv.swap(pivot, last);
    }
    if row[last] == 1 {
        for r in v.iter_mut() {
            r[last] = -r[last];
        }
        for x in vinv[last].iter_mut() {
            *x = -*x;
        }
    }
    Ok(CohomologyClass {
        covector: covector.to_vec(),
        divisibility: l,
        reduced,
        basis_change: v,
        inverse: vinv,
    })
}

fn map_lattice(p: &LaurentPoly, u: &LatticeMatrix) -> LaurentPoly {
    let m = u.len();
    p.map_exponents(m, |g| {
        ExponentVector::new(
            u.iter()
                .map(|row| row.iter().zip(g.as_slice()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    })
}

/// Exact determinant of a small integer matrix (fraction-free elimination).
pub fn lattice_det(u: &LatticeMatrix) -> BigInt {
    let n = u.len();
    let mut a: Vec<Vec<BigInt>> = u
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = val / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * prev
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(u: &LatticeMatrix) -> Result<LatticeMatrix> {
    let n = u.len();
    if u.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("basis change must be square".into()));
    }
    let det = lattice_det(u);
    if !det.abs().is_one() {
        return Err(Error::NonUnimodular(det.to_string()));
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let x = if j < n {
                        u[i][j]
                    } else {
                        i64::from(j - n == i)
                    };
                    BigRational::from_integer(BigInt::from(x))
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).expect("nonsingular");
        a.swap(p, k);
        let inv = a[k][k].recip();
        for x in a[k].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let d = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &d;
                }
            }
        }
    }
    Ok(a.iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| x.to_integer().to_i64().expect("small inverse entry"))
                .collect()
        })
        .collect())
}

/// Monomial substitution `x^g -> x^(U g)` for a unimodular `U`.
pub fn apply_basis_change(p: &LaurentPoly, u: &LatticeMatrix) -> Result<LaurentPoly> {
    if u.len() != p.nvars() || u.iter().any(|r| r.len() != p.nvars()) {
        return Err(Error::Shape(format!(
            "basis change must be {0}x{0}",
            p.nvars()
        )));
    }
    let det = lattice_det(u);
    if !det.abs().is_one() {
        return Err(Error::NonUnimodular(det.to_string()));
    }
    Ok(map_lattice(p, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn check_adapted(c: &CohomologyClass) {
        let m = c.lattice_rank();
        assert!(lattice_det(&c.basis_change).abs().is_one());
        for k in c.kernel_basis() {
            assert_eq!(k.iter().zip(&c.reduced).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
        let t = c.transversal();
        assert_eq!(
            t.iter().zip(&c.reduced).map(|(a, b)| a * b).sum::<i64>(),
            -1
        );
        let prod: Vec<Vec<i64>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|k| c.basis_change[i][k] * c.inverse[k][j]).sum())
                    .collect()
            })
            .collect();
        assert_eq!(prod, identity(m));
    }

    #[test]
    fn coordinate_class() {
        let c = split_along_xi(&[1, 0]).unwrap();
        assert_eq!(c.divisibility, 1);
        assert_eq!(c.kernel_basis(), vec![vec![0, 1]]);
        assert_eq!(c.transversal(), vec![-1, 0]);
        check_adapted(&c);
    }

    #[test]
    fn euclid_class() {
        let c = split_along_xi(&[2, 3]).unwrap();
        assert_eq!(c.divisibility, 1);
        check_adapted(&c);
        let k = &c.kernel_basis()[0];
        assert!(k == &vec![3, -2] || k == &vec![-3, 2]);
    }

    #[test]
    fn divisible_and_zero_classes() {
        let c = split_along_xi(&[2, 4]).unwrap();
        assert_eq!(c.divisibility, 2);
        assert_eq!(c.reduced, vec![1, 2]);
        check_adapted(&c);
        assert!(matches!(split_along_xi(&[0, 0]), Err(Error::ZeroClass)));
        let c = split_along_xi(&[-3]).unwrap();
        assert_eq!(c.transversal(), vec![1]);
        check_adapted(&split_along_xi(&[6, -10, 15]).unwrap());
    }

    #[test]
    fn basis_change_examples() {
        let p = parse_poly("t1+2*t2", 2).unwrap();
        assert_eq!(apply_basis_change(&p, &identity(2)).unwrap(), p);
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(
            apply_basis_change(&p, &swap).unwrap(),
            parse_poly("t2+2*t1", 2).unwrap()
        );
        let u = vec![vec![2, 1], vec![1, 1]];
        let q = apply_basis_change(&p, &u).unwrap();
        assert_eq!(
            apply_basis_change(&q, &unimodular_inverse(&u).unwrap()).unwrap(),
            p
        );
        assert!(matches!(
            apply_basis_change(&p, &vec![vec![2, 0], vec![0, 1]]),
            Err(Error::NonUnimodular(_))
        ));
    }

    #[test]
    fn high_weight_becomes_low_t_degree() {
        let c = split_along_xi(&[1, 0]).unwrap();
        let p = parse_poly("t1 - 1", 2).unwrap();
        assert_eq!(c.to_adapted(&p), parse_poly("t2^-1 - 1", 2).unwrap());
        assert_eq!(c.from_adapted(&c.to_adapted(&p)), p);
    }
}

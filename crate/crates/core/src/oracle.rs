//! Integer ground truth: homology and Morse numbers of complexes over `Z`,
//! Morse-number series of truncations, exact slope fitting, covering-space
//! substitutions and the determinantal check on truncated Toeplitz matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::matrix::{minor_gcd, snf, IntMatrix, PolyMatrix};
use crate::novikov::{basic_subcomplex, to_xi_presentation, truncate};
use crate::ring::{is_special, CohomologyClass, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDegree {
    pub betti: usize,
    /// Invariant factors greater than 1.
    #[serde(serialize_with = "crate::ser::bigints")]
    pub torsion: Vec<BigInt>,
}

impl HomologyDegree {
    pub fn q(&self) -> usize {
        self.torsion.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZHomology {
    pub degrees: Vec<HomologyDegree>,
}

impl ZHomology {
    /// `Σ_p (b_p + q_p + q_{p-1})`.
    pub fn morse_number(&self) -> usize {
        self.degrees
            .iter()
            .map(|d| d.betti + 2 * d.q())
            .sum::<usize>()
            - self.degrees.last().map_or(0, HomologyDegree::q)
    }
}

fn integer_boundaries(c: &FreeComplex) -> Result<Vec<IntMatrix>> {
    c.boundaries()
        .iter()
        .map(PolyMatrix::to_int_matrix)
        .collect()
}

/// Homology over `Z` of a complex with constant entries.
pub fn homology_z(c: &FreeComplex) -> Result<ZHomology> {
    let bs = integer_boundaries(c)?;
    let factors: Vec<Vec<BigInt>> = bs.iter().map(|b| snf(b).invariant_factors).collect();
    let rank = |p: usize| {
        p.checked_sub(1)
            .and_then(|i| factors.get(i))
            .map_or(0, Vec::len)
    };
    let degrees = (0..c.num_degrees())
        .map(|p| HomologyDegree {
            betti: c.rank(p) - rank(p) - rank(p + 1),
            torsion: factors.get(p).map_or(Vec::new(), |f| {
                f.iter().filter(|d| !d.is_one()).cloned().collect()
            }),
        })
        .collect();
    Ok(ZHomology { degrees })
}

/// Minimal number of generators in the homotopy type of an integer complex.
pub fn morse_number_z(c: &FreeComplex) -> Result<usize> {
    Ok(homology_z(c)?.morse_number())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuSeries {
    /// `μ_1 .. μ_K`.
    pub values: Vec<usize>,
    pub source: String,
}

impl MuSeries {
    pub fn get(&self, k: usize) -> usize {
        self.values[k - 1]
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// `(k, l)` with `k + l <= K` where `μ_k + μ_l < μ_{k+l}`.
    pub fn subadditivity_failures(&self) -> Vec<(usize, usize)> {
        let n = self.values.len();
        let mut out = Vec::new();
        for k in 1..=n {
            for l in k..=n - k {
                if self.get(k) + self.get(l) < self.get(k + l) {
                    out.push((k, l));
                }
            }
        }
        out
    }
}

/// `μ_k` = Morse number of `truncate(D, k)` for `k = 1..K`, `D` univariate
/// with entries in `Z[t]`.
pub fn mu_series(d: &FreeComplex, horizon: usize) -> Result<MuSeries> {
    if d.nvars() != 1 {
        return Err(Error::OracleRefused(format!(
            "Morse numbers are computed over Z only; the truncation ring has {} kernel variables",
            d.nvars().saturating_sub(1)
        )));
    }
    let values = (1..=horizon)
        .map(|k| morse_number_z(&truncate(d, k)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(MuSeries {
        values,
        source: "truncations of a basic subcomplex".into(),
    })
}

/// The full pipeline for a class `ξ`: adapted presentation, optional
/// augmentation of the kernel variables, basic subcomplex, `μ`-series.
pub fn mu_series_along(
    c: &FreeComplex,
    xi: &CohomologyClass,
    horizon: usize,
    augment: bool,
) -> Result<MuSeries> {
    let x = to_xi_presentation(c, xi)?;
    let univariate = if x.kernel_rank() == 0 {
        x.complex.clone()
    } else if augment {
        x.augmented()
    } else {
        return Err(Error::OracleRefused(format!(
            "kernel of xi has rank {}; Morse numbers over Z[Z^{}] are not computed (use augmentation)",
            x.kernel_rank(),
            x.kernel_rank()
        )));
    };
    let mut s = mu_series(&basic_subcomplex(&univariate).complex, horizon)?;
    s.source = format!(
        "xi = {:?}{}",
        xi.covector,
        if augment && x.kernel_rank() > 0 {
            ", augmented"
        } else {
            ""
        }
    );
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeFit {
    #[serde(serialize_with = "rational")]
    pub slope: BigRational,
    /// `max_k |μ_k - slope * k|` over the window.
    #[serde(serialize_with = "rational")]
    pub max_deviation: BigRational,
    /// Inclusive `[first, last]` values of `k`.
    pub window: (usize, usize),
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// Minimax slope over the window `burnin+1 ..= K`. Candidate slopes are the
/// secants between window points; the winner minimizes the band width
/// `(max r - min r) / 2` of the residuals `r_k = μ_k - slope * k`, then the
/// deviation `max |r_k|`, then the slope itself.
pub fn slope_fit(values: &[usize], burnin: usize) -> Result<SlopeFit> {
    let len = values.len().saturating_sub(burnin);
    if len < 4 {
        return Err(Error::WindowTooShort { len });
    }
    let pts: Vec<(BigRational, BigRational)> = (burnin + 1..=values.len())
        .map(|k| {
            (
                BigRational::from_integer(k.into()),
                BigRational::from_integer(values[k - 1].into()),
            )
        })
        .collect();
    let mut best: Option<(BigRational, BigRational, BigRational)> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let slope = (&pts[j].1 - &pts[i].1) / (&pts[j].0 - &pts[i].0);
            let res: Vec<BigRational> = pts.iter().map(|(k, m)| m - &slope * k).collect();
            let hi = res.iter().max().unwrap();
            let lo = res.iter().min().unwrap();
            let width = (hi - lo) / BigRational::from_integer(2.into());
            let dev = res.iter().map(|r| r.abs()).max().unwrap();
            let cand = (width, dev, slope);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let (_, max_deviation, slope) = best.unwrap();
    Ok(SlopeFit {
        slope,
        max_deviation,
        window: (burnin + 1, values.len()),
    })
}

/// Replaces each entry `Σ c_e x^e` by `Σ c_e T(e)` where `T(e)` is the
/// permutation of `(Z/k)^m` adding `e`; indices are mixed radix with the
/// first variable most significant.
pub fn finite_quotient_z(c: &FreeComplex, k: usize) -> Result<FreeComplex> {
    if k == 0 {
        return Err(Error::Usage("cover degree must be positive".into()));
    }
    let m = c.nvars();
    let size = k
        .checked_pow(m as u32)
        .ok_or_else(|| Error::Usage("cover too large".into()))?;
    let ki = k as i64;
    let boundaries = c
        .boundaries()
        .iter()
        .map(|b| {
            let mut out = IntMatrix::zeros(b.rows() * size, b.cols() * size);
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    for (e, coeff) in b.get(i, j).terms() {
                        for src in 0..size {
                            let mut rest = src;
                            let mut digits = vec![0i64; m];
                            for d in (0..m).rev() {
                                digits[d] = (rest % k) as i64;
                                rest /= k;
                            }
                            let dst =
                                digits.iter().zip(e.as_slice()).fold(0usize, |acc, (a, x)| {
                                    acc * k + (a + x).rem_euclid(ki) as usize
                                });
                            let (r, col) = (i * size + dst, j * size + src);
                            let v = out.get(r, col) + coeff;
                            out.set(r, col, v);
                        }
                    }
                }
            }
            PolyMatrix::from_int_matrix(0, &out)
        })
        .collect();
    Ok(FreeComplex::from_parts(
        0,
        c.ranks().iter().map(|r| r * size).collect(),
        boundaries,
    ))
}

/// Substitutes `t -> P_k`, the cyclic permutation with `P e_j = e_{j+1 mod k}`.
pub fn cyclic_cover_z(c: &FreeComplex, k: usize) -> Result<FreeComplex> {
    if c.nvars() != 1 {
        return Err(Error::LatticeRank {
            expected: 1,
            found: c.nvars(),
        });
    }
    finite_quotient_z(c, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToeplitzPreconditions {
    pub special: bool,
    pub numerically_prime: bool,
    pub nonzero_constant_term: bool,
}

impl ToeplitzPreconditions {
    pub fn all(&self) -> bool {
        self.special && self.numerically_prime && self.nonzero_constant_term
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToeplitzStep {
    pub k: usize,
    /// gcd of the `k x k` minors of the first `k` columns.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub divisor: BigInt,
    pub unit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToeplitzReport {
    pub preconditions: ToeplitzPreconditions,
    pub steps: Vec<ToeplitzStep>,
}

/// The `(k+r) x (k+r)` lower-triangular Toeplitz matrix of `a_0 + ... + a_r t^r`.
pub fn toeplitz(coeffs: &[BigInt], k: usize) -> IntMatrix {
    let n = k + coeffs.len().saturating_sub(1);
    let mut a = IntMatrix::zeros(n, n);
    for j in 0..n {
        for (d, c) in coeffs.iter().enumerate() {
            if j + d < n {
                a.set(j + d, j, c.clone());
            }
        }
    }
    a
}

/// For `k = 1..K`: whether the first `k` columns of the Toeplitz matrix of
/// `ρ` have coprime `k x k` minors. `ρ` is first shifted to start at `t^0`.
pub fn toeplitz_minor_check(rho: &LaurentPoly, horizon: usize) -> Result<ToeplitzReport> {
    if rho.nvars() != 1 {
        return Err(Error::LatticeRank {
            expected: 1,
            found: rho.nvars(),
        });
    }
    let shifted = crate::complex::t_normalized(rho);
    let r = if shifted.is_zero() {
        0
    } else {
        shifted.max_exponents()[0] as usize
    };
    let coeffs: Vec<BigInt> = (0..=r)
        .map(|d| shifted.coefficient(&vec![d as i64].into()))
        .collect();
    let preconditions = ToeplitzPreconditions {
        special: is_special(&shifted, 0),
        numerically_prime: shifted.integer_content().is_one(),
        nonzero_constant_term: !coeffs[0].is_zero(),
    };
    let steps = (1..=horizon)
        .map(|k| {
            let a = toeplitz(&coeffs, k);
            let cols: Vec<usize> = (0..k).collect();
            let rows: Vec<usize> = (0..a.rows()).collect();
            let b = a.submatrix(&rows, &cols);
            let divisor = minor_gcd(&b, k);
            ToeplitzStep {
                k,
                unit: divisor.is_one(),
                divisor,
            }
        })
        .collect();
    Ok(ToeplitzReport {
        preconditions,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{direct_sum, free_model, suspension, tau};
    use crate::ring::parse_poly;

    fn p1(s: &str) -> LaurentPoly {
        parse_poly(s, 1).unwrap()
    }

    fn int_complex(ranks: Vec<usize>, rows: &[&[Vec<i64>]]) -> FreeComplex {
        let bs = rows
            .iter()
            .map(|m| PolyMatrix::from_int_rows(0, m))
            .collect();
        FreeComplex::new(0, ranks, bs).unwrap()
    }

    #[test]
    fn integer_homology() {
        let c = int_complex(vec![2, 1], &[&[vec![0], vec![4]]]);
        let h = homology_z(&c).unwrap();
        assert_eq!(
            h.degrees[0],
            HomologyDegree {
                betti: 1,
                torsion: vec![BigInt::from(4)]
            }
        );
        assert_eq!(
            h.degrees[1],
            HomologyDegree {
                betti: 0,
                torsion: vec![]
            }
        );
        assert_eq!(h.morse_number(), 3);
        assert_eq!(
            morse_number_z(&int_complex(vec![1, 1], &[&[vec![1]]])).unwrap(),
            0
        );
        assert_eq!(
            morse_number_z(&int_complex(vec![1, 1], &[&[vec![0]]])).unwrap(),
            2
        );
        assert_eq!(
            homology_z(&free_model(0, 0, 3)).unwrap().degrees[0].betti,
            3
        );
        assert!(homology_z(&tau(&p1("t"), 0)).is_err());
    }

    #[test]
    fn series() {
        assert_eq!(
            mu_series(&tau(&p1("2+2t"), 0), 6).unwrap().values,
            vec![2, 4, 6, 8, 10, 12]
        );
        assert_eq!(
            mu_series(&tau(&p1("2+t"), 0), 6).unwrap().values,
            vec![2; 6]
        );
        assert_eq!(
            mu_series(&tau(&p1("1+t"), 0), 6).unwrap().values,
            vec![0; 6]
        );
        let mixed = direct_sum(&tau(&p1("2+2t"), 0), &suspension(&tau(&p1("2+t"), 0))).unwrap();
        let s = mu_series(&mixed, 10).unwrap();
        let fit = slope_fit(&s.values, 2).unwrap();
        assert_eq!(fit.slope, BigRational::from_integer(2.into()));
        assert!(fit.max_deviation <= BigRational::from_integer(2.into()));
        assert!(s.subadditivity_failures().is_empty());
        let two = tau(&parse_poly("2+t1", 2).unwrap(), 0);
        assert!(matches!(mu_series(&two, 3), Err(Error::OracleRefused(_))));
    }

    #[test]
    fn fits() {
        let f = slope_fit(&[2, 4, 6, 8], 0).unwrap();
        assert_eq!(
            (format_rational(&f.slope), format_rational(&f.max_deviation)),
            ("2".into(), "0".into())
        );
        let f = slope_fit(&[2, 2, 2, 2], 0).unwrap();
        assert_eq!(
            (format_rational(&f.slope), format_rational(&f.max_deviation)),
            ("0".into(), "2".into())
        );
        let f = slope_fit(&[1, 2, 4, 5, 7, 8], 0).unwrap();
        assert_eq!(format_rational(&f.slope), "3/2");
        assert!(matches!(
            slope_fit(&[1, 2, 3, 4, 5], 2),
            Err(Error::WindowTooShort { len: 3 })
        ));
    }

    #[test]
    fn covers() {
        let circle = tau(&p1("t-1"), 0);
        for k in 1..=6 {
            assert_eq!(
                morse_number_z(&cyclic_cover_z(&circle, k).unwrap()).unwrap(),
                2
            );
        }
        let p3 = cyclic_cover_z(&tau(&p1("t"), 0), 3).unwrap();
        let expect = PolyMatrix::from_int_rows(0, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(p3.boundary(1).unwrap(), &expect);
        let id = cyclic_cover_z(&tau(&p1("t^3"), 0), 3).unwrap();
        assert_eq!(id.boundary(1).unwrap(), &PolyMatrix::identity(0, 3));
        let aug = cyclic_cover_z(&tau(&p1("2+3t"), 0), 1).unwrap();
        assert_eq!(
            aug.boundary(1).unwrap(),
            &PolyMatrix::from_int_rows(0, &[vec![5]])
        );
        let q = finite_quotient_z(&tau(&parse_poly("t1*t2", 2).unwrap(), 0), 2).unwrap();
        let expect = PolyMatrix::from_int_rows(
            0,
            &[
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
            ],
        );
        assert_eq!(q.boundary(1).unwrap(), &expect);
        assert!(cyclic_cover_z(&tau(&parse_poly("t1", 2).unwrap(), 0), 2).is_err());
    }

    #[test]
    fn toeplitz_divisors() {
        let r = toeplitz_minor_check(&p1("2+3t"), 8).unwrap();
        assert!(r.preconditions.all());
        assert!(r.steps.iter().all(|s| s.unit));
        let r = toeplitz_minor_check(&p1("2+2t"), 3).unwrap();
        assert!(!r.preconditions.numerically_prime);
        assert_eq!(r.steps[0].divisor, BigInt::from(2));
        assert!(toeplitz_minor_check(&LaurentPoly::one(1), 4)
            .unwrap()
            .steps
            .iter()
            .all(|s| s.unit));
        let a = toeplitz(&[BigInt::from(2), BigInt::from(3)], 2);
        assert_eq!(
            a,
            IntMatrix::from_rows(&[vec![2, 0, 0], vec![3, 2, 0], vec![0, 3, 2]])
        );
    }
}

//! The `ξ` direction: re-presenting a complex over `R[t, t^-1]`, basic
//! subcomplexes, truncations `A[k] = D / t^k D`, and the integral hyperplanes
//! on which the torsion representatives stop being `ξ`-special.

use num_integer::Integer;
use serde::Serialize;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::invariants::{fitting_sequence, Ladder};
use crate::matrix::PolyMatrix;
use crate::ring::{coefficients_in, CohomologyClass, ExponentVector, LaurentPoly};

/// `C` rewritten in coordinates `(u_1..u_{m-1}, t)` adapted to `ξ`.
#[derive(Clone, Debug)]
pub struct XiPresentation {
    pub complex: FreeComplex,
    pub class: CohomologyClass,
}

impl XiPresentation {
    /// The original complex.
    pub fn origin(&self) -> FreeComplex {
        self.complex
            .map_entries(self.complex.nvars(), |p| self.class.from_adapted(p))
    }

    pub fn kernel_rank(&self) -> usize {
        self.complex.nvars() - 1
    }

    /// Sends every kernel variable to 1, leaving a complex over `Z[t, t^-1]`.
    pub fn augmented(&self) -> FreeComplex {
        let m = self.complex.nvars();
        let images: Vec<LaurentPoly> = (0..m)
            .map(|j| {
                if j + 1 == m {
                    LaurentPoly::var(1, 0)
                } else {
                    LaurentPoly::one(1)
                }
            })
            .collect();
        self.complex.map_entries(1, |p| {
            p.substitute_units(&images, 1).expect("monomial images")
        })
    }
}

pub fn to_xi_presentation(c: &FreeComplex, xi: &CohomologyClass) -> Result<XiPresentation> {
    if xi.lattice_rank() != c.nvars() {
        return Err(Error::LatticeRank {
            expected: c.nvars(),
            found: xi.lattice_rank(),
        });
    }
    let complex = c.map_entries(c.nvars(), |p| xi.to_adapted(p));
    Ok(XiPresentation {
        complex,
        class: xi.clone(),
    })
}

/// A complex with entries polynomial in `t` (the last variable), obtained by
/// scaling the degree-`p` basis by `t^{shifts[p]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSubcomplex {
    pub complex: FreeComplex,
    pub shifts: Vec<i64>,
}

fn t_shift(nvars: usize, s: i64) -> ExponentVector {
    let mut e = vec![0; nvars];
    e[nvars - 1] = s;
    ExponentVector::new(e)
}

fn min_t_degree(b: &PolyMatrix) -> Option<i64> {
    let t = b.nvars() - 1;
    b.entries()
        .filter(|p| !p.is_zero())
        .map(|p| p.min_exponents()[t])
        .min()
}

/// Minimal uniform shifts `N_0 = 0`, `N_p - N_{p-1} = max(0, -min t-degree of ∂_p)`.
pub fn basic_subcomplex(c: &FreeComplex) -> BasicSubcomplex {
    let nvars = c.nvars();
    assert!(
        nvars >= 1,
        "basic subcomplexes need a distinguished variable"
    );
    let mut shifts = vec![0i64; c.num_degrees()];
    for p in 1..c.num_degrees() {
        let low = min_t_degree(c.boundary(p).unwrap()).unwrap_or(0);
        shifts[p] = shifts[p - 1] + (-low).max(0);
    }
    BasicSubcomplex {
        complex: rescale(c, &shifts),
        shifts,
    }
}

/// Scales the degree-`p` basis by `t^{shifts[p]}`: `∂_p` becomes `t^{N_p - N_{p-1}} ∂_p`.
pub fn rescale(c: &FreeComplex, shifts: &[i64]) -> FreeComplex {
    let nvars = c.nvars();
    let boundaries = (1..c.num_degrees())
        .map(|p| {
            let e = t_shift(nvars, shifts[p] - shifts[p - 1]);
            c.boundary(p).unwrap().map(nvars, |x| x.shift(&e))
        })
        .collect();
    FreeComplex::from_parts(nvars, c.ranks().to_vec(), boundaries)
}

impl BasicSubcomplex {
    /// Inverts `t` and undoes the scaling.
    pub fn unscaled(&self) -> FreeComplex {
        let neg: Vec<i64> = self.shifts.iter().map(|s| -s).collect();
        rescale(&self.complex, &neg)
    }

    /// Another basic subcomplex of the same complex, with the degree-`p` basis
    /// scaled further by `t^s`. Fails if an entry leaves `R[t]`.
    pub fn rescaled(&self, p: usize, s: i64) -> Result<BasicSubcomplex> {
        let mut shifts = self.shifts.clone();
        shifts[p] += s;
        let mut delta = vec![0; shifts.len()];
        delta[p] = s;
        let complex = rescale(&self.complex, &delta);
        check_polynomial(&complex)?;
        Ok(BasicSubcomplex { complex, shifts })
    }
}

fn check_polynomial(c: &FreeComplex) -> Result<()> {
    for b in c.boundaries() {
        if let Some(e) = b
            .entries()
            .find(|p| !p.is_zero() && p.min_exponents()[c.nvars() - 1] < 0)
        {
            return Err(Error::NonPolynomial(e.to_string()));
        }
    }
    Ok(())
}

/// `D / t^k D` over the remaining `m - 1` variables. The basis of degree `p`
/// is `t^a e_j` at index `a * r_p + j`; block `(a', a)` of the boundary is the
/// coefficient matrix of `t^{a' - a}`.
pub fn truncate(d: &FreeComplex, k: usize) -> Result<FreeComplex> {
    let nvars = d.nvars();
    if nvars == 0 {
        return Err(Error::Usage(
            "truncation needs a distinguished variable".into(),
        ));
    }
    check_polynomial(d)?;
    let t = nvars - 1;
    let ranks: Vec<usize> = d.ranks().iter().map(|r| r * k).collect();
    let drop_t = |p: &LaurentPoly| {
        p.map_exponents(nvars - 1, |e| {
            ExponentVector::new(e.as_slice()[..t].to_vec())
        })
    };
    let boundaries = (1..d.num_degrees())
        .map(|p| {
            let b = d.boundary(p).unwrap();
            let (rows, cols) = (b.rows(), b.cols());
            let mut out = PolyMatrix::zeros(nvars - 1, rows * k, cols * k);
            for i in 0..rows {
                for j in 0..cols {
                    for (deg, coeff) in coefficients_in(b.get(i, j), t) {
                        let deg = deg as usize;
                        let c = drop_t(&coeff);
                        for a in 0..k.saturating_sub(deg) {
                            out.set((a + deg) * rows + i, a * cols + j, c.clone());
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(FreeComplex::from_parts(nvars - 1, ranks, boundaries))
}

/// An integral hyperplane `{ξ : ξ(vector) = 0}` with the element whose
/// support produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub vector: Vec<i64>,
    pub source: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HyperplaneSet {
    pub hyperplanes: Vec<Hyperplane>,
}

impl HyperplaneSet {
    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.hyperplanes.iter().map(|h| h.vector.clone()).collect()
    }

    fn insert(&mut self, v: Vec<i64>, source: String) {
        if v.iter().all(|&x| x == 0) {
            return;
        }
        let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        let sign = if v.iter().find(|&&x| x != 0).copied().unwrap_or(1) < 0 {
            -1
        } else {
            1
        };
        let v: Vec<i64> = v.iter().map(|x| sign * x / g).collect();
        if !self.hyperplanes.iter().any(|h| h.vector == v) {
            self.hyperplanes.push(Hyperplane { vector: v, source });
        }
    }
}

/// Support differences of every `ρ_i` and `ζ_i` of every boundary. Empty for
/// lattice rank 1, where the only hyperplane is the zero class.
pub fn excluded_hyperplanes(c: &FreeComplex) -> HyperplaneSet {
    let mut set = HyperplaneSet::default();
    if c.nvars() < 2 {
        return set;
    }
    for p in 0..c.num_degrees() {
        let ladder = Ladder::from_fitting(&fitting_sequence(&c.boundary_or_zero(p + 1)));
        for (name, list) in [("zeta", &ladder.zeta), ("rho", &ladder.rho)] {
            for (i, x) in list.iter().enumerate() {
                let support: Vec<&ExponentVector> = x.support().collect();
                for a in 0..support.len() {
                    for b in a + 1..support.len() {
                        let v = support[b].checked_sub(support[a]).as_slice().to_vec();
                        set.insert(v, format!("{name}_{i} of d{} = {x}", p + 1));
                    }
                }
            }
        }
    }
    set
}

/// Certified when `ξ` vanishes on none of the excluded vectors. This is a
/// sufficient condition relative to the computed set only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityCertificate {
    pub certified: bool,
    pub excluded_by: Option<Hyperplane>,
    pub hyperplanes_checked: usize,
}

pub fn check_xi_generic(c: &FreeComplex, xi: &CohomologyClass) -> GenericityCertificate {
    let set = excluded_hyperplanes(c);
    let hit = set.hyperplanes.iter().find(|h| {
        h.vector
            .iter()
            .zip(&xi.covector)
            .map(|(a, b)| a * b)
            .sum::<i64>()
            == 0
    });
    GenericityCertificate {
        certified: hit.is_none(),
        excluded_by: hit.cloned(),
        hyperplanes_checked: set.hyperplanes.len(),
    }
}

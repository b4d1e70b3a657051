//! Free chain complexes over `Z[Z^m]`, their combinators and model builders.
//!
//! Degree `p` has a free module of rank `r_p`; the boundary `∂_p: C_p -> C_{p-1}`
//! is an `r_{p-1} x r_p` matrix acting on column vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::ring::{is_monic, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    nvars: usize,
    ranks: Vec<usize>,
    boundaries: Vec<PolyMatrix>,
}

/// A reason a complex fails validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BoundaryCount {
        ranks: usize,
        boundaries: usize,
    },
    Shape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    LatticeRank {
        degree: usize,
        found: usize,
    },
    /// `∂_{degree-1} ∘ ∂_degree` has a nonzero entry at `(row, col)`.
    NotAComplex {
        degree: usize,
        row: usize,
        col: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundaryCount { ranks, boundaries } => {
                write!(
                    f,
                    "{ranks} ranks need {} boundaries, found {boundaries}",
                    ranks.saturating_sub(1)
                )
            }
            Violation::Shape {
                degree,
                expected,
                found,
            } => write!(
                f,
                "boundary {degree} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::LatticeRank { degree, found } => {
                write!(f, "boundary {degree} has entries over lattice rank {found}")
            }
            Violation::NotAComplex { degree, row, col } => {
                write!(f, "d{}*d{degree} is nonzero at ({row}, {col})", degree - 1)
            }
        }
    }
}

impl FreeComplex {
    /// Builds and validates; trailing zero ranks are trimmed.
    pub fn new(nvars: usize, ranks: Vec<usize>, boundaries: Vec<PolyMatrix>) -> Result<Self> {
        let c = Self::from_parts(nvars, ranks, boundaries);
        c.validate().map_err(|v| {
            Error::InvalidComplex(
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
            )
        })?;
        Ok(c)
    }

    /// Assembles without validation. Trailing zero ranks are trimmed when the
    /// corresponding boundaries are shaped consistently.
    pub fn from_parts(
        nvars: usize,
        mut ranks: Vec<usize>,
        mut boundaries: Vec<PolyMatrix>,
    ) -> Self {
        while ranks.last() == Some(&0) && boundaries.len() + 1 == ranks.len() {
            ranks.pop();
            if let Some(b) = boundaries.last() {
                if b.cols() == 0 {
                    boundaries.pop();
                } else {
                    ranks.push(0);
                    break;
                }
            }
        }
        FreeComplex {
            nvars,
            ranks,
            boundaries,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        FreeComplex {
            nvars,
            ranks: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of `C_p`, zero outside the stored range.
    pub fn rank(&self, p: usize) -> usize {
        self.ranks.get(p).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Number of stored degrees, `L + 1`.
    pub fn num_degrees(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn boundaries(&self) -> &[PolyMatrix] {
        &self.boundaries
    }

    /// `∂_p` for `1 <= p <= L`.
    pub fn boundary(&self, p: usize) -> Option<&PolyMatrix> {
        p.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// `∂_p` for any `p`, as a zero matrix of the right shape when out of range.
    pub fn boundary_or_zero(&self, p: usize) -> PolyMatrix {
        match self.boundary(p) {
            Some(b) => b.clone(),
            None => PolyMatrix::zeros(
                self.nvars,
                p.checked_sub(1).map_or(0, |q| self.rank(q)),
                self.rank(p),
            ),
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        let expected = self.ranks.len().saturating_sub(1);
        if self.boundaries.len() != expected {
            out.push(Violation::BoundaryCount {
                ranks: self.ranks.len(),
                boundaries: self.boundaries.len(),
            });
            return Err(out);
        }
        let mut shapes_ok = true;
        for (i, b) in self.boundaries.iter().enumerate() {
            let p = i + 1;
            let want = (self.ranks[p - 1], self.ranks[p]);
            if (b.rows(), b.cols()) != want {
                out.push(Violation::Shape {
                    degree: p,
                    expected: want,
                    found: (b.rows(), b.cols()),
                });
                shapes_ok = false;
            }
            if b.nvars() != self.nvars || b.entries().any(|e| e.nvars() != self.nvars) {
                out.push(Violation::LatticeRank {
                    degree: p,
                    found: b.nvars(),
                });
                shapes_ok = false;
            }
        }
        if shapes_ok {
            for p in 2..=self.boundaries.len() {
                let prod = self.boundaries[p - 2].mul(&self.boundaries[p - 1]);
                let witness = (0..prod.rows())
                    .flat_map(|r| (0..prod.cols()).map(move |c| (r, c)))
                    .find(|&(r, c)| !prod.get(r, c).is_zero());
                if let Some((row, col)) = witness {
                    out.push(Violation::NotAComplex {
                        degree: p,
                        row,
                        col,
                    });
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Applies `f` to every boundary entry.
    pub fn map_entries(
        &self,
        nvars: usize,
        f: impl Fn(&LaurentPoly) -> LaurentPoly,
    ) -> FreeComplex {
        let boundaries = self.boundaries.iter().map(|b| b.map(nvars, &f)).collect();
        FreeComplex::from_parts(nvars, self.ranks.clone(), boundaries)
    }

    pub fn try_map_entries(
        &self,
        nvars: usize,
        f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>,
    ) -> Result<FreeComplex> {
        let boundaries = self
            .boundaries
            .iter()
            .map(|b| b.try_map(nvars, &f))
            .collect::<Result<_>>()?;
        Ok(FreeComplex::from_parts(
            nvars,
            self.ranks.clone(),
            boundaries,
        ))
    }

    /// Replaces `∂_p` (same shape required by callers).
    pub fn with_boundary(&self, p: usize, b: PolyMatrix) -> FreeComplex {
        let mut c = self.clone();
        c.boundaries[p - 1] = b;
        c
    }
}

fn padded(c: &FreeComplex, len: usize) -> (Vec<usize>, Vec<PolyMatrix>) {
    let ranks: Vec<usize> = (0..len).map(|p| c.rank(p)).collect();
    let bs = (1..len).map(|p| c.boundary_or_zero(p)).collect();
    (ranks, bs)
}

/// Block-diagonal sum; the basis of `C_p` precedes that of `D_p`.
pub fn direct_sum(c: &FreeComplex, d: &FreeComplex) -> Result<FreeComplex> {
    if c.nvars != d.nvars {
        return Err(Error::LatticeRank {
            expected: c.nvars,
            found: d.nvars,
        });
    }
    let len = c.num_degrees().max(d.num_degrees());
    let (rc, bc) = padded(c, len);
    let (rd, bd) = padded(d, len);
    let ranks = rc.iter().zip(&rd).map(|(a, b)| a + b).collect();
    let boundaries = bc
        .iter()
        .zip(&bd)
        .map(|(a, b)| PolyMatrix::block_diag(a, b))
        .collect();
    Ok(FreeComplex::from_parts(c.nvars, ranks, boundaries))
}

/// Direct sum of a nonempty family.
pub fn direct_sum_all(nvars: usize, parts: &[FreeComplex]) -> Result<FreeComplex> {
    parts
        .iter()
        .try_fold(FreeComplex::zero(nvars), |acc, c| direct_sum(&acc, c))
}

/// `(ΣC)_p = C_{p-1}` with boundary `-∂_{p-1}`.
pub fn suspension(c: &FreeComplex) -> FreeComplex {
    if c.is_zero() {
        return c.clone();
    }
    let mut ranks = vec![0];
    ranks.extend_from_slice(&c.ranks);
    let mut boundaries = vec![PolyMatrix::zeros(c.nvars, 0, c.rank(0))];
    boundaries.extend(c.boundaries.iter().map(PolyMatrix::neg));
    FreeComplex::from_parts(c.nvars, ranks, boundaries)
}

/// A chain map; `components[p]` is the `target_p x source_p` matrix of `f_p`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    components: Vec<PolyMatrix>,
}

impl ChainMap {
    pub fn new(
        source: FreeComplex,
        target: FreeComplex,
        components: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if source.nvars != target.nvars {
            return Err(Error::LatticeRank {
                expected: target.nvars,
                found: source.nvars,
            });
        }
        let len = source.num_degrees().max(target.num_degrees());
        if components.len() > len {
            return Err(Error::InvalidChainMap(format!(
                "{} components for {len} degrees",
                components.len()
            )));
        }
        let mut full = components;
        while full.len() < len {
            let p = full.len();
            full.push(PolyMatrix::zeros(
                source.nvars,
                target.rank(p),
                source.rank(p),
            ));
        }
        for (p, f) in full.iter().enumerate() {
            if (f.rows(), f.cols()) != (target.rank(p), source.rank(p)) {
                return Err(Error::InvalidChainMap(format!(
                    "component {p} has shape {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    target.rank(p),
                    source.rank(p)
                )));
            }
        }
        for p in 1..len {
            let lhs = target.boundary_or_zero(p).mul(&full[p]);
            let rhs = full[p - 1].mul(&source.boundary_or_zero(p));
            if lhs != rhs {
                return Err(Error::InvalidChainMap(format!(
                    "does not commute with the boundary in degree {p}"
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components: full,
        })
    }

    pub fn identity(c: &FreeComplex) -> Self {
        let comps = (0..c.num_degrees())
            .map(|p| PolyMatrix::identity(c.nvars, c.rank(p)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components: comps,
        }
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Result<Self> {
        ChainMap::new(source.clone(), target.clone(), Vec::new())
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn component(&self, p: usize) -> PolyMatrix {
        self.components.get(p).cloned().unwrap_or_else(|| {
            PolyMatrix::zeros(self.source.nvars, self.target.rank(p), self.source.rank(p))
        })
    }
}

/// `Cone(f)_p = T_p ⊕ S_{p-1}` with `∂ = [[∂T_p, f_{p-1}], [0, -∂S_{p-1}]]`.
pub fn mapping_cone(f: &ChainMap) -> FreeComplex {
    let (s, t) = (&f.source, &f.target);
    let nvars = s.nvars;
    let len = t.num_degrees().max(s.num_degrees() + 1);
    let ranks: Vec<usize> = (0..len)
        .map(|p| t.rank(p) + p.checked_sub(1).map_or(0, |q| s.rank(q)))
        .collect();
    let boundaries = (1..len)
        .map(|p| {
            let s_prev = p - 1;
            let lower_left = PolyMatrix::zeros(
                nvars,
                s_prev.checked_sub(1).map_or(0, |q| s.rank(q)),
                t.rank(p),
            );
            let ds = if s_prev == 0 {
                PolyMatrix::zeros(nvars, 0, s.rank(0))
            } else {
                s.boundary_or_zero(s_prev).neg()
            };
            PolyMatrix::block(
                &t.boundary_or_zero(p),
                &f.component(s_prev),
                &lower_left,
                &ds,
            )
        })
        .collect();
    FreeComplex::from_parts(nvars, ranks, boundaries)
}

/// Model complexes.
#[derive(Clone, Debug)]
pub enum Model {
    /// Rank `s` concentrated in degree `i`, zero boundary.
    Free { nvars: usize, i: usize, s: usize },
    /// `0 <- Λ <-ρ- Λ <- 0` in degrees `i, i+1`.
    Tau { rho: LaurentPoly, i: usize },
    /// `tau` with `ρ` shifted into nonnegative `t`-degrees with nonzero
    /// constant term in `t` (the last variable).
    TauBasic { rho: LaurentPoly, i: usize },
    /// `⊕_i (F(i, b_i) ⊕ ⊕_s tau(a_s^(i), i))`.
    Principal {
        nvars: usize,
        b: Vec<usize>,
        a: Vec<Vec<LaurentPoly>>,
    },
}

/// `F(i, s)` over `nvars` variables.
pub fn free_model(nvars: usize, i: usize, s: usize) -> FreeComplex {
    let mut ranks = vec![0; i + 1];
    ranks[i] = s;
    let boundaries = (1..=i)
        .map(|p| PolyMatrix::zeros(nvars, ranks[p - 1], ranks[p]))
        .collect();
    FreeComplex::from_parts(nvars, ranks, boundaries)
}

pub fn tau(rho: &LaurentPoly, i: usize) -> FreeComplex {
    let nvars = rho.nvars();
    let mut ranks = vec![0; i + 2];
    ranks[i] = 1;
    ranks[i + 1] = 1;
    let mut boundaries: Vec<PolyMatrix> = (1..=i)
        .map(|p| PolyMatrix::zeros(nvars, ranks[p - 1], ranks[p]))
        .collect();
    let mut d = PolyMatrix::zeros(nvars, 1, 1);
    d.set(0, 0, rho.clone());
    boundaries.push(d);
    FreeComplex::from_parts(nvars, ranks, boundaries)
}

/// `ρ` multiplied by the power of `t` (last variable) making its lowest `t`-degree zero.
pub fn t_normalized(rho: &LaurentPoly) -> LaurentPoly {
    if rho.is_zero() || rho.nvars() == 0 {
        return rho.clone();
    }
    let m = rho.nvars();
    let low = rho.min_exponents()[m - 1];
    let mut shift = vec![0; m];
    shift[m - 1] = -low;
    rho.shift(&crate::ring::ExponentVector::new(shift))
}

pub fn build(model: &Model) -> Result<FreeComplex> {
    match model {
        Model::Free { nvars, i, s } => Ok(free_model(*nvars, *i, *s)),
        Model::Tau { rho, i } => Ok(tau(rho, *i)),
        Model::TauBasic { rho, i } => Ok(tau(&t_normalized(rho), *i)),
        Model::Principal { nvars, b, a } => principal(*nvars, b, a),
    }
}

/// Principal model from Betti numbers `b` and torsion chains `a`.
pub fn principal(nvars: usize, b: &[usize], a: &[Vec<LaurentPoly>]) -> Result<FreeComplex> {
    if nvars == 0 {
        return Err(Error::Usage(
            "principal models need at least one variable".into(),
        ));
    }
    let t = nvars - 1;
    for (i, chain) in a.iter().enumerate() {
        for x in chain {
            if x.nvars() != nvars {
                return Err(Error::LatticeRank {
                    expected: nvars,
                    found: x.nvars(),
                });
            }
            if x.is_zero() {
                return Err(Error::ZeroCoefficient(i));
            }
            if is_monic(x, t) {
                return Err(Error::MonicCoefficient(x.to_string()));
            }
        }
        for w in chain.windows(2) {
            if !w[0].divides(&w[1]) {
                return Err(Error::Divisibility {
                    degree: i,
                    lower: w[0].to_string(),
                    upper: w[1].to_string(),
                });
            }
        }
    }
    let mut parts = Vec::new();
    for i in 0..b.len().max(a.len()) {
        let bi = b.get(i).copied().unwrap_or(0);
        if bi > 0 {
            parts.push(free_model(nvars, i, bi));
        }
        for x in a.get(i).map_or(&[][..], |v| v.as_slice()) {
            parts.push(tau(x, i));
        }
    }
    let c = direct_sum_all(nvars, &parts)?;
    debug_assert!(c.validate().is_ok());
    Ok(c)
}

/// Entrywise ring map sending generator `t_j` to the signed monomial `images[j]`
/// (possibly `1`) over `target_nvars` variables.
pub fn base_change(
    c: &FreeComplex,
    images: &[LaurentPoly],
    target_nvars: usize,
) -> Result<FreeComplex> {
    if images.len() != c.nvars {
        return Err(Error::LatticeRank {
            expected: c.nvars,
            found: images.len(),
        });
    }
    c.try_map_entries(target_nvars, |p| p.substitute_units(images, target_nvars))
}

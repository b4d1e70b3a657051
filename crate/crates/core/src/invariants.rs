//! Fitting-ideal invariants of a free complex and the growth-rate bound `B + 2Q`.
//!
//! For the boundary `∂_{p+1}` (an `r_p x r_{p+1}` matrix) the ideal `F_t` is
//! generated by the `(r_p - t)`-minors, `t = 0..r_p`, with `F_{r_p} = Λ`.
//! `Q_p` counts the nonzero `F_t` whose generators share an integer factor.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::FreeComplex;
use crate::matrix::{for_each_minor, minor_family_content, rank_ff, PolyMatrix};
use crate::novikov::{check_xi_generic, GenericityCertificate};
use crate::ring::{
    classify, gcd, is_xi_monic, is_xi_special, prime_witness, CohomologyClass, ElementClass,
    LaurentPoly,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum FittingClass {
    Zero,
    NotNumericallyPrime {
        #[serde(serialize_with = "crate::ser::bigint")]
        witness: BigInt,
    },
    ProperNumericallyPrime,
    Unit,
}

/// Why an ideal is known to be the whole ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnitCertificate {
    /// The minor on these rows and columns is a signed monomial.
    MonomialMinor { rows: Vec<usize>, cols: Vec<usize> },
    /// `Σ coefficient_i * minor_i = 1` over integer-valued minors.
    IntegerCombination {
        minors: Vec<(Vec<usize>, Vec<usize>)>,
        #[serde(serialize_with = "crate::ser::bigints")]
        coefficients: Vec<BigInt>,
    },
    /// A smaller Fitting ideal is already the unit ideal.
    Inherited { from: usize },
    /// `t` is at least the number of generators.
    Convention,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FittingIdeal {
    pub t: usize,
    #[serde(flatten)]
    pub class: FittingClass,
    /// gcd of the integer contents of the generating minors.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub content: BigInt,
    pub certificate: Option<UnitCertificate>,
    /// Normalized gcd of the generating minors, for nonzero ideals below the
    /// first certified unit ideal.
    #[serde(serialize_with = "opt_poly")]
    pub generator_gcd: Option<LaurentPoly>,
}

fn opt_poly<S: serde::Serializer>(p: &Option<LaurentPoly>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FittingClassification {
    /// Number of generators (rows of the boundary matrix).
    pub d: usize,
    pub ideals: Vec<FittingIdeal>,
}

impl FittingClassification {
    /// `#{t : F_t != 0 and F_t not numerically prime}`.
    pub fn not_numerically_prime_count(&self) -> usize {
        self.ideals
            .iter()
            .filter(|f| matches!(f.class, FittingClass::NotNumericallyPrime { .. }))
            .count()
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.ideals
            .iter()
            .position(|f| f.class != FittingClass::Zero)
    }

    pub fn first_unit(&self) -> usize {
        self.ideals
            .iter()
            .position(|f| f.class == FittingClass::Unit)
            .unwrap_or(self.d)
    }

    /// The reduced sequence `[first nonzero, last proper]`, if nonempty.
    pub fn reduced_window(&self) -> Option<(usize, usize)> {
        let lo = self.first_nonzero()?;
        let hi = self.first_unit();
        (lo < hi).then(|| (lo, hi - 1))
    }

    /// Whether the upper end of the reduced window is exact: false when some
    /// proper-looking ideal might still be the unit ideal.
    pub fn upper_endpoint_certified(&self) -> bool {
        !self
            .ideals
            .iter()
            .any(|f| f.class == FittingClass::ProperNumericallyPrime)
    }
}

/// Extended gcd of a list: `(g, c)` with `Σ c_i v_i = g >= 0`.
fn bezout(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::new();
    for v in values {
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c = &*c * &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
        if g.is_negative() {
            g = -g;
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        }
    }
    (g, coeffs)
}

/// Classifies `F_0 .. F_d` for the matrix of `∂_{i+1}`.
pub fn fitting_sequence(m: &PolyMatrix) -> FittingClassification {
    let d = m.rows();
    let max_minor = m.rows().min(m.cols());
    let mut ideals = Vec::with_capacity(d + 1);
    let mut unit_from: Option<usize> = None;
    for t in 0..=d {
        let s = d - t;
        if let Some(from) = unit_from {
            let certificate = if s == 0 {
                UnitCertificate::Convention
            } else {
                UnitCertificate::Inherited { from }
            };
            ideals.push(unit_ideal(t, certificate));
            continue;
        }
        if s == 0 {
            ideals.push(unit_ideal(t, UnitCertificate::Convention));
            unit_from = Some(t);
            continue;
        }
        if s > max_minor {
            ideals.push(zero_ideal(t));
            continue;
        }
        let (all_zero, content) = minor_family_content(m, s);
        if all_zero {
            ideals.push(zero_ideal(t));
            continue;
        }
        let mut g = LaurentPoly::zero(m.nvars());
        let mut monomial: Option<(Vec<usize>, Vec<usize>)> = None;
        let mut integer_minors: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut integer_values: Vec<BigInt> = Vec::new();
        for_each_minor(m, s, |minor| {
            if minor.value.is_zero() {
                return ControlFlow::<()>::Continue(());
            }
            if monomial.is_none() && minor.value.is_signed_monomial() {
                monomial = Some((minor.rows.clone(), minor.cols.clone()));
            }
            if let Some(v) = minor.value.constant_value() {
                integer_minors.push((minor.rows.clone(), minor.cols.clone()));
                integer_values.push(v);
            }
            g = gcd(&g, &minor.value);
            ControlFlow::Continue(())
        });
        let certificate = match monomial {
            Some((rows, cols)) => Some(UnitCertificate::MonomialMinor { rows, cols }),
            None => {
                let (ig, coefficients) = bezout(&integer_values);
                ig.is_one().then(|| {
                    let keep: Vec<usize> = (0..coefficients.len())
                        .filter(|&i| !coefficients[i].is_zero())
                        .collect();
                    UnitCertificate::IntegerCombination {
                        minors: keep.iter().map(|&i| integer_minors[i].clone()).collect(),
                        coefficients: keep.iter().map(|&i| coefficients[i].clone()).collect(),
                    }
                })
            }
        };
        if let Some(certificate) = certificate {
            ideals.push(FittingIdeal {
                t,
                class: FittingClass::Unit,
                content,
                certificate: Some(certificate),
                generator_gcd: None,
            });
            unit_from = Some(t);
            continue;
        }
        let class = if content.is_one() {
            FittingClass::ProperNumericallyPrime
        } else {
            FittingClass::NotNumericallyPrime {
                witness: prime_witness(&content),
            }
        };
        ideals.push(FittingIdeal {
            t,
            class,
            content,
            certificate: None,
            generator_gcd: Some(g),
        });
    }
    FittingClassification { d, ideals }
}

fn unit_ideal(t: usize, certificate: UnitCertificate) -> FittingIdeal {
    FittingIdeal {
        t,
        class: FittingClass::Unit,
        content: BigInt::one(),
        certificate: Some(certificate),
        generator_gcd: None,
    }
}

fn zero_ideal(t: usize) -> FittingIdeal {
    FittingIdeal {
        t,
        class: FittingClass::Zero,
        content: BigInt::zero(),
        certificate: None,
        generator_gcd: None,
    }
}

/// The gcd ladder `ρ_i` over the reduced window and `ζ_i = ρ_i / ρ_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ladder {
    /// Fitting index of `ρ_0`.
    pub start: usize,
    #[serde(serialize_with = "crate::ser::polys")]
    pub rho: Vec<LaurentPoly>,
    #[serde(serialize_with = "crate::ser::polys")]
    pub zeta: Vec<LaurentPoly>,
    /// False if some `ρ_{i+1}` failed to divide `ρ_i` (a data-integrity failure).
    pub divisible: bool,
}

impl Ladder {
    pub fn from_fitting(f: &FittingClassification) -> Ladder {
        let start = f.first_nonzero().unwrap_or(f.d);
        let rho: Vec<LaurentPoly> = f
            .ideals
            .iter()
            .filter_map(|i| i.generator_gcd.clone())
            .collect();
        let nvars_one = |p: &LaurentPoly| LaurentPoly::one(p.nvars());
        let mut zeta = Vec::with_capacity(rho.len());
        let mut divisible = true;
        for i in 0..rho.len() {
            let next = rho
                .get(i + 1)
                .cloned()
                .unwrap_or_else(|| nvars_one(&rho[i]));
            match rho[i].exact_divide(&next) {
                Ok(z) => zeta.push(z),
                Err(_) => {
                    divisible = false;
                    zeta.push(LaurentPoly::zero(rho[i].nvars()));
                }
            }
        }
        Ladder {
            start,
            rho,
            zeta,
            divisible,
        }
    }
}

pub fn rho_zeta(m: &PolyMatrix) -> Ladder {
    Ladder::from_fitting(&fitting_sequence(m))
}

/// `B_p = r_p - rank ∂_p - rank ∂_{p+1}` over the fraction field.
pub fn betti_b(c: &FreeComplex) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=c.num_degrees())
        .map(|p| c.boundary(p).map_or(0, rank_ff))
        .collect();
    (0..c.num_degrees())
        .map(|p| c.rank(p) - ranks[p] - ranks[p + 1])
        .collect()
}

/// The matrix of `∂_{p+1}` (with zero columns past the top degree).
fn outgoing(c: &FreeComplex, p: usize) -> PolyMatrix {
    c.boundary_or_zero(p + 1)
}

pub fn torsion_q(c: &FreeComplex) -> Vec<usize> {
    (0..c.num_degrees())
        .map(|p| fitting_sequence(&outgoing(c, p)).not_numerically_prime_count())
        .collect()
}

/// A reported element with its classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedElement {
    #[serde(serialize_with = "crate::ser::poly")]
    pub value: LaurentPoly,
    pub class: ElementClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalDegree {
    pub degree: usize,
    pub b: usize,
    pub q: usize,
    /// `a_1 .. a_q`, with `a_j = ζ_{q-j}`.
    pub a: Vec<ClassifiedElement>,
    /// Whether each `a_j` divides `a_{j+1}`.
    pub divisibility: bool,
    /// `#{a_j not numerically prime} == Q_p`, checked when every `ζ` in range
    /// is `ξ`-special.
    pub consistent: Option<bool>,
}

/// Betti numbers, torsion counts and torsion representatives along `ξ`.
pub fn principal_invariants(c: &FreeComplex, xi: &CohomologyClass) -> Vec<PrincipalDegree> {
    let betti = betti_b(c);
    let t_index = c.nvars().saturating_sub(1);
    (0..c.num_degrees())
        .map(|p| {
            let fit = fitting_sequence(&outgoing(c, p));
            let ladder = Ladder::from_fitting(&fit);
            let q = ladder
                .rho
                .iter()
                .filter(|r| !is_xi_monic(r, &xi.covector))
                .count();
            let a: Vec<ClassifiedElement> = (1..=q)
                .map(|j| {
                    let z = &ladder.zeta[q - j];
                    ClassifiedElement {
                        value: z.clone(),
                        class: classify(z, t_index, Some(&xi.covector)),
                    }
                })
                .collect();
            let divisibility = a.windows(2).all(|w| w[0].value.divides(&w[1].value));
            let all_special = ladder.zeta.iter().all(|z| is_xi_special(z, &xi.covector));
            let non_np = a.iter().filter(|x| !x.class.is_numerically_prime).count();
            PrincipalDegree {
                degree: p,
                b: betti[p],
                q,
                a,
                divisibility,
                consistent: all_special.then(|| non_np == fit.not_numerically_prime_count()),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiSection {
    pub covector: Vec<i64>,
    pub divisibility: i64,
    pub genericity: GenericityCertificate,
    /// The `a_j` carry the meaning of torsion annihilators only when the
    /// genericity certificate holds.
    pub heuristic: bool,
    pub principal: Vec<PrincipalDegree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub lattice_rank: usize,
    pub ranks: Vec<usize>,
    pub betti: Vec<usize>,
    pub torsion: Vec<usize>,
    pub b_total: usize,
    pub q_total: usize,
    pub bound: usize,
    pub per_degree_bound: Vec<usize>,
    /// Fitting sequence of `∂_{p+1}` for each degree `p`.
    pub fitting: Vec<FittingClassification>,
    pub ladders: Vec<Ladder>,
    pub fr_endpoints_certified: bool,
    pub xi: Option<XiSection>,
}

/// Full report: `B_p`, `Q_p`, the bound `B + 2Q` and the ladders.
pub fn main_bound(c: &FreeComplex) -> InvariantReport {
    let betti = betti_b(c);
    let fitting: Vec<FittingClassification> = (0..c.num_degrees())
        .map(|p| fitting_sequence(&outgoing(c, p)))
        .collect();
    let torsion: Vec<usize> = fitting
        .iter()
        .map(FittingClassification::not_numerically_prime_count)
        .collect();
    let ladders = fitting.iter().map(Ladder::from_fitting).collect();
    let b_total = betti.iter().sum();
    let q_total = torsion.iter().sum();
    let per_degree_bound = (0..betti.len())
        .map(|p| betti[p] + torsion[p] + p.checked_sub(1).map_or(0, |q| torsion[q]))
        .collect();
    InvariantReport {
        lattice_rank: c.nvars(),
        ranks: c.ranks().to_vec(),
        betti,
        torsion,
        b_total,
        q_total,
        bound: b_total + 2 * q_total,
        per_degree_bound,
        fr_endpoints_certified: fitting
            .iter()
            .all(FittingClassification::upper_endpoint_certified),
        fitting,
        ladders,
        xi: None,
    }
}

/// [`main_bound`] plus the `ξ`-directed invariants and genericity certificate.
pub fn report_with_xi(c: &FreeComplex, xi: &CohomologyClass) -> InvariantReport {
    let mut r = main_bound(c);
    let genericity = check_xi_generic(c, xi);
    r.xi = Some(XiSection {
        covector: xi.covector.clone(),
        divisibility: xi.divisibility,
        heuristic: !genericity.certified,
        genericity,
        principal: principal_invariants(c, xi),
    });
    r
}

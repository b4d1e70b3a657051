use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::{ExponentVector, LaurentPoly};

/// Classification flags of a single element of `Z[Z^m]`.
///
/// `is_monic` and `is_special` regard the element as a Laurent polynomial in
/// the distinguished variable with coefficients in the remaining ones. The
/// `xi_*` flags are present only when a covector was supplied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementClass {
    pub is_zero: bool,
    pub is_monomial: bool,
    pub is_special: bool,
    pub is_monic: bool,
    pub is_numerically_prime: bool,
    /// A prime dividing every coefficient (the integer content itself when
    /// its smallest prime factor is out of trial-division reach).
    #[serde(serialize_with = "crate::ser::opt_bigint")]
    pub np_witness: Option<BigInt>,
    pub is_xi_special: Option<bool>,
    pub is_xi_monic: Option<bool>,
}

/// Coefficients of `p` grouped by the exponent of variable `t_index`.
pub fn coefficients_in(p: &LaurentPoly, t_index: usize) -> BTreeMap<i64, LaurentPoly> {
    let nvars = p.nvars();
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut rest = e.as_slice().to_vec();
        let d = rest[t_index];
        rest[t_index] = 0;
        *out.entry(d).or_insert_with(|| LaurentPoly::zero(nvars)) +=
            &LaurentPoly::monomial(nvars, c.clone(), ExponentVector::new(rest));
    }
    out
}

/// Lowest `t`-coefficient is a signed monomial in the other variables.
pub fn is_monic(p: &LaurentPoly, t_index: usize) -> bool {
    coefficients_in(p, t_index)
        .values()
        .next()
        .is_some_and(|z| z.is_signed_monomial())
}

/// Every `t`-coefficient is a monomial in the other variables.
pub fn is_special(p: &LaurentPoly, t_index: usize) -> bool {
    !p.is_zero()
        && coefficients_in(p, t_index)
            .values()
            .all(|z| z.is_monomial())
}

/// The strict maximum of `xi` on the support carries coefficient `±1`.
pub fn is_xi_monic(p: &LaurentPoly, xi: &[i64]) -> bool {
    let mut best: Option<(i64, &BigInt)> = None;
    let mut tie = false;
    for (e, c) in p.terms() {
        let w = e.dot(xi);
        match best {
            None => best = Some((w, c)),
            Some((bw, _)) if w > bw => {
                best = Some((w, c));
                tie = false;
            }
            Some((bw, _)) if w == bw => tie = true,
            _ => {}
        }
    }
    matches!(best, Some((_, c)) if !tie && c.abs().is_one())
}

/// `xi` takes pairwise distinct values on the support.
pub fn is_xi_special(p: &LaurentPoly, xi: &[i64]) -> bool {
    let mut weights: Vec<i64> = p.support().map(|e| e.dot(xi)).collect();
    weights.sort_unstable();
    weights.windows(2).all(|w| w[0] != w[1])
}

/// Smallest prime factor of `n > 1` by trial division; `n` itself when no
/// factor below one million exists.
pub fn prime_witness(n: &BigInt) -> BigInt {
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        let mut d = 2u64;
        while d <= 1_000_000 && d * d <= small {
            if small % d == 0 {
                return BigInt::from(d);
            }
            d += if d == 2 { 1 } else { 2 };
        }
        return n;
    }
    let mut d = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while d <= limit {
        if n.is_multiple_of(&d) {
            return d;
        }
        d += 1;
    }
    n
}

pub fn classify(p: &LaurentPoly, t_index: usize, xi: Option<&[i64]>) -> ElementClass {
    let content = p.integer_content();
    let np_witness = (content > BigInt::one()).then(|| prime_witness(&content));
    let nonzero = !p.is_zero();
    ElementClass {
        is_zero: !nonzero,
        is_monomial: p.is_monomial(),
        is_special: nonzero && is_special(p, t_index),
        is_monic: nonzero && is_monic(p, t_index),
        is_numerically_prime: nonzero && content.is_one(),
        np_witness: if content.is_zero() { None } else { np_witness },
        is_xi_special: xi.map(|x| is_xi_special(p, x)),
        is_xi_monic: xi.map(|x| nonzero && is_xi_monic(p, x)),
    }
}

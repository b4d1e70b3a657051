use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of the lattice `Z^m`, i.e. the exponent of a Laurent monomial.
///
/// Ordered lexicographically, which is the canonical term order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(exponents: Vec<i64>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(m: usize) -> Self {
        ExponentVector(vec![0; m])
    }

    /// The `i`-th standard basis vector of `Z^m`.
    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn dot(&self, covector: &[i64]) -> i64 {
        self.0.iter().zip(covector).map(|(a, b)| a * b).sum()
    }

    pub fn checked_add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn negated(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

/// An element of `Z[Z^m]`: a finite sum of integer multiples of monomials
/// `x^g`, `g` in `Z^m`, with negative exponents allowed.
///
/// Invariant: no zero coefficients are stored, so structural equality is
/// equality in the ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, c, ExponentVector::zero(nvars))
    }

    pub fn monomial(nvars: usize, c: impl Into<BigInt>, exponent: ExponentVector) -> Self {
        assert_eq!(
            exponent.len(),
            nvars,
            "exponent vector length must equal the lattice rank"
        );
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The generator `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, 1, ExponentVector::unit(nvars, i))
    }

    /// Builds a polynomial from (coefficient, exponent) pairs, combining
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (C, Vec<i64>)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::LatticeRank {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(ExponentVector(e), c.into());
        }
        Ok(p)
    }

    /// Univariate convenience constructor: `coeffs[i]` is the coefficient of `t^(low + i)`.
    pub fn univariate(low: i64, coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero(1);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(ExponentVector(vec![low + i as i64]), BigInt::from(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing_term(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// The integer value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// `c * x^g` with any nonzero `c`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// `±x^g`; exactly the units of `Z[Z^m]`.
    pub fn is_signed_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * x^shift * other`.
    fn add_scaled_shifted(&mut self, other: &LaurentPoly, c: &BigInt, shift: &ExponentVector) {
        for (e, oc) in &other.terms {
            self.add_term(e.checked_add(shift), oc * c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplication by the monomial `x^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.checked_add(shift), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// gcd of all coefficients; 0 for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d`, which must divide all of them.
    pub fn divide_integer(&self, d: &BigInt) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NotDivisible {
                    dividend: self.to_string(),
                    divisor: d.to_string(),
                });
            }
            out.terms.insert(e.clone(), q);
        }
        Ok(out)
    }

    /// Per-variable minimum exponent over the support (all zeros for the zero polynomial).
    pub fn min_exponents(&self) -> ExponentVector {
        self.fold_exponents(i64::min)
    }

    /// Per-variable maximum exponent over the support.
    pub fn max_exponents(&self) -> ExponentVector {
        self.fold_exponents(i64::max)
    }

    fn fold_exponents(&self, f: fn(i64, i64) -> i64) -> ExponentVector {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return ExponentVector::zero(self.nvars);
        };
        let mut acc = first.0.clone();
        for e in it {
            for (a, &b) in acc.iter_mut().zip(&e.0) {
                *a = f(*a, b);
            }
        }
        ExponentVector(acc)
    }

    /// Exact quotient `self / divisor` in `Z[Z^m]`.
    ///
    /// Quotient exponents are confined to the box
    /// `[min(a) - min(b), max(a) - max(b)]` coordinatewise, which bounds the
    /// lexicographic division loop when no quotient exists.
    pub fn exact_divide(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        assert_eq!(
            self.nvars, divisor.nvars,
            "lattice rank mismatch in division"
        );
        let not_divisible = || Error::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        if divisor.is_zero() {
            return Err(not_divisible());
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        if divisor.is_monomial() {
            let (e, c) = divisor.leading_term().unwrap();
            return self.divide_integer(c).map(|p| p.shift(&e.negated()));
        }
        let lo = self.min_exponents().checked_sub(&divisor.min_exponents());
        let hi = self.max_exponents().checked_sub(&divisor.max_exponents());
        if lo.0.iter().zip(&hi.0).any(|(l, h)| l > h) {
            return Err(not_divisible());
        }
        let (lead_e, lead_c) = divisor
            .leading_term()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading_term() {
            let e = re.checked_sub(&lead_e);
            if e.0
                .iter()
                .zip(lo.0.iter().zip(&hi.0))
                .any(|(x, (l, h))| x < l || x > h)
            {
                return Err(not_divisible());
            }
            let (c, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            rem.add_scaled_shifted(divisor, &-&c, &e);
            quotient.terms.insert(e, c);
        }
        Ok(quotient)
    }

    /// Whether `self` divides `other` in `Z[Z^m]`.
    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.exact_divide(self).is_ok()
    }

    /// Applies `g -> f(g)` to every exponent. `f` must be injective on the
    /// support for the result to be a bijective relabelling.
    pub fn map_exponents(
        &self,
        target_nvars: usize,
        f: impl Fn(&ExponentVector) -> ExponentVector,
    ) -> LaurentPoly {
        let mut out = LaurentPoly::zero(target_nvars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Ring map sending `x_i` to `images[i]`, each a signed monomial of the
    /// target ring (so negative exponents are meaningful).
    pub fn substitute_units(
        &self,
        images: &[LaurentPoly],
        target_nvars: usize,
    ) -> Result<LaurentPoly> {
        if images.len() != self.nvars {
            return Err(Error::LatticeRank {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let mut unit_images = Vec::with_capacity(images.len());
        for img in images {
            if img.nvars != target_nvars {
                return Err(Error::LatticeRank {
                    expected: target_nvars,
                    found: img.nvars,
                });
            }
            if !img.is_signed_monomial() {
                return Err(Error::NonMonomialImage(img.to_string()));
            }
            let (e, c) = img.leading_term().unwrap();
            unit_images.push((e.clone(), c.is_negative()));
        }
        let mut out = LaurentPoly::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut exp = vec![0i64; target_nvars];
            let mut negate = false;
            for (k, (img_e, img_neg)) in unit_images.iter().enumerate() {
                let power = e[k];
                for (slot, &g) in exp.iter_mut().zip(&img_e.0) {
                    *slot += power * g;
                }
                if *img_neg && power.rem_euclid(2) == 1 {
                    negate = !negate;
                }
            }
            out.add_term(ExponentVector(exp), if negate { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// Normal form modulo units `±x^g`: the lexicographically least support
    /// point is moved to the origin and its coefficient made positive.
    pub fn normalized(&self) -> LaurentPoly {
        let Some((e, c)) = self.trailing_term() else {
            return self.clone();
        };
        let shifted = self.shift(&e.negated());
        if c.is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    /// Equality up to multiplication by a unit `±x^g`.
    pub fn associated(&self, other: &LaurentPoly) -> bool {
        self.normalized() == other.normalized()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "lattice rank mismatch in addition");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "lattice rank mismatch in addition");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(
            self.nvars, rhs.nvars,
            "lattice rank mismatch in subtraction"
        );
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(
            self.nvars, rhs.nvars,
            "lattice rank mismatch in multiplication"
        );
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_scaled_shifted(rhs, c, e);
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

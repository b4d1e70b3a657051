//! Greatest common divisors in `Z[Z^m]`.
//!
//! After clearing monomial factors both inputs are ordinary polynomials, and
//! `Z[x_1..x_m]` is handled recursively: view a polynomial as univariate in the
//! last variable over `Z[x_1..x_{m-1}]`, split off contents, and run a
//! primitive pseudo-remainder sequence on the primitive parts.

use num_integer::Integer;
use num_traits::Signed;

use super::poly::{ExponentVector, LaurentPoly};

/// Normalized gcd (see [`LaurentPoly::normalized`]). `gcd(p, 0)` is `p` normalized.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.nvars(), b.nvars(), "lattice rank mismatch in gcd");
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let a = a.shift(&a.min_exponents().negated());
    let b = b.shift(&b.min_exponents().negated());
    gcd_rec(&a, &b, a.nvars()).normalized()
}

/// Normalized gcd of a family; zero for an empty or all-zero family.
pub fn gcd_all<'a, I>(nvars: usize, items: I) -> LaurentPoly
where
    I: IntoIterator<Item = &'a LaurentPoly>,
{
    let mut g = LaurentPoly::zero(nvars);
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// gcd of polynomials (nonnegative exponents) involving only variables `< k`,
/// up to sign.
fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly, k: usize) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let nvars = a.nvars();
    if k == 0 {
        let x = a.constant_value().expect("constant at recursion floor");
        let y = b.constant_value().expect("constant at recursion floor");
        return LaurentPoly::constant(nvars, x.gcd(&y));
    }
    let v = k - 1;
    if a.max_exponents()[v] == 0 && b.max_exponents()[v] == 0 {
        return gcd_rec(a, b, v);
    }
    let ca = split(a, v);
    let cb = split(b, v);
    let cont_a = content(&ca, v);
    let cont_b = content(&cb, v);
    let c = gcd_rec(&cont_a, &cont_b, v);
    let pa = divide_all(&ca, &cont_a);
    let pb = divide_all(&cb, &cont_b);
    let (mut f, mut g) = if pa.len() >= pb.len() {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_empty() {
        let r = pseudo_remainder(&f, &g);
        f = g;
        g = primitive_part(r, v);
    }
    &c * &join(&f, v, nvars)
}

/// Coefficients of `p` as a polynomial in `x_v`, index = degree, trailing zeros trimmed.
fn split(p: &LaurentPoly, v: usize) -> Vec<LaurentPoly> {
    let nvars = p.nvars();
    let deg = p.max_exponents()[v] as usize;
    let mut out = vec![LaurentPoly::zero(nvars); deg + 1];
    for (e, c) in p.terms() {
        let mut ev = e.as_slice().to_vec();
        let d = ev[v] as usize;
        ev[v] = 0;
        out[d] += &LaurentPoly::monomial(nvars, c.clone(), ExponentVector::new(ev));
    }
    trim(&mut out);
    out
}

fn join(coeffs: &[LaurentPoly], v: usize, nvars: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(nvars);
    for (d, c) in coeffs.iter().enumerate() {
        let mut shift = vec![0; nvars];
        shift[v] = d as i64;
        out += &c.shift(&ExponentVector::new(shift));
    }
    out
}

fn trim(v: &mut Vec<LaurentPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(coeffs: &[LaurentPoly], k: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(coeffs[0].nvars());
    for c in coeffs {
        g = gcd_rec(&g, c, k);
        if g.is_signed_monomial() && g.is_constant() {
            break;
        }
    }
    // A sign-normalized content keeps the primitive parts deterministic.
    match g.trailing_term() {
        Some((_, c)) if c.is_negative() => -g,
        _ => g,
    }
}

fn divide_all(coeffs: &[LaurentPoly], d: &LaurentPoly) -> Vec<LaurentPoly> {
    if d.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| {
            c.exact_divide(d)
                .expect("content divides every coefficient")
        })
        .collect()
}

fn primitive_part(mut r: Vec<LaurentPoly>, k: usize) -> Vec<LaurentPoly> {
    trim(&mut r);
    if r.is_empty() {
        return r;
    }
    let c = content(&r, k);
    divide_all(&r, &c)
}

/// `lc(g)^e * f mod g` for some `e >= 0`, computed by repeated leading-term cancellation.
fn pseudo_remainder(f: &[LaurentPoly], g: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let lg = g.last().expect("nonzero divisor");
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > dg {
        let lr = r.last().unwrap().clone();
        let d = r.len() - 1 - dg;
        for c in r.iter_mut() {
            *c = &*c * lg;
        }
        for (i, gc) in g.iter().enumerate() {
            let sub = gc * &lr;
            r[i + d] = &r[i + d] - &sub;
        }
        trim(&mut r);
    }
    r
}

/// Whether the normalized gcd is a unit, i.e. the inputs are coprime.
pub fn coprime(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    let g = gcd(a, b);
    g.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn p1(s: &str) -> LaurentPoly {
        parse_poly(s, 1).unwrap()
    }

    fn p2(s: &str) -> LaurentPoly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn univariate_examples() {
        assert_eq!(gcd(&p1("2+2t"), &p1("4+4t^2")), p1("2"));
        assert_eq!(gcd(&p1("2+2t"), &p1("6+6t")), p1("2+2t"));
        assert_eq!(gcd(&p1("2+2t"), &LaurentPoly::zero(1)), p1("2+2t"));
        assert_eq!(gcd(&p1("t-1"), &LaurentPoly::zero(1)), p1("1-t"));
        assert_eq!(gcd(&p1("t^-3 - t^-1"), &p1("t^5+t^4")), p1("1+t"));
        assert_eq!(gcd(&p1("12+24t+12t^2"), &p1("2+2t")), p1("2+2t"));
    }

    #[test]
    fn multivariate_examples() {
        let a = &p2("t1-1") * &p2("t1+t2");
        let b = &p2("t1-1") * &p2("t2+3");
        assert_eq!(gcd(&a, &b), p2("t1-1").normalized());
        let c = &p2("2*t1*t2+2") * &p2("t1^2+t2");
        let d = &p2("4*t1*t2+4") * &p2("t1-t2");
        assert_eq!(gcd(&c, &d), p2("2+2*t1*t2"));
        assert!(coprime(&p2("t1+t2"), &p2("t1-t2")));
        // monomial factors are units
        assert_eq!(gcd(&p2("t1*t2"), &p2("t1^3")), LaurentPoly::one(2));
    }

    #[test]
    fn three_variables() {
        let f = parse_poly("t1*t2 - t3 + 2", 3).unwrap();
        let g = parse_poly("t1 + t2*t3", 3).unwrap();
        let h = parse_poly("t3^2 - 5*t1", 3).unwrap();
        let g1 = gcd(&(&f * &g), &(&f * &h));
        assert_eq!(g1, f.normalized());
    }
}

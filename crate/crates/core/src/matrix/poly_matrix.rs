use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int_matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::ring::LaurentPoly;

/// Dense matrix over `Z[Z^m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            data: vec![LaurentPoly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(nvars, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(nvars));
        }
        m
    }

    /// Builds a matrix from rows; an empty row list gives `0 x cols` only
    /// through [`PolyMatrix::zeros`].
    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(Error::LatticeRank {
                        expected: nvars,
                        found: p.nvars(),
                    });
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            nvars,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Constant matrix from integer rows.
    pub fn from_int_rows(nvars: usize, rows: &[Vec<i64>]) -> Self {
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|&x| LaurentPoly::constant(nvars, x)).collect())
            .collect();
        Self::from_rows(nvars, polys).expect("rectangular")
    }

    pub fn from_int_matrix(nvars: usize, a: &IntMatrix) -> Self {
        let mut m = Self::zeros(nvars, a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m.set(i, j, LaurentPoly::constant(nvars, a.get(i, j).clone()));
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.nvars(), self.nvars, "lattice rank mismatch");
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> + '_ {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn map(&self, nvars: usize, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> PolyMatrix {
        PolyMatrix {
            nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        nvars: usize,
        f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>,
    ) -> Result<PolyMatrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            nvars,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(self.nvars, |p| -p)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = Self::zeros(self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        assert_eq!(self.nvars, rhs.nvars, "lattice rank mismatch");
        let mut out = Self::zeros(self.nvars, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`; blocks must have compatible shapes.
    pub fn block(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = Self::zeros(a.nvars, a.rows + c.rows, a.cols + b.cols);
        out.paste(0, 0, a);
        out.paste(0, a.cols, b);
        out.paste(a.rows, 0, c);
        out.paste(a.rows, a.cols, d);
        out
    }

    pub fn block_diag(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let z1 = Self::zeros(a.nvars, a.rows, b.cols);
        let z2 = Self::zeros(a.nvars, b.rows, a.cols);
        Self::block(a, &z1, &z2, b)
    }

    /// Copies `m` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, m: &PolyMatrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Self::zeros(self.nvars, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Integer matrix of a constant polynomial matrix.
    pub fn to_int_matrix(&self) -> Result<IntMatrix> {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                let v = p
                    .constant_value()
                    .ok_or_else(|| Error::NotInteger(p.to_string()))?;
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    fn to_grid(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn determinant(m: &PolyMatrix) -> LaurentPoly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let nvars = m.nvars;
    match n {
        0 => return LaurentPoly::one(nvars),
        1 => return m.get(0, 0).clone(),
        2 => return &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0)),
        _ => {}
    }
    let mut a = m.to_grid();
    let mut negate = false;
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n {
        let Some((pi, pj)) = choose_pivot(&a, k) else {
            return LaurentPoly::zero(nvars);
        };
        if pi != k {
            a.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        eliminate(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// Pivot among rows/cols `>= k`: the nonzero entry with fewest terms.
fn choose_pivot(a: &[Vec<LaurentPoly>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, p) in row.iter().enumerate().skip(k) {
            if p.is_zero() {
                continue;
            }
            let w = p.num_terms();
            if best.is_none_or(|(bw, _, _)| w < bw) {
                best = Some((w, i, j));
                if w == 1 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// One Bareiss step: every entry below and right of the pivot becomes the
/// `(k+2)`-minor divided by the previous pivot, which is exact.
fn eliminate(a: &mut [Vec<LaurentPoly>], k: usize, prev: &LaurentPoly) {
    let (top, rest) = a.split_at_mut(k + 1);
    let pivot_row = &top[k];
    let pivot = &pivot_row[k];
    for row in rest.iter_mut() {
        let lead = row[k].clone();
        for j in k + 1..pivot_row.len() {
            let mut val = pivot * &row[j];
            if !lead.is_zero() && !pivot_row[j].is_zero() {
                val = &val - &(&lead * &pivot_row[j]);
            }
            row[j] = if prev.is_one() {
                val
            } else {
                val.exact_divide(prev).expect("Bareiss quotient is exact")
            };
        }
        row[k] = LaurentPoly::zero(pivot.nvars());
    }
}

/// Rank over the fraction field `Q(t_1..t_m)`.
pub fn rank_ff(m: &PolyMatrix) -> usize {
    let mut a = m.to_grid();
    let mut prev = LaurentPoly::one(m.nvars);
    let mut rank = 0;
    for k in 0..m.rows.min(m.cols) {
        let Some((pi, pj)) = choose_pivot(&a, k) else {
            break;
        };
        a.swap(pi, k);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
        }
        eliminate(&mut a, k, &prev);
        prev = a[k][k].clone();
        rank += 1;
    }
    rank
}

/// Lexicographic `k`-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut c = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] < self.n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                self.current = Some(c);
                break;
            }
        }
        Some(out)
    }
}

/// A minor: the selected rows and columns and its determinant.
#[derive(Clone, Debug)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: LaurentPoly,
}

/// Visits all `s x s` minors, column combinations in lexicographic order on
/// the outside and row combinations in lexicographic order inside.
pub fn for_each_minor<B>(
    m: &PolyMatrix,
    s: usize,
    mut f: impl FnMut(Minor) -> ControlFlow<B>,
) -> Option<B> {
    for cols in Combinations::new(m.cols, s) {
        for rows in Combinations::new(m.rows, s) {
            let value = determinant(&m.submatrix(&rows, &cols));
            if let ControlFlow::Break(b) = f(Minor {
                rows,
                cols: cols.clone(),
                value,
            }) {
                return Some(b);
            }
        }
    }
    None
}

/// `(all_zero, content)` of the `s x s` minor family: whether every minor
/// vanishes, and the gcd of their integer contents. Stops as soon as the
/// running gcd reaches 1. `s = 0` gives `(false, 1)`.
pub fn minor_family_content(m: &PolyMatrix, s: usize) -> (bool, BigInt) {
    if s == 0 {
        return (false, BigInt::one());
    }
    let mut g = BigInt::zero();
    for_each_minor(m, s, |minor| {
        g = g.gcd(&minor.value.integer_content());
        if g.is_one() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (g.is_zero(), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn pm(nvars: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            nvars,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s, nvars).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_ff(&pm(1, &[&["t-1"]])), 1);
        assert_eq!(rank_ff(&PolyMatrix::zeros(1, 3, 2)), 0);
        assert_eq!(rank_ff(&pm(2, &[&["t1-1", "t2-1"], &["t2-1", "t1-1"]])), 2);
        assert_eq!(rank_ff(&pm(1, &[&["1+t", "2+2t"], &["t", "2t"]])), 1);
        assert_eq!(
            rank_ff(&pm(
                1,
                &[&["1", "t", "t^2"], &["t", "t^2", "t^3"], &["1", "0", "1"]]
            )),
            2
        );
    }

    #[test]
    fn determinants() {
        let m = pm(1, &[&["1", "t", "0"], &["0", "1", "t"], &["t", "0", "1"]]);
        assert_eq!(determinant(&m), parse_poly("1+t^3", 1).unwrap());
        let v = pm(
            1,
            &[&["1", "1", "1"], &["1", "t", "t^2"], &["1", "t^2", "t^4"]],
        );
        // Vandermonde in (1, t, t^2)
        let expect = &(&parse_poly("t-1", 1).unwrap() * &parse_poly("t^2-1", 1).unwrap())
            * &parse_poly("t^2-t", 1).unwrap();
        assert_eq!(determinant(&v), expect);
    }

    #[test]
    fn minor_contents() {
        let d = pm(1, &[&["2+2t", "0"], &["0", "6+6t"]]);
        assert_eq!(minor_family_content(&d, 1), (false, BigInt::from(2)));
        assert_eq!(minor_family_content(&d, 2), (false, BigInt::from(12)));
        assert_eq!(
            minor_family_content(&PolyMatrix::zeros(1, 2, 2), 1),
            (true, BigInt::zero())
        );
        assert_eq!(minor_family_content(&d, 0), (false, BigInt::one()));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}

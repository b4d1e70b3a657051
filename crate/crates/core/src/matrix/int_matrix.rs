use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// From rows of small integers; panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged integer matrix"
        );
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(
            rows.iter().all(|row| row.len() == cols),
            "ragged integer matrix"
        );
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            bareiss_step(&mut a, k, &prev);
            prev = a[k][k].clone();
        }
        if negate {
            -prev
        } else {
            prev
        }
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let mut prev = BigInt::one();
        let mut rank = 0;
        while rank < self.rows.min(self.cols) {
            let pos = (rank..self.rows).find_map(|i| {
                (rank..self.cols)
                    .find(|&j| !a[i][j].is_zero())
                    .map(|j| (i, j))
            });
            let Some((pi, pj)) = pos else { break };
            a.swap(pi, rank);
            for row in a.iter_mut() {
                row.swap(pj, rank);
            }
            bareiss_step(&mut a, rank, &prev);
            prev = a[rank][rank].clone();
            rank += 1;
        }
        rank
    }
}

fn bareiss_step(a: &mut [Vec<BigInt>], k: usize, prev: &BigInt) {
    let (top, rest) = a.split_at_mut(k + 1);
    let pivot_row = &top[k];
    let pivot = &pivot_row[k];
    for row in rest.iter_mut() {
        let lead = row[k].clone();
        for j in k + 1..pivot_row.len() {
            let val = pivot * &row[j] - &lead * &pivot_row[j];
            row[j] = if prev.is_one() { val } else { val / prev };
        }
        row[k] = BigInt::zero();
    }
}

//! Dense exact integer matrices. Sizes here are tiny (the rank of a seed),
//! so determinants go through fraction-free elimination and inverses of
//! unimodular matrices come from the adjugate, keeping everything in
//! integers. All arithmetic is checked; overflow panics rather than wraps.

use std::fmt;

use crate::error::{Error, Result};

fn add64(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in matrix arithmetic")
}

fn mul64(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in matrix arithmetic")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::BadDimensions("ragged row lengths".into()));
        }
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows_vec(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        for v in &mut m.data {
            *v = v.checked_neg().expect("integer overflow in matrix arithmetic");
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::BadDimensions(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    acc = add64(acc, mul64(self.get(i, k), other.get(k, j)));
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::BadDimensions(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    acc = add64(acc, mul64(self.get(i, k), v[k]));
                }
                acc
            })
            .collect())
    }

    /// Submatrix with the given row and column index lists, in order.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut m = Self::zeros(row_idx.len(), col_idx.len());
        for (a, &i) in row_idx.iter().enumerate() {
            for (b, &j) in col_idx.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// Determinant by fraction-free Gaussian elimination, exact over the
    /// integers. The empty matrix has determinant one.
    pub fn det(&self) -> i64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let at = |a: &Vec<i128>, i: usize, j: usize| a[i * n + j];
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..n - 1 {
            if at(&a, k, k) == 0 {
                match (k + 1..n).find(|&r| at(&a, r, k) != 0) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&a, i, j)
                        .checked_mul(at(&a, k, k))
                        .and_then(|p| {
                            at(&a, i, k)
                                .checked_mul(at(&a, k, j))
                                .and_then(|q| p.checked_sub(q))
                        })
                        .expect("integer overflow in determinant");
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = at(&a, k, k);
        }
        let d = sign * at(&a, n - 1, n - 1);
        i64::try_from(d).expect("integer overflow in determinant")
    }

    /// Adjugate via cofactors. `self.mul(&adj) == det * identity`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        let mut adj = Self::zeros(n, n);
        if n == 0 {
            return adj;
        }
        let all: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = all.iter().cloned().filter(|&r| r != i).collect();
                let cs: Vec<usize> = all.iter().cloned().filter(|&c| c != j).collect();
                let minor = self.submatrix(&rs, &cs).det();
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                adj.set(j, i, cof);
            }
        }
        adj
    }

    /// Exact inverse of a matrix with determinant +1 or -1.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::BadDimensions("inverse of a non-square matrix".into()));
        }
        let d = self.det();
        if d != 1 && d != -1 {
            return Err(Error::NonUnimodular(d));
        }
        let adj = self.adjugate();
        Ok(if d == 1 { adj } else { adj.neg() })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

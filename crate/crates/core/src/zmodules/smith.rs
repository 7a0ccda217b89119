//! Smith normal form over `Z` with exact arbitrary precision arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ModuleError;
use crate::json::JsonBigInt;

/// A dense integer matrix presenting `coker(A: Z^cols -> Z^rows)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl PresentationMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> Result<Self, ModuleError> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(ModuleError::Shape { rows, cols });
        }
        Ok(PresentationMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, ModuleError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::new(
            r,
            c,
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PresentationMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn mul(&self, other: &PresentationMatrix) -> PresentationMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += &self.entries[i][k] * &other.entries[k][j];
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationWire {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<JsonBigInt>>,
}

impl TryFrom<PresentationWire> for PresentationMatrix {
    type Error = ModuleError;
    fn try_from(w: PresentationWire) -> Result<Self, ModuleError> {
        let entries = w
            .entries
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        PresentationMatrix::new(w.rows, w.cols, entries)
    }
}

/// `left * A * right = diag(diagonal)` with `left`, `right` unimodular and
/// the diagonal a non-negative divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: PresentationMatrix,
    pub right: PresentationMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_dst -= q * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self.a[src][j] * q;
            self.a[dst][j] -= t;
        }
        for j in 0..self.rows {
            let t = &self.u[src][j] * q;
            self.u[dst][j] -= t;
        }
    }

    /// col_dst -= q * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self.a[i][src] * q;
            self.a[i][dst] -= t;
        }
        for i in 0..self.cols {
            let t = &self.v[i][src] * q;
            self.v[i][dst] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // Clear column t below the pivot; a nonzero remainder becomes
                // the new (smaller) pivot.
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_axpy(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        self.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_axpy(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        self.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Pivot must divide the remaining block.
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&self.a[t][t]))
                });
                match offender {
                    Some(i) => self.row_axpy(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form of `a`. The diagonal has length `min(rows, cols)`.
pub fn smith_normal_form(a: &PresentationMatrix) -> SmithForm {
    let mut r = Reducer {
        a: a.entries.clone(),
        u: PresentationMatrix::identity(a.rows).entries,
        v: PresentationMatrix::identity(a.cols).entries,
        rows: a.rows,
        cols: a.cols,
    };
    r.reduce();
    let diagonal = (0..a.rows.min(a.cols)).map(|i| r.a[i][i].clone()).collect();
    SmithForm {
        diagonal,
        left: PresentationMatrix {
            rows: a.rows,
            cols: a.rows,
            entries: r.u,
        },
        right: PresentationMatrix {
            rows: a.cols,
            cols: a.cols,
            entries: r.v,
        },
    }
}

use serde::{Deserialize, Serialize};

use super::field::PrimeField;

/// A dense row-major matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            m.row_mut(i).copy_from_slice(&row);
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_block(&self, start: usize, end: usize) -> FpMatrix {
        let rows = (0..self.rows)
            .map(|r| self.row(r)[start..end].to_vec())
            .collect();
        FpMatrix::from_rows(self.field, end - start, rows)
    }

    /// Indices of the pivot columns of a row echelon form, which are the
    /// lexicographically first linearly independent columns: column `j` is
    /// a pivot iff it is not in the span of columns `0..j`.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivot_columns_upto(usize::MAX)
    }

    /// Like [`pivot_columns`](Self::pivot_columns) but stops after `limit`
    /// pivots.
    pub fn pivot_columns_upto(&self, limit: usize) -> Vec<usize> {
        let f = self.field;
        let mut work = self.data.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..cols {
            if next_row == self.rows || pivots.len() == limit {
                break;
            }
            let Some(p) = (next_row..self.rows).find(|&r| work[r * cols + c] != 0) else {
                continue;
            };
            if p != next_row {
                for k in c..cols {
                    work.swap(p * cols + k, next_row * cols + k);
                }
            }
            let inv = f.inv(work[next_row * cols + c]);
            for k in c..cols {
                let v = &mut work[next_row * cols + k];
                *v = f.mul(*v, inv);
            }
            let (head, tail) = work.split_at_mut((next_row + 1) * cols);
            let pivot_row = &head[next_row * cols..];
            for row in tail.chunks_exact_mut(cols) {
                let factor = row[c];
                if factor == 0 {
                    continue;
                }
                for k in c..cols {
                    row[k] = f.sub_mul(row[k], factor, pivot_row[k]);
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.pivot_columns().len()
    }
}

//! Dense matrices and linear codes over `F`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldCtx;

#[derive(Clone, PartialEq, Eq)]
pub struct FMatrix {
    field: FieldCtx,
    nrows: usize,
    ncols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix {}x{}", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl FMatrix {
    pub fn zeros(field: &FieldCtx, nrows: usize, ncols: usize) -> Self {
        FMatrix {
            field: field.clone(),
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = FMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &FieldCtx, ncols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::LengthMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
            if r.iter().any(|&v| v >= field.size()) {
                return Err(Error::Precondition("entry outside the field".into()));
            }
            data.extend_from_slice(r);
        }
        Ok(FMatrix {
            field: field.clone(),
            nrows: rows.len(),
            ncols,
            data,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zeros(&self.field, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FMatrix) -> Result<FMatrix> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        if self.ncols != other.nrows {
            return Err(Error::LengthMismatch {
                expected: self.ncols,
                got: other.nrows,
            });
        }
        let k = &self.field;
        let mut out = FMatrix::zeros(k, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for t in 0..self.ncols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(t, j);
                    if b != 0 {
                        let v = k.add(out.get(i, j), k.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FMatrix) -> Result<FMatrix> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) {
            return Err(Error::Precondition("shape mismatch".into()));
        }
        let k = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| k.add(a, b))
            .collect();
        Ok(FMatrix {
            field: k.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        })
    }

    pub fn scale(&self, c: u32) -> FMatrix {
        let k = &self.field;
        FMatrix {
            field: k.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|&a| k.mul(a, c)).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        let k = &self.field;
        let mut out = vec![0; self.ncols];
        for (t, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(t, j);
                if b != 0 {
                    *o = k.add(*o, k.mul(a, b));
                }
            }
        }
        out
    }

    /// Places `blocks[i][j]` (all `b×b`) at block position `(i, j)`.
    pub fn from_blocks(field: &FieldCtx, b: usize, blocks: &[Vec<FMatrix>]) -> FMatrix {
        let br = blocks.len();
        let bc = blocks.first().map_or(0, |r| r.len());
        let mut out = FMatrix::zeros(field, br * b, bc * b);
        for (bi, brow) in blocks.iter().enumerate() {
            for (bj, blk) in brow.iter().enumerate() {
                for i in 0..b {
                    for j in 0..b {
                        out.set(bi * b + i, bj * b + j, blk.get(i, j));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(field: &FieldCtx, block: &FMatrix, count: usize) -> FMatrix {
        let b = block.nrows;
        let zero = FMatrix::zeros(field, b, b);
        let blocks: Vec<Vec<FMatrix>> = (0..count)
            .map(|i| {
                (0..count)
                    .map(|j| if i == j { block.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        FMatrix::from_blocks(field, b, &blocks)
    }

    /// Reduced row-echelon form with zero rows removed, plus pivot columns.
    pub fn rref_with_pivots(&self) -> (FMatrix, Vec<usize>) {
        let k = &self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.ncols {
            if r == a.nrows {
                break;
            }
            let Some(p) = (r..a.nrows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..a.ncols {
                    a.data.swap(p * a.ncols + j, r * a.ncols + j);
                }
            }
            let inv = k.inv(a.get(r, c)).expect("nonzero pivot");
            for j in c..a.ncols {
                let v = k.mul(a.get(r, j), inv);
                a.set(r, j, v);
            }
            for i in 0..a.nrows {
                let factor = a.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..a.ncols {
                    let v = k.sub(a.get(i, j), k.mul(factor, a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.data.truncate(r * a.ncols);
        a.nrows = r;
        (a, pivots)
    }

    pub fn rref(&self) -> FMatrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Basis (as rows) of `{v : M v^T = 0}`.
    pub fn nullspace(&self) -> FMatrix {
        let k = &self.field;
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FMatrix::zeros(k, free.len(), self.ncols);
        for (t, &fc) in free.iter().enumerate() {
            out.set(t, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(t, pc, k.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[u32]) -> bool {
        let (r, pivots) = self.rref_with_pivots();
        reduce_by_rref(&r, &pivots, v).iter().all(|&x| x == 0)
    }
}

fn reduce_by_rref(r: &FMatrix, pivots: &[usize], v: &[u32]) -> Vec<u32> {
    let k = &r.field;
    let mut w = v.to_vec();
    for (i, &pc) in pivots.iter().enumerate() {
        let c = w[pc];
        if c == 0 {
            continue;
        }
        for (j, wj) in w.iter_mut().enumerate() {
            *wj = k.sub(*wj, k.mul(c, r.get(i, j)));
        }
    }
    w
}

/// An `F`-linear code stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FCode {
    basis: FMatrix,
    pivots: Vec<usize>,
}

impl FCode {
    pub fn from_generators(g: &FMatrix) -> FCode {
        let (basis, pivots) = g.rref_with_pivots();
        FCode { basis, pivots }
    }

    pub fn from_vectors(field: &FieldCtx, n: usize, vs: &[Vec<u32>]) -> Result<FCode> {
        Ok(FCode::from_generators(&FMatrix::from_rows(field, n, vs)?))
    }

    pub fn basis(&self) -> &FMatrix {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.ncols
    }

    pub fn is_empty(&self) -> bool {
        self.basis.ncols == 0
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.len()
            && reduce_by_rref(&self.basis, &self.pivots, v)
                .iter()
                .all(|&x| x == 0)
    }

    /// The `F`-dual with respect to the standard dot product.
    pub fn dual(&self) -> FCode {
        let g = if self.dim() == 0 {
            FMatrix::zeros(&self.basis.field, 0, self.len())
        } else {
            self.basis.clone()
        };
        FCode::from_generators(&g.nullspace())
    }

    /// Invariance of the row space under right multiplication by `t`.
    pub fn invariant_under(&self, t: &FMatrix) -> bool {
        (0..self.dim()).all(|i| self.contains(&t.vec_mul(self.basis.row(i))))
    }
}

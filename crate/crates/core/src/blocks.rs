//! Column-sparse block matrices with `d × d` blocks over F_p.

use crate::exactfield::FpMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    row_blocks: usize,
    d: usize,
    p: u64,
    /// `columns[c]` holds `(row_block, block)` pairs sorted by row.
    columns: Vec<Vec<(usize, FpMatrix)>>,
}

impl BlockMatrix {
    pub fn new(row_blocks: usize, col_blocks: usize, d: usize, p: u64) -> Self {
        Self {
            row_blocks,
            d,
            p,
            columns: vec![Vec::new(); col_blocks],
        }
    }

    pub fn row_blocks(&self) -> usize {
        self.row_blocks
    }

    pub fn col_blocks(&self) -> usize {
        self.columns.len()
    }

    pub fn block_dim(&self) -> usize {
        self.d
    }

    /// Adds `block` at block position (`r`, `c`). Zero blocks are ignored.
    pub fn add_block(&mut self, r: usize, c: usize, block: &FpMatrix) {
        debug_assert!(r < self.row_blocks);
        if block.is_zero() {
            return;
        }
        let col = &mut self.columns[c];
        match col.binary_search_by_key(&r, |(row, _)| *row) {
            Ok(i) => {
                col[i].1.add_assign_unchecked(block);
                if col[i].1.is_zero() {
                    col.remove(i);
                }
            }
            Err(i) => col.insert(i, (r, block.clone())),
        }
    }

    pub fn column(&self, c: usize) -> &[(usize, FpMatrix)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&FpMatrix> {
        let col = &self.columns[c];
        col.binary_search_by_key(&r, |(row, _)| *row)
            .ok()
            .map(|i| &col[i].1)
    }

    pub fn nonzero_blocks(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> FpMatrix {
        self.dense_columns(&(0..self.columns.len()).collect::<Vec<_>>())
    }

    /// Dense matrix on the given block columns (all block rows kept).
    pub fn dense_columns(&self, cols: &[usize]) -> FpMatrix {
        let d = self.d;
        let mut m = FpMatrix::zeros_unchecked(self.row_blocks * d, cols.len() * d, self.p);
        for (j, &c) in cols.iter().enumerate() {
            for (r, block) in &self.columns[c] {
                m.put_block(r * d, j * d, block);
            }
        }
        m
    }

    /// Sparse product `self · rhs`.
    pub fn mul(&self, rhs: &BlockMatrix) -> BlockMatrix {
        assert_eq!(self.columns.len(), rhs.row_blocks, "block shape mismatch");
        let mut out = BlockMatrix::new(self.row_blocks, rhs.columns.len(), self.d, self.p);
        for (c, col) in rhs.columns.iter().enumerate() {
            for (k, b) in col {
                for (r, a) in &self.columns[*k] {
                    let mut prod = FpMatrix::zeros_unchecked(self.d, self.d, self.p);
                    prod.mul_add_assign_unchecked(a, b);
                    out.add_block(*r, c, &prod);
                }
            }
        }
        out
    }
}

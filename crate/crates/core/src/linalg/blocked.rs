//! Matrices partitioned into blocks labelled by vertex sequences.

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// One axis of a blocked matrix: an ordered list of vertex labels with a
/// block size per label. Block boundaries are prefix sums of the sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAxis {
    labels: Vec<usize>,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockAxis {
    /// `sizes[k]` is the size of the block labelled `labels[k]`.
    pub fn new(labels: Vec<usize>, sizes: Vec<usize>) -> Result<Self> {
        if labels.len() != sizes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels but {} block sizes",
                labels.len(),
                sizes.len()
            )));
        }
        let mut seen = labels.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Mismatch(format!("repeated label in {labels:?}")));
        }
        let mut offsets = Vec::with_capacity(labels.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for s in &sizes {
            acc += s;
            offsets.push(acc);
        }
        Ok(BlockAxis { labels, sizes, offsets })
    }

    /// An axis whose labels are vertices and whose sizes come from a
    /// per-vertex dimension lookup (`dims[v - 1]`).
    pub fn from_vertices(labels: &[usize], dims: &[usize]) -> Result<Self> {
        let sizes = labels
            .iter()
            .map(|&v| {
                dims.get(v.wrapping_sub(1))
                    .copied()
                    .ok_or(Error::VertexNotInSequence(v))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels.to_vec(), sizes)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn total(&self) -> usize {
        *self.offsets.last().expect("nonempty offsets")
    }

    pub fn position(&self, label: usize) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::VertexNotInSequence(label))
    }

    /// First index (0-based) and size of the block labelled `label`.
    pub fn span(&self, label: usize) -> Result<(usize, usize)> {
        let k = self.position(label)?;
        Ok((self.offsets[k], self.sizes[k]))
    }

    pub fn offset_at(&self, k: usize) -> usize {
        self.offsets[k]
    }
    pub fn size_at(&self, k: usize) -> usize {
        self.sizes[k]
    }

    /// Block position of the 0-based index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        assert!(i < self.total());
        self.offsets.partition_point(|&o| o <= i) - 1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockedMatrix<F: Field> {
    matrix: Matrix<F>,
    rows: BlockAxis,
    cols: BlockAxis,
}

impl<F: Field> BlockedMatrix<F> {
    pub fn new(matrix: Matrix<F>, rows: BlockAxis, cols: BlockAxis) -> Result<Self> {
        if matrix.rows() != rows.total() || matrix.cols() != cols.total() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix with {}x{} blocking",
                matrix.rows(),
                matrix.cols(),
                rows.total(),
                cols.total()
            )));
        }
        Ok(BlockedMatrix { matrix, rows, cols })
    }

    /// Assembles a blocked matrix from a block-generating function; `None`
    /// means a zero block.
    pub fn from_blocks(
        field: &F,
        rows: BlockAxis,
        cols: BlockAxis,
        mut block: impl FnMut(usize, usize) -> Result<Option<Matrix<F>>>,
    ) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows.total(), cols.total());
        for (bi, &x) in rows.labels().iter().enumerate() {
            for (bj, &y) in cols.labels().iter().enumerate() {
                if let Some(b) = block(x, y)? {
                    if b.shape() != (rows.size_at(bi), cols.size_at(bj)) {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({x},{y}) is {}x{}, expected {}x{}",
                            b.rows(),
                            b.cols(),
                            rows.size_at(bi),
                            cols.size_at(bj)
                        )));
                    }
                    m.set_block(rows.offset_at(bi), cols.offset_at(bj), &b)?;
                }
            }
        }
        Self::new(m, rows, cols)
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }
    pub fn into_matrix(self) -> Matrix<F> {
        self.matrix
    }
    pub fn row_axis(&self) -> &BlockAxis {
        &self.rows
    }
    pub fn col_axis(&self) -> &BlockAxis {
        &self.cols
    }

    /// The `([x],[y])` block itself.
    pub fn block(&self, x: usize, y: usize) -> Result<Matrix<F>> {
        let (r0, nr) = self.rows.span(x)?;
        let (c0, nc) = self.cols.span(y)?;
        self.matrix.submatrix(r0, nr, c0, nc)
    }

    /// Southwest submatrix with block row `[x]` as its top boundary and block
    /// column `[y]` as its right boundary, both inclusive.
    pub fn southwest_block(&self, x: usize, y: usize) -> Result<Matrix<F>> {
        let (i, j) = self.southwest_window(x, y)?;
        self.matrix.southwest(i, j)
    }

    /// Row and column counts of the `([x],[y])` southwest window.
    pub fn southwest_window(&self, x: usize, y: usize) -> Result<(usize, usize)> {
        let (r0, _) = self.rows.span(x)?;
        let (c0, nc) = self.cols.span(y)?;
        Ok((self.matrix.rows() - r0, c0 + nc))
    }

    /// Ranks of all block southwest windows: `table[k][l]` is the rank for
    /// the `k`-th row label and `l`-th column label.
    pub fn southwest_block_ranks(&self) -> Vec<Vec<usize>> {
        let n_rows = self.matrix.rows();
        let mut table = vec![vec![0; self.cols.len()]; self.rows.len()];
        for l in 0..self.cols.len() {
            let prof = self
                .matrix
                .southwest_rank_profile(self.cols.offset_at(l) + self.cols.size_at(l));
            for (k, row) in table.iter_mut().enumerate() {
                row[l] = prof[n_rows - self.rows.offset_at(k)];
            }
        }
        table
    }
}

use crate::algebra::CommRing;
use crate::error::{Error, Result};

/// Square upper-triangular matrix over a commutative ring with labelled rows.
#[derive(Clone, Debug, PartialEq)]
pub struct UniTriMatrix<T> {
    labels: Vec<String>,
    entries: Vec<Vec<T>>,
}

impl<T: CommRing> UniTriMatrix<T> {
    /// Panics if the array is not square or has a nonzero entry below the diagonal.
    pub fn new(labels: Vec<String>, entries: Vec<Vec<T>>) -> Self {
        let n = labels.len();
        assert_eq!(entries.len(), n, "row count must match label count");
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, e) in row.iter().enumerate().take(i) {
                assert!(e.ring_is_zero(), "entry ({i},{j}) below the diagonal is nonzero");
            }
        }
        UniTriMatrix { labels, entries }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.entries
    }

    pub fn identity_like(&self) -> Self {
        let one = self.entries[0][0].one_like();
        let zero = one.zero_like();
        let n = self.size();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
            .collect();
        UniTriMatrix { labels: self.labels.clone(), entries }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.size();
        assert_eq!(n, o.size());
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = self.entries[i][j].zero_like();
                for k in i..=j {
                    acc = acc.ring_add(&self.entries[i][k].ring_mul(&o.entries[k][j]));
                }
                row.push(acc);
            }
            entries.push(row);
        }
        UniTriMatrix { labels: self.labels.clone(), entries }
    }

    /// Exact inverse by back-substitution, column by column.
    pub fn invert(&self) -> Result<Self> {
        let n = self.size();
        let diag_inv: Vec<T> = (0..n)
            .map(|i| {
                self.entries[i][i]
                    .unit_inverse()
                    .ok_or_else(|| Error::NonInvertibleDiagonal(self.labels[i].clone()))
            })
            .collect::<Result<_>>()?;
        let zero = self.entries[0][0].zero_like();
        let mut inv = vec![vec![zero.clone(); n]; n];
        for j in 0..n {
            inv[j][j] = diag_inv[j].clone();
            for i in (0..j).rev() {
                let mut acc = zero.clone();
                for k in i + 1..=j {
                    acc = acc.ring_add(&self.entries[i][k].ring_mul(&inv[k][j]));
                }
                inv[i][j] = diag_inv[i].ring_mul(&acc).ring_neg();
            }
        }
        Ok(UniTriMatrix { labels: self.labels.clone(), entries: inv })
    }
}

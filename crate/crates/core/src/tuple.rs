use crate::error::{input, Result};
use crate::matcore::{check_square, ComplexMatrix};

/// An ordered, non-empty sequence of square matrices of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorTuple {
    matrices: Vec<ComplexMatrix>,
}

impl OperatorTuple {
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return input("operator tuple must contain at least one matrix");
        };
        let d = check_square(first)?;
        for (k, m) in matrices.iter().enumerate() {
            if check_square(m)? != d {
                return input(format!("matrix {k} is {}x{}, expected {d}x{d}", m.nrows(), m.ncols()));
            }
        }
        Ok(Self { matrices })
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn d(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn get(&self, k: usize) -> &ComplexMatrix {
        &self.matrices[k]
    }

    pub fn into_matrices(self) -> Vec<ComplexMatrix> {
        self.matrices
    }

    /// `A_1 + ... + A_n`.
    pub fn sum(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.d(), self.d());
        for m in &self.matrices {
            acc += m;
        }
        acc
    }

    /// Index pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// `A_i - A_j` for every pair, in `pairs()` order.
    pub fn differences(&self) -> Vec<ComplexMatrix> {
        self.pairs().map(|(i, j)| &self.matrices[i] - &self.matrices[j]).collect()
    }

    pub fn map(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self { matrices: self.matrices.iter().map(f).collect() }
    }

    pub(crate) fn require_pairs(&self) -> Result<()> {
        if self.n() < 2 {
            return input(format!("need at least two matrices, got {}", self.n()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{diag_real, identity};

    #[test]
    fn rejects_mixed_dimensions_and_empty() {
        assert!(OperatorTuple::new(vec![]).is_err());
        assert!(OperatorTuple::new(vec![identity(2), identity(3)]).is_err());
    }

    #[test]
    fn pairs_are_lexicographic() {
        let t = OperatorTuple::new(vec![identity(1); 4]).unwrap();
        let pairs: Vec<_> = t.pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn sum_and_differences() {
        let t = OperatorTuple::new(vec![diag_real(&[1.0, 2.0]), diag_real(&[3.0, 5.0])]).unwrap();
        assert_eq!(t.sum(), diag_real(&[4.0, 7.0]));
        assert_eq!(t.differences(), vec![diag_real(&[-2.0, -3.0])]);
    }
}

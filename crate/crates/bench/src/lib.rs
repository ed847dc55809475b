//! Shared inputs for the benchmarks.

use gvdual::kernel::{rat, Matrix};
use gvdual::qa::QuadAlgebra;

/// A dense `n × n` integer matrix with full rank and small entries.
pub fn dense_matrix(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| rat(((i * 7 + j * 3) % 5) as i64 - 2 + i64::from(i == j) * 5, 1))
}

/// `k[x_1..x_m]` and its dual, the standard Koszul pair.
pub fn koszul_pair(m: usize) -> (QuadAlgebra, QuadAlgebra) {
    (QuadAlgebra::polynomial(m), QuadAlgebra::exterior(m))
}

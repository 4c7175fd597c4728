#pragma once

#include "mspinn/core/numeric.hpp"

namespace mspinn {

/// Spectral decomposition of a symmetric kernel: K = Q diag(lambda) Q^T with
/// eigenvalues descending and the columns of Q orthonormal.
struct KernelEigenSystem {
  Matrix kernel;        // symmetrized input
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // column i pairs with eigenvalues[i]
  Vector grid;          // optional evaluation grid the kernel lives on
};

struct SymEigOptions {
  int max_sweeps = 100;       // cyclic Jacobi sweep cap
  double tolerance = 1e-12;   // off-diagonal Frobenius reduction target, relative
  bool vectors = true;        // accumulate eigenvectors
  int jacobi_max_n = 1024;    // above this, switch to tridiagonal QL
};

/// Symmetric eigendecomposition. The input is symmetrized as (M + M^T)/2.
/// Cyclic Jacobi up to jacobi_max_n; Householder tridiagonalization with
/// implicit-shift QL beyond that. Throws numeric_error on non-convergence.
KernelEigenSystem sym_eig(const Matrix& m, const SymEigOptions& opts = {});

/// Eigenvalues only (descending), same algorithm selection as sym_eig.
Vector sym_eigvalues(const Matrix& m, const SymEigOptions& opts = {});

}  // namespace mspinn

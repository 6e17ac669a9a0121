#pragma once

#include "riemdr/types.h"

namespace riemdr {

/// Eigenvalues in descending order with matching eigenvector columns.
/// Each vector is sign-normalized so that its largest-magnitude entry is
/// positive. Order among tied eigenvalues is unspecified.
struct EigPair {
  Vector values;
  Matrix vectors;
};

/// Symmetric eigendecomposition. Throws NotSymmetric when
/// ||A - A^T||_F > 1e-8 ||A||_F.
EigPair sym_eig(const Matrix& a);

/// Generalized symmetric-definite problem A v = l B v, solved by Cholesky
/// whitening of B. When the smallest eigenvalue of B is below
/// 1e-6 trace(B) / dim, B + eps I with eps = 1e-8 trace(B) / dim is used
/// instead. Vectors are orthonormal in the B actually used. Throws
/// NotPositiveDefinite if that B is not.
EigPair gen_eig(const Matrix& a, const Matrix& b);

/// Singular value soft-thresholding: U max(S - tau, 0) V^T.
Matrix svt(const Matrix& m, double tau);

/// Entrywise soft-thresholding sign(m) max(|m| - tau, 0).
Matrix shrink(const Matrix& m, double tau);

/// Flips each column so its largest-|entry| coordinate is positive.
void normalize_signs(Matrix& vectors);

}  // namespace riemdr

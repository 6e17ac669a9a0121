#pragma once

#include "riemdr/types.h"

namespace riemdr {

/// Symmetric matrix functions evaluated through the eigendecomposition
/// A = V diag(l) V^T. Inputs are symmetrized before decomposition.
Matrix sym_sqrt(const Matrix& a);
Matrix sym_inv_sqrt(const Matrix& a);
Matrix sym_exp(const Matrix& a);
/// Throws DomainError if an eigenvalue is below 1e-10; eigenvalues are
/// clamped to >= 1e-12 before the log.
Matrix sym_log(const Matrix& a);

inline Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace riemdr

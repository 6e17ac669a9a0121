#include "riemdr/matrix_functions.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "riemdr/errors.h"

namespace riemdr {
namespace {

template <typename F>
Matrix apply(const Matrix& a, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a));
  if (es.info() != Eigen::Success) {
    throw DomainError("symmetric eigendecomposition failed");
  }
  Vector l = es.eigenvalues();
  for (Index i = 0; i < l.size(); ++i) l(i) = f(l(i));
  const Matrix& v = es.eigenvectors();
  return symmetrize(v * l.asDiagonal() * v.transpose());
}

void require_positive(double l, const char* what) {
  if (!(l >= 1e-10)) {
    std::ostringstream os;
    os << what << ": eigenvalue " << l << " < 1e-10";
    throw DomainError(os.str());
  }
}

}  // namespace

Matrix sym_sqrt(const Matrix& a) {
  return apply(a, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

Matrix sym_inv_sqrt(const Matrix& a) {
  return apply(a, [](double l) {
    require_positive(l, "sym_inv_sqrt");
    return 1.0 / std::sqrt(l);
  });
}

Matrix sym_exp(const Matrix& a) {
  return apply(a, [](double l) { return std::exp(l); });
}

Matrix sym_log(const Matrix& a) {
  return apply(a, [](double l) {
    require_positive(l, "sym_log");
    return std::log(std::max(l, 1e-12));
  });
}

}  // namespace riemdr

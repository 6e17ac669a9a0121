#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace riemdr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double>;

}  // namespace riemdr

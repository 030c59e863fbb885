#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace edgerec {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

} // namespace edgerec

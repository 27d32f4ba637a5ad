#pragma once

#include <vector>

#include <Eigen/Dense>

namespace strictfeas {

/// Schur complement of the Newton system under scaling W:
///   M(i, j) = <F_i, W F_j W>.
/// The serial version is the reference; the parallel one distributes the
/// products W F_j W and the entry sums over OpenMP threads and is bitwise
/// identical to it (each entry is computed by one thread in a fixed order).
Eigen::MatrixXd schur_complement_serial(const std::vector<Eigen::MatrixXd>& terms, const Eigen::MatrixXd& w);
Eigen::MatrixXd schur_complement_parallel(const std::vector<Eigen::MatrixXd>& terms, const Eigen::MatrixXd& w);

/// <A, B> for every pair of a list against a single matrix: out(i) = <A_i, B>.
Eigen::VectorXd inner_products(const std::vector<Eigen::MatrixXd>& terms, const Eigen::MatrixXd& b);

/// Number of threads the parallel kernels will use (1 without OpenMP).
int kernel_threads();

}  // namespace strictfeas

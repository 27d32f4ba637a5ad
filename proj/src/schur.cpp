#include "strictfeas/schur.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace strictfeas {

namespace {

double frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) s += a(i, j) * b(i, j);
    return s;
}

}  // namespace

Eigen::MatrixXd schur_complement_serial(const std::vector<Eigen::MatrixXd>& terms, const Eigen::MatrixXd& w) {
    const auto m = static_cast<Eigen::Index>(terms.size());
    std::vector<Eigen::MatrixXd> scaled(terms.size());
    for (std::size_t j = 0; j < terms.size(); ++j) scaled[j] = w * terms[j] * w;
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = frobenius(terms[static_cast<std::size_t>(i)], scaled[static_cast<std::size_t>(j)]);
            out(i, j) = v;
            out(j, i) = v;
        }
    return out;
}

Eigen::MatrixXd schur_complement_parallel(const std::vector<Eigen::MatrixXd>& terms, const Eigen::MatrixXd& w) {
    const auto m = static_cast<long>(terms.size());
    std::vector<Eigen::MatrixXd> scaled(terms.size());
#pragma omp parallel for schedule(static)
    for (long j = 0; j < m; ++j) scaled[static_cast<std::size_t>(j)] = w * terms[static_cast<std::size_t>(j)] * w;

    Eigen::MatrixXd out(m, m);
    const long pairs = m * (m + 1) / 2;
#pragma omp parallel for schedule(static)
    for (long p = 0; p < pairs; ++p) {
        // Unrank p into (i, j) with j <= i.
        long i = 0;
        while ((i + 1) * (i + 2) / 2 <= p) ++i;
        const long j = p - i * (i + 1) / 2;
        const double v = frobenius(terms[static_cast<std::size_t>(i)], scaled[static_cast<std::size_t>(j)]);
        out(i, j) = v;
        out(j, i) = v;
    }
    return out;
}

Eigen::VectorXd inner_products(const std::vector<Eigen::MatrixXd>& terms, const Eigen::MatrixXd& b) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(terms.size()));
    for (std::size_t i = 0; i < terms.size(); ++i) out(static_cast<Eigen::Index>(i)) = frobenius(terms[i], b);
    return out;
}

int kernel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace strictfeas

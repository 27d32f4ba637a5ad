#include "strictfeas/exact_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace strictfeas {

ExactMatrix::ExactMatrix(std::size_t n) : ExactMatrix(n, n) {}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = QuadExt(1);
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<QuadExt>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

ExactMatrix ExactMatrix::outer(const ExactVector& u, const ExactVector& v) {
    ExactMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
    return m;
}

std::optional<std::pair<std::size_t, std::size_t>> ExactMatrix::asymmetry() const {
    if (!is_square()) return std::pair<std::size_t, std::size_t>{0, 0};
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return std::pair{i, j};
    return std::nullopt;
}

bool ExactMatrix::is_symmetric() const { return !asymmetry().has_value(); }

bool ExactMatrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in matrix sum");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in matrix difference");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ExactMatrix& ExactMatrix::operator*=(const QuadExt& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
    ExactMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

ExactVector operator*(const ExactMatrix& a, const ExactVector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("dimension mismatch in matrix-vector product");
    ExactVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
    return out;
}

std::vector<double> ExactMatrix::to_doubles() const {
    std::vector<double> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(x.to_double());
    return out;
}

QuadExt inner(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch in inner product");
    QuadExt s;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !b(i, j).is_zero()) s += a(i, j) * b(i, j);
    return s;
}

QuadExt dot(const ExactVector& u, const ExactVector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("dimension mismatch in dot product");
    QuadExt s;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

bool is_zero(const ExactVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

PsdVerdict psd_check_exact(const ExactMatrix& m) {
    if (!m.is_square()) throw NonSymmetricError("PSD check needs a square matrix");
    if (auto bad = m.asymmetry())
        throw NonSymmetricError("matrix not symmetric at (" + std::to_string(bad->first + 1) + ", " +
                                std::to_string(bad->second + 1) + ")");
    const std::size_t n = m.size();
    ExactMatrix a = m;
    // Invariant: a = t * m * t^T.
    ExactMatrix t = ExactMatrix::identity(n);

    auto witness_from = [&](const ExactVector& u) {
        ExactVector v(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r)
                if (!u[r].is_zero() && !t(r, i).is_zero()) v[i] += t(r, i) * u[r];
        return v;
    };

    for (std::size_t k = 0; k < n; ++k) {
        const int s = a(k, k).sign();
        if (s < 0) {
            ExactVector u(n);
            u[k] = QuadExt(1);
            return {false, k + 1, witness_from(u)};
        }
        if (s == 0) {
            for (std::size_t j = k + 1; j < n; ++j) {
                if (a(k, j).is_zero()) continue;
                // On span{e_k, e_j}: form 2 t a_kj + a_jj; pick t so that it equals -1.
                ExactVector u(n);
                u[k] = -(a(j, j) + QuadExt(1)) / (QuadExt(2) * a(k, j));
                u[j] = QuadExt(1);
                return {false, k + 1, witness_from(u)};
            }
            continue;
        }
        const QuadExt pivot = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            const QuadExt f = a(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < n; ++j) t(i, j) -= f * t(k, j);
        }
        // Row operations above are mirrored on columns by symmetry.
        for (std::size_t i = k + 1; i < n; ++i) {
            a(k, i) = QuadExt();
            for (std::size_t j = i + 1; j < n; ++j) a(j, i) = a(i, j);
        }
        for (std::size_t i = k + 1; i < n; ++i) a(i, k) = QuadExt();
    }
    return {true, 0, {}};
}

std::vector<std::size_t> rref(ExactMatrix& m, const std::vector<std::size_t>& column_order) {
    std::vector<std::size_t> order = column_order;
    if (order.empty()) {
        order.resize(m.cols());
        std::iota(order.begin(), order.end(), 0);
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col : order) {
        if (row == m.rows()) break;
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        const QuadExt inv = m(row, col).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(row, j).is_zero()) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const QuadExt f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(ExactMatrix m) { return rref(m).size(); }

std::vector<ExactVector> kernel_basis_exact(const ExactMatrix& m) {
    ExactMatrix r = m;
    const auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<ExactVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        ExactVector v(m.cols());
        v[free] = QuadExt(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

ExactVector make_primitive(ExactVector v) {
    auto first = std::find_if(v.begin(), v.end(), [](const QuadExt& x) { return !x.is_zero(); });
    if (first == v.end()) return v;
    bool rational = std::all_of(v.begin(), v.end(), [](const QuadExt& x) { return x.is_rational(); });
    if (!rational) {
        const QuadExt lead = *first;
        for (auto& x : v) x /= lead;
        rational = std::all_of(v.begin(), v.end(), [](const QuadExt& x) { return x.is_rational(); });
        if (!rational) return v;
    }
    mpz_class den_lcm = 1;
    for (const auto& x : v) {
        const mpz_class d = x.rational_part().den();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    mpz_class num_gcd = 0;
    for (const auto& x : v) {
        const mpz_class z = x.rational_part().num() * (den_lcm / x.rational_part().den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), z.get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    if (first->sign() < 0) scale = -scale;
    for (auto& x : v) x *= QuadExt(scale);
    return v;
}

std::string to_string(const ExactVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].str();
    os << ')';
    return os.str();
}

}  // namespace strictfeas

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strictfeas/quadext.hpp"

namespace strictfeas {

using ExactVector = std::vector<QuadExt>;

class NonSymmetricError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Dense matrix over Q(sqrt5), row-major.
class ExactMatrix {
public:
    ExactMatrix() = default;
    explicit ExactMatrix(std::size_t n);
    ExactMatrix(std::size_t rows, std::size_t cols);

    static ExactMatrix identity(std::size_t n);
    /// Builds from rows; throws if ragged.
    static ExactMatrix from_rows(const std::vector<std::vector<QuadExt>>& rows);
    static ExactMatrix outer(const ExactVector& u, const ExactVector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return rows_; }
    bool is_square() const { return rows_ == cols_; }

    QuadExt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const QuadExt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_symmetric() const;
    bool is_zero() const;
    /// Returns (i, j) of the first asymmetric pair, if any.
    std::optional<std::pair<std::size_t, std::size_t>> asymmetry() const;

    ExactMatrix transpose() const;
    ExactMatrix& operator+=(const ExactMatrix& o);
    ExactMatrix& operator-=(const ExactMatrix& o);
    ExactMatrix& operator*=(const QuadExt& s);
    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
    friend ExactMatrix operator*(ExactMatrix a, const QuadExt& s) { return a *= s; }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactVector operator*(const ExactMatrix& a, const ExactVector& v);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

    std::vector<double> to_doubles() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<QuadExt> data_;
};

/// Frobenius inner product <A, B> = trace(A^T B).
QuadExt inner(const ExactMatrix& a, const ExactMatrix& b);
QuadExt dot(const ExactVector& u, const ExactVector& v);
bool is_zero(const ExactVector& v);

struct PsdVerdict {
    bool psd = false;
    /// 1-based index of the elimination step that failed (0 when psd).
    std::size_t witness_index = 0;
    /// Direction v with v^T M v < 0 when not PSD.
    ExactVector witness;

    explicit operator bool() const { return psd; }
};

/// Exact PSD decision by symmetric elimination. Throws NonSymmetricError.
PsdVerdict psd_check_exact(const ExactMatrix& m);

/// Reduced row-echelon form in place; returns pivot column per pivot row.
/// Columns are visited in `column_order` (default: left to right); columns
/// listed in neither position are never used as pivots.
std::vector<std::size_t> rref(ExactMatrix& m, const std::vector<std::size_t>& column_order = {});

std::size_t rank(ExactMatrix m);

/// Basis of {v : M v = 0}; empty iff M has full column rank.
std::vector<ExactVector> kernel_basis_exact(const ExactMatrix& m);

/// Scales v so that its entries are integers (when v is rational) with gcd 1 and the
/// first nonzero entry positive. Irrational vectors are only sign-normalized
/// against the first nonzero entry.
ExactVector make_primitive(ExactVector v);

std::string to_string(const ExactVector& v);

}  // namespace strictfeas

#pragma once

#include <string>
#include <string_view>

#include "strictfeas/rational.hpp"

namespace strictfeas {

/// Exact element a + b*sqrt(5) of the real quadratic field Q(sqrt 5).
///
/// Ordering is the one inherited from the real embedding; signs are decided
/// without floating point by comparing a^2 against 5 b^2.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
    QuadExt(long a) : a_(a) {}                 // NOLINT(google-explicit-constructor)
    QuadExt(int a) : a_(a) {}                  // NOLINT(google-explicit-constructor)
    QuadExt(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static QuadExt sqrt5() { return {Rational(0), Rational(1)}; }

    /// Grammar: "p/q", "p/q+r/s*sqrt5", "r/s*sqrt5", "-sqrt5", ... (no whitespace).
    static QuadExt parse(std::string_view text);

    const Rational& rational_part() const { return a_; }
    const Rational& sqrt5_part() const { return b_; }
    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    int sign() const;
    double to_double() const;
    std::string str() const;

    QuadExt conjugate() const { return {a_, -b_}; }
    /// Field norm a^2 - 5 b^2.
    Rational norm() const { return a_ * a_ - Rational(5) * b_ * b_; }
    QuadExt inverse() const;

    QuadExt operator-() const { return {-a_, -b_}; }
    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
        const int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    Rational a_;
    Rational b_;
};

/// Sign of a + b*sqrt(5) in {-1, 0, +1}.
int qsign(const QuadExt& x);

QuadExt abs(const QuadExt& x);

}  // namespace strictfeas

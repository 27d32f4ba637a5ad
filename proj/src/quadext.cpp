#include "strictfeas/quadext.hpp"

#include <cmath>
#include <stdexcept>

namespace strictfeas {

namespace {

// Parses an optional rational coefficient in front of "*sqrt5" or a bare "sqrt5".
Rational parse_sqrt_coefficient(std::string_view term, std::string_view whole) {
    constexpr std::string_view kBare = "sqrt5";
    constexpr std::string_view kStar = "*sqrt5";
    if (term == kBare || term == "+sqrt5") return Rational(1);
    if (term == "-sqrt5") return Rational(-1);
    if (term.size() > kStar.size() && term.substr(term.size() - kStar.size()) == kStar)
        return Rational::parse(term.substr(0, term.size() - kStar.size()));
    throw std::invalid_argument("malformed sqrt5 term in '" + std::string(whole) + "'");
}

}  // namespace

QuadExt QuadExt::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty exact value");
    if (text.find("sqrt5") == std::string_view::npos) return QuadExt(Rational::parse(text));

    // Split at the last sign that starts the sqrt5 term (skip a leading sign).
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size(); i-- > 1;) {
        if (text[i] == '+' || text[i] == '-') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) return {Rational(0), parse_sqrt_coefficient(text, text)};
    const std::string_view head = text.substr(0, split);
    std::string_view tail = text.substr(split);
    if (head.find("sqrt5") != std::string_view::npos)
        throw std::invalid_argument("malformed exact value '" + std::string(text) + "'");
    return {Rational::parse(head), parse_sqrt_coefficient(tail, text)};
}

int QuadExt::sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: the term of larger magnitude wins.
    const Rational a2 = a_ * a_;
    const Rational b2 = Rational(5) * b_ * b_;
    if (a2 == b2) return 0;  // impossible for rationals with b != 0, kept for completeness
    return a2 > b2 ? sa : sb;
}

int qsign(const QuadExt& x) { return x.sign(); }

QuadExt abs(const QuadExt& x) { return x.sign() < 0 ? -x : x; }

double QuadExt::to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(5.0); }

std::string QuadExt::str() const {
    if (b_.is_zero()) return a_.str();
    const std::string b_text = b_.str() + "*sqrt5";
    if (a_.is_zero()) return b_text;
    return a_.str() + (b_.sign() > 0 ? "+" : "") + b_text;
}

QuadExt QuadExt::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(sqrt5)");
    const Rational n = norm();
    return {a_ / n, -b_ / n};
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    if (b_.is_zero() && o.b_.is_zero()) {
        a_ *= o.a_;
        return *this;
    }
    Rational a = a_ * o.a_ + Rational(5) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    if (o.b_.is_zero()) {
        a_ /= o.a_;
        b_ /= o.a_;
        return *this;
    }
    return *this *= o.inverse();
}

}  // namespace strictfeas

#include "strictfeas/reconstruct.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace strictfeas {

namespace {

void check_args(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) throw std::domain_error("cannot reconstruct a non-finite value");
    if (max_den < 1) throw std::invalid_argument("max_den must be at least 1");
}

}  // namespace

std::optional<Rational> reconstruct_rational(double x, std::int64_t max_den) {
    check_args(x, max_den);
    // Convergents h_k / k_k of the continued fraction of x.
    mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
    mpz_class k_prev = 0, k = 1;
    long double rem = static_cast<long double>(x) - std::floor(static_cast<long double>(x));
    const mpz_class limit = static_cast<long>(max_den);
    for (int iter = 0; iter < 64 && rem > 1e-18L; ++iter) {
        const long double inv = 1.0L / rem;
        const long double a_ld = std::floor(inv);
        if (a_ld > 1e18L) break;
        const mpz_class a = static_cast<long>(a_ld);
        const mpz_class k_next = a * k + k_prev;
        if (k_next > limit) break;
        const mpz_class h_next = a * h + h_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        rem = inv - a_ld;
    }
    Rational r(h, k);
    if (std::fabs(r.to_double() - x) > kReconstructTolerance) return std::nullopt;
    return r;
}

std::optional<QuadExt> reconstruct_quadext(double x, std::int64_t max_den) {
    check_args(x, max_den);
    // Candidates (A + B sqrt5) / d ordered by height max(d, |B|); A is then forced.
    const long max_height = static_cast<long>(std::min<std::int64_t>(max_den, 2000));
    const long double root5 = std::sqrt(5.0L);
    for (long h = 1; h <= max_height; ++h) {
        std::optional<QuadExt> best;
        long double best_err = kReconstructTolerance;
        auto try_pair = [&](long d, long b) {
            const long double target = static_cast<long double>(d) * x - static_cast<long double>(b) * root5;
            const long double a = std::round(target);
            if (std::fabs(a) > 9e15L) return;
            const long double err = std::fabs((a + b * root5) / d - x);
            if (err <= best_err) {
                best_err = err;
                best = QuadExt(Rational(static_cast<long>(a), d), Rational(b, d));
            }
        };
        for (long d = 1; d <= h; ++d) {
            if (d == h) {
                for (long b = -h; b <= h; ++b) try_pair(d, b);
            } else {
                try_pair(d, -h);
                try_pair(d, h);
            }
        }
        if (best) return best;
    }
    return std::nullopt;
}

namespace {

mpz_class floor_q(const mpq_class& q) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

// Simplest rational in [lo, hi] for 0 < lo <= hi, via continued fractions.
mpq_class simplest_positive(mpq_class lo, mpq_class hi) {
    std::vector<mpz_class> quotients;
    mpq_class tail;
    for (;;) {
        const mpz_class fl = floor_q(lo);
        if (mpq_class(fl) == lo) {
            tail = fl;
            break;
        }
        if (mpq_class(fl + 1) <= hi) {
            tail = fl + 1;
            break;
        }
        quotients.push_back(fl);
        mpq_class next_lo = 1 / (hi - fl);
        mpq_class next_hi = 1 / (lo - fl);
        next_lo.canonicalize();
        next_hi.canonicalize();
        lo = next_lo;
        hi = next_hi;
    }
    mpq_class out = tail;
    for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
        out = mpq_class(*it) + 1 / out;
        out.canonicalize();
    }
    return out;
}

}  // namespace

Rational simplest_rational_within(double x, double tol) {
    if (!std::isfinite(x) || !std::isfinite(tol) || tol < 0)
        throw std::domain_error("simplest_rational_within: bad argument");
    const mpq_class lo = Rational::from_double(x - tol).raw();
    const mpq_class hi = Rational::from_double(x + tol).raw();
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
    if (sgn(hi) < 0) return Rational(mpq_class(-simplest_positive(-hi, -lo)));
    return Rational(simplest_positive(lo, hi));
}

}  // namespace strictfeas

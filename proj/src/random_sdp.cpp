#include "strictfeas/random_sdp.hpp"

#include <random>
#include <stdexcept>

namespace strictfeas {

namespace {

ExactVector random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> entry(-2, 2);
    ExactVector v(n);
    for (auto& x : v) x = QuadExt(entry(rng));
    return v;
}

ExactMatrix gram_of(const std::vector<ExactVector>& vs, std::size_t n) {
    ExactMatrix out(n);
    for (const auto& v : vs) out = out + ExactMatrix::outer(v, v);
    return out;
}

bool positive_definite(const ExactMatrix& m) { return psd_check_exact(m).psd && rank(m) == m.rows(); }

}  // namespace

RandomSdp random_strictly_feasible_sdp(std::uint64_t seed, std::size_t max_dim, std::size_t max_vars) {
    if (max_dim < 2 || max_vars < 1) throw std::invalid_argument("need max_dim >= 2 and max_vars >= 1");
    std::mt19937_64 rng(seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_dim)(rng);
    // Rank r of X* and m with r(r+1)/2 <= m <= r(r+1)/2 + r(n-r): generically the optimal X
    // and y are then unique, so the Newton system stays well posed up to the optimum.
    std::size_t r_max = 1;
    while (r_max + 1 < n && (r_max + 1) * (r_max + 2) / 2 <= max_vars) ++r_max;
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, r_max)(rng);
    const std::size_t m_lo = r * (r + 1) / 2;
    const std::size_t m_hi = std::min(max_vars, m_lo + r * (n - r));
    const std::size_t m = std::uniform_int_distribution<std::size_t>(m_lo, m_hi)(rng);

    std::vector<ExactVector> u;
    while (u.size() < r) {
        u.push_back(random_vector(rng, n));
        ExactMatrix rows(u.size(), n);
        for (std::size_t k = 0; k < u.size(); ++k)
            for (std::size_t j = 0; j < n; ++j) rows(k, j) = u[k][j];
        if (rank(rows) < u.size()) u.pop_back();
    }
    ExactMatrix rows(r, n);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < n; ++j) rows(k, j) = u[k][j];
    std::vector<ExactVector> w;
    for (auto& v : kernel_basis_exact(rows)) w.push_back(make_primitive(std::move(v)));

    RandomSdp out;
    out.x_star = gram_of(u, n);
    out.z_star = gram_of(w, n);
    out.x_star *= inner(out.x_star, ExactMatrix::identity(n)).inverse();
    out.z_star *= inner(out.z_star, ExactMatrix::identity(n)).inverse();
    const QuadExt zz = inner(out.z_star, out.z_star);

    std::vector<ExactMatrix> terms;
    terms.push_back(out.x_star);
    std::uniform_int_distribution<int> entry(-4, 4);
    while (terms.size() < m) {
        ExactMatrix g(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                g(i, j) = QuadExt(entry(rng));
                g(j, i) = g(i, j);
            }
        g = g - out.z_star * (inner(g, out.z_star) / zz);
        terms.push_back(g);
        ExactMatrix stacked(terms.size(), n * n);
        for (std::size_t t = 0; t < terms.size(); ++t)
            for (std::size_t k = 0; k < n * n; ++k) stacked(t, k) = terms[t](k / n, k % n);
        if (rank(stacked) < terms.size()) terms.pop_back();
    }

    std::uniform_int_distribution<int> ydist(-2, 2);
    ExactMatrix f0 = out.z_star;
    SdpProblem& prob = out.problem;
    prob.name = "random-" + std::to_string(seed);
    prob.provenance = "random strictly feasible SDP, seed " + std::to_string(seed);
    prob.pencil = MatrixPencil(n);
    for (std::size_t i = 0; i < m; ++i) {
        const std::string name = "y" + std::to_string(i + 1);
        const QuadExt yi(ydist(rng));
        out.y_star[name] = yi;
        f0 = f0 - terms[i] * yi;
        prob.pencil.add_term(name).matrix = terms[i];
        const QuadExt bi = -inner(terms[i], out.x_star);
        prob.objective.push_back(bi);
        out.optimum += bi * yi;
    }
    prob.pencil.constant() = f0;

    // Z* + t X* is positive definite for every t > 0 since U and U^perp are complementary.
    out.interior_point = out.y_star;
    out.interior_point["y1"] += QuadExt(Rational(1, 2));
    if (!positive_definite(pencil_eval(prob.pencil, out.interior_point)))
        throw std::logic_error("random SDP construction lost strict feasibility");
    return out;
}

}  // namespace strictfeas

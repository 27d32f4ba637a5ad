#pragma once

#include <cstdint>

#include "strictfeas/model.hpp"

namespace strictfeas {

/// A dual-form SDP with an exactly known optimal pair and a strictly feasible point.
struct RandomSdp {
    SdpProblem problem;
    /// Optimal primal X (range U) and dual slack Z = F0 + sum y*_i F_i (range U^perp).
    ExactMatrix x_star;
    ExactMatrix z_star;
    ExactAssignment y_star;
    /// Pencil is positive definite here.
    ExactAssignment interior_point;
    QuadExt optimum;
};

/// Dimension 2..max_dim, 1..max_vars variables (fewer when the matrix space is small).
/// Deterministic for a given seed.
RandomSdp random_strictly_feasible_sdp(std::uint64_t seed, std::size_t max_dim = 6, std::size_t max_vars = 6);

}  // namespace strictfeas

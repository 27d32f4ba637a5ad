#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "strictfeas/model.hpp"

namespace strictfeas::bell {

/// Behavior of the two-party, two-setting, two-outcome scenario:
///   ( 1       p_B(0)   p_B(1)  )
///   ( p_A(0)  p(0,0)   p(0,1)  )
///   ( p_A(1)  p(1,0)   p(1,1)  )
struct CollinsGisinTable {
    std::array<std::array<QuadExt, 3>, 3> entries;

    static CollinsGisinTable from_rows(std::array<std::array<QuadExt, 3>, 3> rows) { return {rows}; }

    const QuadExt& p_a(int x) const { return entries.at(1 + x).at(0); }
    const QuadExt& p_b(int y) const { return entries.at(0).at(1 + y); }
    const QuadExt& p(int x, int y) const { return entries.at(1 + x).at(1 + y); }

    /// Full distribution P(a, b | x, y) for outcomes a, b in {0, 1}.
    QuadExt full(int a, int b, int x, int y) const;

    friend bool operator==(const CollinsGisinTable&, const CollinsGisinTable&) = default;
};

class ParameterOutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// l(mu) = mu * P + (1 - mu) * Q.
struct BehaviorLine {
    CollinsGisinTable endpoint_p;
    CollinsGisinTable endpoint_q;
    std::string name;
};

struct BuiltinPoints {
    CollinsGisinTable pr_box;       // P
    CollinsGisinTable void_point;   // L
    CollinsGisinTable hardy_point;  // H
    QuadExt alpha;
};

/// The PR box and the two local points, with alpha = (9 - sqrt5) / 38.
BuiltinPoints builtin_points();
BehaviorLine line_one();  // P and L
BehaviorLine line_two();  // P and H

/// Throws ParameterOutOfRangeError unless 0 <= mu <= 1.
CollinsGisinTable line_behavior(const BehaviorLine& line, const QuadExt& mu);

/// Operator word split by party; letters are setting indices '0' / '1'.
struct MomentLabel {
    std::string alice;
    std::string bob;

    std::size_t length() const { return alice.size() + bob.size(); }
    bool is_probability() const { return alice.size() <= 1 && bob.size() <= 1; }
    /// Variable name: a01, b01, c0_01, c01_10, ...
    std::string variable_name() const;
    std::string str() const;

    friend auto operator<=>(const MomentLabel&, const MomentLabel&) = default;
};

/// 1, A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1.
const std::vector<MomentLabel>& almost_quantum_basis();
/// 1, A0, A1, B0, B1.
const std::vector<MomentLabel>& level_one_basis();

/// Reduced, canonical label of <u^dagger v>: projectors are idempotent, the two
/// parties commute, and a word is identified with its adjoint (real moments).
MomentLabel moment_of(const MomentLabel& u, const MomentLabel& v);

/// Order of the free moments in generated problems.
const std::vector<std::string>& free_moment_order();

inline constexpr const char* kObjectiveVariable = "mu";

/// maximize mu  s.t. the 9x9 moment matrix of l(mu) is PSD.
SdpProblem almost_quantum_pencil(const BehaviorLine& line);

/// maximize -p_A(0) + p(0,0) + p(0,1) + p(1,0) - p(1,1) over level 1 with p_B(0) = p_B(1) = 0.
SdpProblem chsh_toy_pencil();

}  // namespace strictfeas::bell

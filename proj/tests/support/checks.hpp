#pragma once

#include <string>
#include <vector>

#include "strictfeas/exact_matrix.hpp"
#include "strictfeas/facial.hpp"

namespace checks {

struct Outcome {
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Values as printed, entered by hand.
strictfeas::ExactMatrix x_star();
std::vector<strictfeas::ExactVector> problem1_vectors();
std::vector<strictfeas::ExactVector> problem2_vectors();
std::vector<strictfeas::ExactVector> toy_vectors();
/// "var = expression" lines.
std::vector<std::string> problem1_relations();
std::vector<std::string> problem2_relations();
std::vector<std::string> toy_relations();

bool same_span(const std::vector<strictfeas::ExactVector>& a, const std::vector<strictfeas::ExactVector>& b);

/// Eliminations must equal the relations exactly (same variables, same affine values).
std::string relation_difference(const std::vector<strictfeas::facial::Elimination>& got,
                                const std::vector<std::string>& expected);

Outcome criterion1();
Outcome criterion2();
Outcome criterion3();
Outcome criterion4();
Outcome criterion5();
Outcome criterion6();
Outcome criterion7();
Outcome criterion8();
Outcome criterion9();

}  // namespace checks

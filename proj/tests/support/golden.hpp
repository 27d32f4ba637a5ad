#pragma once

#include <map>
#include <string>
#include <vector>

#include "strictfeas/model.hpp"

namespace golden {

using strictfeas::QuadExt;

/// constant + sum coef * var, as read from a hand-typed matrix entry.
struct Affine {
    QuadExt constant;
    std::map<std::string, QuadExt> coef;
};

/// Grammar: sums and differences of products/quotients of numbers, `alpha`, `sqrt5`,
/// variable names and parentheses. Products must keep the result affine.
Affine parse_affine(const std::string& text);

/// Upper triangle, row i listing entries (i, i), (i, i+1), ... . Variables get the order of
/// `vars`; any other name in the text is an error.
strictfeas::SdpProblem pencil_from_upper(const std::string& name, const std::vector<std::vector<std::string>>& upper,
                                         const std::vector<std::string>& vars,
                                         const std::map<std::string, QuadExt>& objective,
                                         const QuadExt& offset = QuadExt());

/// Same constant, same matrix per variable name, same objective per name; the order of
/// variables is ignored. Returns a description of the first difference, or "".
std::string pencil_difference(const strictfeas::SdpProblem& a, const strictfeas::SdpProblem& b);

// The matrices as printed, typed in by hand.
strictfeas::SdpProblem sdp1raw();
strictfeas::SdpProblem sdp1simple();
strictfeas::SdpProblem sdp2raw();
strictfeas::SdpProblem sdp2simple();
strictfeas::SdpProblem toy_raw();
strictfeas::SdpProblem toy_simple();

}  // namespace golden

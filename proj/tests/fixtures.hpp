#pragma once

#include "totref/family.hpp"
#include "totref/parse.hpp"

namespace fixtures {

using namespace totref;

inline RingPtr xyz_xy() { return Ring::graded(5, {"x", "y", "z"}, {parse_monomial({"x", "y", "z"}, "x*y")}); }
inline RingPtr z9() { return Ring::finite(3, 2); }
inline RingPtr z8() { return Ring::finite(2, 3); }

inline Element el(const RingPtr& r, const std::string& s) { return parse_element(r, s); }

inline ExactZeroDivisorPair xy_pair(const RingPtr& r) { return verify_exact_pair(el(r, "x"), el(r, "y")); }
inline ExactZeroDivisorPair z9_pair() { return verify_exact_pair(el(z9(), "3"), el(z9(), "3")); }

inline Matrix mat(const RingPtr& r, std::vector<std::vector<std::string>> rows) { return Matrix::parse(r, rows); }

}  // namespace fixtures

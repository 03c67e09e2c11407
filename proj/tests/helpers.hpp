#pragma once

#include <string>

#include "coulomb.hpp"

namespace testing_helpers {

using namespace coulomb;

inline MultiPoly P(const std::string& s, const VarNames& names) { return parse_poly(s, names); }
inline LaurentPoly L(const std::string& s, const VarNames& names) { return parse_laurent(s, names); }
inline Jet J(const std::string& s, const VarNames& names, int order) { return Jet(parse_poly(s, names), order); }

/// Raw rank-1 theory with one weight chi = x (flavor rank 0): the variables are x, hbar.
inline GaugeTheory chi_equals_x() { return GaugeTheory::raw(1, 0, {{{1}, {}, 1}}, std::nullopt, "chi_x"); }

inline std::string data_path(const std::string& file) { return std::string(COULOMB_TEST_DATA) + "/" + file; }

/// The four theories of the algebra-law acceptance set.
inline std::vector<GaugeTheory> law_theories() { return {sqed(1), sqed(3), abelian_a2(), pure_torus(1)}; }

} // namespace testing_helpers

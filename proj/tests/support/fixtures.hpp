#pragma once

#include "carpet_recur/carpet.hpp"
#include "carpet_recur/rate.hpp"
#include "carpet_recur/symbolic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fixtures {

using namespace carpet_recur;

// Columns {0, 2} of base 3 times rows {0, 1, 3} of base 4.
inline Carpet cantor() {
    std::vector<DigitPair> pairs{{0, 0}, {0, 1}, {0, 3}, {2, 0}, {2, 1}, {2, 3}};
    return build_carpet(3, 4, pairs);
}

inline Carpet torus() {
    std::vector<DigitPair> pairs{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    return build_carpet(2, 2, pairs);
}

// Uniform fibres with M = N = 2 on bases (2, 3).
inline Carpet two_three() {
    std::vector<DigitPair> pairs{{0, 0}, {0, 2}, {1, 1}, {1, 2}};
    return build_carpet(2, 3, pairs);
}

// Column 0 holds two cells, column 1 one.
inline Carpet uneven() {
    std::vector<DigitPair> pairs{{0, 0}, {0, 2}, {1, 1}};
    return build_carpet(2, 3, pairs);
}

inline Carpet single_cell(int m1 = 2, int m2 = 3) {
    std::vector<DigitPair> pairs{{0, 0}};
    return build_carpet(m1, m2, pairs);
}

inline std::vector<Digit> digits(std::string_view s) {
    std::vector<Digit> out;
    for (char c : s) out.push_back(static_cast<Digit>(c - '0'));
    return out;
}

inline SymbolicPoint point(Bases b, std::string_view first, std::string_view second) {
    return SymbolicPoint(b, digits(first), digits(second));
}

inline RateFunction powexp(const Carpet& c, const std::string& t, const std::string& gamma = "0",
                           const std::string& scale = "1") {
    return RateFunction::power_exp(c.bases(), {parse_rational(t), parse_rational(gamma), parse_rational(scale)});
}

}  // namespace fixtures

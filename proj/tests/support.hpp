#pragma once

#include <string>
#include <vector>

#include "doctest.h"

#include "bft/distribution.hpp"
#include "bft/error.hpp"

namespace testing {

inline bft::Rational q(long num, long den = 1) { return bft::Rational(num, den); }

// Runs f and returns the code of the bft::Error it throws.
template <class F>
std::optional<bft::ErrorCode> error_of(F&& f) {
    try {
        f();
    } catch (const bft::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline bft::JointBeliefDistribution two_agent(std::vector<std::pair<std::pair<bft::Rational, bft::Rational>, bft::Rational>> atoms) {
    std::vector<bft::Atom> out;
    for (auto& [p, m] : atoms) out.push_back({{p.first, p.second}, m});
    return bft::JointBeliefDistribution(2, std::move(out));
}

}  // namespace testing

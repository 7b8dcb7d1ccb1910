// Shared scalar types and error hierarchy.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace triad {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Violated precondition or out-of-domain input (CLI exit code 1).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (CLI exit code 2).
struct parse_error : std::runtime_error {
    size_t pos;
    parse_error(const std::string& what, size_t at)
        : std::runtime_error(what + " (at position " + std::to_string(at) + ")"), pos(at) {}
};

// An iteration cap was exceeded. The theory guarantees termination for
// valid inputs, so hitting this indicates a bug, not a user error.
struct theory_violation : std::logic_error {
    explicit theory_violation(const std::string& what)
        : std::logic_error("theory-violation guard: " + what) {}
};

constexpr unsigned default_cap = 10000;

inline Int factorial(unsigned k) {
    Int r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

inline Int binomial(const Int& n, unsigned k) {
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) { r *= n - i; r /= i + 1; }
    return r;
}

} // namespace triad

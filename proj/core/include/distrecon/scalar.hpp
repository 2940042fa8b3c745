#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace distrecon {

// Exact scalar for integer/rational computations. One mode per run:
// a computation works either on Rat throughout or on double throughout.
using Rat = mpq_class;
using Int = mpz_class;

class invalid_input : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class degenerate_scale : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "123", "-4", "3/4", "2.5", "-0.125", "1e3", "2.5e-7" into an
/// exact rational. Throws invalid_input on anything else.
Rat parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rat& value);

inline double to_double(const Rat& value) { return value.get_d(); }

inline Rat rat_abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool is_exact = true;
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
};

}  // namespace distrecon

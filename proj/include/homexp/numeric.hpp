#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace homexp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses a decimal or fraction literal ("0.25", "-3", "1/3") into an exact
// rational.  Throws argument_error on malformed input.
Rational parse_rational(const std::string& text);

// Decimal rendering of a rational with enough digits to round-trip typical
// inputs; exact fractions print as "p/q" when the denominator is not a
// power of 2*5 within `digits`.
std::string format_rational(const Rational& value, int digits = 12);

inline double to_double(const Rational& value) {
    return static_cast<double>(value);
}

inline double to_double(double value) { return value; }

// ---------------------------------------------------------------------------
// Deterministic randomness.  All randomized estimators derive their streams
// from a master seed plus a task label, so results are reproducible across
// runs and thread counts.

// Stable 64-bit mix of a seed and a label (SplitMix64-style).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t mix_seed(std::uint64_t seed, const std::string& label,
                       std::uint64_t salt);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0,1) with 53 random bits; independent of any
    // platform distribution implementation.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // Samples an index from a nonnegative weight vector by inverse CDF.
    std::size_t weighted_index(const std::vector<double>& weights);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Exact binomial coefficient.
BigInt binomial(std::uint64_t n, std::uint64_t k);

// log(n!) via lgamma, for float-mode factorials.
inline double log_factorial(std::uint64_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace homexp

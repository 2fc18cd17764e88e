#include "homexp/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "homexp/errors.hpp"

namespace homexp {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

// cpp_int honors octal/hex prefixes, so strip leading zeros first.
BigInt decimal_to_int(const std::string& s) {
    auto first = s.find_first_not_of('0');
    if (first == std::string::npos) return 0;
    return BigInt(s.substr(first));
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw argument_error("empty numeric literal");

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(s.begin());
    }
    if (s.empty()) throw argument_error("malformed numeric literal: " + text);

    Rational result;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw argument_error("malformed fraction literal: " + text);
        BigInt d = decimal_to_int(den);
        if (d == 0) throw argument_error("zero denominator: " + text);
        result = Rational(decimal_to_int(num), d);
    } else {
        auto dot = s.find('.');
        std::string digits = s;
        std::size_t frac_len = 0;
        if (dot != std::string::npos) {
            frac_len = s.size() - dot - 1;
            digits = s.substr(0, dot) + s.substr(dot + 1);
            if (digits.empty())
                throw argument_error("malformed numeric literal: " + text);
        }
        if (!all_digits(digits))
            throw argument_error("malformed numeric literal: " + text);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac_len; ++i) scale *= 10;
        result = Rational(decimal_to_int(digits), scale);
    }
    if (negative) result = -result;
    return result;
}

std::string format_rational(const Rational& value, int digits) {
    BigInt den = boost::multiprecision::denominator(value);
    // Render exactly when the denominator divides a power of ten we are
    // willing to print; otherwise fall back to the fraction form.
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    if (scale % den == 0) {
        BigInt scaled = boost::multiprecision::numerator(value) * (scale / den);
        bool neg = scaled < 0;
        if (neg) scaled = -scaled;
        std::string body = scaled.str();
        if (body.size() <= static_cast<std::size_t>(digits))
            body.insert(0, digits + 1 - body.size(), '0');
        body.insert(body.size() - digits, ".");
        // Trim trailing zeros but keep at least one fractional digit.
        while (body.size() > 1 && body.back() == '0' &&
               body[body.size() - 2] != '.')
            body.pop_back();
        return (neg ? "-" : "") + body;
    }
    std::ostringstream out;
    out << value;
    return out.str();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& label,
                       std::uint64_t salt) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix_seed(mix_seed(seed, h), salt);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) return 0;
    // Rejection sampling for an unbiased result.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

std::size_t Rng::weighted_index(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0))
        throw precondition_error("weighted_index: nonpositive total weight");
    double target = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (target < acc) return i;
    }
    return weights.size() - 1;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

}  // namespace homexp

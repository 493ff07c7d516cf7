#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdv {

// Small exact nonnegative rational; all frame potentials on the exact paths
// are reported through this type.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational of(std::uint64_t num, std::uint64_t den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        const std::uint64_t g = std::gcd(num, den);
        return Rational{num / (g ? g : 1), den / (g ? g : 1)};
    }

    bool is_integer() const { return den == 1; }
    std::uint64_t as_integer() const {
        if (!is_integer()) throw std::logic_error("Rational: not an integer: " + str());
        return num;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace qdv

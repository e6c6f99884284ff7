#pragma once

#include "setdepth/errors.hpp"

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace setdepth {

// Exact probability k/n. Depth values are always ratios of integer masses
// over a distribution's total mass, so equality tests are exact.
class Probability {
public:
    constexpr Probability() = default;

    Probability(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den <= 0 || num < 0 || num > den) {
            throw ValidationError("Probability: need 0 <= num <= den, den > 0");
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Probability zero() { return {}; }
    static Probability one() { return {1, 1}; }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Probability& a, const Probability& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Probability& a, const Probability& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Probability& a, const Probability& b) { return b < a; }
    friend bool operator<=(const Probability& a, const Probability& b) { return !(b < a); }
    friend bool operator>=(const Probability& a, const Probability& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Probability& p) {
        return os << p.to_string();
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline const Probability& min(const Probability& a, const Probability& b) { return b < a ? b : a; }

}  // namespace setdepth

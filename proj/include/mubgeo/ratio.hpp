#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "mubgeo/prime.hpp"

namespace mubgeo {

/// Exact rational of the form num / d^exp with exp >= 0, kept reduced
/// (num not divisible by d unless exp == 0). Squared magnitudes and Born
/// probabilities of every state in this library have this form.
class Ratio {
public:
    Ratio(PrimeModulus d, std::int64_t num, int exp = 0);

    static Ratio zero(PrimeModulus d) { return Ratio(d, 0, 0); }
    static Ratio one(PrimeModulus d) { return Ratio(d, 1, 0); }
    /// 1 / d^k
    static Ratio inverse_power(PrimeModulus d, int k) { return Ratio(d, 1, k); }

    std::int64_t numerator() const noexcept { return num_; }
    int exponent() const noexcept { return exp_; }
    PrimeModulus modulus() const noexcept { return d_; }

    bool is_zero() const noexcept { return num_ == 0; }
    double to_double() const;

    /// Rendered as "num/d^exp", e.g. "1/3^2".
    std::string to_string() const;
    /// Inverse of to_string; Error{not_representable} on malformed input.
    static Ratio parse(PrimeModulus d, const std::string& text);

    friend Ratio operator+(const Ratio& a, const Ratio& b);
    friend Ratio operator-(const Ratio& a, const Ratio& b);
    friend Ratio operator*(const Ratio& a, const Ratio& b);
    Ratio& operator+=(const Ratio& o) { return *this = *this + o; }

    friend bool operator==(const Ratio& a, const Ratio& b);
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

    /// Numerator of this value over the common denominator d^exp (exp must be
    /// at least exponent()). Throws Error{overflow} if it does not fit.
    std::int64_t scaled_numerator(int exp) const;

private:
    void normalize();

    PrimeModulus d_;
    std::int64_t num_;
    int exp_;
};

/// d^k as a checked 64-bit integer.
std::int64_t checked_power(std::uint32_t d, int k);

}  // namespace mubgeo

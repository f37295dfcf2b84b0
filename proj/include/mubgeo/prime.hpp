#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "mubgeo/error.hpp"

namespace mubgeo {

/// A validated odd prime. Every construction in the library is parameterized
/// by one of these; d = 2 and composite d are rejected.
class PrimeModulus {
public:
    static constexpr std::uint32_t kMax = 97;

    /// Throws Error{is_two | not_prime | out_of_range}.
    static PrimeModulus make(std::int64_t d);

    std::uint32_t value() const noexcept { return d_; }
    std::uint64_t squared() const noexcept { return std::uint64_t{d_} * d_; }

    /// True when d = 1 mod 4, i.e. sqrt(d) lies in Z[omega].
    bool is_one_mod_four() const noexcept { return d_ % 4 == 1; }

    friend bool operator==(PrimeModulus, PrimeModulus) = default;

private:
    explicit PrimeModulus(std::uint32_t d) : d_(d) {}
    std::uint32_t d_;
};

bool is_prime(std::int64_t n) noexcept;

/// Element of Z_d. Always stored reduced.
class Residue {
public:
    Residue(PrimeModulus d, std::int64_t v);

    std::uint32_t value() const noexcept { return v_; }
    PrimeModulus modulus() const noexcept { return d_; }
    std::uint32_t d() const noexcept { return d_.value(); }

    Residue operator-() const;
    friend Residue operator+(Residue a, Residue b);
    friend Residue operator-(Residue a, Residue b);
    friend Residue operator*(Residue a, Residue b);
    Residue& operator+=(Residue o) { return *this = *this + o; }
    Residue& operator-=(Residue o) { return *this = *this - o; }
    Residue& operator*=(Residue o) { return *this = *this * o; }

    /// Scalar shorthand: r * 2, r + 1, ...
    friend Residue operator*(Residue a, std::int64_t k) { return a * Residue(a.modulus(), k); }
    friend Residue operator*(std::int64_t k, Residue a) { return a * k; }
    friend Residue operator+(Residue a, std::int64_t k) { return a + Residue(a.modulus(), k); }
    friend Residue operator-(Residue a, std::int64_t k) { return a - Residue(a.modulus(), k); }

    friend bool operator==(Residue a, Residue b);
    bool operator==(std::int64_t k) const { return *this == Residue(modulus(), k); }

    std::string to_string() const { return std::to_string(v_); }

private:
    PrimeModulus d_;
    std::uint32_t v_;
};

/// Multiplicative inverse; Error{zero_division} for x = 0.
Residue inv(Residue x);

/// x * inv(2). Always defined because d is odd.
Residue half(Residue x);

/// Legendre symbol (x | d) in {-1, 0, 1}.
int legendre(Residue x);

}  // namespace mubgeo

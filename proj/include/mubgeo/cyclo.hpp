#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mubgeo/prime.hpp"
#include "mubgeo/ratio.hpp"

namespace mubgeo {

/// Exact amplitude x * d^(-k/2) with x in Z[omega], omega = exp(2 pi i / d).
///
/// x is stored on the Z-basis omega^0 .. omega^(d-2); the relation
/// 1 + omega + ... + omega^(d-1) = 0 has been used to eliminate omega^(d-1).
/// The scale k is an arbitrary integer. After every operation the value is
/// normalized: zero has all coefficients 0 and k = 0, and while every
/// coefficient is divisible by d the factor is pulled into k (k -= 2). Within
/// one parity class of k that makes the representation unique.
///
/// Values whose scales differ in parity can only be combined when d = 1 mod 4,
/// where sqrt(d) is the quadratic Gauss sum and therefore lies in Z[omega].
/// For d = 3 mod 4 such a sum is not representable and raises
/// Error{not_representable}; no construction in this library produces one.
class Cyclo {
public:
    using coeff_type = std::int64_t;

    /// Zero of Z[omega_d].
    explicit Cyclo(PrimeModulus d);

    /// From a full coefficient sequence on omega^0 .. omega^(len-1) (any
    /// length; exponents are reduced mod d) and a scale.
    Cyclo(PrimeModulus d, std::span<const coeff_type> coeffs, int scale = 0);

    static Cyclo zero(PrimeModulus d) { return Cyclo(d); }
    static Cyclo one(PrimeModulus d) { return root(Residue(d, 0)); }
    static Cyclo integer(PrimeModulus d, coeff_type n, int scale = 0);
    /// omega^t with scale 0.
    static Cyclo root(Residue t);
    /// omega^t * d^(-scale/2).
    static Cyclo root(Residue t, int scale);
    /// sum_{n=1}^{d-1} (n|d) omega^n; squares to (-1)^((d-1)/2) d.
    static Cyclo gauss_sum(PrimeModulus d);

    PrimeModulus modulus() const noexcept { return d_; }
    int scale() const noexcept { return scale_; }
    /// Canonical coefficients on omega^0 .. omega^(d-2).
    std::span<const coeff_type> coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return zero_; }

    /// Multiplies by d^(-k/2).
    Cyclo scaled(int k) const;

    Cyclo conj() const;
    Cyclo operator-() const;
    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    /// Exact equality after aligning scales.
    friend bool operator==(const Cyclo& a, const Cyclo& b);

    /// If the value is omega^t * d^(-k/2) for some t, returns t.
    std::optional<Residue> as_root_power(int scale) const;

    /// The value as num/d^e when it is rational.
    std::optional<Ratio> to_ratio() const;

    /// |a|^2 = a * conj(a) as an exact rational.
    Ratio norm_squared() const;

    std::complex<double> to_complex() const;

    /// e.g. "(1 + -1w^2) * 3^(-1/2)".
    std::string to_string() const;

private:
    void normalize();
    void set_from_full(std::span<const __int128> full);
    /// Returns coefficients multiplied by d^(delta/2) for even delta >= 0.
    Cyclo lifted(int target_scale) const;
    /// Same value with scale + 1, via the Gauss sum (d = 1 mod 4 only).
    Cyclo parity_flipped() const;

    PrimeModulus d_;
    std::vector<coeff_type> coeffs_;
    int scale_ = 0;
    bool zero_ = true;
};

/// Element-wise helper used by tests and the float bridge.
std::complex<double> root_of_unity(std::uint32_t d, std::int64_t t);

}  // namespace mubgeo

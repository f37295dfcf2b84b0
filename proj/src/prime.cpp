#include "mubgeo/prime.hpp"

namespace mubgeo {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::not_prime: return "NotPrime";
        case Errc::is_two: return "IsTwo";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::zero_division: return "ZeroDivision";
        case Errc::modulus_mismatch: return "ModulusMismatch";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::same_column: return "SameColumn";
        case Errc::computational_basis: return "ComputationalBasis";
        case Errc::not_normalized: return "NotNormalized";
        case Errc::overflow: return "Overflow";
        case Errc::not_representable: return "NotRepresentable";
    }
    return "Unknown";
}

bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    for (std::int64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) return false;
    }
    return true;
}

PrimeModulus PrimeModulus::make(std::int64_t d) {
    if (d == 2) throw Error(Errc::is_two, "d = 2 is not supported; d must be an odd prime");
    if (d < 2 || d > kMax) {
        throw Error(Errc::out_of_range, "d = " + std::to_string(d) + " outside [3, " +
                                            std::to_string(kMax) + "]");
    }
    if (!is_prime(d)) throw Error(Errc::not_prime, "d = " + std::to_string(d) + " is not prime");
    return PrimeModulus(static_cast<std::uint32_t>(d));
}

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t d) {
    std::int64_t r = v % static_cast<std::int64_t>(d);
    if (r < 0) r += d;
    return static_cast<std::uint32_t>(r);
}

void require_same(Residue a, Residue b) {
    if (a.modulus() != b.modulus()) {
        throw Error(Errc::modulus_mismatch, "residues mod " + std::to_string(a.d()) + " and mod " +
                                                std::to_string(b.d()));
    }
}

}  // namespace

Residue::Residue(PrimeModulus d, std::int64_t v) : d_(d), v_(reduce(v, d.value())) {}

Residue Residue::operator-() const { return Residue(d_, -static_cast<std::int64_t>(v_)); }

Residue operator+(Residue a, Residue b) {
    require_same(a, b);
    return Residue(a.d_, std::int64_t{a.v_} + b.v_);
}

Residue operator-(Residue a, Residue b) {
    require_same(a, b);
    return Residue(a.d_, std::int64_t{a.v_} - b.v_);
}

Residue operator*(Residue a, Residue b) {
    require_same(a, b);
    return Residue(a.d_, std::int64_t{a.v_} * b.v_);
}

bool operator==(Residue a, Residue b) {
    require_same(a, b);
    return a.v_ == b.v_;
}

Residue inv(Residue x) {
    if (x.value() == 0) throw Error(Errc::zero_division, "inverse of 0 mod " + std::to_string(x.d()));
    // extended Euclid on (x, d)
    std::int64_t r0 = x.d(), r1 = x.value();
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    return Residue(x.modulus(), t0);
}

Residue half(Residue x) { return x * inv(Residue(x.modulus(), 2)); }

int legendre(Residue x) {
    if (x.value() == 0) return 0;
    // Euler's criterion: x^((d-1)/2) = +-1
    std::uint64_t base = x.value(), acc = 1, e = (x.d() - 1) / 2;
    while (e > 0) {
        if (e & 1) acc = acc * base % x.d();
        base = base * base % x.d();
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

}  // namespace mubgeo

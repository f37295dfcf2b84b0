#include "mubgeo/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mubgeo {

namespace {

Cyclo::coeff_type narrow(__int128 v) {
    if (v > std::numeric_limits<Cyclo::coeff_type>::max() ||
        v < std::numeric_limits<Cyclo::coeff_type>::min()) {
        throw Error(Errc::overflow, "cyclotomic coefficient exceeds 64 bits");
    }
    return static_cast<Cyclo::coeff_type>(v);
}

void require_same(const Cyclo& a, const Cyclo& b) {
    if (a.modulus() != b.modulus()) {
        throw Error(Errc::modulus_mismatch, "amplitudes over Z[w_" + std::to_string(a.modulus().value()) +
                                                "] and Z[w_" + std::to_string(b.modulus().value()) + "]");
    }
}

}  // namespace

std::complex<double> root_of_unity(std::uint32_t d, std::int64_t t) {
    std::int64_t r = t % static_cast<std::int64_t>(d);
    if (r < 0) r += d;
    const long double angle = 2.0L * std::numbers::pi_v<long double> * r / d;
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

Cyclo::Cyclo(PrimeModulus d) : d_(d), coeffs_(d.value() - 1, 0) {}

Cyclo::Cyclo(PrimeModulus d, std::span<const coeff_type> coeffs, int scale) : d_(d), scale_(scale) {
    std::vector<__int128> full(d.value(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) full[i % d.value()] += coeffs[i];
    set_from_full(full);
}

void Cyclo::set_from_full(std::span<const __int128> full) {
    const std::size_t n = d_.value() - 1;
    const __int128 top = full[n];
    coeffs_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) coeffs_[i] = narrow(full[i] - top);
    normalize();
}

void Cyclo::normalize() {
    zero_ = std::all_of(coeffs_.begin(), coeffs_.end(), [](coeff_type c) { return c == 0; });
    if (zero_) {
        scale_ = 0;
        return;
    }
    const coeff_type d = d_.value();
    while (std::all_of(coeffs_.begin(), coeffs_.end(), [d](coeff_type c) { return c % d == 0; })) {
        for (auto& c : coeffs_) c /= d;
        scale_ -= 2;
    }
}

Cyclo Cyclo::integer(PrimeModulus d, coeff_type n, int scale) {
    const coeff_type c[1] = {n};
    return Cyclo(d, c, scale);
}

Cyclo Cyclo::root(Residue t) { return root(t, 0); }

Cyclo Cyclo::root(Residue t, int scale) {
    std::vector<coeff_type> full(t.d(), 0);
    full[t.value()] = 1;
    return Cyclo(t.modulus(), full, scale);
}

Cyclo Cyclo::gauss_sum(PrimeModulus d) {
    std::vector<coeff_type> full(d.value(), 0);
    for (std::uint32_t n = 1; n < d.value(); ++n) full[n] = legendre(Residue(d, n));
    return Cyclo(d, full, 0);
}

Cyclo Cyclo::scaled(int k) const {
    Cyclo r = *this;
    if (!r.zero_) r.scale_ += k;
    return r;
}

Cyclo Cyclo::conj() const {
    if (zero_) return *this;
    const std::uint32_t d = d_.value();
    std::vector<__int128> full(d, 0);
    for (std::uint32_t i = 0; i + 1 < d; ++i) full[(d - i) % d] += coeffs_[i];
    Cyclo r(d_);
    r.scale_ = scale_;
    r.set_from_full(full);
    return r;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& c : r.coeffs_) c = narrow(-static_cast<__int128>(c));
    return r;
}

Cyclo Cyclo::lifted(int target_scale) const {
    const int delta = target_scale - scale_;
    Cyclo r = *this;
    r.scale_ = target_scale;
    for (int step = 0; step < delta / 2; ++step) {
        for (auto& c : r.coeffs_) c = narrow(static_cast<__int128>(c) * d_.value());
    }
    return r;
}

Cyclo Cyclo::parity_flipped() const {
    if (!d_.is_one_mod_four()) {
        throw Error(Errc::not_representable, "sqrt(" + std::to_string(d_.value()) +
                                                 ") is not in Z[w]; cannot mix scale parities");
    }
    // x d^(-k/2) = (x G) d^(-(k+1)/2) with G = +sqrt(d).
    return (*this * gauss_sum(d_)).scaled(1);
}

namespace {

/// Brings two nonzero values to a common scale; returns the aligned pair.
std::pair<Cyclo, Cyclo> align(const Cyclo& a, const Cyclo& b, auto lift, auto flip) {
    Cyclo x = a, y = b;
    if ((x.scale() - y.scale()) % 2 != 0) {
        if (x.scale() < y.scale()) x = flip(x);
        else y = flip(y);
    }
    const int target = std::max(x.scale(), y.scale());
    return {lift(x, target), lift(y, target)};
}

}  // namespace

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    require_same(a, b);
    if (a.zero_) return b;
    if (b.zero_) return a;
    auto [x, y] = align(
        a, b, [](const Cyclo& c, int t) { return c.lifted(t); },
        [](const Cyclo& c) { return c.parity_flipped(); });
    std::vector<__int128> full(a.d_.value(), 0);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
        full[i] = static_cast<__int128>(x.coeffs_[i]) + y.coeffs_[i];
    }
    Cyclo r(a.d_);
    r.scale_ = x.scale_;
    r.set_from_full(full);
    return r;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    require_same(a, b);
    if (a.zero_ || b.zero_) return Cyclo(a.d_);
    const std::uint32_t d = a.d_.value();
    std::vector<__int128> full(d, 0);
    for (std::uint32_t i = 0; i + 1 < d; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::uint32_t j = 0; j + 1 < d; ++j) {
            if (b.coeffs_[j] == 0) continue;
            __int128 prod = 0;
            if (__builtin_mul_overflow(static_cast<__int128>(a.coeffs_[i]), static_cast<__int128>(b.coeffs_[j]),
                                       &prod) ||
                __builtin_add_overflow(full[(i + j) % d], prod, &full[(i + j) % d])) {
                throw Error(Errc::overflow, "cyclotomic product accumulation");
            }
        }
    }
    Cyclo r(a.d_);
    r.scale_ = a.scale_ + b.scale_;
    r.set_from_full(full);
    return r;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
    require_same(a, b);
    if (a.zero_ || b.zero_) return a.zero_ && b.zero_;
    if ((a.scale_ - b.scale_) % 2 != 0 && !a.d_.is_one_mod_four()) return false;
    auto [x, y] = align(
        a, b, [](const Cyclo& c, int t) { return c.lifted(t); },
        [](const Cyclo& c) { return c.parity_flipped(); });
    return x.coeffs_ == y.coeffs_;
}

std::optional<Residue> Cyclo::as_root_power(int scale) const {
    if (zero_) return std::nullopt;
    for (std::uint32_t t = 0; t < d_.value(); ++t) {
        const Residue r(d_, t);
        if (*this == root(r, scale)) return r;
    }
    return std::nullopt;
}

std::optional<Ratio> Cyclo::to_ratio() const {
    if (zero_) return Ratio::zero(d_);
    Cyclo even = *this;
    if (scale_ % 2 != 0) {
        if (!d_.is_one_mod_four()) return std::nullopt;
        even = parity_flipped();
    }
    if (!std::all_of(even.coeffs_.begin() + 1, even.coeffs_.end(), [](coeff_type c) { return c == 0; })) {
        return std::nullopt;
    }
    return Ratio(d_, even.coeffs_[0], even.scale_ / 2);
}

Ratio Cyclo::norm_squared() const {
    auto r = (*this * conj()).to_ratio();
    if (!r) throw Error(Errc::not_representable, "|a|^2 is irrational for a = " + to_string());
    return *r;
}

std::complex<double> Cyclo::to_complex() const {
    if (zero_) return {0.0, 0.0};
    const std::uint32_t d = d_.value();
    long double re = 0, im = 0;
    for (std::uint32_t i = 0; i + 1 < d; ++i) {
        if (coeffs_[i] == 0) continue;
        const long double angle = 2.0L * std::numbers::pi_v<long double> * i / d;
        re += coeffs_[i] * std::cos(angle);
        im += coeffs_[i] * std::sin(angle);
    }
    const long double s = std::pow(static_cast<long double>(d), -static_cast<long double>(scale_) / 2.0L);
    return {static_cast<double>(re * s), static_cast<double>(im * s)};
}

std::string Cyclo::to_string() const {
    if (zero_) return "0";
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << coeffs_[i];
        if (i == 1) os << "w";
        if (i > 1) os << "w^" << i;
    }
    os << ")";
    if (scale_ != 0) os << "*" << d_.value() << "^(" << -scale_ << "/2)";
    return os.str();
}

}  // namespace mubgeo

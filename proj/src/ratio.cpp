#include "mubgeo/ratio.hpp"

#include <cmath>
#include <limits>

namespace mubgeo {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::overflow, "rational numerator overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::overflow, "rational numerator overflow");
    return r;
}

void require_same(const Ratio& a, const Ratio& b) {
    if (a.modulus() != b.modulus()) throw Error(Errc::modulus_mismatch, "ratios over different d");
}

}  // namespace

std::int64_t checked_power(std::uint32_t d, int k) {
    if (k < 0) throw Error(Errc::out_of_range, "negative exponent");
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r = checked_mul(r, d);
    return r;
}

Ratio::Ratio(PrimeModulus d, std::int64_t num, int exp) : d_(d), num_(num), exp_(exp) {
    while (exp_ < 0) {
        num_ = checked_mul(num_, d.value());
        ++exp_;
    }
    normalize();
}

void Ratio::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    const std::int64_t d = d_.value();
    while (exp_ > 0 && num_ % d == 0) {
        num_ /= d;
        --exp_;
    }
}

double Ratio::to_double() const {
    return static_cast<double>(num_) / std::pow(static_cast<double>(d_.value()), exp_);
}

std::string Ratio::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(d_.value()) + "^" + std::to_string(exp_);
}

Ratio Ratio::parse(PrimeModulus d, const std::string& text) {
    const auto slash = text.find('/');
    const auto caret = text.find('^');
    if (slash == std::string::npos || caret == std::string::npos || caret < slash) {
        throw Error(Errc::not_representable, "expected num/d^k, got '" + text + "'");
    }
    try {
        const std::int64_t num = std::stoll(text.substr(0, slash));
        const std::int64_t base = std::stoll(text.substr(slash + 1, caret - slash - 1));
        const int exp = std::stoi(text.substr(caret + 1));
        if (base != d.value()) throw Error(Errc::modulus_mismatch, "base in '" + text + "'");
        return Ratio(d, num, exp);
    } catch (const std::logic_error&) {
        throw Error(Errc::not_representable, "expected num/d^k, got '" + text + "'");
    }
}

std::int64_t Ratio::scaled_numerator(int exp) const {
    if (exp < exp_) throw Error(Errc::out_of_range, "common exponent below own exponent");
    return checked_mul(num_, checked_power(d_.value(), exp - exp_));
}

Ratio operator+(const Ratio& a, const Ratio& b) {
    require_same(a, b);
    const int e = std::max(a.exp_, b.exp_);
    return Ratio(a.d_, checked_add(a.scaled_numerator(e), b.scaled_numerator(e)), e);
}

Ratio operator-(const Ratio& a, const Ratio& b) {
    require_same(a, b);
    const int e = std::max(a.exp_, b.exp_);
    return Ratio(a.d_, checked_add(a.scaled_numerator(e), -b.scaled_numerator(e)), e);
}

Ratio operator*(const Ratio& a, const Ratio& b) {
    require_same(a, b);
    return Ratio(a.d_, checked_mul(a.num_, b.num_), a.exp_ + b.exp_);
}

bool operator==(const Ratio& a, const Ratio& b) {
    require_same(a, b);
    return a.num_ == b.num_ && a.exp_ == b.exp_;
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    require_same(a, b);
    const int e = std::max(a.exp_, b.exp_);
    return a.scaled_numerator(e) <=> b.scaled_numerator(e);
}

}  // namespace mubgeo

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mubgeo/amplitude.hpp"

namespace mubgeo {

/// State vector of one particle (dim d) or two particles (dim d^2).
/// Two-particle slots are laid out as n1 * d + n2, particle 1 on the left.
template <class T>
class BasicKet {
public:
    using value_type = T;
    using traits = amplitude_traits<T>;

    /// Zero ket. Error{dimension_mismatch} unless dim is d or d^2.
    BasicKet(PrimeModulus d, std::size_t dim) : d_(d), amps_(check_dim(d, dim), traits::zero(d)) {}

    BasicKet(PrimeModulus d, std::vector<T> amps) : d_(d), amps_(std::move(amps)) { check_dim(d, amps_.size()); }

    PrimeModulus modulus() const noexcept { return d_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    bool is_pair() const noexcept { return amps_.size() != d_.value(); }

    const T& operator[](std::size_t i) const { return amps_.at(i); }
    T& operator[](std::size_t i) { return amps_.at(i); }
    std::span<const T> amps() const noexcept { return amps_; }

    BasicKet& operator+=(const BasicKet& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
        return *this;
    }
    BasicKet& operator-=(const BasicKet& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= o.amps_[i];
        return *this;
    }
    BasicKet& operator*=(const T& s) {
        for (auto& a : amps_) a *= s;
        return *this;
    }
    friend BasicKet operator+(BasicKet a, const BasicKet& b) { return a += b; }
    friend BasicKet operator-(BasicKet a, const BasicKet& b) { return a -= b; }
    friend BasicKet operator*(const T& s, BasicKet a) { return a *= s; }

    /// Multiplies every amplitude by d^(-k/2).
    BasicKet scaled(int k) const {
        BasicKet r = *this;
        for (auto& a : r.amps_) a = scale_amp(a, k, d_);
        return r;
    }

    /// Exact equality on the exact backend; |a_i - b_i| <= tol otherwise.
    bool equals(const BasicKet& o, double tol = 0.0) const {
        if (d_ != o.d_ || amps_.size() != o.amps_.size()) return false;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (!traits::equal(amps_[i], o.amps_[i], tol)) return false;
        }
        return true;
    }

    void require_same_shape(const BasicKet& o) const {
        if (d_ != o.d_ || amps_.size() != o.amps_.size()) {
            throw Error(Errc::dimension_mismatch,
                        "kets of dim " + std::to_string(dim()) + " and " + std::to_string(o.dim()));
        }
    }

private:
    static std::size_t check_dim(PrimeModulus d, std::size_t dim) {
        if (dim != d.value() && dim != d.squared()) {
            throw Error(Errc::dimension_mismatch, "ket dim " + std::to_string(dim) + " is neither d nor d^2");
        }
        return dim;
    }

    PrimeModulus d_;
    std::vector<T> amps_;
};

using Ket = BasicKet<Cyclo>;
using FloatKet = BasicKet<Complex>;

inline std::size_t pair_slot(PrimeModulus d, std::uint32_t n1, std::uint32_t n2) {
    return std::size_t{n1} * d.value() + n2;
}

/// |n> in a space of dimension dim (d or d^2).
template <class T>
BasicKet<T> basis_ket(PrimeModulus d, std::size_t dim, std::size_t n) {
    BasicKet<T> k(d, dim);
    if (n >= dim) {
        throw Error(Errc::index_out_of_range,
                    "basis index " + std::to_string(n) + " for dim " + std::to_string(dim));
    }
    k[n] = amplitude_traits<T>::one(d);
    return k;
}

template <class T>
BasicKet<T> tensor(const BasicKet<T>& k1, const BasicKet<T>& k2) {
    const PrimeModulus d = k1.modulus();
    if (k1.is_pair() || k2.is_pair() || k2.modulus() != d) {
        throw Error(Errc::dimension_mismatch, "tensor needs two single-particle kets over the same d");
    }
    BasicKet<T> r(d, d.squared());
    for (std::uint32_t a = 0; a < d.value(); ++a) {
        if (amplitude_traits<T>::is_zero(k1[a])) continue;
        for (std::uint32_t b = 0; b < d.value(); ++b) r[pair_slot(d, a, b)] = k1[a] * k2[b];
    }
    return r;
}

/// <bra|ket> = sum conj(bra_i) ket_i.
template <class T>
T inner(const BasicKet<T>& bra, const BasicKet<T>& ket) {
    bra.require_same_shape(ket);
    using tr = amplitude_traits<T>;
    T acc = tr::zero(bra.modulus());
    for (std::size_t i = 0; i < bra.dim(); ++i) {
        if (tr::is_zero(bra[i]) || tr::is_zero(ket[i])) continue;
        acc += tr::conj(bra[i]) * ket[i];
    }
    return acc;
}

/// <k|k> as an exact rational; Error{not_representable} when irrational.
inline Ratio norm_squared(const Ket& k) {
    auto r = inner(k, k).to_ratio();
    if (!r) throw Error(Errc::not_representable, "<k|k> is not rational");
    return *r;
}

inline double norm_squared(const FloatKet& k) { return std::real(inner(k, k)); }

inline bool is_normalized(const Ket& k, double = 0.0) { return norm_squared(k) == Ratio::one(k.modulus()); }
inline bool is_normalized(const FloatKet& k, double tol) { return std::abs(norm_squared(k) - 1.0) <= tol; }

inline FloatKet to_float(const Ket& k) {
    std::vector<Complex> amps;
    amps.reserve(k.dim());
    for (const auto& a : k.amps()) amps.push_back(a.to_complex());
    return FloatKet(k.modulus(), std::move(amps));
}

inline const FloatKet& to_float(const FloatKet& k) { return k; }

}  // namespace mubgeo

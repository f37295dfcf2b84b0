#pragma once

#include <string>

#include "mubgeo/ket.hpp"

namespace mubgeo {

/// Generalized permutation operator
///
///     omega^phase * X^x_power * Z^z_power * (I if inverted)
///
/// applied right to left: inversion I|n> = |-n> first, then the clock
/// Z|n> = omega^n |n>, then the shift X|n> = |n+1>. Every product is
/// rewritten into this order, so phases are never ambiguous.
struct MonomialOperator {
    Residue x_power;
    Residue z_power;
    bool inverted = false;
    Residue phase;

    PrimeModulus modulus() const noexcept { return x_power.modulus(); }

    static MonomialOperator identity(PrimeModulus d) { return {Residue(d, 0), Residue(d, 0), false, Residue(d, 0)}; }
    static MonomialOperator shift(Residue a) { return {a, Residue(a.modulus(), 0), false, Residue(a.modulus(), 0)}; }
    static MonomialOperator clock(Residue c) { return {Residue(c.modulus(), 0), c, false, Residue(c.modulus(), 0)}; }
    static MonomialOperator inversion(PrimeModulus d) { return {Residue(d, 0), Residue(d, 0), true, Residue(d, 0)}; }

    friend bool operator==(const MonomialOperator&, const MonomialOperator&) = default;

    std::string to_string() const;
};

/// op1 * op2 (op2 acts first).
MonomialOperator compose(const MonomialOperator& op1, const MonomialOperator& op2);
MonomialOperator adjoint(const MonomialOperator& op);
/// op^k for k >= 0.
MonomialOperator power(const MonomialOperator& op, std::uint32_t k);

/// Action on a single-particle ket.
template <class T>
BasicKet<T> apply(const MonomialOperator& op, const BasicKet<T>& k) {
    const PrimeModulus d = op.modulus();
    if (k.is_pair() || k.modulus() != d) {
        throw Error(Errc::dimension_mismatch, "monomial acts on single-particle kets over the same d");
    }
    using tr = amplitude_traits<T>;
    BasicKet<T> r(d, d.value());
    for (std::uint32_t n = 0; n < d.value(); ++n) {
        const Residue src = Residue(d, n) - op.x_power;
        const Residue from = op.inverted ? -src : src;
        if (tr::is_zero(k[from.value()])) continue;
        r[n] = tr::root(op.phase + op.z_power * src) * k[from.value()];
    }
    return r;
}

/// (1 (x) op) on a two-particle ket.
template <class T>
BasicKet<T> apply_second(const MonomialOperator& op, const BasicKet<T>& k) {
    const PrimeModulus d = op.modulus();
    if (!k.is_pair() || k.modulus() != d) throw Error(Errc::dimension_mismatch, "apply_second needs a d^2 ket");
    BasicKet<T> r(d, d.squared());
    std::vector<T> row(d.value(), amplitude_traits<T>::zero(d));
    for (std::uint32_t n1 = 0; n1 < d.value(); ++n1) {
        for (std::uint32_t n2 = 0; n2 < d.value(); ++n2) row[n2] = k[pair_slot(d, n1, n2)];
        const BasicKet<T> out = mubgeo::apply(op, BasicKet<T>(d, row));
        for (std::uint32_t n2 = 0; n2 < d.value(); ++n2) r[pair_slot(d, n1, n2)] = out[n2];
    }
    return r;
}

/// (op (x) 1) on a two-particle ket.
template <class T>
BasicKet<T> apply_first(const MonomialOperator& op, const BasicKet<T>& k) {
    const PrimeModulus d = op.modulus();
    if (!k.is_pair() || k.modulus() != d) throw Error(Errc::dimension_mismatch, "apply_first needs a d^2 ket");
    BasicKet<T> r(d, d.squared());
    std::vector<T> col(d.value(), amplitude_traits<T>::zero(d));
    for (std::uint32_t n2 = 0; n2 < d.value(); ++n2) {
        for (std::uint32_t n1 = 0; n1 < d.value(); ++n1) col[n1] = k[pair_slot(d, n1, n2)];
        const BasicKet<T> out = mubgeo::apply(op, BasicKet<T>(d, col));
        for (std::uint32_t n1 = 0; n1 < d.value(); ++n1) r[pair_slot(d, n1, n2)] = out[n1];
    }
    return r;
}

}  // namespace mubgeo

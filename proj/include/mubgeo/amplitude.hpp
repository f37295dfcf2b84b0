#pragma once

#include <cmath>
#include <complex>

#include "mubgeo/cyclo.hpp"

namespace mubgeo {

using Complex = std::complex<double>;

/// Uniform interface over the two amplitude backends: exact (Cyclo) and
/// floating (std::complex<double>). Everything above the arithmetic layer is
/// written once against this trait.
template <class T>
struct amplitude_traits;

template <>
struct amplitude_traits<Cyclo> {
    static constexpr bool exact = true;
    static Cyclo zero(PrimeModulus d) { return Cyclo::zero(d); }
    static Cyclo one(PrimeModulus d) { return Cyclo::one(d); }
    /// omega^t * d^(-k/2)
    static Cyclo root(Residue t, int k = 0) { return Cyclo::root(t, k); }
    static Cyclo conj(const Cyclo& a) { return a.conj(); }
    static bool is_zero(const Cyclo& a) { return a.is_zero(); }
    static bool equal(const Cyclo& a, const Cyclo& b, double /*tol*/) { return a == b; }
    static Complex to_complex(const Cyclo& a) { return a.to_complex(); }
    static double abs2(const Cyclo& a) { return std::norm(a.to_complex()); }
};

template <>
struct amplitude_traits<Complex> {
    static constexpr bool exact = false;
    static Complex zero(PrimeModulus) { return {0.0, 0.0}; }
    static Complex one(PrimeModulus) { return {1.0, 0.0}; }
    static Complex root(Residue t, int k = 0) {
        return root_of_unity(t.d(), t.value()) * std::pow(static_cast<double>(t.d()), -0.5 * k);
    }
    static Complex scaled(const Complex& a, int k, PrimeModulus d) {
        return a * std::pow(static_cast<double>(d.value()), -0.5 * k);
    }
    static Complex conj(const Complex& a) { return std::conj(a); }
    static bool is_zero(const Complex& a) { return a == Complex{}; }
    static bool equal(const Complex& a, const Complex& b, double tol) { return std::abs(a - b) <= tol; }
    static Complex to_complex(const Complex& a) { return a; }
    static double abs2(const Complex& a) { return std::norm(a); }
};

/// a * d^(-k/2) on either backend.
inline Cyclo scale_amp(const Cyclo& a, int k, PrimeModulus) { return a.scaled(k); }
inline Complex scale_amp(const Complex& a, int k, PrimeModulus d) {
    return amplitude_traits<Complex>::scaled(a, k, d);
}

}  // namespace mubgeo

#pragma once

#include <vector>

#include "mubgeo/monomial.hpp"

namespace mubgeo {

/// Dense square matrix. Only used to cross-check the monomial algebra and the
/// measurement oracles; production paths never materialize operators.
template <class T>
class DenseMatrix {
public:
    DenseMatrix(PrimeModulus d, std::size_t n)
        : d_(d), n_(n), data_(n * n, amplitude_traits<T>::zero(d)) {}

    static DenseMatrix identity(PrimeModulus d, std::size_t n) {
        DenseMatrix m(d, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = amplitude_traits<T>::one(d);
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    PrimeModulus modulus() const noexcept { return d_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        DenseMatrix r(a.d_, a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            for (std::size_t k = 0; k < a.n_; ++k) {
                if (amplitude_traits<T>::is_zero(a(i, k))) continue;
                for (std::size_t j = 0; j < a.n_; ++j) {
                    if (amplitude_traits<T>::is_zero(b(k, j))) continue;
                    r(i, j) += a(i, k) * b(k, j);
                }
            }
        }
        return r;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    DenseMatrix adjoint() const {
        DenseMatrix r(d_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = amplitude_traits<T>::conj((*this)(i, j));
        return r;
    }

    BasicKet<T> apply(const BasicKet<T>& k) const {
        BasicKet<T> r(d_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                if (amplitude_traits<T>::is_zero((*this)(i, j)) || amplitude_traits<T>::is_zero(k[j])) continue;
                r[i] += (*this)(i, j) * k[j];
            }
        return r;
    }

    bool equals(const DenseMatrix& o, double tol = 0.0) const {
        if (n_ != o.n_) return false;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (!amplitude_traits<T>::equal(data_[i], o.data_[i], tol)) return false;
        return true;
    }

private:
    PrimeModulus d_;
    std::size_t n_;
    std::vector<T> data_;
};

/// |k><k|
template <class T>
DenseMatrix<T> outer(const BasicKet<T>& ket, const BasicKet<T>& bra) {
    DenseMatrix<T> m(ket.modulus(), ket.dim());
    for (std::size_t i = 0; i < ket.dim(); ++i)
        for (std::size_t j = 0; j < ket.dim(); ++j) m(i, j) = ket[i] * amplitude_traits<T>::conj(bra[j]);
    return m;
}

/// Column n is op|n>.
template <class T>
DenseMatrix<T> to_dense(const MonomialOperator& op) {
    const PrimeModulus d = op.modulus();
    DenseMatrix<T> m(d, d.value());
    for (std::uint32_t n = 0; n < d.value(); ++n) {
        const BasicKet<T> col = mubgeo::apply(op, basis_ket<T>(d, d.value(), n));
        for (std::uint32_t r = 0; r < d.value(); ++r) m(r, n) = col[r];
    }
    return m;
}

/// Kronecker product a (x) b.
template <class T>
DenseMatrix<T> kron(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    const std::size_t n = a.size() * b.size();
    DenseMatrix<T> r(a.modulus(), n);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (amplitude_traits<T>::is_zero(a(i, j))) continue;
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t l = 0; l < b.size(); ++l) r(i * b.size() + k, j * b.size() + l) = a(i, j) * b(k, l);
        }
    return r;
}

}  // namespace mubgeo

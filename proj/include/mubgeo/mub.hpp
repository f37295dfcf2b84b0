#pragma once

#include <string>
#include <vector>

#include "mubgeo/monomial.hpp"

namespace mubgeo {

/// Label of one of the d+1 bases: the computational basis (CB, the eigenbasis
/// of Z) or a numeric label b in Z_d. CB never takes part in Z_d arithmetic.
class BasisLabel {
public:
    static BasisLabel computational(PrimeModulus d) { return BasisLabel(d, 0, true); }
    static BasisLabel numeric(Residue b) { return BasisLabel(b.modulus(), b.value(), false); }
    static BasisLabel numeric(PrimeModulus d, std::int64_t b) { return numeric(Residue(d, b)); }
    /// Column 0 is CB, column b+1 is numeric b.
    static BasisLabel from_column(PrimeModulus d, std::size_t column);
    /// "CB" (any case) or an integer in [0, d).
    static BasisLabel parse(PrimeModulus d, const std::string& text);

    bool is_computational() const noexcept { return cb_; }
    /// Error{computational_basis} for CB.
    Residue value() const;
    PrimeModulus modulus() const noexcept { return d_; }
    std::size_t column() const noexcept { return cb_ ? 0 : std::size_t{b_} + 1; }

    std::string to_string() const { return cb_ ? "CB" : std::to_string(b_); }

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;

private:
    BasisLabel(PrimeModulus d, std::uint32_t b, bool cb) : d_(d), b_(b), cb_(cb) {}

    PrimeModulus d_;
    std::uint32_t b_;
    bool cb_;
};

/// CB first, then 0 .. d-1.
std::vector<BasisLabel> all_bases(PrimeModulus d);

/// State m of basis b: |m;b>.
struct MubIndex {
    Residue m;
    BasisLabel b;

    friend bool operator==(const MubIndex&, const MubIndex&) = default;
    std::string to_string() const { return "(" + m.to_string() + "," + b.to_string() + ")"; }
};

/// All d(d+1) labels, column by column (CB first), rows ascending.
std::vector<MubIndex> all_mub_indices(PrimeModulus d);

/// |m;b> = d^(-1/2) sum_n omega^((b/2) n(n-1) - n m) |n>, with the exponent
/// evaluated in Z_d and b/2 = b * inv(2). CB gives |m>.
template <class T>
BasicKet<T> mub_state(const MubIndex& idx);

/// Complex-conjugate partner: (m, b) -> (-m, -b); CB labels are fixed.
MubIndex tilde(const MubIndex& idx);

/// X Z^b, whose eigenvectors are the states of basis b.
MonomialOperator basis_stabilizer(Residue b);

/// Whether X Z^b state = omega^m state holds exactly. Error{computational_basis}
/// for CB labels.
bool check_eigenrelation(const MubIndex& idx, const Ket& state);
bool check_eigenrelation(const MubIndex& idx);

/// |<i1|i2>|^2, exact.
Ratio overlap_magnitude_squared(const MubIndex& i1, const MubIndex& i2);

/// <n|m;b><m;b|n'> from the closed formula
/// (1/d) omega^((n-n')[(b/2)(n+n'-1) - m]). Error{computational_basis} for CB.
Cyclo projector_element(const MubIndex& idx, Residue n, Residue n_prime);

/// delta_{n,m} delta_{n,n'}: the CB projector's matrix element.
Cyclo cb_projector_element(const MubIndex& idx, Residue n, Residue n_prime);

/// The same element computed from the state vector, any label.
Cyclo projector_element_from_state(const MubIndex& idx, Residue n, Residue n_prime);

}  // namespace mubgeo

#include "mubgeo/mub.hpp"

#include <algorithm>
#include <cctype>

namespace mubgeo {

BasisLabel BasisLabel::from_column(PrimeModulus d, std::size_t column) {
    if (column > d.value()) throw Error(Errc::index_out_of_range, "column " + std::to_string(column));
    return column == 0 ? computational(d) : numeric(d, static_cast<std::int64_t>(column) - 1);
}

BasisLabel BasisLabel::parse(PrimeModulus d, const std::string& text) {
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "cb") return computational(d);
    std::size_t used = 0;
    long long b = 0;
    try {
        b = std::stoll(text, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || b < 0 || b >= d.value()) {
        throw Error(Errc::index_out_of_range, "basis label '" + text + "' is neither CB nor in [0, d)");
    }
    return numeric(d, b);
}

Residue BasisLabel::value() const {
    if (cb_) throw Error(Errc::computational_basis, "the computational basis has no numeric label");
    return Residue(d_, b_);
}

std::vector<BasisLabel> all_bases(PrimeModulus d) {
    std::vector<BasisLabel> out;
    out.reserve(d.value() + 1);
    for (std::size_t c = 0; c <= d.value(); ++c) out.push_back(BasisLabel::from_column(d, c));
    return out;
}

std::vector<MubIndex> all_mub_indices(PrimeModulus d) {
    std::vector<MubIndex> out;
    out.reserve(std::size_t{d.value()} * (d.value() + 1));
    for (const auto& b : all_bases(d))
        for (std::uint32_t m = 0; m < d.value(); ++m) out.push_back({Residue(d, m), b});
    return out;
}

template <class T>
BasicKet<T> mub_state(const MubIndex& idx) {
    const PrimeModulus d = idx.m.modulus();
    if (idx.b.is_computational()) return basis_ket<T>(d, d.value(), idx.m.value());
    const Residue hb = half(idx.b.value());
    BasicKet<T> k(d, d.value());
    for (std::uint32_t n = 0; n < d.value(); ++n) {
        const Residue rn(d, n);
        const Residue e = hb * rn * (rn - 1) - rn * idx.m;
        k[n] = amplitude_traits<T>::root(e, 1);
    }
    return k;
}

template Ket mub_state<Cyclo>(const MubIndex&);
template FloatKet mub_state<Complex>(const MubIndex&);

MubIndex tilde(const MubIndex& idx) {
    if (idx.b.is_computational()) return idx;
    return {-idx.m, BasisLabel::numeric(-idx.b.value())};
}

MonomialOperator basis_stabilizer(Residue b) {
    return compose(MonomialOperator::shift(Residue(b.modulus(), 1)), MonomialOperator::clock(b));
}

bool check_eigenrelation(const MubIndex& idx, const Ket& state) {
    const Ket lhs = apply(basis_stabilizer(idx.b.value()), state);
    return lhs.equals(Cyclo::root(idx.m) * state);
}

bool check_eigenrelation(const MubIndex& idx) { return check_eigenrelation(idx, mub_state<Cyclo>(idx)); }

Ratio overlap_magnitude_squared(const MubIndex& i1, const MubIndex& i2) {
    return inner(mub_state<Cyclo>(i1), mub_state<Cyclo>(i2)).norm_squared();
}

Cyclo projector_element(const MubIndex& idx, Residue n, Residue n_prime) {
    const Residue e = (n - n_prime) * (half(idx.b.value()) * (n + n_prime - 1) - idx.m);
    return Cyclo::root(e, 2);
}

Cyclo cb_projector_element(const MubIndex& idx, Residue n, Residue n_prime) {
    const PrimeModulus d = idx.m.modulus();
    return (n == idx.m && n_prime == idx.m) ? Cyclo::one(d) : Cyclo::zero(d);
}

Cyclo projector_element_from_state(const MubIndex& idx, Residue n, Residue n_prime) {
    const Ket s = mub_state<Cyclo>(idx);
    return s[n.value()] * s[n_prime.value()].conj();
}

}  // namespace mubgeo

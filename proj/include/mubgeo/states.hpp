#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mubgeo/geometry.hpp"

namespace mubgeo {

/// |A_p> = |m;b>_1 |~m;~b>_2 for the point p = (m, b).
template <class T>
struct ProductState {
    Point point;
    BasicKet<T> ket;
};

/// R = sum_n |n>|n>, kept unnormalized (<R|R> = d).
template <class T>
struct BalancedState {
    BasicKet<T> ket;
};

/// Normalized two-particle state underpinned by a line.
template <class T>
struct LineState {
    Line line;
    BasicKet<T> ket;
};

template <class T>
ProductState<T> product_state(const Point& p);

template <class T>
BalancedState<T> balanced_state(PrimeModulus d);

/// d^(-1/2) (sum_{p on j} |A_p> - R). This is the definition of |P_j>.
template <class T>
LineState<T> line_state_geometric(const Line& j);

/// X^(2 mddot) Z^(2 m0) I, the operator carrying R to sqrt(d) |P_j>.
MonomialOperator line_monomial(const Line& j);

/// omega^(2 mddot m0) d^(-1/2) sum_n |n>_1 (X^(2 mddot) Z^(2 m0) I |n>)_2.
template <class T>
LineState<T> line_state_closed(const Line& j);

enum class ExponentSign { minus, plus };

std::string to_string(ExponentSign s);

/// d^(-1/2) sum_{n+n'=2 mddot} omega^(s (n-n') m0) |n>|n'> for s = -1 or +1.
/// Built directly from the coefficient law, independently of the points.
template <class T>
LineState<T> line_state_formula(const Line& j, ExponentSign sign);

/// <A_p | P_j>.
template <class T>
T overlap_point_line(const Point& p, const Line& j);

/// The amplitude omega^(2 b mddot^2 - b mddot) / sqrt(d) claimed for a point
/// of the line in numeric column b. Error{computational_basis} for CB.
Cyclo claimed_overlap_phase(const Point& p, const Line& j);

/// <n| sum_{p on j} A_p - 1 |n'> summed from single-particle projector
/// elements: the closed formula for the numeric columns, delta for CB.
Cyclo line_sum_matrix(const Line& j, Residue n, Residue n_prime);

/// delta_{n+n', 2 mddot} omega^(s (n-n') m0).
Cyclo line_sum_candidate(const Line& j, Residue n, Residue n_prime, ExponentSign sign);

struct GramReport {
    std::uint32_t d = 0;
    std::size_t size = 0;
    std::size_t defects = 0;
    /// first few (j, j') pairs whose entry differs from delta_{j,j'}
    std::vector<std::pair<std::size_t, std::size_t>> samples;

    bool identity() const { return defects == 0; }
};

/// Full d^2 x d^2 Gram matrix of the geometric line states against identity.
GramReport verify_orthonormality(PrimeModulus d);

/// Whether the reduced density matrix of the given particle (1 or 2) equals
/// identity / d.
template <class T>
bool reduced_is_maximally_mixed(const BasicKet<T>& ket, int particle, double tol = 0.0);

/// Whether sum_j |P_j><P_j| is the identity on the two-particle space.
bool line_states_complete(PrimeModulus d);

/// Per-d summary of every state-level relation, including how the written
/// formulas compare with the computed ones.
struct ConformanceReport {
    std::uint32_t d = 0;

    bool monomial_conventions = false;   // compose/adjoint vs dense matrices
    bool balance = false;                // every column sums to R, <R|R> = d
    bool closed_equals_geometric = false;
    /// t with closed = omega^t geometric for every line, if one t fits all
    std::optional<std::uint32_t> closed_phase_offset;
    GramReport gram;
    bool reduced_density = false;
    bool completeness = false;
    bool equal_elements_on_lines = false;  // <n|A_p|n'> constant on a line for n+n' = 2 mddot

    bool overlap_law = false;  // |<A_p|P_j>|^2 = 1/d on the line, 0 off it
    /// |<n,n|P_j>|^2 for n = mddot; measured value
    std::optional<Ratio> cb_overlap_squared;
    /// whether the written CB coefficient 1/sqrt(2) would be consistent
    bool cb_claim_half_consistent = false;

    /// exponent of the measured on-line overlap phase, over all numeric points
    std::set<std::uint32_t> measured_overlap_phases;
    bool claimed_phase_matches = false;
    std::size_t lines_with_global_phase_offset = 0;
    std::size_t lines_with_varying_phase_offset = 0;

    /// coefficient sign of the line states: omega^(-(n-n')m0) or omega^(+(n-n')m0)
    bool minus_sign_matches_states = false;
    bool plus_sign_matches_states = false;
    bool minus_sign_matches_line_sum = false;
    bool plus_sign_matches_line_sum = false;
    std::optional<ExponentSign> resolved_sign;
};

bool verify_monomial_conventions(PrimeModulus d);

ConformanceReport build_conformance(PrimeModulus d);

}  // namespace mubgeo

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mubgeo/meanking.hpp"

namespace mubgeo {

enum class Backend { exact, floating };

/// "exact" or "float"
std::string to_string(Backend b);
Backend parse_backend(const std::string& text);

/// One named property, checked exhaustively for one d.
struct Check {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
    /// largest deviation seen on the float backend
    std::optional<double> residual;
};

struct VerifyReport {
    std::uint32_t d = 0;
    Backend backend = Backend::exact;
    double tol = 1e-10;
    std::vector<Check> checks;
    /// written-vs-computed comparisons; informative, never part of the verdict
    std::optional<ConformanceReport> conformance;

    bool all_passed() const;
};

/// Cross-basis overlaps, within-basis Gram, X Z^b eigenrelation (Z for CB).
std::vector<Check> mub_checks(PrimeModulus d, Backend backend, double tol);

/// Counts, axioms (a)-(e), the line/point round trip.
std::vector<Check> geometry_checks(PrimeModulus d);

/// Balance, line states, overlap law, projector elements and line sums.
/// The exact backend reads the values from build_conformance, which is
/// also returned through out when given.
std::vector<Check> state_checks(PrimeModulus d, Backend backend, double tol,
                                std::optional<ConformanceReport>* out = nullptr);

/// Exact values converted to floats against the float backend, including
/// the protocol tables.
std::vector<Check> coherence_checks(PrimeModulus d, double tol);

/// Every suite above for one d; coherence runs for d <= 7 only.
VerifyReport verify(PrimeModulus d, Backend backend, double tol);

/// Protocol tables from float kets only: P(m, j') = |<P_j'| (|m;b><m;b| x 1) psi>|^2.
std::vector<double> float_joint_distribution(PrimeModulus d, const Preparation& prep, const BasisLabel& b,
                                             const ProtocolOptions& options = {});

}  // namespace mubgeo

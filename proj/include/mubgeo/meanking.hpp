#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mubgeo/states.hpp"

namespace mubgeo {

/// Alice's preparation: a line state |P_j>, or the balanced state R / sqrt(d).
struct Preparation {
    enum class Kind { balanced, line_vector };

    Kind kind = Kind::balanced;
    std::optional<Line> line;

    static Preparation balanced() { return {Kind::balanced, std::nullopt}; }
    static Preparation line_vector(const Line& j) { return {Kind::line_vector, j}; }

    /// "balanced" or "line(mddot,m0)"
    std::string to_string() const;
};

/// paper_literal: m = m0 - m0' + (b/2)(mddot - mddot') (CB branch
/// mddot - mddot' + m0 - m0' is provisional). line_rule: the row of the
/// measured line j' in column b.
enum class DeductionRule { paper_literal, line_rule };

std::string to_string(DeductionRule r);

struct ProtocolOptions {
    /// Alice applies the inverse of the preparation's line monomial to
    /// particle 2 before her control measurement.
    bool unrotate = false;
};

/// Normalized two-particle state for the preparation.
Ket prepared_state(PrimeModulus d, const Preparation& prep);

/// Per-trial random stream: mt19937_64 seeded from (master seed, trial index)
/// through std::seed_seq, so any trial can be replayed on its own.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);

    /// Uniform integer in [0, n), n >= 1, without modulo bias.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 gen_;
};

/// Samples an index from exact probabilities num_i / d^k_i, which must sum to
/// exactly 1 (Error{not_normalized} otherwise). Uses integer arithmetic only.
std::size_t sample_exact(std::span<const Ratio> probs, TrialRng& rng);

/// One outcome of the King's measurement of particle 1 in basis b.
struct KingBranch {
    Residue m;
    Ratio probability;
    Ket post;  // normalized post-measurement state (zero ket if probability 0)
};

/// Exact Born distribution and collapsed states for every outcome m.
std::vector<KingBranch> king_branches(PrimeModulus d, const Preparation& prep, const BasisLabel& b);

struct KingOutcome {
    Residue m;
    Ket post;
};

KingOutcome king_measure(PrimeModulus d, const Preparation& prep, const BasisLabel& b, TrialRng& rng);

/// The correction applied by Alice before her measurement when
/// ProtocolOptions::unrotate is set (identity for the balanced preparation).
Ket alice_correction(const Preparation& prep, const Ket& post);

/// |<P_j'|post>|^2 for every line index j'. Error{not_normalized} unless
/// post is a normalized d^2 ket.
std::vector<Ratio> alice_distribution(const Ket& post);

Line alice_measure(const Ket& post, TrialRng& rng);

/// prepared is required by paper_literal and ignored by line_rule.
Residue deduce(DeductionRule rule, const std::optional<Line>& prepared, const Line& measured, const BasisLabel& b);

/// Exact joint distribution P(m, j') for a fixed preparation and basis.
struct OutcomeTable {
    std::uint32_t d = 0;
    Preparation prep;
    BasisLabel basis;
    ProtocolOptions options;
    std::vector<Ratio> probs;  // index m * d^2 + j'.index()

    Ratio at(std::uint32_t m, std::size_t line) const { return probs.at(std::size_t{m} * d * d + line); }
    Ratio row_sum(std::uint32_t m) const;
    Ratio total() const;
    std::size_t nonzero() const;
};

OutcomeTable exact_joint_distribution(PrimeModulus d, const Preparation& prep, const BasisLabel& b,
                                      const ProtocolOptions& options = {});

/// Reduced fraction num/den; used where a uniform choice over d+1 bases
/// leaves the num/d^k family.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct BasisSuccess {
    BasisLabel basis;
    Ratio success;
    bool always_correct = false;  // every nonzero-probability outcome deduced correctly
    bool provisional = false;     // paper_literal CB branch
};

struct SuccessReport {
    std::uint32_t d = 0;
    Preparation prep;
    DeductionRule rule = DeductionRule::line_rule;
    ProtocolOptions options;
    std::vector<BasisSuccess> per_basis;
    /// success with the King's basis uniform over all d+1 labels
    Fraction overall;
    /// same, leaving provisional branches out
    Fraction overall_definite;
    bool worst_case_ok = false;
};

SuccessReport evaluate_rule(PrimeModulus d, const Preparation& prep, DeductionRule rule,
                            const ProtocolOptions& options = {});

/// Whether P(m, j') > 0 exactly when
///   m0 - m0' + b (mddot - mddot') = 0 (numeric b), or mddot' = mddot (CB),
/// where (mddot, m0) is the prepared line. Line-vector preparations only.
bool support_law_holds(const OutcomeTable& table);

struct Finding {
    Line prepared;
    BasisLabel basis;
    Ratio success;
    bool always_correct = false;
    bool support_law = false;
    bool provisional = false;
};

/// Paper-literal deduction against the exact oracle for every prepared line
/// and every basis.
std::vector<Finding> paper_literal_findings(PrimeModulus d, const ProtocolOptions& options = {});

struct ProtocolTranscript {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    BasisLabel king_basis;
    Residue king_outcome;
    Line alice_outcome;
    BasisLabel revealed_basis;
    Residue deduced;
    bool success = false;
};

struct BasisTally {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::vector<std::uint64_t> king_counts;  // by m
};

struct ProtocolSummary {
    std::uint32_t d = 0;
    Preparation prep;
    DeductionRule rule = DeductionRule::line_rule;
    ProtocolOptions options;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::vector<BasisTally> per_basis;  // by column
    /// (column, m, line index) -> count
    std::map<std::tuple<std::size_t, std::uint32_t, std::size_t>, std::uint64_t> joint_counts;
};

struct ProtocolRun {
    std::vector<ProtocolTranscript> transcripts;
    ProtocolSummary summary;
};

struct RunSettings {
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    ProtocolOptions options;
};

/// Plays independent rounds: the King picks a basis uniformly from the d+1
/// labels and measures particle 1, Alice measures in the line-state basis,
/// learns the basis and deduces. Trial i depends only on (seed, i); the
/// transcript order and content do not depend on the thread count.
ProtocolRun run_protocol(PrimeModulus d, const Preparation& prep, DeductionRule rule, const RunSettings& settings);

struct GoodnessOfFit {
    double chi_square = 0.0;
    std::size_t dof = 0;
    std::uint64_t impossible_events = 0;  // samples in zero-probability cells

    /// (chi^2 - dof) / sqrt(2 dof)
    double z_score() const;
};

/// Pearson chi-square of the sampled (basis, m, j') counts against the exact
/// tables, each basis weighted by its own trial count.
GoodnessOfFit goodness_of_fit(PrimeModulus d, const ProtocolSummary& summary);

}  // namespace mubgeo

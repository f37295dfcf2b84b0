#include "mubgeo/meanking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

namespace mubgeo {

std::string Preparation::to_string() const {
    return kind == Kind::balanced ? "balanced" : "line" + line->to_string();
}

std::string to_string(DeductionRule r) { return r == DeductionRule::paper_literal ? "paper_literal" : "line_rule"; }

Ket prepared_state(PrimeModulus d, const Preparation& prep) {
    if (prep.kind == Preparation::Kind::balanced) return balanced_state<Cyclo>(d).ket.scaled(1);
    if (!prep.line || prep.line->modulus() != d) {
        throw Error(Errc::modulus_mismatch, "line preparation does not match d");
    }
    return line_state_geometric<Cyclo>(*prep.line).ket;
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    gen_.seed(seq);
}

std::uint64_t TrialRng::below(std::uint64_t n) {
    if (n == 0) throw Error(Errc::out_of_range, "empty sampling range");
    // reject the lowest 2^64 mod n values so the rest split evenly
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t x = gen_();
        if (x >= threshold) return x % n;
    }
}

std::size_t sample_exact(std::span<const Ratio> probs, TrialRng& rng) {
    if (probs.empty()) throw Error(Errc::not_normalized, "empty distribution");
    int k = 0;
    for (const auto& p : probs) k = std::max(k, p.exponent());
    const std::int64_t total = checked_power(probs.front().modulus().value(), k);
    std::vector<std::int64_t> weights;
    weights.reserve(probs.size());
    std::int64_t sum = 0;
    for (const auto& p : probs) {
        if (p.numerator() < 0) throw Error(Errc::not_normalized, "negative probability");
        weights.push_back(p.scaled_numerator(k));
        sum += weights.back();
    }
    if (sum != total) throw Error(Errc::not_normalized, "probabilities do not sum to 1");
    std::uint64_t u = rng.below(static_cast<std::uint64_t>(total));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (u < static_cast<std::uint64_t>(weights[i])) return i;
        u -= static_cast<std::uint64_t>(weights[i]);
    }
    return weights.size() - 1;  // unreachable: sum == total
}

namespace {

/// (|m;b><m;b| (x) 1) psi
Ket project_first(const Ket& psi, const MubIndex& idx) {
    const PrimeModulus d = psi.modulus();
    const Ket s = mub_state<Cyclo>(idx);
    Ket out(d, d.squared());
    for (std::uint32_t n2 = 0; n2 < d.value(); ++n2) {
        Cyclo c = Cyclo::zero(d);
        for (std::uint32_t n1 = 0; n1 < d.value(); ++n1) {
            const Cyclo& a = psi[pair_slot(d, n1, n2)];
            if (a.is_zero() || s[n1].is_zero()) continue;
            c += s[n1].conj() * a;
        }
        if (c.is_zero()) continue;
        for (std::uint32_t n1 = 0; n1 < d.value(); ++n1) out[pair_slot(d, n1, n2)] = s[n1] * c;
    }
    return out;
}

/// Line states are immutable per d and reused by every table.
const std::vector<Ket>& geometric_line_states(PrimeModulus d) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const std::vector<Ket>>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[d.value()];
    if (!slot) {
        auto states = std::make_shared<std::vector<Ket>>();
        states->reserve(d.squared());
        for (const auto& j : all_lines(d)) states->push_back(line_state_geometric<Cyclo>(j).ket);
        slot = std::move(states);
    }
    return *slot;
}

std::vector<Ratio> line_distribution(const Ket& v, const std::vector<Ket>& lines) {
    std::vector<Ratio> out;
    out.reserve(lines.size());
    for (const auto& l : lines) out.push_back(inner(l, v).norm_squared());
    return out;
}

}  // namespace

std::vector<KingBranch> king_branches(PrimeModulus d, const Preparation& prep, const BasisLabel& b) {
    const Ket psi = prepared_state(d, prep);
    std::vector<KingBranch> out;
    out.reserve(d.value());
    for (std::uint32_t m = 0; m < d.value(); ++m) {
        const Residue rm(d, m);
        Ket post = project_first(psi, {rm, b});
        const Ratio p = norm_squared(post);
        if (p.is_zero()) {
            out.push_back({rm, p, std::move(post)});
            continue;
        }
        // renormalize by 1/sqrt(p); exact when p = 1/d^k
        if (p.numerator() != 1) {
            throw Error(Errc::not_representable, "outcome probability " + p.to_string() + " is not 1/d^k");
        }
        out.push_back({rm, p, post.scaled(-p.exponent())});
    }
    return out;
}

KingOutcome king_measure(PrimeModulus d, const Preparation& prep, const BasisLabel& b, TrialRng& rng) {
    auto branches = king_branches(d, prep, b);
    std::vector<Ratio> probs;
    for (const auto& br : branches) probs.push_back(br.probability);
    auto& br = branches[sample_exact(probs, rng)];
    return {br.m, std::move(br.post)};
}

Ket alice_correction(const Preparation& prep, const Ket& post) {
    if (prep.kind == Preparation::Kind::balanced) return post;
    return apply_second(adjoint(line_monomial(*prep.line)), post);
}

std::vector<Ratio> alice_distribution(const Ket& post) {
    if (!post.is_pair() || !is_normalized(post)) {
        throw Error(Errc::not_normalized, "control measurement needs a normalized two-particle state");
    }
    return line_distribution(post, geometric_line_states(post.modulus()));
}

Line alice_measure(const Ket& post, TrialRng& rng) {
    const auto probs = alice_distribution(post);
    return Line::from_index(post.modulus(), sample_exact(probs, rng));
}

Residue deduce(DeductionRule rule, const std::optional<Line>& prepared, const Line& measured, const BasisLabel& b) {
    if (rule == DeductionRule::line_rule) return measured.row_at(b);
    if (!prepared) throw Error(Errc::not_representable, "paper-literal deduction needs a prepared line");
    const Line& j = *prepared;
    if (b.is_computational()) return j.mddot - measured.mddot + j.m0 - measured.m0;
    return j.m0 - measured.m0 + half(b.value()) * (j.mddot - measured.mddot);
}

Ratio OutcomeTable::row_sum(std::uint32_t m) const {
    Ratio acc = Ratio::zero(PrimeModulus::make(d));
    for (std::size_t l = 0; l < std::size_t{d} * d; ++l) acc += at(m, l);
    return acc;
}

Ratio OutcomeTable::total() const {
    Ratio acc = Ratio::zero(PrimeModulus::make(d));
    for (const auto& p : probs) acc += p;
    return acc;
}

std::size_t OutcomeTable::nonzero() const {
    return static_cast<std::size_t>(std::count_if(probs.begin(), probs.end(), [](const Ratio& r) { return !r.is_zero(); }));
}

OutcomeTable exact_joint_distribution(PrimeModulus d, const Preparation& prep, const BasisLabel& b,
                                      const ProtocolOptions& options) {
    const Ket psi = prepared_state(d, prep);
    const auto& lines = geometric_line_states(d);
    OutcomeTable t{d.value(), prep, b, options, {}};
    t.probs.reserve(std::size_t{d.value()} * lines.size());
    for (std::uint32_t m = 0; m < d.value(); ++m) {
        Ket v = project_first(psi, {Residue(d, m), b});
        if (options.unrotate) v = alice_correction(prep, v);
        const auto row = line_distribution(v, lines);
        t.probs.insert(t.probs.end(), row.begin(), row.end());
    }
    return t;
}

namespace {

Fraction reduce(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

/// Uniform average over the given per-basis success values.
Fraction uniform_average(const std::vector<Ratio>& values, std::uint32_t d, std::size_t bases) {
    if (values.empty()) return {0, 1};
    int k = 0;
    for (const auto& v : values) k = std::max(k, v.exponent());
    std::int64_t num = 0;
    for (const auto& v : values) num += v.scaled_numerator(k);
    return reduce(num, checked_power(d, k) * static_cast<std::int64_t>(bases));
}

BasisSuccess basis_success(const OutcomeTable& t, DeductionRule rule) {
    const PrimeModulus d = PrimeModulus::make(t.d);
    Ratio success = Ratio::zero(d);
    bool always = true;
    for (std::uint32_t m = 0; m < d.value(); ++m) {
        for (std::size_t l = 0; l < d.squared(); ++l) {
            const Ratio p = t.at(m, l);
            if (p.is_zero()) continue;
            if (deduce(rule, t.prep.line, Line::from_index(d, l), t.basis) == Residue(d, m)) success += p;
            else always = false;
        }
    }
    const bool provisional = rule == DeductionRule::paper_literal && t.basis.is_computational();
    return {t.basis, success, always, provisional};
}

}  // namespace

SuccessReport evaluate_rule(PrimeModulus d, const Preparation& prep, DeductionRule rule,
                            const ProtocolOptions& options) {
    SuccessReport rep;
    rep.d = d.value();
    rep.prep = prep;
    rep.rule = rule;
    rep.options = options;
    rep.worst_case_ok = true;
    std::vector<Ratio> all, definite;
    for (const auto& b : all_bases(d)) {
        const BasisSuccess bs = basis_success(exact_joint_distribution(d, prep, b, options), rule);
        rep.per_basis.push_back(bs);
        all.push_back(bs.success);
        if (!bs.provisional) {
            definite.push_back(bs.success);
            rep.worst_case_ok &= bs.always_correct;
        }
    }
    rep.overall = uniform_average(all, d.value(), all.size());
    rep.overall_definite = uniform_average(definite, d.value(), definite.size());
    return rep;
}

bool support_law_holds(const OutcomeTable& table) {
    if (table.prep.kind != Preparation::Kind::line_vector) return false;
    const PrimeModulus d = PrimeModulus::make(table.d);
    const Line& j = *table.prep.line;
    for (std::uint32_t m = 0; m < d.value(); ++m) {
        for (std::size_t l = 0; l < d.squared(); ++l) {
            const Line jp = Line::from_index(d, l);
            const bool law = table.basis.is_computational()
                                 ? jp.mddot == j.mddot
                                 : (j.m0 - jp.m0 + table.basis.value() * (j.mddot - jp.mddot)) == 0;
            if (law == table.at(m, l).is_zero()) return false;
        }
    }
    return true;
}

std::vector<Finding> paper_literal_findings(PrimeModulus d, const ProtocolOptions& options) {
    std::vector<Finding> out;
    for (const auto& j : all_lines(d)) {
        for (const auto& b : all_bases(d)) {
            const OutcomeTable t = exact_joint_distribution(d, Preparation::line_vector(j), b, options);
            const BasisSuccess bs = basis_success(t, DeductionRule::paper_literal);
            out.push_back({j, b, bs.success, bs.always_correct, support_law_holds(t), bs.provisional});
        }
    }
    return out;
}

namespace {

/// Exact King distributions and Alice distributions for every (basis, m),
/// built with the same routines king_measure and alice_measure use.
struct ProtocolTables {
    std::vector<std::vector<Ratio>> king;                // [column][m]
    std::vector<std::vector<std::vector<Ratio>>> alice;  // [column][m][line]

    ProtocolTables(PrimeModulus d, const Preparation& prep, const ProtocolOptions& options) {
        for (const auto& b : all_bases(d)) {
            std::vector<Ratio> kp;
            std::vector<std::vector<Ratio>> ap;
            for (const auto& br : king_branches(d, prep, b)) {
                kp.push_back(br.probability);
                if (br.probability.is_zero()) {
                    ap.emplace_back();
                    continue;
                }
                ap.push_back(alice_distribution(options.unrotate ? alice_correction(prep, br.post) : br.post));
            }
            king.push_back(std::move(kp));
            alice.push_back(std::move(ap));
        }
    }
};

ProtocolTranscript play_trial(PrimeModulus d, const Preparation& prep, DeductionRule rule, const ProtocolTables& tables,
                              std::uint64_t seed, std::uint64_t trial) {
    TrialRng rng(seed, trial);
    const std::size_t column = rng.below(d.value() + 1);
    const BasisLabel b = BasisLabel::from_column(d, column);
    const std::size_t m = sample_exact(tables.king[column], rng);
    const Line jp = Line::from_index(d, sample_exact(tables.alice[column][m], rng));
    // Alice learns b only now.
    const Residue guess = deduce(rule, prep.line, jp, b);
    const Residue rm(d, static_cast<std::int64_t>(m));
    return {seed, trial, b, rm, jp, b, guess, guess == rm};
}

}  // namespace

ProtocolRun run_protocol(PrimeModulus d, const Preparation& prep, DeductionRule rule, const RunSettings& settings) {
    if (settings.trials < 1) throw Error(Errc::out_of_range, "trials must be >= 1");
    const ProtocolTables tables(d, prep, settings.options);

    std::vector<std::optional<ProtocolTranscript>> slots(settings.trials);
    const unsigned threads = std::max(1u, std::min<unsigned>(settings.threads, settings.trials));
    auto worker = [&](unsigned w) {
        for (std::uint64_t i = w; i < settings.trials; i += threads) {
            slots[i] = play_trial(d, prep, rule, tables, settings.seed, i);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    }

    ProtocolRun run;
    auto& s = run.summary;
    s.d = d.value();
    s.prep = prep;
    s.rule = rule;
    s.options = settings.options;
    s.seed = settings.seed;
    s.trials = settings.trials;
    s.per_basis.assign(d.value() + 1, BasisTally{0, 0, std::vector<std::uint64_t>(d.value(), 0)});
    run.transcripts.reserve(settings.trials);
    for (auto& slot : slots) {
        const ProtocolTranscript& t = *slot;
        auto& tally = s.per_basis[t.king_basis.column()];
        ++tally.trials;
        ++tally.king_counts[t.king_outcome.value()];
        if (t.success) {
            ++tally.successes;
            ++s.successes;
        }
        ++s.joint_counts[{t.king_basis.column(), t.king_outcome.value(), t.alice_outcome.index()}];
        run.transcripts.push_back(t);
    }
    return run;
}

double GoodnessOfFit::z_score() const {
    if (dof == 0) return 0.0;
    return (chi_square - static_cast<double>(dof)) / std::sqrt(2.0 * static_cast<double>(dof));
}

GoodnessOfFit goodness_of_fit(PrimeModulus d, const ProtocolSummary& summary) {
    GoodnessOfFit fit;
    for (const auto& b : all_bases(d)) {
        const std::uint64_t n = summary.per_basis.at(b.column()).trials;
        if (n == 0) continue;
        const OutcomeTable t = exact_joint_distribution(d, summary.prep, b, summary.options);
        std::size_t cells = 0;
        for (std::uint32_t m = 0; m < d.value(); ++m) {
            for (std::size_t l = 0; l < d.squared(); ++l) {
                const auto it = summary.joint_counts.find({b.column(), m, l});
                const double observed = it == summary.joint_counts.end() ? 0.0 : static_cast<double>(it->second);
                const Ratio p = t.at(m, l);
                if (p.is_zero()) {
                    fit.impossible_events += static_cast<std::uint64_t>(observed);
                    continue;
                }
                const double expected = static_cast<double>(n) * p.to_double();
                fit.chi_square += (observed - expected) * (observed - expected) / expected;
                ++cells;
            }
        }
        fit.dof += cells - 1;
    }
    return fit;
}

}  // namespace mubgeo

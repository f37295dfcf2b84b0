// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 when the failing set equals the --expect-fail list
// (default empty), so a known gap stays visible without masking regressions.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "mubgeo/report.hpp"

using namespace mubgeo;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    std::string first_failure;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) first_failure = what;
        pass &= ok;
    }
};

PrimeModulus P(int d) { return PrimeModulus::make(d); }

Line ln(PrimeModulus d, int mddot, int m0) { return {Residue(d, mddot), Residue(d, m0)}; }

bool all_pass(const std::vector<Check>& checks, Outcome& o, const std::string& ctx) {
    bool ok = true;
    for (const auto& c : checks) {
        o.require(c.passed, ctx + " " + c.suite + "." + c.name + " " + c.detail);
        ok &= c.passed;
    }
    return ok;
}

/// |count - n p| <= 5 sigma
bool binomial_ok(std::uint64_t count, std::uint64_t n, double p) {
    const double sigma = std::sqrt(static_cast<double>(n) * p * (1 - p));
    return std::abs(static_cast<double>(count) - static_cast<double>(n) * p) <= 5 * sigma + 1e-9;
}

std::string transcripts_jsonl(const ProtocolRun& run) {
    std::string s;
    for (const auto& t : run.transcripts) s += to_json(t).dump() + "\n";
    return s;
}

void mub_suite(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    for (int dv : {3, 5, 7, 11, 13}) {
        const auto d = P(dv);
        all_pass(mub_checks(d, Backend::exact, 0.0), o, "d=" + std::to_string(dv) + " exact");
        all_pass(mub_checks(d, Backend::floating, 1e-10), o, "d=" + std::to_string(dv) + " float");
        const auto all = all_mub_indices(d);
        for (const auto& a : all)
            for (const auto& b : all)
                if (!(a.b == b.b)) o.require(overlap_magnitude_squared(a, b) == Ratio(d, 1, 1), "cross overlap");
        for (const auto& b : all_bases(d)) {
            if (b.is_computational()) continue;
            for (int m = 0; m < dv; ++m) o.require(check_eigenrelation({Residue(d, m), b}), "eigenrelation");
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < 10.0, "runtime");
    o.note << "d=3,5,7,11,13 exact and float, " << secs << " s";
}

void geometry_suite(Outcome& o) {
    for (int dv : {3, 5, 7, 11}) {
        const auto d = P(dv);
        const AxiomReport r = verify_axioms(d);
        o.require(r.all_passed(), "axioms d=" + std::to_string(dv));
        o.require(r.num_lines == static_cast<std::size_t>(dv * dv), "line count");
        o.require(r.num_points == static_cast<std::size_t>(dv * (dv + 1)), "point count");
        all_pass(geometry_checks(d), o, "d=" + std::to_string(dv));
        const auto inc = Incidence::of(d);
        for (std::size_t l = 0; l < inc->lines().size(); ++l) o.require(inc->points_of(l).size() == std::size_t(dv + 1), "points/line");
        for (const auto& p : all_mub_indices(d)) o.require(lines_through_point(p).size() == std::size_t(dv), "lines/point");
        const auto lines = all_lines(d);
        for (std::size_t a = 0; a < lines.size(); ++a) {
            const auto pa = line_points(lines[a]);
            for (std::size_t b = a + 1; b < lines.size(); ++b) {
                std::size_t common = 0;
                for (const auto& p : pa) common += point_on_line(p, lines[b]);
                o.require(common == 1, "line pair meets once");
            }
        }
    }
    std::string s;
    for (const auto& p : line_points(ln(P(3), 1, 2))) s += p.to_string();
    o.require(s == "(1,CB)(2,0)(1,1)(0,2)", "worked example " + s);
    o.note << "d=3,5,7,11; d=3 line (1,2) = {" << s << "}";
}

void balance_suite(Outcome& o) {
    for (int dv : {3, 5, 7, 11}) {
        const auto d = P(dv);
        Ket r(d, d.squared());
        for (int n = 0; n < dv; ++n) r[pair_slot(d, n, n)] = Cyclo::one(d);
        o.require(balanced_state<Cyclo>(d).ket.equals(r), "R");
        o.require(norm_squared(r) == Ratio(d, dv, 0), "<R|R> = d");
        for (const auto& b : all_bases(d)) {
            Ket sum(d, d.squared());
            for (int m = 0; m < dv; ++m) sum += product_state<Cyclo>({Residue(d, m), b}).ket;
            o.require(sum.equals(r), "column " + b.to_string() + " d=" + std::to_string(dv));
        }
    }
    o.note << "every column incl. CB, d=3,5,7,11; <R|R> = d";
}

void line_state_suite(Outcome& o) {
    for (int dv : {3, 5, 7}) {
        const auto d = P(dv);
        std::optional<std::uint32_t> offset;
        bool fixed = true;
        for (const auto& j : all_lines(d)) {
            const Ket g = line_state_geometric<Cyclo>(j).ket;
            const Ket c = line_state_closed<Cyclo>(j).ket;
            std::optional<std::uint32_t> t;
            for (int k = 0; k < dv && !t; ++k)
                if ((Cyclo::root(Residue(d, k)) * g).equals(c)) t = k;
            o.require(t.has_value(), "closed vs geometric " + j.to_string());
            if (t && offset && *t != *offset) fixed = false;
            if (t && !offset) offset = t;
            o.require(reduced_is_maximally_mixed(g, 1) && reduced_is_maximally_mixed(g, 2), "reduced density");
        }
        o.require(fixed, "global phase offset varies");
        o.require(verify_orthonormality(d).identity(), "gram");
        o.note << "d=" << dv << " offset omega^" << (offset ? std::to_string(*offset) : "?") << "; ";
    }
    o.note << "Gram = I, reduced = I/d";
}

void overlap_theorem(Outcome& o) {
    std::size_t phase_agree = 0, phase_total = 0;
    std::set<std::uint32_t> measured;
    for (int dv : {3, 5}) {
        const auto d = P(dv);
        const Cyclo inv_sqrt = Cyclo::one(d).scaled(1);
        for (const auto& j : all_lines(d)) {
            for (const auto& p : all_mub_indices(d)) {
                const Cyclo ov = overlap_point_line<Cyclo>(p, j);
                const Ratio sq = ov.norm_squared();
                const bool on = point_on_line(p, j);
                o.require(on ? sq == Ratio(d, 1, 1) : sq == Ratio::zero(d), "squared overlap " + p.to_string() + j.to_string());
                if (!on) continue;
                if (p.b.is_computational()) {
                    o.require(ov == inv_sqrt, "CB coefficient 1/sqrt(d)");
                    continue;
                }
                ++phase_total;
                phase_agree += ov == claimed_overlap_phase(p, j);
                if (auto e = ov.as_root_power(1)) measured.insert(e->value());
            }
        }
    }
    o.require(phase_agree == phase_total, "phase omega^(2b mddot^2 - b mddot)");
    o.note << "|.|^2 in {0,1/d} iff incident: ok; CB coefficient = 1/sqrt(d) (1/sqrt(2) flagged as suspected typo); "
           << "phase omega^(2b mddot^2 - b mddot) holds at " << phase_agree << "/" << phase_total
           << " on-line points, measured exponent set {";
    for (auto e : measured) o.note << e;
    o.note << "}";
}

void appendix_projectors(Outcome& o) {
    for (int dv : {3, 5}) {
        const auto d = P(dv);
        for (const auto& i : all_mub_indices(d)) {
            const Ket s = mub_state<Cyclo>(i);
            for (int n = 0; n < dv; ++n) {
                for (int n2 = 0; n2 < dv; ++n2) {
                    const Residue a(d, n), b(d, n2);
                    const Cyclo f = i.b.is_computational() ? cb_projector_element(i, a, b) : projector_element(i, a, b);
                    o.require(f == s[n] * s[n2].conj(), "projector element " + i.to_string());
                }
            }
        }
        for (const auto& j : all_lines(d)) {
            o.require(line_sum_matrix(j, j.mddot, j.mddot) == Cyclo::one(d), "unit diagonal");
            for (int n = 0; n < dv; ++n) {
                for (int n2 = 0; n2 < dv; ++n2) {
                    const bool support = Residue(d, n + n2) == j.mddot * 2;
                    o.require(line_sum_matrix(j, Residue(d, n), Residue(d, n2)).is_zero() != support, "line-sum support");
                }
            }
        }
        const ConformanceReport c = build_conformance(d);
        o.require(c.resolved_sign == ExponentSign::minus, "sign regression");
        o.require(c.minus_sign_matches_states && c.minus_sign_matches_line_sum, "minus sign");
        o.require(!c.plus_sign_matches_states && !c.plus_sign_matches_line_sum, "plus sign excluded");
    }
    o.note << "d=3,5; sign resolved to omega^(-(n-n') m0)";
}

void certified_path(Outcome& o) {
    for (int dv : {3, 5, 7}) {
        const auto d = P(dv);
        const SuccessReport r = evaluate_rule(d, Preparation::balanced(), DeductionRule::line_rule);
        o.require(r.overall == (Fraction{1, 1}) && r.worst_case_ok, "exact success d=" + std::to_string(dv));
        const RunSettings base{10000, 20240611, 1, {}};
        const ProtocolRun first = run_protocol(d, Preparation::balanced(), DeductionRule::line_rule, base);
        o.require(first.summary.successes == 10000, "10^4/10^4 d=" + std::to_string(dv));
        const std::string ref = transcripts_jsonl(first);
        for (unsigned th : {1u, 2u, 8u}) {
            RunSettings s = base;
            s.threads = th;
            o.require(transcripts_jsonl(run_protocol(d, Preparation::balanced(), DeductionRule::line_rule, s)) == ref,
                      "transcripts differ at threads=" + std::to_string(th));
        }
    }
    o.note << "exact 1/1 at d=3,5,7; 10000/10000 at seed 20240611; transcripts identical over reruns and 1,2,8 threads";
}

void paper_literal_path(Outcome& o) {
    double worst_z = -1e9;
    for (int dv : {3, 5}) {
        const auto d = P(dv);
        for (const auto& j : {ln(d, 0, 0), ln(d, 1, 2)}) {
            const auto prep = Preparation::line_vector(j);
            const ProtocolRun run = run_protocol(d, prep, DeductionRule::paper_literal, {10000, 77, 4, {}});
            const GoodnessOfFit fit = goodness_of_fit(d, run.summary);
            o.require(fit.impossible_events == 0, "impossible events");
            o.require(fit.z_score() <= 5.0, "chi-square z");
            worst_z = std::max(worst_z, fit.z_score());
            const SuccessReport exact = evaluate_rule(d, prep, DeductionRule::paper_literal);
            o.require(binomial_ok(run.summary.successes, run.summary.trials, exact.overall.to_double()), "success rate");
        }
        std::size_t agree = 0, definite = 0;
        const auto findings = paper_literal_findings(d);
        o.require(findings.size() == static_cast<std::size_t>(dv * dv * (dv + 1)), "findings cover every (j, b)");
        for (const auto& f : findings) {
            if (f.provisional) continue;
            ++definite;
            agree += f.always_correct;
            // recompute the entry from the exact table
            const auto t = exact_joint_distribution(d, Preparation::line_vector(f.prepared), f.basis);
            Ratio s = Ratio::zero(d);
            for (std::uint32_t m = 0; m < d.value(); ++m)
                for (std::size_t l = 0; l < t.d * t.d; ++l)
                    if (deduce(DeductionRule::paper_literal, f.prepared, Line::from_index(d, l), f.basis).value() == m)
                        s = s + t.at(m, l);
            o.require(s == f.success, "finding " + f.prepared.to_string() + " " + f.basis.to_string());
        }
        o.note << "d=" << dv << " deduction always correct in " << agree << "/" << definite << " (j,b); ";
    }
    o.note << "worst chi-square z " << worst_z;
}

void king_uniformity(Outcome& o) {
    const std::uint64_t n = 10000;
    for (int dv : {3, 5}) {
        const auto d = P(dv);
        for (const auto& prep : {Preparation::balanced(), Preparation::line_vector(ln(d, 1, 2))}) {
            for (const auto& b : all_bases(d)) {
                for (const auto& br : king_branches(d, prep, b)) o.require(br.probability == Ratio(d, 1, 1), "exact P(m)");
                std::vector<std::uint64_t> counts(dv);
                for (std::uint64_t t = 0; t < n; ++t) {
                    TrialRng rng(31337 + b.column(), t);
                    ++counts[king_measure(d, prep, b, rng).m.value()];
                }
                for (auto c : counts) o.require(binomial_ok(c, n, 1.0 / dv), "frequency " + prep.to_string() + " " + b.to_string());
            }
        }
    }
    o.note << "d=3,5, balanced and line(1,2), every basis, 10^4 draws each";
}

void backend_coherence(Outcome& o) {
    for (int dv : {3, 5, 7}) {
        const auto d = P(dv);
        all_pass(coherence_checks(d, 1e-10), o, "d=" + std::to_string(dv));
        all_pass(verify(d, Backend::floating, 1e-10).checks, o, "float d=" + std::to_string(dv));
    }
    o.note << "d=3,5,7 within 1e-10";
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected_fail;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--expect-fail" && i + 1 < argc) {
            std::stringstream list(argv[++i]);
            for (std::string x; std::getline(list, x, ',');) expected_fail.insert(std::stoi(x));
        } else {
            std::cerr << "usage: acceptance [--expect-fail N[,N...]]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"MUB suite", mub_suite},
        {"geometry suite", geometry_suite},
        {"balance suite", balance_suite},
        {"line-state suite", line_state_suite},
        {"overlap theorem", overlap_theorem},
        {"projector elements and line sums", appendix_projectors},
        {"Mean King certified path", certified_path},
        {"Mean King paper-literal path", paper_literal_path},
        {"King-outcome uniformity", king_uniformity},
        {"backend coherence", backend_coherence},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const int id = static_cast<int>(i + 1);
        if (!o.pass) failed.insert(id);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << criteria[i].first << ": " << o.note.str();
        if (!o.pass) std::cout << " [first failure: " << o.first_failure << "]";
        std::cout << std::endl;
    }
    if (failed != expected_fail) {
        std::cout << "failing set differs from expected\n";
        return 1;
    }
    return 0;
}

#include "mubgeo/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mubgeo/report.hpp"

namespace mubgeo {

namespace {

namespace fs = std::filesystem;

struct BadArgs : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::vector<std::int64_t> d_list{3};
    std::string backend = "exact";
    double tol = 1e-10;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 10000;
    std::string out;
    std::string transcripts;
    std::string format = "json";
    std::string prep = "balanced";
    std::string rule = "line";
    std::string basis = "all";
    bool unrotate = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

std::vector<PrimeModulus> moduli(const RunConfig& cfg) {
    std::vector<PrimeModulus> out;
    for (auto d : cfg.d_list) {
        try {
            out.push_back(PrimeModulus::make(d));
        } catch (const Error& e) {
            throw BadArgs(std::string("--d ") + std::to_string(d) + ": " + e.what());
        }
    }
    if (out.empty()) throw BadArgs("--d needs at least one value");
    return out;
}

std::vector<std::uint32_t> d_values(const std::vector<PrimeModulus>& ds) {
    std::vector<std::uint32_t> out;
    for (auto d : ds) out.push_back(d.value());
    return out;
}

Preparation parse_prep(PrimeModulus d, const std::string& text) {
    if (text == "balanced") return Preparation::balanced();
    if (text.rfind("line:", 0) == 0) {
        const std::string body = text.substr(5);
        const auto comma = body.find(',');
        if (comma != std::string::npos) {
            try {
                return Preparation::line_vector(
                    {Residue(d, std::stoll(body.substr(0, comma))), Residue(d, std::stoll(body.substr(comma + 1)))});
            } catch (const std::logic_error&) {
            }
        }
    }
    throw BadArgs("--prep must be 'balanced' or 'line:MDDOT,M0', got '" + text + "'");
}

DeductionRule parse_rule(const std::string& text) {
    if (text == "line") return DeductionRule::line_rule;
    if (text == "paper") return DeductionRule::paper_literal;
    throw BadArgs("--rule must be 'line' or 'paper'");
}

std::vector<BasisLabel> parse_bases(PrimeModulus d, const std::string& text) {
    if (text == "all") return all_bases(d);
    try {
        return {BasisLabel::parse(d, text)};
    } catch (const Error& e) {
        throw BadArgs(std::string("--basis: ") + e.what());
    }
}

Backend backend_of(const RunConfig& cfg) {
    try {
        return parse_backend(cfg.backend);
    } catch (const Error& e) {
        throw BadArgs(e.what());
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
void write_atomic(const fs::path& path, const std::string& content) {
    try {
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        fs::path tmp = path;
        tmp += ".tmp" + std::to_string(std::random_device{}());
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw IoError("cannot open " + tmp.string());
            f << content;
            f.flush();
            if (!f) {
                std::error_code ec;
                fs::remove(tmp, ec);
                throw IoError("cannot write " + tmp.string());
            }
        }
        fs::rename(tmp, path);
    } catch (const fs::filesystem_error& e) {
        throw IoError(e.what());
    }
}

/// --out, else MUBGEO_OUT_DIR/default_name, else none (stdout).
std::optional<fs::path> output_path(const RunConfig& cfg, const std::string& default_name) {
    if (!cfg.out.empty()) return fs::path(cfg.out);
    if (const char* dir = std::getenv("MUBGEO_OUT_DIR"); dir && *dir) return fs::path(dir) / default_name;
    return std::nullopt;
}

void emit(const RunConfig& cfg, const std::string& default_name, const std::string& content, std::ostream& out,
          std::ostream& err) {
    if (auto path = output_path(cfg, default_name)) {
        write_atomic(*path, content);
        err << "wrote " << path->string() << '\n';
    } else {
        out << content;
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_json(const RunConfig& cfg) {
    if (cfg.format != "json") throw BadArgs(cfg.command + " writes JSON only");
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_json(cfg);
    const auto ds = moduli(cfg);
    const Backend backend = backend_of(cfg);
    if (!(cfg.tol > 0.0)) throw BadArgs("--tol must be positive");
    Json rep = report_envelope("verify", d_values(ds), backend, std::nullopt);
    if (backend == Backend::floating) rep["tol"] = cfg.tol;
    Json results = Json::array();
    bool all = true;
    for (auto d : ds) {
        const VerifyReport r = verify(d, backend, cfg.tol);
        std::size_t passed = 0;
        for (const auto& c : r.checks) {
            passed += c.passed;
            if (!c.passed) err << "FAIL d=" << d.value() << ' ' << c.suite << '.' << c.name << ' ' << c.detail << '\n';
        }
        err << "d=" << d.value() << ' ' << to_string(backend) << ": " << passed << '/' << r.checks.size()
            << " checks pass\n";
        all &= r.all_passed();
        results.push_back(to_json(r));
    }
    rep["passed"] = all;
    rep["results"] = results;
    emit(cfg, "verify.json", dump(rep), out, err);
    return all ? kExitOk : kExitCheckFailed;
}

int cmd_geometry(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto ds = moduli(cfg);
    if (cfg.format == "csv") {
        if (ds.size() != 1) throw BadArgs("CSV incidence output takes a single --d");
        emit(cfg, "incidence-d" + std::to_string(ds[0].value()) + ".csv", incidence_csv(ds[0]), out, err);
        return kExitOk;
    }
    if (cfg.format != "json") throw BadArgs("--format must be json or csv");
    Json rep = report_envelope("geometry", d_values(ds), Backend::exact, std::nullopt);
    Json results = Json::array();
    for (auto d : ds) results.push_back(geometry_json(d));
    rep["results"] = results;
    emit(cfg, "geometry.json", dump(rep), out, err);
    return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_json(cfg);
    const auto ds = moduli(cfg);
    ProtocolOptions options{cfg.unrotate};
    Json rep = report_envelope("oracle", d_values(ds), Backend::exact, std::nullopt);
    Json results = Json::array();
    for (auto d : ds) {
        const Preparation prep = parse_prep(d, cfg.prep);
        Json tables = Json::array();
        for (const auto& b : parse_bases(d, cfg.basis)) {
            const OutcomeTable t = exact_joint_distribution(d, prep, b, options);
            if (!(t.total() == Ratio::one(d))) {
                err << "table for d=" << d.value() << " b=" << b.to_string() << " sums to " << t.total().to_string()
                    << '\n';
                return kExitCheckFailed;
            }
            tables.push_back(to_json(t));
        }
        Json rules = Json::array();
        rules.push_back(to_json(evaluate_rule(d, prep, DeductionRule::line_rule, options)));
        if (prep.kind == Preparation::Kind::line_vector) {
            rules.push_back(to_json(evaluate_rule(d, prep, DeductionRule::paper_literal, options)));
        }
        results.push_back({{"d", d.value()},
                           {"preparation", prep.to_string()},
                           {"unrotate", options.unrotate},
                           {"tables", tables},
                           {"rules", rules}});
    }
    rep["results"] = results;
    emit(cfg, "oracle.json", dump(rep), out, err);
    return kExitOk;
}

/// |x - mean| <= 5 sigma for a binomial count; exact when p is 0 or 1.
bool within_five_sigma(std::uint64_t count, std::uint64_t n, double p) {
    const double mean = static_cast<double>(n) * p;
    const double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    return std::abs(static_cast<double>(count) - mean) <= 5.0 * sigma + 1e-9;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto ds = moduli(cfg);
    if (cfg.trials < 1) throw BadArgs("--trials must be >= 1");
    if (cfg.format != "json" && cfg.format != "csv") throw BadArgs("--format must be json or csv");
    if (cfg.format == "csv" && ds.size() != 1) throw BadArgs("CSV summary output takes a single --d");
    const DeductionRule rule = parse_rule(cfg.rule);
    std::uint64_t seed;
    if (cfg.seed) {
        seed = *cfg.seed;
    } else {
        std::random_device rd;
        seed = (std::uint64_t{rd()} << 32) | rd();
        err << "seed: " << seed << '\n';
    }
    const RunSettings settings{cfg.trials, seed, std::max(1u, cfg.threads), ProtocolOptions{cfg.unrotate}};

    Json rep = report_envelope("simulate", d_values(ds), Backend::exact, seed);
    Json results = Json::array();
    std::string jsonl, csv;
    bool agree = true;
    for (auto d : ds) {
        const Preparation prep = parse_prep(d, cfg.prep);
        if (rule == DeductionRule::paper_literal && prep.kind != Preparation::Kind::line_vector) {
            throw BadArgs("--rule paper needs --prep line:MDDOT,M0");
        }
        const ProtocolRun run = run_protocol(d, prep, rule, settings);
        const SuccessReport exact = evaluate_rule(d, prep, rule, settings.options);
        const GoodnessOfFit fit = goodness_of_fit(d, run.summary);
        bool king_uniform = true;
        for (const auto& t : run.summary.per_basis)
            for (auto k : t.king_counts) king_uniform &= within_five_sigma(k, t.trials, 1.0 / d.value());
        const bool success_ok = within_five_sigma(run.summary.successes, run.summary.trials, exact.overall.to_double());
        const bool fit_ok = fit.impossible_events == 0 && fit.z_score() <= 5.0;
        agree &= success_ok && fit_ok && king_uniform;

        Json s = summary_json(d, run.summary);
        s["oracle_agreement"] = {{"exact_success", exact.overall.to_string()},
                                 {"exact_success_excluding_provisional", exact.overall_definite.to_string()},
                                 {"success_within_5_sigma", success_ok},
                                 {"chi_square", fit.chi_square},
                                 {"dof", fit.dof},
                                 {"z_score", fit.z_score()},
                                 {"impossible_events", fit.impossible_events},
                                 {"distribution_within_5_sigma", fit_ok},
                                 {"king_outcomes_within_5_sigma", king_uniform}};
        results.push_back(s);
        err << "d=" << d.value() << ' ' << prep.to_string() << ' ' << to_string(rule) << ": "
            << run.summary.successes << '/' << run.summary.trials << " successes (exact "
            << exact.overall.to_string() << ")\n";
        for (const auto& t : run.transcripts) jsonl += to_json(t).dump() + "\n";
        csv += summary_csv(run.summary);
    }
    rep["results"] = results;

    if (cfg.format == "csv") {
        emit(cfg, "simulate-summary.csv", csv, out, err);
    } else {
        emit(cfg, "simulate.json", dump(rep), out, err);
    }
    std::optional<fs::path> tpath;
    if (!cfg.transcripts.empty()) tpath = cfg.transcripts;
    else if (auto p = output_path(cfg, "simulate.json")) tpath = fs::path(*p).replace_extension(".transcripts.jsonl");
    if (tpath) {
        write_atomic(*tpath, jsonl);
        err << "wrote " << tpath->string() << '\n';
    }
    return agree ? kExitOk : kExitCheckFailed;
}

int cmd_findings(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_json(cfg);
    const auto ds = moduli(cfg);
    Json rep = report_envelope("findings", d_values(ds), Backend::exact, std::nullopt);
    Json results = Json::array();
    for (auto d : ds) {
        Json per_flag = Json::array();
        for (bool unrotate : {false, true}) {
            const ProtocolOptions options{unrotate};
            std::size_t agree = 0, definite = 0, support = 0;
            Json rows = Json::array();
            const auto findings = paper_literal_findings(d, options);
            for (const auto& f : findings) {
                rows.push_back(to_json(f));
                support += f.support_law;
                if (f.provisional) continue;
                ++definite;
                agree += f.always_correct;
            }
            per_flag.push_back({{"unrotate", unrotate},
                                {"cases", findings.size()},
                                {"support_law_holds", support},
                                {"non_provisional_cases", definite},
                                {"deduction_always_correct", agree},
                                {"line_rule_balanced",
                                 to_json(evaluate_rule(d, Preparation::balanced(), DeductionRule::line_rule, options))},
                                {"findings", rows}});
            err << "d=" << d.value() << " unrotate=" << unrotate << ": paper-literal deduction always correct in "
                << agree << '/' << definite << " non-provisional cases; support law " << support << '/'
                << findings.size() << '\n';
        }
        Json entry = {{"d", d.value()}, {"paper_literal", per_flag}};
        if (d.value() <= 11) entry["conformance"] = to_json(build_conformance(d));
        results.push_back(entry);
    }
    rep["results"] = results;
    emit(cfg, "findings.json", dump(rep), out, err);
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--d", cfg.d_list, "odd primes 3..97, comma separated")->delimiter(',');
    sub->add_option("--out", cfg.out, "output file (default: stdout or $MUBGEO_OUT_DIR)");
    sub->add_option("--format", cfg.format, "json | csv")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Mutually unbiased bases, their finite geometry and the Mean King protocol", "mubgeo"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    add_common(verify_cmd, cfg);
    verify_cmd->add_option("--backend", cfg.backend, "exact | float")->capture_default_str();
    verify_cmd->add_option("--tol", cfg.tol, "float tolerance")->capture_default_str();

    auto* geometry_cmd = app.add_subcommand("geometry", "dump lines, points and incidence");
    add_common(geometry_cmd, cfg);

    auto* oracle_cmd = app.add_subcommand("oracle", "exact joint distributions P(m, j')");
    add_common(oracle_cmd, cfg);
    oracle_cmd->add_option("--prep", cfg.prep, "balanced | line:MDDOT,M0")->capture_default_str();
    oracle_cmd->add_option("--basis", cfg.basis, "all | CB | 0..d-1")->capture_default_str();
    oracle_cmd->add_flag("--unrotate", cfg.unrotate, "undo the line monomial on particle 2 first");

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo rounds of the protocol");
    add_common(simulate_cmd, cfg);
    simulate_cmd->add_option("--prep", cfg.prep, "balanced | line:MDDOT,M0")->capture_default_str();
    simulate_cmd->add_option("--rule", cfg.rule, "line | paper")->capture_default_str();
    simulate_cmd->add_option("--trials", cfg.trials)->capture_default_str();
    simulate_cmd->add_option("--seed", cfg.seed, "master seed (random and printed if absent)");
    simulate_cmd->add_option("--threads", cfg.threads)->capture_default_str();
    simulate_cmd->add_option("--transcripts", cfg.transcripts, "JSON-lines transcript file");
    simulate_cmd->add_flag("--unrotate", cfg.unrotate, "undo the line monomial on particle 2 first");

    auto* findings_cmd = app.add_subcommand("findings", "paper-literal deduction against the exact tables");
    add_common(findings_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadArgs;
    }

    try {
        for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
        if (verify_cmd->parsed()) return cmd_verify(cfg, out, err);
        if (geometry_cmd->parsed()) return cmd_geometry(cfg, out, err);
        if (oracle_cmd->parsed()) return cmd_oracle(cfg, out, err);
        if (simulate_cmd->parsed()) return cmd_simulate(cfg, out, err);
        if (findings_cmd->parsed()) return cmd_findings(cfg, out, err);
    } catch (const BadArgs& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadArgs;
    }
    return kExitBadArgs;
}

}  // namespace mubgeo

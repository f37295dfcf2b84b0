#include "mubgeo/report.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace mubgeo {

namespace {

constexpr std::uint32_t kConformanceMaxD = 11;

const ConformanceReport& cached_conformance(std::uint32_t d) {
    static std::mutex mu;
    static std::map<std::uint32_t, ConformanceReport> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, build_conformance(PrimeModulus::make(d))).first;
    return it->second;
}

Json optional_ratio(const std::optional<Ratio>& r) { return r ? Json(r->to_string()) : Json(nullptr); }

}  // namespace

Json conventions_json(const std::vector<std::uint32_t>& ds) {
    std::vector<std::uint32_t> checked;
    for (auto d : ds)
        if (d <= kConformanceMaxD) checked.push_back(d);
    if (checked.empty()) checked.push_back(3);

    Json resolved = Json::object();
    std::optional<std::string> sign;
    std::optional<std::uint32_t> offset;
    bool consistent = true;
    for (auto d : checked) {
        const auto& c = cached_conformance(d);
        const std::string s = c.resolved_sign ? to_string(*c.resolved_sign) : "unresolved";
        if (sign && *sign != s) consistent = false;
        sign = s;
        if (!c.closed_phase_offset || (offset && *offset != *c.closed_phase_offset)) consistent = false;
        if (c.closed_phase_offset) offset = *c.closed_phase_offset;
        Json phases = Json::array();
        for (auto e : c.measured_overlap_phases) phases.push_back(e);
        resolved[std::to_string(d)] = {
            {"line_state_sign", s},
            {"closed_form_phase_offset", c.closed_phase_offset ? Json(*c.closed_phase_offset) : Json(nullptr)},
            {"on_line_overlap_phase_exponents", phases},
            {"cb_overlap_squared", optional_ratio(c.cb_overlap_squared)},
        };
    }

    return {
        {"omega", "exp(2 pi i / d)"},
        {"mub_state", "|m;b> = d^(-1/2) sum_n omega^((b/2) n(n-1) - n m) |n>, b/2 = b * inv(2) mod d"},
        {"computational_basis", "label CB, column 0, alias b = -1; |m;CB> = |m>"},
        {"tilde", "(m,b) -> (-m,-b); CB labels fixed"},
        {"line", "row m0 + (b/2)(2 mddot - 1) in column b, row mddot in CB; index mddot*d + m0"},
        {"line_state", "|P_j> = d^(-1/2) (sum_{p on j} |A_p> - R)"},
        {"line_state_coefficient", "d^(-1/2) omega^(-(n-n') m0) on n + n' = 2 mddot"},
        {"monomial", "omega^t X^a Z^c I^s, applied right to left"},
        {"two_particle_slot", "n1*d + n2; the King measures particle 1"},
        {"rational", "num/d^k"},
        {"resolved", resolved},
        {"resolved_consistent", consistent},
    };
}

Json report_envelope(const std::string& schema, const std::vector<std::uint32_t>& ds, Backend backend,
                     std::optional<std::uint64_t> seed) {
    return {
        {"schema", std::string("mubgeo.") + schema},
        {"schema_version", kSchemaVersion},
        {"tool", kToolName},
        {"tool_version", kToolVersion},
        {"d", ds},
        {"backend", to_string(backend)},
        {"seed", seed ? Json(*seed) : Json(nullptr)},
        {"conventions", conventions_json(ds)},
    };
}

Json to_json(const Check& c) {
    Json j = {{"suite", c.suite}, {"name", c.name}, {"status", c.passed ? "PASS" : "FAIL"}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (c.residual) j["residual"] = *c.residual;
    return j;
}

Json to_json(const ConformanceReport& c) {
    Json phases = Json::array();
    for (auto e : c.measured_overlap_phases) phases.push_back(e);
    return {
        {"closed_equals_geometric", c.closed_equals_geometric},
        {"closed_form_phase_offset", c.closed_phase_offset ? Json(*c.closed_phase_offset) : Json(nullptr)},
        {"line_state_sign",
         {{"resolved", c.resolved_sign ? Json(to_string(*c.resolved_sign)) : Json(nullptr)},
          {"minus_matches_states", c.minus_sign_matches_states},
          {"plus_matches_states", c.plus_sign_matches_states},
          {"minus_matches_line_sum", c.minus_sign_matches_line_sum},
          {"plus_matches_line_sum", c.plus_sign_matches_line_sum}}},
        {"cb_coefficient",
         {{"measured_overlap_squared", optional_ratio(c.cb_overlap_squared)},
          {"measured_coefficient", "1/sqrt(d)"},
          {"written_coefficient", "1/sqrt(2)"},
          {"written_consistent", c.cb_claim_half_consistent},
          {"flag", c.cb_claim_half_consistent ? "" : "suspected typo: normalization forces 1/sqrt(d)"}}},
        {"on_line_overlap_phase",
         {{"written", "omega^(2 b mddot^2 - b mddot) / sqrt(d)"},
          {"written_matches", c.claimed_phase_matches},
          {"measured_exponents", phases},
          {"lines_with_global_offset", c.lines_with_global_phase_offset},
          {"lines_with_varying_offset", c.lines_with_varying_phase_offset}}},
    };
}

Json to_json(const VerifyReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    Json j = {{"d", r.d}, {"backend", to_string(r.backend)}, {"passed", r.all_passed()}, {"checks", checks}};
    if (r.backend == Backend::floating) j["tol"] = r.tol;
    j["conformance"] = r.conformance ? to_json(*r.conformance) : Json(nullptr);
    return j;
}

Json to_json(const Line& j) { return {{"mddot", j.mddot.value()}, {"m0", j.m0.value()}, {"index", j.index()}}; }

namespace {

Json point_json(const Point& p) {
    return {{"m", p.m.value()}, {"b", p.b.to_string()}, {"column", p.b.column()}};
}

}  // namespace

Json geometry_json(PrimeModulus d) {
    const auto inc = Incidence::of(d);
    Json points = Json::array();
    for (const auto& p : inc->points()) points.push_back(point_json(p));
    Json lines = Json::array();
    for (const auto& j : inc->lines()) {
        Json pts = Json::array();
        for (const auto& p : line_points(j)) pts.push_back(point_json(p));
        Json entry = to_json(j);
        entry["points"] = pts;
        lines.push_back(entry);
    }
    Json out = {{"d", d.value()},
                {"num_lines", inc->lines().size()},
                {"num_points", inc->points().size()},
                {"points", points},
                {"lines", lines}};
    if (d.value() == 3) {
        const Line j{Residue(d, 1), Residue(d, 2)};
        std::string listed;
        for (const auto& p : line_points(j)) listed += p.to_string();
        out["worked_example"] = {
            {"line", to_json(j)},
            {"points", listed},
            {"note", "points listed column by column, CB first"},
        };
    }
    return out;
}

std::string incidence_csv(PrimeModulus d) {
    const auto inc = Incidence::of(d);
    std::ostringstream os;
    os << "line";
    for (const auto& p : inc->points()) os << ",\"" << p.to_string() << '"';
    os << '\n';
    for (std::size_t l = 0; l < inc->lines().size(); ++l) {
        os << '"' << inc->lines()[l].to_string() << '"';
        for (std::size_t p = 0; p < inc->points().size(); ++p) os << ',' << (inc->incident(l, p) ? 1 : 0);
        os << '\n';
    }
    return os.str();
}

Json to_json(const OutcomeTable& t) {
    const PrimeModulus d = PrimeModulus::make(t.d);
    Json entries = Json::array();
    for (std::uint32_t m = 0; m < t.d; ++m) {
        for (std::size_t l = 0; l < d.squared(); ++l) {
            const Ratio p = t.at(m, l);
            if (p.is_zero()) continue;
            const Line j = Line::from_index(d, l);
            entries.push_back({{"m", m}, {"line", {j.mddot.value(), j.m0.value()}}, {"p", p.to_string()}});
        }
    }
    Json rows = Json::array();
    for (std::uint32_t m = 0; m < t.d; ++m) rows.push_back(t.row_sum(m).to_string());
    Json j = {{"d", t.d},
              {"preparation", t.prep.to_string()},
              {"basis", t.basis.to_string()},
              {"unrotate", t.options.unrotate},
              {"total", t.total().to_string()},
              {"king_marginal", rows},
              {"nonzero", t.nonzero()},
              {"entries", entries}};
    if (t.prep.kind == Preparation::Kind::line_vector) j["support_law"] = support_law_holds(t);
    return j;
}

Json to_json(const SuccessReport& r) {
    Json per = Json::array();
    for (const auto& b : r.per_basis) {
        per.push_back({{"basis", b.basis.to_string()},
                       {"success", b.success.to_string()},
                       {"always_correct", b.always_correct},
                       {"provisional", b.provisional}});
    }
    return {{"d", r.d},
            {"preparation", r.prep.to_string()},
            {"rule", to_string(r.rule)},
            {"unrotate", r.options.unrotate},
            {"per_basis", per},
            {"overall", r.overall.to_string()},
            {"overall_excluding_provisional", r.overall_definite.to_string()},
            {"worst_case_ok", r.worst_case_ok}};
}

Json to_json(const Finding& f) {
    return {{"line", {f.prepared.mddot.value(), f.prepared.m0.value()}},
            {"basis", f.basis.to_string()},
            {"success", f.success.to_string()},
            {"always_correct", f.always_correct},
            {"support_law", f.support_law},
            {"provisional", f.provisional}};
}

Json to_json(const ProtocolTranscript& t) {
    return {{"d", t.king_basis.modulus().value()},
            {"trial", t.trial},
            {"seed", t.seed},
            {"king_basis", t.king_basis.to_string()},
            {"king_outcome", t.king_outcome.value()},
            {"alice_outcome", {t.alice_outcome.mddot.value(), t.alice_outcome.m0.value()}},
            {"revealed_basis", t.revealed_basis.to_string()},
            {"deduced", t.deduced.value()},
            {"success", t.success}};
}

Json summary_json(PrimeModulus d, const ProtocolSummary& s) {
    Json per = Json::array();
    for (std::size_t c = 0; c < s.per_basis.size(); ++c) {
        const auto& t = s.per_basis[c];
        per.push_back({{"basis", BasisLabel::from_column(d, c).to_string()},
                       {"trials", t.trials},
                       {"successes", t.successes},
                       {"king_counts", t.king_counts}});
    }
    return {{"d", s.d},
            {"preparation", s.prep.to_string()},
            {"rule", to_string(s.rule)},
            {"unrotate", s.options.unrotate},
            {"seed", s.seed},
            {"trials", s.trials},
            {"successes", s.successes},
            {"success_rate", static_cast<double>(s.successes) / static_cast<double>(s.trials)},
            {"per_basis", per}};
}

std::string summary_csv(const ProtocolSummary& s) {
    const PrimeModulus d = PrimeModulus::make(s.d);
    std::ostringstream os;
    os << "d,preparation,rule,seed,basis,trials,successes";
    for (std::uint32_t m = 0; m < s.d; ++m) os << ",king_m" << m;
    os << '\n';
    for (std::size_t c = 0; c < s.per_basis.size(); ++c) {
        const auto& t = s.per_basis[c];
        os << s.d << ",\"" << s.prep.to_string() << "\"," << to_string(s.rule) << ',' << s.seed << ','
           << BasisLabel::from_column(d, c).to_string() << ',' << t.trials << ',' << t.successes;
        for (auto k : t.king_counts) os << ',' << k;
        os << '\n';
    }
    return os.str();
}

}  // namespace mubgeo

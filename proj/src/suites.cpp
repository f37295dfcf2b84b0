#include "mubgeo/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mubgeo {

std::string to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

Backend parse_backend(const std::string& text) {
    if (text == "exact") return Backend::exact;
    if (text == "float") return Backend::floating;
    throw Error(Errc::out_of_range, "unknown backend '" + text + "' (exact | float)");
}

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

/// Tracks the largest deviation on the float path.
struct Residual {
    double worst = 0.0;
    void see(double r) { worst = std::max(worst, r); }
    void see(Complex a, Complex b) { see(std::abs(a - b)); }
};

Check exact_check(std::string suite, std::string name, bool ok, std::string detail = {}) {
    return {std::move(suite), std::move(name), ok, std::move(detail), std::nullopt};
}

Check float_check(std::string suite, std::string name, const Residual& r, double tol, std::string detail = {}) {
    return {std::move(suite), std::move(name), r.worst <= tol, std::move(detail), r.worst};
}

template <class T>
std::vector<BasicKet<T>> all_mub_states(PrimeModulus d) {
    std::vector<BasicKet<T>> out;
    for (const auto& idx : all_mub_indices(d)) out.push_back(mub_state<T>(idx));
    return out;
}

template <class T>
std::vector<BasicKet<T>> all_line_states(PrimeModulus d) {
    std::vector<BasicKet<T>> out;
    for (const auto& j : all_lines(d)) out.push_back(line_state_geometric<T>(j).ket);
    return out;
}

template <class T>
std::vector<BasicKet<T>> all_product_states(PrimeModulus d) {
    std::vector<BasicKet<T>> out;
    for (const auto& p : all_mub_indices(d)) out.push_back(product_state<T>(p).ket);
    return out;
}

double max_abs_diff(const FloatKet& a, const FloatKet& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

/// Largest entry of |rho_1 - 1/d| for the reduced density of particle 1 or 2.
double reduced_residual(const FloatKet& k, int particle) {
    const PrimeModulus d = k.modulus();
    const std::uint32_t nd = d.value();
    auto at = [&](std::uint32_t kept, std::uint32_t traced) {
        return particle == 1 ? k[pair_slot(d, kept, traced)] : k[pair_slot(d, traced, kept)];
    };
    double worst = 0.0;
    for (std::uint32_t r = 0; r < nd; ++r) {
        for (std::uint32_t c = 0; c < nd; ++c) {
            Complex acc{};
            for (std::uint32_t t = 0; t < nd; ++t) acc += at(r, t) * std::conj(at(c, t));
            worst = std::max(worst, std::abs(acc - Complex(r == c ? 1.0 / nd : 0.0)));
        }
    }
    return worst;
}

}  // namespace

std::vector<Check> mub_checks(PrimeModulus d, Backend backend, double tol) {
    const auto idx = all_mub_indices(d);
    const std::uint32_t nd = d.value();
    std::vector<Check> out;
    if (backend == Backend::exact) {
        const auto states = all_mub_states<Cyclo>(d);
        const Ratio unbiased = Ratio::inverse_power(d, 1);
        const Ratio one = Ratio::one(d), zero = Ratio::zero(d);
        std::size_t bad_cross = 0, bad_gram = 0;
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t j = 0; j < states.size(); ++j) {
                const Ratio sq = inner(states[i], states[j]).norm_squared();
                if (idx[i].b == idx[j].b) {
                    if (!(sq == (i == j ? one : zero))) ++bad_gram;
                } else if (!(sq == unbiased)) {
                    ++bad_cross;
                }
            }
        }
        out.push_back(exact_check("mub", "cross_basis_overlaps_1_over_d", bad_cross == 0,
                                  std::to_string(bad_cross) + " defects"));
        std::size_t bad_norm = 0;
        for (const auto& s : states) bad_norm += !(inner(s, s) == Cyclo::one(d));
        out.push_back(exact_check("mub", "within_basis_gram_identity", bad_gram == 0 && bad_norm == 0,
                                  std::to_string(bad_gram + bad_norm) + " defects"));
        std::size_t bad_eig = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i].b.is_computational()) {
                const Ket zs = mubgeo::apply(MonomialOperator::clock(Residue(d, 1)), states[i]);
                bad_eig += !zs.equals(Cyclo::root(idx[i].m) * states[i]);
            } else {
                bad_eig += !check_eigenrelation(idx[i], states[i]);
            }
        }
        out.push_back(exact_check("mub", "eigenrelation", bad_eig == 0, std::to_string(bad_eig) + " defects"));
        std::size_t bad_conj = 0, bad_complete = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const Ket partner = mub_state<Cyclo>(tilde(idx[i]));
            for (std::uint32_t n = 0; n < nd; ++n) bad_conj += !(states[i][n] == partner[n].conj());
        }
        for (const auto& b : all_bases(d)) {
            for (std::uint32_t r = 0; r < nd; ++r) {
                for (std::uint32_t c = 0; c < nd; ++c) {
                    Cyclo acc = Cyclo::zero(d);
                    for (std::uint32_t m = 0; m < nd; ++m) {
                        const Ket& s = states[b.column() * nd + m];
                        acc += s[r] * s[c].conj();
                    }
                    bad_complete += !(acc == (r == c ? Cyclo::one(d) : Cyclo::zero(d)));
                }
            }
        }
        out.push_back(exact_check("mub", "conjugation_closure", bad_conj == 0, std::to_string(bad_conj) + " defects"));
        out.push_back(exact_check("mub", "basis_completeness", bad_complete == 0,
                                  std::to_string(bad_complete) + " defects"));
        return out;
    }
    const auto states = all_mub_states<Complex>(d);
    Residual cross, gram, eig;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = 0; j < states.size(); ++j) {
            const Complex ip = inner(states[i], states[j]);
            if (idx[i].b == idx[j].b) gram.see(ip, Complex(i == j ? 1.0 : 0.0));
            else cross.see(std::abs(std::norm(ip) - 1.0 / nd));
        }
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const MonomialOperator op = idx[i].b.is_computational() ? MonomialOperator::clock(Residue(d, 1))
                                                                : basis_stabilizer(idx[i].b.value());
        const FloatKet lhs = mubgeo::apply(op, states[i]);
        const FloatKet rhs = amplitude_traits<Complex>::root(idx[i].m) * states[i];
        eig.see(max_abs_diff(lhs, rhs));
    }
    out.push_back(float_check("mub", "cross_basis_overlaps_1_over_d", cross, tol));
    out.push_back(float_check("mub", "within_basis_gram_identity", gram, tol));
    out.push_back(float_check("mub", "eigenrelation", eig, tol));
    Residual conj, complete;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const FloatKet partner = mub_state<Complex>(tilde(idx[i]));
        for (std::uint32_t n = 0; n < nd; ++n) conj.see(states[i][n], std::conj(partner[n]));
    }
    for (const auto& b : all_bases(d)) {
        for (std::uint32_t r = 0; r < nd; ++r) {
            for (std::uint32_t c = 0; c < nd; ++c) {
                Complex acc{};
                for (std::uint32_t m = 0; m < nd; ++m) {
                    const FloatKet& s = states[b.column() * nd + m];
                    acc += s[r] * std::conj(s[c]);
                }
                complete.see(acc, Complex(r == c ? 1.0 : 0.0));
            }
        }
    }
    out.push_back(float_check("mub", "conjugation_closure", conj, tol));
    out.push_back(float_check("mub", "basis_completeness", complete, tol));
    return out;
}

std::vector<Check> geometry_checks(PrimeModulus d) {
    std::vector<Check> out;
    const AxiomReport rep = verify_axioms(d);
    const std::size_t nd = d.value();
    out.push_back(exact_check("geometry", "counts",
                              rep.num_lines == nd * nd && rep.num_points == nd * (nd + 1),
                              std::to_string(rep.num_lines) + " lines, " + std::to_string(rep.num_points) + " points"));
    for (const auto& c : rep.checks) out.push_back(exact_check("geometry", "axiom_" + c.id, c.passed, c.detail));

    const auto inc = Incidence::of(d);
    bool sizes = true;
    for (std::size_t l = 0; l < inc->lines().size(); ++l) sizes &= inc->points_of(l).size() == nd + 1;
    for (std::size_t p = 0; p < inc->points().size(); ++p) sizes &= inc->lines_of(p).size() == nd;
    out.push_back(exact_check("geometry", "points_per_line_and_lines_per_point", sizes));

    bool pairs = true;
    for (std::size_t a = 0; a < inc->lines().size(); ++a) {
        for (std::size_t b = a + 1; b < inc->lines().size(); ++b) {
            std::size_t common = 0;
            for (std::size_t p : inc->points_of(a)) common += inc->incident(b, p);
            pairs &= common == 1;
        }
    }
    out.push_back(exact_check("geometry", "line_pairs_meet_once", pairs));

    if (nd == 3) {
        std::ostringstream os;
        for (const auto& p : line_points({Residue(d, 1), Residue(d, 2)})) os << p.to_string();
        out.push_back(exact_check("geometry", "worked_example_line_1_2", os.str() == "(1,CB)(2,0)(1,1)(0,2)", os.str()));
    }
    return out;
}

std::vector<Check> state_checks(PrimeModulus d, Backend backend, double tol,
                                std::optional<ConformanceReport>* out_conf) {
    const auto lines = all_lines(d);
    const auto points = all_mub_indices(d);
    const std::uint32_t nd = d.value();
    std::vector<Check> out;

    if (backend == Backend::exact) {
        ConformanceReport c = build_conformance(d);
        out.push_back(exact_check("states", "monomial_conventions", c.monomial_conventions));
        out.push_back(exact_check("balance", "columns_sum_to_R_and_norm_d", c.balance));
        out.push_back(exact_check("line_states", "closed_equals_geometric",
                                  c.closed_equals_geometric && c.closed_phase_offset == 0u,
                                  c.closed_phase_offset ? "phase offset omega^" + std::to_string(*c.closed_phase_offset)
                                                        : "no single phase offset"));
        out.push_back(exact_check("line_states", "gram_identity", c.gram.identity(),
                                  std::to_string(c.gram.defects) + " defects"));
        out.push_back(exact_check("line_states", "reduced_density_identity_over_d", c.reduced_density));
        out.push_back(exact_check("line_states", "completeness", c.completeness));
        out.push_back(exact_check("overlap", "incidence_law", c.overlap_law));
        out.push_back(exact_check("overlap", "cb_overlap_squared_1_over_d",
                                  c.cb_overlap_squared && *c.cb_overlap_squared == Ratio::inverse_power(d, 1),
                                  c.cb_overlap_squared ? c.cb_overlap_squared->to_string() : "missing"));

        std::size_t bad_proj = 0;
        for (const auto& p : points) {
            const Ket s = mub_state<Cyclo>(p);
            for (std::uint32_t n = 0; n < nd; ++n) {
                for (std::uint32_t n2 = 0; n2 < nd; ++n2) {
                    const Residue rn(d, n), rn2(d, n2);
                    const Cyclo formula =
                        p.b.is_computational() ? cb_projector_element(p, rn, rn2) : projector_element(p, rn, rn2);
                    bad_proj += !(formula == s[n] * s[n2].conj());
                }
            }
        }
        out.push_back(exact_check("projector", "formula_equals_outer_product", bad_proj == 0,
                                  std::to_string(bad_proj) + " defects"));
        out.push_back(exact_check("projector", "equal_elements_on_lines", c.equal_elements_on_lines));
        bool diag = true;
        for (const auto& j : lines) diag &= line_sum_matrix(j, j.mddot, j.mddot) == Cyclo::one(d);
        const bool support = c.resolved_sign && (*c.resolved_sign == ExponentSign::minus ? c.minus_sign_matches_line_sum
                                                                                         : c.plus_sign_matches_line_sum);
        out.push_back(exact_check("projector", "line_sum_support_n_plus_n_prime_2mddot", support));
        out.push_back(exact_check("projector", "line_sum_unit_diagonal", diag));
        out.push_back(exact_check("projector", "coefficient_sign_resolved", c.resolved_sign.has_value(),
                                  c.resolved_sign ? to_string(*c.resolved_sign) : "ambiguous"));
        if (out_conf) *out_conf = std::move(c);
        return out;
    }

    const FloatKet r = balanced_state<Complex>(d).ket;
    Residual balance;
    balance.see(std::abs(norm_squared(r) - static_cast<double>(nd)));
    for (const auto& b : all_bases(d)) {
        FloatKet sum(d, d.squared());
        for (std::uint32_t m = 0; m < nd; ++m) sum += product_state<Complex>({Residue(d, m), b}).ket;
        balance.see(max_abs_diff(sum, r));
    }
    out.push_back(float_check("balance", "columns_sum_to_R_and_norm_d", balance, tol));

    const auto geometric = all_line_states<Complex>(d);
    Residual closed, gram, reduced;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        closed.see(max_abs_diff(line_state_closed<Complex>(lines[i]).ket, geometric[i]));
        reduced.see(reduced_residual(geometric[i], 1));
        reduced.see(reduced_residual(geometric[i], 2));
        for (std::size_t j = 0; j < lines.size(); ++j) gram.see(inner(geometric[i], geometric[j]), Complex(i == j ? 1.0 : 0.0));
    }
    out.push_back(float_check("line_states", "closed_equals_geometric", closed, tol));
    out.push_back(float_check("line_states", "gram_identity", gram, tol));
    out.push_back(float_check("line_states", "reduced_density_identity_over_d", reduced, tol));

    Residual overlap, cb;
    const auto products = all_product_states<Complex>(d);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        for (std::size_t pi = 0; pi < points.size(); ++pi) {
            const double sq = std::norm(inner(products[pi], geometric[li]));
            const bool incident = point_on_line(points[pi], lines[li]);
            overlap.see(std::abs(sq - (incident ? 1.0 / nd : 0.0)));
            if (incident && points[pi].b.is_computational()) cb.see(std::abs(sq - 1.0 / nd));
        }
    }
    out.push_back(float_check("overlap", "incidence_law", overlap, tol));
    out.push_back(float_check("overlap", "cb_overlap_squared_1_over_d", cb, tol));

    Residual proj;
    for (const auto& p : points) {
        const FloatKet s = mub_state<Complex>(p);
        for (std::uint32_t n = 0; n < nd; ++n) {
            for (std::uint32_t n2 = 0; n2 < nd; ++n2) {
                const Residue rn(d, n), rn2(d, n2);
                const Complex formula = p.b.is_computational() ? cb_projector_element(p, rn, rn2).to_complex()
                                                               : projector_element(p, rn, rn2).to_complex();
                proj.see(formula, s[n] * std::conj(s[n2]));
            }
        }
    }
    out.push_back(float_check("projector", "formula_equals_outer_product", proj, tol));
    return out;
}

std::vector<double> float_joint_distribution(PrimeModulus d, const Preparation& prep, const BasisLabel& b,
                                             const ProtocolOptions& options) {
    const std::uint32_t nd = d.value();
    FloatKet psi = prep.kind == Preparation::Kind::balanced ? balanced_state<Complex>(d).ket.scaled(1)
                                                            : line_state_geometric<Complex>(*prep.line).ket;
    const auto lines = all_line_states<Complex>(d);
    std::vector<double> out;
    out.reserve(std::size_t{nd} * lines.size());
    for (std::uint32_t m = 0; m < nd; ++m) {
        const FloatKet s = mub_state<Complex>({Residue(d, m), b});
        FloatKet v(d, d.squared());
        for (std::uint32_t n2 = 0; n2 < nd; ++n2) {
            Complex c{};
            for (std::uint32_t n1 = 0; n1 < nd; ++n1) c += std::conj(s[n1]) * psi[pair_slot(d, n1, n2)];
            for (std::uint32_t n1 = 0; n1 < nd; ++n1) v[pair_slot(d, n1, n2)] = s[n1] * c;
        }
        if (options.unrotate && prep.kind == Preparation::Kind::line_vector) {
            v = apply_second(adjoint(line_monomial(*prep.line)), v);
        }
        for (const auto& l : lines) out.push_back(std::norm(inner(l, v)));
    }
    return out;
}

std::vector<Check> coherence_checks(PrimeModulus d, double tol) {
    std::vector<Check> out;
    auto compare_kets = [&](const std::vector<Ket>& exact, const std::vector<FloatKet>& fl) {
        Residual r;
        for (std::size_t i = 0; i < exact.size(); ++i) r.see(max_abs_diff(to_float(exact[i]), fl[i]));
        return r;
    };
    out.push_back(float_check("coherence", "mub_states",
                              compare_kets(all_mub_states<Cyclo>(d), all_mub_states<Complex>(d)), tol));
    out.push_back(float_check("coherence", "product_states",
                              compare_kets(all_product_states<Cyclo>(d), all_product_states<Complex>(d)), tol));
    const auto exact_lines = all_line_states<Cyclo>(d);
    const auto float_lines = all_line_states<Complex>(d);
    out.push_back(float_check("coherence", "line_states", compare_kets(exact_lines, float_lines), tol));
    {
        std::vector<Ket> ec;
        std::vector<FloatKet> fc;
        for (const auto& j : all_lines(d)) {
            ec.push_back(line_state_closed<Cyclo>(j).ket);
            fc.push_back(line_state_closed<Complex>(j).ket);
        }
        out.push_back(float_check("coherence", "closed_form_line_states", compare_kets(ec, fc), tol));
    }
    {
        Residual r;
        r.see(max_abs_diff(to_float(balanced_state<Cyclo>(d).ket), balanced_state<Complex>(d).ket));
        out.push_back(float_check("coherence", "balanced_state", r, tol));
    }
    {
        Residual r;
        const auto ep = all_product_states<Cyclo>(d);
        const auto fp = all_product_states<Complex>(d);
        for (std::size_t li = 0; li < exact_lines.size(); ++li)
            for (std::size_t pi = 0; pi < ep.size(); ++pi)
                r.see(inner(ep[pi], exact_lines[li]).to_complex(), inner(fp[pi], float_lines[li]));
        out.push_back(float_check("coherence", "point_line_overlaps", r, tol));
    }
    {
        Residual r;
        for (const auto& b : all_bases(d)) {
            std::vector<Preparation> preps{Preparation::balanced(), Preparation::line_vector(Line::from_index(d, 0)),
                                           Preparation::line_vector(Line::from_index(d, d.squared() - 1))};
            for (const auto& prep : preps) {
                const OutcomeTable t = exact_joint_distribution(d, prep, b);
                const auto f = float_joint_distribution(d, prep, b);
                for (std::size_t i = 0; i < f.size(); ++i) r.see(std::abs(t.probs[i].to_double() - f[i]));
            }
        }
        out.push_back(float_check("coherence", "protocol_tables", r, tol));
    }
    return out;
}

VerifyReport verify(PrimeModulus d, Backend backend, double tol) {
    VerifyReport rep;
    rep.d = d.value();
    rep.backend = backend;
    rep.tol = tol;
    auto append = [&](std::vector<Check> v) { rep.checks.insert(rep.checks.end(), v.begin(), v.end()); };
    append(mub_checks(d, backend, tol));
    append(geometry_checks(d));
    append(state_checks(d, backend, tol, &rep.conformance));
    if (d.value() <= 7) append(coherence_checks(d, tol));
    return rep;
}

}  // namespace mubgeo

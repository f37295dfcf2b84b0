#include "mubgeo/geometry.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace mubgeo {

Line Line::from_index(PrimeModulus d, std::size_t index) {
    if (index >= d.squared()) throw Error(Errc::index_out_of_range, "line index " + std::to_string(index));
    return {Residue(d, static_cast<std::int64_t>(index / d.value())),
            Residue(d, static_cast<std::int64_t>(index % d.value()))};
}

std::vector<Line> all_lines(PrimeModulus d) {
    std::vector<Line> out;
    out.reserve(d.squared());
    for (std::size_t i = 0; i < d.squared(); ++i) out.push_back(Line::from_index(d, i));
    return out;
}

std::vector<Point> line_points(const Line& j) {
    std::vector<Point> out;
    out.reserve(j.modulus().value() + 1);
    for (const auto& b : all_bases(j.modulus())) out.push_back({j.row_at(b), b});
    return out;
}

bool point_on_line(const Point& p, const Line& j) { return j.row_at(p.b) == p.m; }

Line line_through(const Point& p1, const Point& p2) {
    if (p1.b == p2.b) {
        throw Error(Errc::same_column, "points " + p1.to_string() + " and " + p2.to_string() + " share a column");
    }
    if (p2.b.is_computational()) return line_through(p2, p1);
    if (p1.b.is_computational()) {
        // mddot is the CB row; the other point fixes m0.
        const Residue mddot = p1.m;
        return {mddot, p2.m - half(p2.b.value()) * (mddot * 2 - 1)};
    }
    // m1 - m2 = ((b1 - b2)/2) k with k = 2 mddot - 1.
    const Residue b1 = p1.b.value(), b2 = p2.b.value();
    const Residue k = (p1.m - p2.m) * 2 * inv(b1 - b2);
    return {half(k + 1), p1.m - half(b1) * k};
}

std::vector<Line> lines_through_point(const Point& p) {
    const PrimeModulus d = p.m.modulus();
    std::vector<Line> out;
    out.reserve(d.value());
    for (std::uint32_t md = 0; md < d.value(); ++md) {
        const Residue mddot(d, md);
        if (p.b.is_computational()) {
            if (mddot == p.m) {
                for (std::uint32_t m0 = 0; m0 < d.value(); ++m0) out.push_back({mddot, Residue(d, m0)});
            }
            continue;
        }
        out.push_back({mddot, p.m - half(p.b.value()) * (mddot * 2 - 1)});
    }
    return out;
}

Incidence::Incidence(PrimeModulus d) : d_(d), points_(all_mub_indices(d)), lines_(all_lines(d)) {
    matrix_.assign(lines_.size() * points_.size(), 0);
    points_of_.resize(lines_.size());
    lines_of_.resize(points_.size());
    for (std::size_t l = 0; l < lines_.size(); ++l) {
        for (const auto& p : line_points(lines_[l])) {
            const std::size_t pi = point_index(p);
            matrix_[l * points_.size() + pi] = 1;
            points_of_[l].push_back(pi);
            lines_of_[pi].push_back(l);
        }
    }
}

std::shared_ptr<const Incidence> Incidence::of(PrimeModulus d) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const Incidence>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[d.value()];
    if (!slot) slot = std::make_shared<const Incidence>(d);
    return slot;
}

bool AxiomReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

AxiomReport verify_axioms(PrimeModulus d) {
    const auto inc = Incidence::of(d);
    const std::size_t nd = d.value();
    const auto& pts = inc->points();
    const auto& lns = inc->lines();

    AxiomReport rep;
    rep.d = d.value();
    rep.num_lines = lns.size();
    rep.num_points = pts.size();

    {
        std::set<std::size_t> keys;
        for (const auto& l : lns) keys.insert(l.index());
        AxiomCheck c{"a", "d^2 distinct lines and d(d+1) points", false, ""};
        c.passed = lns.size() == nd * nd && keys.size() == nd * nd && pts.size() == nd * (nd + 1);
        c.detail = std::to_string(keys.size()) + " lines, " + std::to_string(pts.size()) + " points";
        rep.checks.push_back(c);
    }
    {
        // b: two distinct lines meet in exactly one point, and a pair of
        // points fixes its line.
        std::size_t bad = 0, pairs = 0;
        for (std::size_t l1 = 0; l1 < lns.size(); ++l1) {
            for (std::size_t l2 = l1 + 1; l2 < lns.size(); ++l2) {
                ++pairs;
                std::size_t shared = 0;
                for (std::size_t p : inc->points_of(l1)) shared += inc->incident(l2, p);
                if (shared != 1) ++bad;
            }
        }
        for (std::size_t l = 0; l < lns.size(); ++l) {
            const auto& ps = inc->points_of(l);
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t k = i + 1; k < ps.size(); ++k)
                    if (!(line_through(pts[ps[i]], pts[ps[k]]) == lns[l])) ++bad;
        }
        rep.checks.push_back({"b", "two lines share exactly one point; two points determine their line", bad == 0,
                              std::to_string(pairs) + " line pairs, " + std::to_string(bad) + " violations"});
    }
    {
        std::size_t bad = 0;
        for (std::size_t l = 0; l < lns.size(); ++l) bad += inc->points_of(l).size() != nd + 1;
        for (std::size_t p = 0; p < pts.size(); ++p) {
            bad += inc->lines_of(p).size() != nd;
            bad += lines_through_point(pts[p]).size() != nd;
        }
        rep.checks.push_back({"c", "d lines per point, d+1 points per line", bad == 0,
                              std::to_string(bad) + " violations"});
    }
    {
        // d: columns partition the points and no line holds two points of a column.
        std::size_t bad = 0;
        std::vector<std::size_t> column_sizes(nd + 1, 0);
        for (const auto& p : pts) ++column_sizes[p.b.column()];
        for (std::size_t s : column_sizes) bad += s != nd;
        for (std::size_t l = 0; l < lns.size(); ++l) {
            std::set<std::size_t> cols;
            for (std::size_t p : inc->points_of(l)) cols.insert(pts[p].b.column());
            bad += cols.size() != inc->points_of(l).size();
        }
        rep.checks.push_back({"d", "d+1 columns of d points partition the points; no line within a column",
                              bad == 0, std::to_string(bad) + " violations"});
    }
    {
        // e: every pair of points in different columns lies on exactly one line.
        std::size_t bad = 0;
        for (std::size_t p1 = 0; p1 < pts.size(); ++p1) {
            for (std::size_t p2 = p1 + 1; p2 < pts.size(); ++p2) {
                if (pts[p1].b == pts[p2].b) continue;
                std::size_t common = 0;
                for (std::size_t l : inc->lines_of(p1)) common += inc->incident(l, p2);
                bad += common != 1;
            }
        }
        rep.checks.push_back({"e", "each point is connected to every point outside its column", bad == 0,
                              std::to_string(bad) + " violations"});
    }
    return rep;
}

}  // namespace mubgeo

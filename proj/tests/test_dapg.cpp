#include <gtest/gtest.h>

#include <set>

#include "mubgeo/geometry.hpp"

using namespace mubgeo;

namespace {

Point pt(PrimeModulus d, int m, int b) { return {Residue(d, m), BasisLabel::numeric(d, b)}; }
Point cbpt(PrimeModulus d, int m) { return {Residue(d, m), BasisLabel::computational(d)}; }
Line ln(PrimeModulus d, int mddot, int m0) { return {Residue(d, mddot), Residue(d, m0)}; }

/// The points of a line from the line equation, evaluated independently:
/// b/2 by search and all arithmetic in plain integers.
std::set<std::pair<int, int>> oracle_points(int d, int mddot, int m0) {
    std::set<std::pair<int, int>> out{{mddot, -1}};
    for (int b = 0; b < d; ++b) {
        int hb = 0;
        while ((2 * hb) % d != b) ++hb;
        out.insert({((m0 + hb * (2 * mddot - 1)) % d + d) % d, b});
    }
    return out;
}

std::pair<int, int> key(const Point& p) {
    return {static_cast<int>(p.m.value()), p.b.is_computational() ? -1 : static_cast<int>(p.b.value().value())};
}

}  // namespace

TEST(LinePoints, WorkedExample) {
    const auto d = PrimeModulus::make(3);
    const auto pts = line_points(ln(d, 1, 2));
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_EQ(pts[0], cbpt(d, 1));
    EXPECT_EQ(pts[1], pt(d, 2, 0));
    EXPECT_EQ(pts[2], pt(d, 1, 1));
    EXPECT_EQ(pts[3], pt(d, 0, 2));
    EXPECT_EQ(ln(d, 1, 2).row_at(Residue(d, 1)).value(), 1u);
    std::string s;
    for (const auto& p : pts) s += p.to_string();
    EXPECT_EQ(s, "(1,CB)(2,0)(1,1)(0,2)");
}

TEST(LinePoints, MatchIndependentLineEquation) {
    for (int dv : {3, 5, 7, 11}) {
        const auto d = PrimeModulus::make(dv);
        for (const auto& j : all_lines(d)) {
            const auto pts = line_points(j);
            EXPECT_EQ(pts.size(), static_cast<std::size_t>(dv + 1));
            std::set<std::size_t> columns;
            std::set<std::pair<int, int>> got;
            for (const auto& p : pts) {
                columns.insert(p.b.column());
                got.insert(key(p));
            }
            EXPECT_EQ(columns.size(), static_cast<std::size_t>(dv + 1));
            EXPECT_EQ(got, oracle_points(dv, static_cast<int>(j.mddot.value()), static_cast<int>(j.m0.value())));
        }
    }
}

TEST(Line, IndexAndCParameterization) {
    const auto d = PrimeModulus::make(5);
    for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(Line::from_index(d, i).index(), i);
    EXPECT_THROW(Line::from_index(d, 25), Error);
    const Line j = ln(d, 3, 4);
    EXPECT_EQ(j.c().value(), 1u);
    EXPECT_EQ(Line::from_c(j.c(), j.m0), j);
    EXPECT_EQ(j.to_string(), "(3,4)");
}

TEST(PointOnLine, Examples) {
    const auto d = PrimeModulus::make(3);
    EXPECT_TRUE(point_on_line(pt(d, 1, 1), ln(d, 1, 2)));
    EXPECT_FALSE(point_on_line(pt(d, 0, 1), ln(d, 1, 2)));
    for (int md = 0; md < 3; ++md)
        for (int m0 = 0; m0 < 3; ++m0) EXPECT_TRUE(point_on_line(cbpt(d, md), ln(d, md, m0)));
}

TEST(LineThrough, Examples) {
    const auto d = PrimeModulus::make(3);
    EXPECT_EQ(line_through(pt(d, 2, 0), pt(d, 1, 1)), ln(d, 1, 2));
    EXPECT_EQ(line_through(cbpt(d, 1), pt(d, 2, 0)), ln(d, 1, 2));
    EXPECT_EQ(line_through(pt(d, 2, 0), cbpt(d, 1)), ln(d, 1, 2));
    try {
        line_through(pt(d, 0, 1), pt(d, 2, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::same_column);
    }
    EXPECT_THROW(line_through(cbpt(d, 0), cbpt(d, 1)), Error);
}

TEST(LineThrough, RoundTrip) {
    for (int dv : {3, 5, 7, 11}) {
        const auto d = PrimeModulus::make(dv);
        for (const auto& j : all_lines(d)) {
            const auto pts = line_points(j);
            for (std::size_t a = 0; a < pts.size(); ++a)
                for (std::size_t b = 0; b < pts.size(); ++b)
                    if (a != b) {
                        EXPECT_EQ(line_through(pts[a], pts[b]), j);
                    }
        }
    }
}

TEST(LinesThroughPoint, Examples) {
    for (int dv : {3, 5}) {
        const auto d = PrimeModulus::make(dv);
        const std::size_t total = static_cast<std::size_t>(dv) * (dv + 1);
        for (const auto& p : all_mub_indices(d)) {
            const auto ls = lines_through_point(p);
            ASSERT_EQ(ls.size(), static_cast<std::size_t>(dv));
            std::set<std::size_t> distinct;
            std::set<std::pair<int, int>> reached;
            for (const auto& j : ls) {
                distinct.insert(j.index());
                EXPECT_TRUE(point_on_line(p, j));
                for (const auto& q : line_points(j))
                    if (!(q == p)) reached.insert(key(q));
            }
            EXPECT_EQ(distinct.size(), static_cast<std::size_t>(dv));
            // every point outside p's column, and nothing else
            EXPECT_EQ(reached.size(), total - dv);
            for (const auto& q : reached) EXPECT_NE(q.second, key(p).second);
            for (std::size_t a = 0; a < ls.size(); ++a) {
                for (std::size_t b = a + 1; b < ls.size(); ++b) {
                    std::size_t common = 0;
                    for (const auto& q : line_points(ls[a])) common += point_on_line(q, ls[b]);
                    EXPECT_EQ(common, 1u);
                }
            }
        }
    }
}

TEST(Axioms, PassWithCounts) {
    for (int dv : {3, 5, 7, 11}) {
        const auto d = PrimeModulus::make(dv);
        const AxiomReport r = verify_axioms(d);
        EXPECT_TRUE(r.all_passed()) << dv;
        EXPECT_EQ(r.num_lines, static_cast<std::size_t>(dv * dv));
        EXPECT_EQ(r.num_points, static_cast<std::size_t>(dv * (dv + 1)));
        ASSERT_EQ(r.checks.size(), 5u);
        const std::vector<std::string> ids = {"a", "b", "c", "d", "e"};
        for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.checks[i].id, ids[i]);
    }
}

TEST(Incidence, ExhaustivePairsAndSums) {
    const auto d = PrimeModulus::make(5);
    const auto inc = Incidence::of(d);
    EXPECT_EQ(inc, Incidence::of(d));
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < inc->lines().size(); ++a) {
        for (std::size_t b = a + 1; b < inc->lines().size(); ++b) {
            std::size_t common = 0;
            for (std::size_t p = 0; p < inc->points().size(); ++p) common += inc->incident(a, p) && inc->incident(b, p);
            EXPECT_EQ(common, 1u);
            ++pairs;
        }
    }
    EXPECT_EQ(pairs, 300u);
    for (std::size_t l = 0; l < inc->lines().size(); ++l) {
        std::size_t row = 0;
        for (std::size_t p = 0; p < inc->points().size(); ++p) row += inc->incident(l, p);
        EXPECT_EQ(row, 6u);
    }
    for (std::size_t p = 0; p < inc->points().size(); ++p) {
        std::size_t col = 0;
        for (std::size_t l = 0; l < inc->lines().size(); ++l) col += inc->incident(l, p);
        EXPECT_EQ(col, 5u);
        EXPECT_EQ(inc->point_index(inc->points()[p]), p);
    }
}

TEST(Incidence, LargestSupportedModulus) {
    const auto d = PrimeModulus::make(97);
    const auto inc = Incidence::of(d);
    EXPECT_EQ(inc->lines().size(), 9409u);
    EXPECT_EQ(inc->points().size(), 9506u);
    for (std::size_t l = 0; l < inc->lines().size(); l += 97) EXPECT_EQ(inc->points_of(l).size(), 98u);
}

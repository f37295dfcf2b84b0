#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mubgeo/mub.hpp"

namespace mubgeo {

/// A point of the d x (d+1) array: row m, column b. Points carry exactly the
/// labels of the MUB states they underpin.
using Point = MubIndex;

/// Line through the CB-column point (mddot, CB) and the b = 0 column point
/// (m0, 0). Canonical key of the d^2 lines.
struct Line {
    Residue mddot;
    Residue m0;

    /// The equivalent parameterization by c = 2 mddot.
    static Line from_c(Residue c, Residue m0) { return {half(c), m0}; }
    /// Inverse of index().
    static Line from_index(PrimeModulus d, std::size_t index);

    PrimeModulus modulus() const noexcept { return mddot.modulus(); }
    Residue c() const { return mddot * 2; }
    /// mddot * d + m0.
    std::size_t index() const noexcept { return std::size_t{mddot.value()} * mddot.d() + m0.value(); }

    /// Row of this line in numeric column b: m0 + (b/2)(2 mddot - 1).
    Residue row_at(Residue b) const { return m0 + half(b) * (mddot * 2 - 1); }
    /// Row in any column; CB gives mddot.
    Residue row_at(const BasisLabel& b) const { return b.is_computational() ? mddot : row_at(b.value()); }

    friend bool operator==(const Line&, const Line&) = default;
    std::string to_string() const { return "(" + mddot.to_string() + "," + m0.to_string() + ")"; }
};

/// All d^2 lines ordered by index().
std::vector<Line> all_lines(PrimeModulus d);

/// d+1 points, CB column first.
std::vector<Point> line_points(const Line& j);

bool point_on_line(const Point& p, const Line& j);

/// The unique line through two points in different columns.
/// Error{same_column} when both lie in one column.
Line line_through(const Point& p1, const Point& p2);

/// The d lines containing p, ordered by mddot.
std::vector<Line> lines_through_point(const Point& p);

/// Point-line incidence for one d, materialized once and shared.
class Incidence {
public:
    /// Cached per modulus; safe to call concurrently.
    static std::shared_ptr<const Incidence> of(PrimeModulus d);

    explicit Incidence(PrimeModulus d);

    PrimeModulus modulus() const noexcept { return d_; }
    const std::vector<Point>& points() const noexcept { return points_; }
    const std::vector<Line>& lines() const noexcept { return lines_; }

    /// Index of p in points() (column-major, CB column first).
    std::size_t point_index(const Point& p) const noexcept { return p.b.column() * d_.value() + p.m.value(); }

    bool incident(std::size_t line, std::size_t point) const { return matrix_.at(line * points_.size() + point); }
    const std::vector<std::size_t>& points_of(std::size_t line) const { return points_of_.at(line); }
    const std::vector<std::size_t>& lines_of(std::size_t point) const { return lines_of_.at(point); }

private:
    PrimeModulus d_;
    std::vector<Point> points_;
    std::vector<Line> lines_;
    std::vector<char> matrix_;
    std::vector<std::vector<std::size_t>> points_of_;
    std::vector<std::vector<std::size_t>> lines_of_;
};

struct AxiomCheck {
    std::string id;  // "a" .. "e"
    std::string description;
    bool passed = false;
    std::string detail;
};

struct AxiomReport {
    std::uint32_t d = 0;
    std::size_t num_lines = 0;
    std::size_t num_points = 0;
    std::vector<AxiomCheck> checks;

    bool all_passed() const;
};

/// Exhaustively checks the dual-affine-plane properties (a)-(e) on the
/// incidence structure built from the line equation.
AxiomReport verify_axioms(PrimeModulus d);

}  // namespace mubgeo

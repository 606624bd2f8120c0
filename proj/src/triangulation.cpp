#include "metocean/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace metocean {

namespace {

constexpr double kVertexSnapDegrees = 1e-9;

// Relative tolerance distinguishing exact degeneracies (co-circular quads on
// decimal-degree grids) from genuinely non-degenerate configurations.
constexpr long double kRelativeTie = 1e-12L;

struct Vec2 {
    long double x; // longitude
    long double y; // latitude
};

Vec2 to_vec(const GeoPoint& p) { return {p.longitude, p.latitude}; }

/// Twice the signed area of (a, b, c); positive for counter-clockwise.
long double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

long double orient_scale(const Vec2& a, const Vec2& b, const Vec2& c) {
    return std::abs((b.x - a.x) * (c.y - a.y)) + std::abs((b.y - a.y) * (c.x - a.x));
}

/// Positive when d is inside the circumcircle of CCW triangle (a, b, c);
/// magnitudes below the returned scale * kRelativeTie are ties.
std::pair<long double, long double> incircle(const Vec2& a, const Vec2& b, const Vec2& c,
                                             const Vec2& d) {
    const long double ax = a.x - d.x, ay = a.y - d.y;
    const long double bx = b.x - d.x, by = b.y - d.y;
    const long double cx = c.x - d.x, cy = c.y - d.y;
    const long double az = ax * ax + ay * ay;
    const long double bz = bx * bx + by * by;
    const long double cz = cx * cx + cy * cy;
    const long double t1 = ax * (by * cz - bz * cy);
    const long double t2 = ay * (bx * cz - bz * cx);
    const long double t3 = az * (bx * cy - by * cx);
    const long double det = t1 - t2 + t3;
    const long double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
    return {det, scale};
}

bool lex_less(const GeoPoint& a, const GeoPoint& b) {
    if (a.latitude != b.latitude)
        return a.latitude < b.latitude;
    return a.longitude < b.longitude;
}

struct Triangle {
    std::array<std::size_t, 3> v; // CCW
};

} // namespace

Triangulation delaunay(std::vector<GeoPoint> points) {
    if (points.size() < 3)
        throw std::invalid_argument("triangulation requires at least 3 points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].latitude == points[j].latitude &&
                points[i].longitude == points[j].longitude)
                throw std::invalid_argument("triangulation points must be distinct");

    // Insert descending-lexicographically so the smallest point is added last:
    // with co-circular ties absorbed into the cavity, it captures the tie and
    // every degenerate diagonal passes through it.
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(points[b], points[a]); });

    double min_x = points[0].longitude, max_x = points[0].longitude;
    double min_y = points[0].latitude, max_y = points[0].latitude;
    bool collinear = true;
    for (const auto& p : points) {
        min_x = std::min(min_x, p.longitude);
        max_x = std::max(max_x, p.longitude);
        min_y = std::min(min_y, p.latitude);
        max_y = std::max(max_y, p.latitude);
    }
    for (std::size_t k = 2; k < points.size() && collinear; ++k) {
        const long double a = orient(to_vec(points[0]), to_vec(points[1]), to_vec(points[k]));
        const long double s = orient_scale(to_vec(points[0]), to_vec(points[1]), to_vec(points[k]));
        if (std::abs(a) > s * kRelativeTie)
            collinear = false;
    }
    if (collinear)
        throw std::invalid_argument("triangulation points are collinear");

    // Super-triangle comfortably containing every input point.
    const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    const double cx = (min_x + max_x) / 2.0, cy = (min_y + max_y) / 2.0;
    std::vector<Vec2> verts;
    verts.reserve(points.size() + 3);
    for (const auto& p : points)
        verts.push_back(to_vec(p));
    const std::size_t s0 = verts.size(), s1 = s0 + 1, s2 = s0 + 2;
    verts.push_back({cx - 30.0 * span, cy - 20.0 * span});
    verts.push_back({cx + 30.0 * span, cy - 20.0 * span});
    verts.push_back({cx, cy + 30.0 * span});

    std::vector<Triangle> triangles{{{s0, s1, s2}}};

    for (const std::size_t pi : order) {
        const Vec2 p = verts[pi];

        std::vector<Triangle> kept;
        std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
        std::vector<std::array<std::size_t, 3>> cavity;
        for (const auto& t : triangles) {
            const auto [det, scale] = incircle(verts[t.v[0]], verts[t.v[1]], verts[t.v[2]], p);
            if (det > -scale * kRelativeTie) {
                cavity.push_back(t.v);
                for (int e = 0; e < 3; ++e) {
                    std::size_t u = t.v[std::size_t(e)], w = t.v[std::size_t((e + 1) % 3)];
                    edge_count[{std::min(u, w), std::max(u, w)}] += 1;
                }
            } else {
                kept.push_back(t);
            }
        }

        triangles = std::move(kept);
        for (const auto& tv : cavity) {
            for (int e = 0; e < 3; ++e) {
                const std::size_t u = tv[std::size_t(e)], w = tv[std::size_t((e + 1) % 3)];
                if (edge_count[{std::min(u, w), std::max(u, w)}] != 1)
                    continue; // interior cavity edge
                Triangle nt{{u, w, pi}};
                if (orient(verts[u], verts[w], verts[pi]) < 0)
                    std::swap(nt.v[0], nt.v[1]);
                triangles.push_back(nt);
            }
        }
    }

    Triangulation result;
    result.points = std::move(points);
    for (const auto& t : triangles) {
        if (t.v[0] >= s0 || t.v[1] >= s0 || t.v[2] >= s0)
            continue;
        auto tri = t.v;
        // Rotate the smallest index first, preserving CCW orientation.
        while (tri[0] != std::min({tri[0], tri[1], tri[2]}))
            tri = {tri[1], tri[2], tri[0]};
        result.triangles.push_back(tri);
    }
    std::sort(result.triangles.begin(), result.triangles.end());
    if (result.triangles.empty())
        throw std::invalid_argument("triangulation points are collinear");
    return result;
}

std::optional<double> interpolate_to_point(const Triangulation& tri,
                                           std::span<const std::optional<double>> values_at_points,
                                           GeoPoint target) {
    if (values_at_points.size() != tri.points.size())
        throw std::invalid_argument("one value per triangulation point required");

    for (std::size_t i = 0; i < tri.points.size(); ++i) {
        if (std::abs(tri.points[i].latitude - target.latitude) <= kVertexSnapDegrees &&
            std::abs(tri.points[i].longitude - target.longitude) <= kVertexSnapDegrees)
            return values_at_points[i];
    }

    const Vec2 p = to_vec(target);
    for (const auto& t : tri.triangles) {
        const Vec2 a = to_vec(tri.points[t[0]]);
        const Vec2 b = to_vec(tri.points[t[1]]);
        const Vec2 c = to_vec(tri.points[t[2]]);
        const long double area = orient(a, b, c);
        const long double wa = orient(b, c, p);
        const long double wb = orient(c, a, p);
        const long double wc = orient(a, b, p);
        const long double tol =
            kRelativeTie * (orient_scale(b, c, p) + orient_scale(c, a, p) + orient_scale(a, b, p));
        if (wa < -tol || wb < -tol || wc < -tol)
            continue;
        if (!values_at_points[t[0]] || !values_at_points[t[1]] || !values_at_points[t[2]])
            return std::nullopt;
        const long double value = (wa * *values_at_points[t[0]] + wb * *values_at_points[t[1]] +
                                   wc * *values_at_points[t[2]]) /
                                  area;
        return double(value);
    }
    throw std::runtime_error("extrapolation not supported: target outside the grid hull");
}

} // namespace metocean

#ifndef METOCEAN_TRIANGULATION_HPP
#define METOCEAN_TRIANGULATION_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace metocean {

/// A grid-point coordinate treated as a planar (lat, lon) pair. Adequate at
/// the sub-degree cell sizes of forecast grids; not valid near the poles or
/// across the antimeridian.
struct GeoPoint {
    double latitude;
    double longitude;
};

/// Planar Delaunay triangulation of a small point set. Triangles are stored
/// as counter-clockwise index triples into `points`, sorted for determinism.
struct Triangulation {
    std::vector<GeoPoint> points;
    std::vector<std::array<std::size_t, 3>> triangles;
};

/// Delaunay triangulation of >= 3 distinct, non-collinear points. Exactly
/// co-circular quads are split by the diagonal through the lexicographically
/// smallest (lat, lon) point.
Triangulation delaunay(std::vector<GeoPoint> points);

/// Barycentric interpolation of per-point values at `target`.
/// - target within 1e-9 degrees of a vertex: that vertex's value;
/// - otherwise the weighted combination over the containing triangle
///   (first triangle in index order when the target lies on a shared edge);
/// - empty when any needed vertex value is missing;
/// - throws when the target lies strictly outside the convex hull.
std::optional<double> interpolate_to_point(const Triangulation& tri,
                                           std::span<const std::optional<double>> values_at_points,
                                           GeoPoint target);

} // namespace metocean

#endif

#ifndef OCFSIM_GEOMETRY_HPP
#define OCFSIM_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace ocfsim {

struct Point {
    double x_km = 0.0;
    double y_km = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance_km(const Point& a, const Point& b) {
    return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
}

inline double distance_m(const Point& a, const Point& b) {
    return distance_km(a, b) * 1000.0;
}

/// Convex hull (monotone chain), counter-clockwise, no repeated endpoint.
/// Degenerate inputs (<3 points or collinear) return the input extremes.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x_km < b.x_km || (a.x_km == b.x_km && a.y_km < b.y_km);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;

    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a.x_km - o.x_km) * (b.y_km - o.y_km) - (a.y_km - o.y_km) * (b.x_km - o.x_km);
    };
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace ocfsim

#endif // OCFSIM_GEOMETRY_HPP

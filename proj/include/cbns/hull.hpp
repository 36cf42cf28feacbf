#pragma once

// Convex hull of the fractional tile F_z = { sum_{j>0} d_j z^-j }.
//
// F_z sits inside the Minkowski sum of the segments [0, n-1] z^-j, so its hull
// is centrally symmetric about x0 = (n-1) / (2 (z-1)) and has support function
//
//   h(alpha) = (n-1)/2 * sum_{j>0} n^(-j/2) |cos(alpha + j phi)|
//
// measured from x0. Perimeter and area follow in closed form.

#include <cbns/lattice.hpp>

#include <vector>

namespace cbns {

struct HullModel {
    System system;
    Complex center;
    double eps = 1e-10;
};

HullModel make_hull_model(const System& s, double eps = 1e-10);

// Number of series terms width() sums for the model's tolerance.
int width_terms(const HullModel& h);

double width(const HullModel& h, double alpha);

struct Polygon {
    std::vector<Complex> vertices;  // counterclockwise

    double perimeter() const;
    double signed_area() const;
    // Inside or within `inflate` of every edge line (convex polygons only).
    bool contains(Complex p, double inflate = 0.0) const;
    // Axis-aligned bounding box as (min corner, max corner).
    std::pair<Complex, Complex> bounds() const;
};

// Outer polygon bounded by the support lines at alpha_k = 2 pi k / m.
Polygon hull_polygon(const HullModel& h, int directions = 4096);

struct HullMetrics {
    double perimeter = 0;
    double hull_area = 0;
    double tile_area = 0;
    Complex center;
};

HullMetrics hull_metrics(const System& s);

// (n-1) sum_{i>0} |sin(i phi)| n^(-i/2), truncated once the tail is below tol.
double hull_area_series(const System& s, double tol = 1e-12);

}  // namespace cbns

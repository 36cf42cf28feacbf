#include <cbns/hull.hpp>
#include <cbns/render.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace cbns;

namespace {

std::vector<System> systems_up_to(int max_n) {
    std::vector<System> out;
    for (int n = 2; n <= max_n; ++n) {
        for (int D = -2 * n; D <= 2 * n; ++D) {
            if (D * D < 4 * n) out.push_back(make_system(n, D));
        }
    }
    return out;
}

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

// Andrew's monotone chain, counterclockwise, collinear points dropped.
std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    if (pts.size() < 3) return pts;
    std::vector<Complex> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

// Hull of sum_{j=1..depth} [0, n-1] z^-j, built one segment at a time.
Polygon zonotope_hull(const System& s, int depth) {
    std::vector<Complex> hull{Complex{0.0, 0.0}};
    Complex w = 1.0 / s.z;
    for (int j = 1; j <= depth; ++j) {
        std::vector<Complex> pts = hull;
        for (Complex v : hull) pts.push_back(v + static_cast<double>(s.n - 1) * w);
        hull = convex_hull(pts);
        w /= s.z;
    }
    return Polygon{hull};
}

// Outer approximation with m directions: an edge of length L gains at most
// L^2 (2 pi / m) / 8 of area.
double area_excess_bound(const Polygon& exact, int m) {
    // Rounding can split one edge at a collinear vertex; rejoin before squaring.
    const auto& v = exact.vertices;
    std::vector<Complex> edges;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex e = v[(i + 1) % v.size()] - v[i];
        if (!edges.empty() && std::abs((std::conj(edges.back()) * e).imag()) <= 1e-9 * std::abs(edges.back()) * std::abs(e)) {
            edges.back() += e;
        } else {
            edges.push_back(e);
        }
    }
    if (edges.size() > 1 && std::abs((std::conj(edges.back()) * edges.front()).imag()) <=
                                1e-9 * std::abs(edges.back()) * std::abs(edges.front())) {
        edges.front() += edges.back();
        edges.pop_back();
    }
    double sum = 0;
    for (Complex e : edges) sum += std::norm(e);
    return sum * (2 * std::numbers::pi / m) / 8;
}

}  // namespace

TEST_CASE("width is centrally symmetric and bounded") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (const System& s : systems_up_to(9)) {
        const HullModel h = make_hull_model(s, 1e-10);
        const double bound = (s.n - 1) / (2.0 * (std::sqrt(static_cast<double>(s.n)) - 1.0));
        for (int i = 0; i < 200; ++i) {
            const double a = angle(rng);
            CHECK(std::abs(width(h, a) - width(h, a + std::numbers::pi)) < 2e-10);
            CHECK(width(h, a) > 0);
            CHECK(width(h, a) <= bound + 1e-12);
        }
    }
}

TEST_CASE("width of the twindragon at angle 0") {
    const System s = make_system(2, -2);
    double series = 0;
    for (int j = 1; j < 400; ++j) series += std::pow(2.0, -j / 2.0) * std::abs(std::cos(3.0 * std::numbers::pi * j / 4.0));
    CHECK(width(make_hull_model(s, 1e-12), 0.0) == doctest::Approx(0.5 * series).epsilon(1e-11));
}

TEST_CASE("width matches the support function of the zonotope hull") {
    for (const System& s : systems_up_to(6)) {
        const Polygon z = zonotope_hull(s, 80);
        const HullModel h = make_hull_model(s, 1e-12);
        for (int k = 0; k < 37; ++k) {
            const double a = 0.17 * k;
            const Complex dir = std::polar(1.0, a);
            double support = -1e300;
            for (Complex v : z.vertices) support = std::max(support, (std::conj(dir) * (v - h.center)).real());
            CHECK(width(h, a) == doctest::Approx(support).epsilon(1e-9));
        }
    }
}

TEST_CASE("hull polygon perimeter and area") {
    for (const System& s : systems_up_to(9)) {
        const HullMetrics m = hull_metrics(s);
        const Polygon p = hull_polygon(make_hull_model(s), 4096);
        CHECK(std::abs(p.perimeter() - (2 * std::sqrt(static_cast<double>(s.n)) + 2)) < 1e-3);
        // Independent: the exact hull of the truncated Minkowski sum.
        const Polygon z = zonotope_hull(s, 80);
        CHECK(p.signed_area() >= m.hull_area - 1e-9);
        CHECK(p.signed_area() - m.hull_area <= area_excess_bound(z, 4096) + 1e-9);
        CHECK(z.perimeter() == doctest::Approx(m.perimeter).epsilon(1e-9));
        CHECK(z.signed_area() == doctest::Approx(m.hull_area).epsilon(1e-9));
    }
}

TEST_CASE("polygon area excess halves as directions double") {
    for (const System& s : systems_up_to(9)) {
        const HullModel h = make_hull_model(s);
        const double series = hull_metrics(s).hull_area;
        const Polygon z = zonotope_hull(s, 80);
        for (int m = 1024; m <= 16384; m *= 2) {
            const double excess = hull_polygon(h, m).signed_area() - series;
            CHECK(excess >= -1e-9);
            CHECK(excess <= area_excess_bound(z, m) + 1e-9);
        }
    }
}

TEST_CASE("polygon perimeter decreases as directions double") {
    for (const System& s : systems_up_to(9)) {
        const HullModel h = make_hull_model(s);
        double previous = hull_polygon(h, 16).perimeter();
        for (int m = 32; m <= 4096; m *= 2) {
            const double current = hull_polygon(h, m).perimeter();
            CHECK(current <= previous + 1e-9);
            previous = current;
        }
    }
}

TEST_CASE("depth-10 fractional points lie in the hull polygon") {
    for (const System& s : systems_up_to(9)) {
        const Polygon p = hull_polygon(make_hull_model(s), 4096);
        // Corner points sum (0 or n-1) z^-j: the set is convex-hull generated by them.
        for (int mask = 0; mask < (1 << 10); ++mask) {
            Complex v{0.0, 0.0};
            Complex w = 1.0 / s.z;
            for (int j = 0; j < 10; ++j) {
                if ((mask >> j) & 1) v += static_cast<double>(s.n - 1) * w;
                w /= s.z;
            }
            CHECK(p.contains(v, 1e-6));
        }
        if (s.n <= 4) {
            for (Complex v : fractional_points(s.z, s.n, 10)) CHECK(p.contains(v, 1e-6));
        }
    }
}

TEST_CASE("hull metrics") {
    CHECK(hull_metrics(make_system(2, -1)).perimeter == doctest::Approx(4.82843).epsilon(1e-5));
    for (const System& s : systems_up_to(9)) {
        const HullMetrics m = hull_metrics(s);
        CHECK(m.tile_area <= m.hull_area + 1e-12);
        if (s.D != 0) CHECK(m.tile_area < m.hull_area);
        CHECK(std::abs(m.center - 0.5 * (s.n - 1) / (s.z - 1.0)) < 1e-15);
    }
    for (int n = 2; n <= 9; ++n) {
        const HullMetrics m = hull_metrics(make_system(n, 0));
        CHECK(m.tile_area == doctest::Approx(std::sqrt(static_cast<double>(n))));
        // The rectangle case: the hull is the tile.
        CHECK(m.hull_area == doctest::Approx(m.tile_area).epsilon(1e-10));
    }
}

TEST_CASE("hull polygon rejects too few directions") {
    CHECK_THROWS_AS(hull_polygon(make_hull_model(make_system(2, -1)), 7), DomainError);
    CHECK_THROWS_AS(make_hull_model(make_system(2, -1), 0.0), DomainError);
}

#include <cbns/hull.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cbns {

namespace {

// (n-1)/2 * sum_{j>J} n^(-j/2) <= tol decides the truncation point.
int terms_for_tail(int n, double scale, double tol) {
    const double q = 1.0 / std::sqrt(static_cast<double>(n));
    double tail = scale * q / (1.0 - q);  // bound for the sum from j = 1
    int terms = 0;
    while (tail >= tol && terms < 10000) {
        ++terms;
        tail *= q;
    }
    return terms;
}

constexpr double kRedundantGap = 1e-9;
constexpr double kDuplicateVertex = 1e-12;

double turn(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

// Rounding near a corner leaves clusters of almost equal intersections whose
// order can bend the wrong way; a monotone-chain pass restores strict convexity.
std::vector<Complex> strictly_convex(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    if (pts.size() < 3) return pts;
    std::vector<Complex> h(2 * pts.size());
    std::size_t k = 0;
    for (Complex p : pts) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && turn(h[k - 2], h[k - 1], *it) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

HullModel make_hull_model(const System& s, double eps) {
    if (!(eps > 0)) {
        throw DomainError("width tolerance must be positive");
    }
    HullModel h;
    h.system = s;
    h.eps = eps;
    h.center = 0.5 * static_cast<double>(s.n - 1) / (s.z - 1.0);
    return h;
}

int width_terms(const HullModel& h) { return terms_for_tail(h.system.n, 0.5 * (h.system.n - 1), h.eps); }

double width(const HullModel& h, double alpha) {
    const int terms = width_terms(h);
    const double q = 1.0 / std::sqrt(static_cast<double>(h.system.n));
    double weight = 1.0;
    double sum = 0.0;
    for (int j = 1; j <= terms; ++j) {
        weight *= q;
        sum += weight * std::abs(std::cos(alpha + j * h.system.phi));
    }
    return 0.5 * (h.system.n - 1) * sum;
}

double Polygon::perimeter() const {
    double total = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        total += std::abs(vertices[(i + 1) % vertices.size()] - vertices[i]);
    }
    return total;
}

double Polygon::signed_area() const {
    double twice = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Complex p = vertices[i];
        const Complex q = vertices[(i + 1) % vertices.size()];
        twice += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * twice;
}

bool Polygon::contains(Complex p, double inflate) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Complex a = vertices[i];
        const Complex edge = vertices[(i + 1) % vertices.size()] - a;
        const double len = std::abs(edge);
        if (len == 0) continue;
        const Complex rel = p - a;
        const double cross = edge.real() * rel.imag() - edge.imag() * rel.real();
        if (cross < -inflate * len) return false;
    }
    return true;
}

std::pair<Complex, Complex> Polygon::bounds() const {
    double x0 = vertices.front().real(), x1 = x0;
    double y0 = vertices.front().imag(), y1 = y0;
    for (Complex v : vertices) {
        x0 = std::min(x0, v.real());
        x1 = std::max(x1, v.real());
        y0 = std::min(y0, v.imag());
        y1 = std::max(y1, v.imag());
    }
    return {{x0, y0}, {x1, y1}};
}

Polygon hull_polygon(const HullModel& h, int directions) {
    if (directions < 8) {
        throw DomainError("hull_polygon needs at least 8 directions");
    }
    std::vector<double> alphas;
    alphas.reserve(static_cast<std::size_t>(directions));
    for (int k = 0; k < directions; ++k) {
        const double alpha = 2.0 * std::numbers::pi * k / directions;
        if (!alphas.empty() && alpha - alphas.back() < kRedundantGap) continue;
        alphas.push_back(alpha);
    }
    std::vector<double> support(alphas.size());
    std::transform(alphas.begin(), alphas.end(), support.begin(), [&](double a) { return width(h, a); });

    // Vertex k is where the support lines at alpha_k and alpha_{k+1} meet:
    //   cos(a) u + sin(a) v = h(a) for both angles.
    Polygon poly;
    poly.vertices.reserve(alphas.size());
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const std::size_t next = (k + 1) % alphas.size();
        const double a1 = alphas[k];
        const double a2 = alphas[next];
        const double det = std::sin(a2 - a1);
        const double u = (support[k] * std::sin(a2) - support[next] * std::sin(a1)) / det;
        const double v = (support[next] * std::cos(a1) - support[k] * std::cos(a2)) / det;
        const Complex vertex = h.center + Complex(u, v);
        // Lines through a polygon corner meet at (numerically) the same point.
        if (!poly.vertices.empty() && std::abs(vertex - poly.vertices.back()) < kDuplicateVertex) continue;
        poly.vertices.push_back(vertex);
    }
    while (poly.vertices.size() > 1 && std::abs(poly.vertices.back() - poly.vertices.front()) < kDuplicateVertex) {
        poly.vertices.pop_back();
    }
    poly.vertices = strictly_convex(std::move(poly.vertices));
    return poly;
}

double hull_area_series(const System& s, double tol) {
    const int terms = terms_for_tail(s.n, static_cast<double>(s.n - 1), tol);
    const double q = 1.0 / std::sqrt(static_cast<double>(s.n));
    double weight = 1.0;
    double sum = 0.0;
    for (int i = 1; i <= terms; ++i) {
        weight *= q;
        sum += std::abs(std::sin(i * s.phi)) * weight;
    }
    return (s.n - 1) * sum;
}

HullMetrics hull_metrics(const System& s) {
    HullMetrics m;
    const double root = std::sqrt(static_cast<double>(s.n));
    m.perimeter = 2.0 * root + 2.0;
    m.hull_area = hull_area_series(s);
    m.tile_area = root * std::sin(s.phi);
    m.center = 0.5 * static_cast<double>(s.n - 1) / (s.z - 1.0);
    return m;
}

}  // namespace cbns

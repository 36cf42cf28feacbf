#include <cbns/cubic.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace cbns {

CubicSystem cubic_system(int m_or_r, int A, int r_sign) {
    if (m_or_r < 2) throw DomainError("cubic systems need |r| >= 2");
    if (r_sign != 1 && r_sign != -1) throw DomainError("r sign must be +1 or -1");
    CubicSystem c;
    c.r = r_sign * m_or_r;
    c.A = A;
    const std::int64_t r = c.r;
    // -(1 + A/r)/2 in [-1, 1]  <=>  |(r + A) r| <= 2 r^2
    const std::int64_t lhs = std::abs((r + A) * r);
    if (lhs > 2 * r * r) {
        throw DomainError("A = " + std::to_string(A) + " puts -(1 + A/r)/2 outside [-1, 1] for r = " +
                          std::to_string(c.r));
    }
    c.degenerate = lhs == 2 * r * r;
    c.n = checked::mul(checked::mul(std::abs(r), std::abs(r)), std::abs(r));
    c.phi = std::acos(std::clamp(-0.5 * (1.0 + static_cast<double>(A) / static_cast<double>(r)), -1.0, 1.0));
    c.identity = {-r * r * r, -static_cast<std::int64_t>(A) * r, A, 1};

    // The identity has to hold in the embedding.
    const double rr = static_cast<double>(r);
    const Complex e = std::polar(1.0, c.phi);
    const double real = static_cast<double>(c.identity[0]) + static_cast<double>(c.identity[1]) * rr +
                        static_cast<double>(c.identity[2]) * rr * rr + rr * rr * rr;
    const Complex plane = static_cast<double>(c.identity[0]) + static_cast<double>(c.identity[1]) * rr * e +
                          static_cast<double>(c.identity[2]) * rr * rr * e * e + rr * rr * rr * e * e * e;
    if (std::abs(real) > 1e-10 || std::abs(plane.real()) > 1e-10 || std::abs(plane.imag()) > 1e-10) {
        throw std::logic_error("cubic identity does not vanish in the embedding");
    }
    return c;
}

std::string to_string(const LatticePoint3& p) {
    return std::to_string(p.x0) + "," + std::to_string(p.x1) + "," + std::to_string(p.x2);
}

std::size_t LatticePoint3Hash::operator()(const LatticePoint3& p) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(p.x0) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(p.x1) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(p.x2) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
}

double Embedded3::norm() const { return std::sqrt(real * real + std::norm(plane)); }

double Embedded3::sup_norm() const { return std::max(std::abs(real), std::abs(plane)); }

Embedded3 embed3(const CubicSystem& c, const LatticePoint3& x) {
    const double r = c.r;
    const Complex zc = std::polar(r, c.phi);
    Embedded3 e;
    e.real = static_cast<double>(x.x0) + static_cast<double>(x.x1) * r + static_cast<double>(x.x2) * r * r;
    e.plane = static_cast<double>(x.x0) + static_cast<double>(x.x1) * zc + static_cast<double>(x.x2) * zc * zc;
    return e;
}

Reduction3 reduce3(const CubicSystem& c, const LatticePoint3& x) {
    const std::int64_t s = c.identity[0] > 0 ? 1 : -1;
    const std::int64_t k = checked::floor_div(x.x0, c.n);
    const std::int64_t ks = checked::mul(k, s);
    Reduction3 out;
    out.digit = x.x0 - k * c.n;
    out.y = {checked::sub(x.x1, checked::mul(ks, c.identity[1])), checked::sub(x.x2, checked::mul(ks, c.identity[2])),
             checked::mul(-ks, c.identity[3])};
    return out;
}

LatticePoint3 mul_z3(const CubicSystem& c, const LatticePoint3& x) {
    return {checked::mul(-x.x2, c.identity[0]), checked::sub(x.x0, checked::mul(x.x2, c.identity[1])),
            checked::sub(x.x1, checked::mul(x.x2, c.identity[2]))};
}

double cubic_contraction_radius(const CubicSystem& c) {
    return static_cast<double>(c.n - 1) / (std::abs(static_cast<double>(c.r)) - 1.0);
}

double cubic_euclidean_contraction_radius(const CubicSystem& c) {
    return std::sqrt(2.0) * cubic_contraction_radius(c);
}

namespace {

Attractor3 canonical_cycle(std::vector<LatticePoint3> cycle) {
    const auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), smallest, cycle.end());
    Attractor3 a;
    a.kind = cycle.size() == 1 ? AttractorKind::FixedPoint : AttractorKind::Cycle;
    a.points = std::move(cycle);
    return a;
}

}  // namespace

Attractor3 orbit_attractor(const CubicSystem& c, const LatticePoint3& x, std::int64_t max_steps) {
    std::unordered_map<LatticePoint3, std::size_t, LatticePoint3Hash> seen;
    std::vector<LatticePoint3> path;
    LatticePoint3 cur = x;
    for (std::int64_t step = 0; step <= max_steps; ++step) {
        if (auto it = seen.find(cur); it != seen.end()) {
            return canonical_cycle({path.begin() + static_cast<std::ptrdiff_t>(it->second), path.end()});
        }
        seen.emplace(cur, path.size());
        path.push_back(cur);
        cur = reduce3(c, cur).y;
    }
    throw CycleError("orbit of " + to_string(x) + " did not repeat within " + std::to_string(max_steps) + " steps");
}

std::vector<LatticePoint3> cubic_ball(const CubicSystem& c, double radius) {
    if (c.degenerate) throw DomainError("degenerate cubic system: 1, z, z^2 do not span R x C");
    // Columns: embeddings of 1, z, z^2 as (real, Re, Im).
    double b[3][3];
    for (int j = 0; j < 3; ++j) {
        const Embedded3 e = embed3(c, {j == 0, j == 1, j == 2});
        b[0][j] = e.real;
        b[1][j] = e.plane.real();
        b[2][j] = e.plane.imag();
    }
    const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                       b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                       b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    // Row i of the inverse, up to 1/det: cofactors of column i.
    std::array<std::int64_t, 3> bound{};
    for (int i = 0; i < 3; ++i) {
        const int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        double sq = 0;
        for (int row = 0; row < 3; ++row) {
            const int r1 = (row + 1) % 3, r2 = (row + 2) % 3;
            const double cof = b[r1][j1] * b[r2][j2] - b[r1][j2] * b[r2][j1];
            sq += cof * cof;
        }
        bound[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::ceil(radius * std::sqrt(sq) / std::abs(det)));
    }
    std::vector<LatticePoint3> out;
    for (std::int64_t x0 = -bound[0]; x0 <= bound[0]; ++x0) {
        for (std::int64_t x1 = -bound[1]; x1 <= bound[1]; ++x1) {
            for (std::int64_t x2 = -bound[2]; x2 <= bound[2]; ++x2) {
                if (embed3(c, {x0, x1, x2}).norm() <= radius) out.push_back({x0, x1, x2});
            }
        }
    }
    return out;
}

std::vector<Attractor3> attractors3(const CubicSystem& c, double radius) {
    if (c.degenerate) throw DomainError("degenerate cubic system: 1, z, z^2 do not span R x C");
    if (radius < cubic_contraction_radius(c)) {
        throw DomainError("attractors3 radius must be at least (n-1)/(n^(1/3)-1)");
    }
    const std::vector<LatticePoint3> ball = cubic_ball(c, radius);
    const auto cap = static_cast<std::int64_t>(10 * (ball.size() + 64));

    std::unordered_map<LatticePoint3, int, LatticePoint3Hash> label;
    std::vector<Attractor3> found;
    std::vector<LatticePoint3> path;
    std::unordered_map<LatticePoint3, std::size_t, LatticePoint3Hash> on_path;
    for (const LatticePoint3& start : ball) {
        path.clear();
        on_path.clear();
        LatticePoint3 cur = start;
        int id = -1;
        for (;;) {
            if (auto it = label.find(cur); it != label.end()) {
                id = it->second;
                break;
            }
            if (auto it = on_path.find(cur); it != on_path.end()) {
                found.push_back(canonical_cycle({path.begin() + static_cast<std::ptrdiff_t>(it->second), path.end()}));
                id = static_cast<int>(found.size()) - 1;
                break;
            }
            on_path.emplace(cur, path.size());
            path.push_back(cur);
            if (static_cast<std::int64_t>(path.size()) > cap) {
                throw CycleError("orbit of " + to_string(start) + " exceeded its step cap");
            }
            cur = reduce3(c, cur).y;
        }
        for (const LatticePoint3& p : path) label[p] = id;
    }
    std::sort(found.begin(), found.end(),
              [](const Attractor3& a, const Attractor3& b) { return a.points.front() < b.points.front(); });
    return found;
}

CubicClass classify3(const CubicSystem& c) {
    CubicClass out;
    out.radius = 1.5 * cubic_contraction_radius(c);
    out.attractors = attractors3(c, out.radius);
    out.proper = out.attractors.size() == 1 && out.attractors.front().kind == AttractorKind::FixedPoint &&
                 out.attractors.front().points.front() == LatticePoint3{};
    return out;
}

}  // namespace cbns

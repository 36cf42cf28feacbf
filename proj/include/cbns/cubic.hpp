#pragma once

// Three-dimensional periodic systems. The base z = (r, r e^{i phi}) lives in
// R x C with coordinatewise multiplication and 1 = (1, 1); it satisfies
//
//   (-r^3, -A r, A, 1)_z = 0,   i.e. z^3 = r^3 + A r z - A z^2,
//
// with n = |r|^3 digits and cos(phi) = -(1 + A/r)/2. For r = -m this is the
// family (m^3, m A, A, 1)_z = 0. Lattice points are integer triples
// x0 + x1 z + x2 z^2.

#include <cbns/lattice.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cbns {

struct CubicSystem {
    int r = -2;
    int A = 0;
    std::int64_t n = 8;
    double phi = 0;
    // phi in {0, pi}: 1, z, z^2 are then linearly dependent in R x C.
    bool degenerate = false;
    std::array<std::int64_t, 4> identity{};  // (-r^3, -A r, A, 1)
};

// r = r_sign * m_or_r. Throws DomainError for m_or_r < 2, r_sign not +-1 or
// -(1 + A/r)/2 outside [-1, 1].
CubicSystem cubic_system(int m_or_r, int A, int r_sign);

struct LatticePoint3 {
    std::int64_t x0 = 0, x1 = 0, x2 = 0;
    friend auto operator<=>(const LatticePoint3&, const LatticePoint3&) = default;
};

std::string to_string(const LatticePoint3& p);

struct LatticePoint3Hash {
    std::size_t operator()(const LatticePoint3& p) const noexcept;
};

struct Embedded3 {
    double real = 0;
    Complex plane;

    double norm() const;      // Euclidean on (real, Re, Im)
    double sup_norm() const;  // max(|real|, |plane|)
};

Embedded3 embed3(const CubicSystem& c, const LatticePoint3& x);

struct Reduction3 {
    LatticePoint3 y;
    std::int64_t digit = 0;
};

// k = floor(x0 / n), digit = x0 - k n, y = (x - k s identity) / z where
// s = +-1 makes s * identity[0] = n; y z + digit = x exactly.
Reduction3 reduce3(const CubicSystem& c, const LatticePoint3& x);

// x z, from the identity.
LatticePoint3 mul_z3(const CubicSystem& c, const LatticePoint3& x);

// Outside this sup-norm radius, (n-1)/(|r|-1), reduction strictly shrinks the
// sup norm.
double cubic_contraction_radius(const CubicSystem& c);

// Euclidean counterpart: sqrt(2) (n-1)/(|r|-1), since |1| = sqrt(2).
double cubic_euclidean_contraction_radius(const CubicSystem& c);

enum class AttractorKind { FixedPoint, Cycle };

struct Attractor3 {
    AttractorKind kind = AttractorKind::FixedPoint;
    std::vector<LatticePoint3> points;  // orbit order, starting at the smallest point

    friend bool operator==(const Attractor3&, const Attractor3&) = default;
};

// Follows the orbit of x until it repeats and returns the periodic part.
// Works for degenerate systems too. Throws CycleError past max_steps.
Attractor3 orbit_attractor(const CubicSystem& c, const LatticePoint3& x, std::int64_t max_steps = 1000000);

// Lattice points with embedded Euclidean norm <= radius, sorted.
std::vector<LatticePoint3> cubic_ball(const CubicSystem& c, double radius);

// Every attractor reached from the ball, sorted by first point. Needs
// radius >= (n-1)/(|r|-1) and a non-degenerate system.
std::vector<Attractor3> attractors3(const CubicSystem& c, double radius);

struct CubicClass {
    bool proper = false;
    double radius = 0;
    std::vector<Attractor3> attractors;
};

// attractors3 over 1.5 (n-1)/(|r|-1); proper iff the only attractor is the
// fixed point 0.
CubicClass classify3(const CubicSystem& c);

}  // namespace cbns

#pragma once

// Integer part: reduction, encoding and decoding between lattice points and
// digit strings, carry normalization of pseudorepresentations, and the
// attractor structure of the reduction map.
//
// The reduction r(x) strips the least significant digit: for x = a + b z and
// k = floor(a / n), the digit is a - k n and r(x) = (b + k D) - k z, so that
// r(x) z + digit = x. Every orbit of r ends in a fixed point; for D <= 1 the
// only fixed point is 0 and the system is proper.

#include <cbns/lattice.hpp>

#include <map>
#include <string_view>
#include <vector>

namespace cbns {

struct Reduction {
    LatticePoint y;
    int digit = 0;
};

Reduction reduce(const System& s, LatticePoint x);

// k-fold reduction: the level-k ancestor of x under magnification.
LatticePoint reduce_times(const System& s, LatticePoint x, int k);

bool is_fixed_point(const System& s, LatticePoint x);

// Digits (offset 0) plus the fixed point the orbit ended in:
//   decode(digits) + terminal * z^len == input.
struct EncodeResult {
    DigitString digits;
    LatticePoint terminal;
};

EncodeResult encode(const System& s, LatticePoint x);

// Upper bound on reduction steps used by encode before raising CycleError.
std::int64_t encode_step_cap(const System& s, LatticePoint x);

LatticePoint decode(const System& s, const DigitString& digits);

// One carry at `position`: subtracts floor(v/n) * (n, -D, 1) shifted to that
// position, leaving v mod n there. The result is extended as needed.
PseudoRepresentation carry_at(const System& s, PseudoRepresentation p, std::size_t position);

EncodeResult normalize(const System& s, const PseudoRepresentation& p);

EncodeResult add(const System& s, const DigitString& x, const DigitString& y);

enum class ProperTag { Proper, TwoAttractorsMirror, ThreeAttractors, TwoAttractorsGeneric };

std::string_view to_string(ProperTag tag);

struct PropernessClass {
    ProperTag tag = ProperTag::Proper;
    std::vector<LatticePoint> fixed_points;
};

std::vector<LatticePoint> fixed_points(const System& s);

PropernessClass classify(const System& s);

// Terminal of every lattice point with |a + b z| <= radius. radius must be at
// least sqrt(n) + 1 so that the ball holds every periodic orbit.
std::map<LatticePoint, LatticePoint> attractor_map(const System& s, double radius);

// Lattice points with |a + b z| <= radius, ordered by (a, b).
std::vector<LatticePoint> lattice_ball(const System& s, double radius);

}  // namespace cbns

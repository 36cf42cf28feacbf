#include <cbns/integer_part.hpp>

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

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

// Exact value of a pseudorepresentation, Horner in the lattice.
LatticePoint pseudo_value(const System& s, const std::vector<std::int64_t>& digits) {
    LatticePoint acc;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = lattice_mul_z(s, acc) + LatticePoint{*it, 0};
    return acc;
}

LatticePoint times_z_pow(const System& s, LatticePoint x, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) x = lattice_mul_z(s, x);
    return x;
}

// Fixed points solve x (1 - z) = d; test every digit for a lattice solution.
std::set<LatticePoint> fixed_points_by_solving(const System& s) {
    std::set<LatticePoint> out;
    for (int d = 0; d < s.n; ++d) {
        const Complex x = static_cast<double>(d) / (1.0 - s.z);
        const double b = x.imag() / s.z.imag();
        const double a = x.real() - b * s.z.real();
        if (std::abs(b - std::round(b)) < 1e-9 && std::abs(a - std::round(a)) < 1e-9) {
            out.insert({std::llround(a), std::llround(b)});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("reduction of the worked example") {
    const System s = make_system(3, 3);
    Reduction r = reduce(s, {-12, 10});
    CHECK(r.y == LatticePoint{-2, 4});
    CHECK(r.digit == 0);
    r = reduce(s, {-2, 4});
    CHECK(r.y == LatticePoint{1, 1});
    CHECK(r.digit == 1);
    r = reduce(make_system(5, -2), {});
    CHECK(r.y == LatticePoint{});
    CHECK(r.digit == 0);
}

TEST_CASE("floor division rounds toward minus infinity") {
    CHECK(checked::floor_div(-12, 3) == -4);
    CHECK(checked::floor_div(-1, 3) == -1);
    CHECK(checked::floor_div(-3, 3) == -1);
    CHECK(checked::floor_div(5, 3) == 1);
    CHECK(checked::floor_div(0, 7) == 0);
}

TEST_CASE("encode") {
    const System s33 = make_system(3, 3);
    EncodeResult e = encode(s33, {-12, 10});
    CHECK(e.digits.digits == std::vector<int>{0, 1, 1, 1});
    CHECK(e.terminal == LatticePoint{0, 0});

    e = encode(make_system(2, 2), {-1, 1});
    CHECK(e.digits.digits.empty());
    CHECK(e.terminal == LatticePoint{-1, 1});

    e = encode(make_system(2, -1), {});
    CHECK(e.digits.digits.empty());
    CHECK(e.terminal == LatticePoint{});
}

TEST_CASE("decode") {
    CHECK(decode(make_system(3, 3), DigitString{{0, 1, 1, 1}, 0}) == LatticePoint{-12, 10});
    CHECK(decode(make_system(4, -3), DigitString{{3}, 0}) == LatticePoint{3, 0});
    CHECK(decode(make_system(2, -1), DigitString{{1, 1, 1}, 0}) == LatticePoint{-1, 0});
    CHECK(decode(make_system(2, -1), DigitString{{1}, 2}) == LatticePoint{-2, -1});
    CHECK_THROWS_AS(decode(make_system(2, -1), DigitString{{2}, 0}), DomainError);
    CHECK_THROWS_AS(decode(make_system(2, -1), DigitString{{1}, -1}), DomainError);
}

TEST_CASE("carry steps of the worked example") {
    const System s = make_system(3, 3);
    PseudoRepresentation p{{7, -8, 7, -2}, 0};
    p = carry_at(s, p, 0);
    CHECK(std::vector<std::int64_t>(p.digits.begin(), p.digits.begin() + 4) == std::vector<std::int64_t>{1, -2, 5, -2});
    p = carry_at(s, p, 1);
    CHECK(std::vector<std::int64_t>(p.digits.begin(), p.digits.begin() + 4) == std::vector<std::int64_t>{1, 1, 2, -1});

    const EncodeResult full = normalize(s, PseudoRepresentation{{7, -8, 7, -2}, 0});
    CHECK(full.digits.digits.front() == 1);
    CHECK(full.digits.digits.at(1) == 1);
    CHECK(decode(s, full.digits) + times_z_pow(s, full.terminal, full.digits.size()) ==
          pseudo_value(s, {7, -8, 7, -2}));
}

TEST_CASE("normalize of zero") {
    const EncodeResult e = normalize(make_system(5, 1), PseudoRepresentation{{0, 0, 0}, 0});
    CHECK(e.digits.digits.empty());
    CHECK(e.terminal == LatticePoint{});
}

TEST_CASE("normalize equals encode of the value") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> coef(-40, 40);
    std::uniform_int_distribution<int> len(1, 8);
    for (const System& s : systems_up_to(6)) {
        for (int trial = 0; trial < 30; ++trial) {
            PseudoRepresentation p;
            p.digits.resize(static_cast<std::size_t>(len(rng)));
            for (auto& d : p.digits) d = coef(rng);
            const EncodeResult via_carry = normalize(s, p);
            const EncodeResult direct = encode(s, pseudo_value(s, p.digits));
            CHECK(via_carry.terminal == direct.terminal);
            if (direct.terminal == LatticePoint{}) CHECK(via_carry.digits == direct.digits);
            CHECK(decode(s, via_carry.digits) + times_z_pow(s, via_carry.terminal, via_carry.digits.size()) ==
                  pseudo_value(s, p.digits));
        }
    }
}

TEST_CASE("fixed points and classification") {
    CHECK(fixed_points(make_system(2, -1)) == std::vector<LatticePoint>{{0, 0}});
    CHECK(fixed_points(make_system(4, 2)) == std::vector<LatticePoint>{{0, 0}, {-1, 1}});
    CHECK(fixed_points(make_system(3, 3)) == std::vector<LatticePoint>{{0, 0}, {-2, 1}, {-4, 2}});
    CHECK(classify(make_system(2, 2)).tag == ProperTag::TwoAttractorsMirror);
    CHECK(classify(make_system(3, 3)).tag == ProperTag::ThreeAttractors);
    CHECK(classify(make_system(9, 5)).tag == ProperTag::TwoAttractorsGeneric);
    CHECK(classify(make_system(9, 1)).tag == ProperTag::Proper);
    CHECK(classify(make_system(9, -5)).tag == ProperTag::Proper);
    CHECK(to_string(ProperTag::ThreeAttractors) == "ThreeAttractors");

    // Three fixed points also occur whenever n + 1 - D divides up to 2 (n - 1).
    CHECK(fixed_points(make_system(5, 4)) == std::vector<LatticePoint>{{0, 0}, {-3, 1}, {-6, 2}});
    CHECK(fixed_points(make_system(7, 5)) == std::vector<LatticePoint>{{0, 0}, {-4, 1}, {-8, 2}});
    CHECK(classify(make_system(5, 4)).tag == ProperTag::ThreeAttractors);
    CHECK(classify(make_system(7, 5)).tag == ProperTag::ThreeAttractors);
}

TEST_CASE("listed fixed points are exactly the solutions of x = x z + d") {
    for (const System& s : systems_up_to(12)) {
        const auto listed = fixed_points(s);
        CHECK(std::set<LatticePoint>(listed.begin(), listed.end()) == fixed_points_by_solving(s));
    }
}

TEST_CASE("attractor map") {
    const System s21 = make_system(2, -1);
    for (const auto& [p, t] : attractor_map(s21, std::sqrt(2.0) + 1)) CHECK(t == LatticePoint{});

    const System s33 = make_system(3, 3);
    std::set<LatticePoint> terminals;
    for (const auto& [p, t] : attractor_map(s33, std::sqrt(3.0) + 1)) terminals.insert(t);
    CHECK(terminals.size() == 3);

    CHECK(attractor_map(make_system(7, 4), 4.0).at({0, 0}) == LatticePoint{});
    CHECK_THROWS_AS(attractor_map(s33, 1.0), DomainError);
}

TEST_CASE("lattice ball is the norm-filtered box") {
    const System s = make_system(5, -3);
    const double radius = 4.5;
    const auto ball = lattice_ball(s, radius);
    std::set<LatticePoint> brute;
    for (int a = -20; a <= 20; ++a) {
        for (int b = -20; b <= 20; ++b) {
            if (std::abs(lattice_to_complex(s, {a, b})) <= radius) brute.insert({a, b});
        }
    }
    CHECK(std::set<LatticePoint>(ball.begin(), ball.end()) == brute);
}

TEST_CASE("add") {
    // (1) + (1) in (2,-1): the oracle searches all digit strings up to length 12
    // for the one decoding to 2.
    const System s = make_system(2, -1);
    const EncodeResult sum = add(s, DigitString{{1}, 0}, DigitString{{1}, 0});
    CHECK(sum.terminal == LatticePoint{});
    std::vector<DigitString> hits;
    for (int len = 1; len <= 12; ++len) {
        for (int mask = 0; mask < (1 << len); ++mask) {
            DigitString d;
            for (int i = 0; i < len; ++i) d.digits.push_back((mask >> i) & 1);
            if (d.digits.back() == 1 && decode(s, d) == LatticePoint{2, 0}) hits.push_back(d);
        }
    }
    REQUIRE(hits.size() == 1);
    CHECK(sum.digits == hits.front());

    const DigitString x{{1, 0, 1, 1}, 0};
    CHECK(add(s, x, DigitString{}).digits == x);

    const System s33 = make_system(3, 3);
    const EncodeResult e = add(s33, encode(s33, {-12, 10}).digits, encode(s33, {}).digits);
    CHECK(e.digits.digits == std::vector<int>{0, 1, 1, 1});
    CHECK_THROWS_AS(add(s33, DigitString{{1}, 1}, DigitString{}), DomainError);
}

TEST_CASE("add preserves value") {
    std::mt19937_64 rng(9);
    for (const System& s : systems_up_to(7)) {
        std::uniform_int_distribution<int> digit(0, s.n - 1);
        std::uniform_int_distribution<int> len(0, 10);
        for (int trial = 0; trial < 20; ++trial) {
            DigitString x, y;
            x.digits.resize(static_cast<std::size_t>(len(rng)));
            y.digits.resize(static_cast<std::size_t>(len(rng)));
            for (int& d : x.digits) d = digit(rng);
            for (int& d : y.digits) d = digit(rng);
            const EncodeResult r = add(s, x, y);
            CHECK(decode(s, r.digits) + times_z_pow(s, r.terminal, r.digits.size()) == decode(s, x) + decode(s, y));
            const Complex lhs = eval_digits(s, x) + eval_digits(s, y);
            const Complex rhs = eval_digits(s, r.digits) +
                                lattice_to_complex(s, r.terminal) * std::pow(s.z, static_cast<int>(r.digits.size()));
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("encode step cap and cycle detection") {
    const System s = make_system(2, -1);
    CHECK(encode_step_cap(s, {}) > 0);
    CHECK(encode_step_cap(s, {1000000, 0}) > encode_step_cap(s, {1, 0}));
}

TEST_CASE("terminals over the ball are exactly the fixed points") {
    for (const System& s : systems_up_to(9)) {
        const auto fixed = fixed_points(s);
        std::set<LatticePoint> terminals;
        for (const auto& [p, t] : attractor_map(s, 3.0 * std::sqrt(static_cast<double>(s.n)))) terminals.insert(t);
        CHECK(terminals == std::set<LatticePoint>(fixed.begin(), fixed.end()));
    }
}

TEST_CASE("mirror symmetry about z - 1 when D = 2") {
    for (int n = 2; n <= 9; ++n) {
        const System s = make_system(n, 2);
        const LatticePoint mirror_centre{-1, 1};
        const auto map = attractor_map(s, 3.0 * std::sqrt(static_cast<double>(n)));
        for (const auto& [x, t] : map) {
            const LatticePoint image = mirror_centre - x;
            const LatticePoint image_terminal = encode(s, image).terminal;
            CHECK((t == LatticePoint{0, 0}) == (image_terminal == mirror_centre));
        }
    }
}

TEST_CASE("attractors are invariant under x -> x z + d") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> coord(-30, 30);
    for (const System& s : systems_up_to(9)) {
        for (int trial = 0; trial < 40; ++trial) {
            const LatticePoint x{coord(rng), coord(rng)};
            const LatticePoint t = encode(s, x).terminal;
            for (int d = 0; d < s.n; ++d) {
                CHECK(encode(s, lattice_mul_z(s, x) + LatticePoint{d, 0}).terminal == t);
            }
        }
    }
}

#pragma once

// Periodic complex-base numeral systems z^2 = D z - n and exact arithmetic on
// the lattice X = Z + zZ.
//
// A system is fixed by the digit count n >= 2 and the integer trace D with
// D^2 < 4n. The base is then z = D/2 + i sqrt(n - D^2/4), so |z|^2 = n.
// Everything that has to be exact (reduction, decoding, boundary chains) works
// on integer pairs (a, b) meaning a + b z; the floating value of z is only used
// for measurement and rendering.

#include <cbns/error.hpp>

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cbns {

using Complex = std::complex<double>;

struct System {
    int n = 2;
    int D = 0;
    Complex z;
    double phi = 0.0;  // arg z, in (0, pi)

    friend bool operator==(const System& lhs, const System& rhs) {
        return lhs.n == rhs.n && lhs.D == rhs.D;
    }
};

// Validates (n, D) and derives z. Throws DomainError for n < 2 or D^2 >= 4n.
System make_system(int n, int D);

namespace checked {

std::int64_t add(std::int64_t lhs, std::int64_t rhs);
std::int64_t sub(std::int64_t lhs, std::int64_t rhs);
std::int64_t mul(std::int64_t lhs, std::int64_t rhs);

// Mathematical floor division (rounds toward -infinity); divisor > 0.
constexpr std::int64_t floor_div(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if ((num % den != 0) && (num < 0)) {
        --q;
    }
    return q;
}

}  // namespace checked

// a + b z. All arithmetic is checked; overflow throws OverflowError.
struct LatticePoint {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend LatticePoint operator+(LatticePoint lhs, LatticePoint rhs) {
        return {checked::add(lhs.a, rhs.a), checked::add(lhs.b, rhs.b)};
    }
    friend LatticePoint operator-(LatticePoint lhs, LatticePoint rhs) {
        return {checked::sub(lhs.a, rhs.a), checked::sub(lhs.b, rhs.b)};
    }
    friend LatticePoint operator-(LatticePoint p) { return LatticePoint{} - p; }
    friend LatticePoint operator*(std::int64_t k, LatticePoint p) {
        return {checked::mul(k, p.a), checked::mul(k, p.b)};
    }

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

std::string to_string(LatticePoint p);

struct LatticePointHash {
    std::size_t operator()(LatticePoint p) const noexcept {
        const auto ua = static_cast<std::uint64_t>(p.a);
        const auto ub = static_cast<std::uint64_t>(p.b);
        return std::hash<std::uint64_t>{}(ua * 0x9E3779B97F4A7C15ULL ^ (ub + 0x632BE59BD9B4E019ULL + (ua << 6)));
    }
};

// z * (a + b z) = -n b + (a + D b) z
LatticePoint lattice_mul_z(const System& s, LatticePoint x);

// z^k as a lattice point, by k applications of lattice_mul_z to 1.
LatticePoint z_pow(const System& s, int k);

Complex lattice_to_complex(const System& s, LatticePoint x);

// Digits in {0..n-1}, least significant first; digit i weighs z^(i + offset).
// Canonical form strips most-significant zeros; equality compares canonical
// forms.
struct DigitString {
    std::vector<int> digits;
    int offset = 0;

    DigitString canonical() const;
    std::size_t size() const { return digits.size(); }

    friend bool operator==(const DigitString& lhs, const DigitString& rhs);
};

// Same shape as DigitString, arbitrary integer digits.
struct PseudoRepresentation {
    std::vector<std::int64_t> digits;
    int offset = 0;
};

// Throws DomainError if some digit lies outside {0..n-1}.
void validate_digits(const System& s, const DigitString& r);

PseudoRepresentation to_pseudo(const DigitString& r);

// sum digit_i z^(i + offset), Horner from the most significant digit.
Complex eval_digits(const System& s, const DigitString& r);
Complex eval_digits(const System& s, const PseudoRepresentation& r);

std::string to_string(const DigitString& r);

}  // namespace cbns

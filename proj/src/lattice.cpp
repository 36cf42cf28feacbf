#include <cbns/lattice.hpp>

#include <cmath>

namespace cbns {

System make_system(int n, int D) {
    if (n < 2) {
        throw DomainError("digit count n must be at least 2, got " + std::to_string(n));
    }
    const std::int64_t disc = 4 * static_cast<std::int64_t>(n) - static_cast<std::int64_t>(D) * D;
    if (disc <= 0) {
        throw DomainError("D^2 must be below 4n (n=" + std::to_string(n) + ", D=" + std::to_string(D) +
                          "): the base would not be strictly complex");
    }
    System s;
    s.n = n;
    s.D = D;
    s.z = Complex(0.5 * D, 0.5 * std::sqrt(static_cast<double>(disc)));
    s.phi = std::arg(s.z);
    return s;
}

namespace checked {

std::int64_t add(std::int64_t lhs, std::int64_t rhs) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(lhs, rhs, &out)) {
        throw OverflowError("lattice coefficient overflow in addition");
    }
    return out;
}

std::int64_t sub(std::int64_t lhs, std::int64_t rhs) {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(lhs, rhs, &out)) {
        throw OverflowError("lattice coefficient overflow in subtraction");
    }
    return out;
}

std::int64_t mul(std::int64_t lhs, std::int64_t rhs) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(lhs, rhs, &out)) {
        throw OverflowError("lattice coefficient overflow in multiplication");
    }
    return out;
}

}  // namespace checked

std::string to_string(LatticePoint p) { return std::to_string(p.a) + "," + std::to_string(p.b); }

LatticePoint lattice_mul_z(const System& s, LatticePoint x) {
    return {checked::mul(-static_cast<std::int64_t>(s.n), x.b), checked::add(x.a, checked::mul(s.D, x.b))};
}

LatticePoint z_pow(const System& s, int k) {
    if (k < 0) {
        throw DomainError("z_pow needs a nonnegative exponent");
    }
    LatticePoint p{1, 0};
    for (int i = 0; i < k; ++i) {
        p = lattice_mul_z(s, p);
    }
    return p;
}

Complex lattice_to_complex(const System& s, LatticePoint x) {
    return static_cast<double>(x.a) + static_cast<double>(x.b) * s.z;
}

DigitString DigitString::canonical() const {
    DigitString out = *this;
    while (!out.digits.empty() && out.digits.back() == 0) {
        out.digits.pop_back();
    }
    if (out.digits.empty()) {
        out.offset = 0;
    }
    return out;
}

bool operator==(const DigitString& lhs, const DigitString& rhs) {
    const DigitString l = lhs.canonical();
    const DigitString r = rhs.canonical();
    return l.offset == r.offset && l.digits == r.digits;
}

void validate_digits(const System& s, const DigitString& r) {
    for (int d : r.digits) {
        if (d < 0 || d >= s.n) {
            throw DomainError("digit " + std::to_string(d) + " outside {0.." + std::to_string(s.n - 1) + "}");
        }
    }
}

PseudoRepresentation to_pseudo(const DigitString& r) {
    return {std::vector<std::int64_t>(r.digits.begin(), r.digits.end()), r.offset};
}

namespace {

template <typename Digits>
Complex horner(const System& s, const Digits& digits, int offset) {
    Complex acc{0.0, 0.0};
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        acc = acc * s.z + static_cast<double>(*it);
    }
    if (offset > 0) {
        for (int i = 0; i < offset; ++i) acc *= s.z;
    } else {
        for (int i = 0; i < -offset; ++i) acc /= s.z;
    }
    return acc;
}

}  // namespace

Complex eval_digits(const System& s, const DigitString& r) { return horner(s, r.digits, r.offset); }

Complex eval_digits(const System& s, const PseudoRepresentation& r) { return horner(s, r.digits, r.offset); }

std::string to_string(const DigitString& r) {
    std::string out;
    for (std::size_t i = 0; i < r.digits.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(r.digits[i]);
    }
    return out;
}

}  // namespace cbns

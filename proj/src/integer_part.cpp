#include <cbns/integer_part.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace cbns {

Reduction reduce(const System& s, LatticePoint x) {
    const std::int64_t k = checked::floor_div(x.a, s.n);
    const auto digit = static_cast<int>(x.a - k * s.n);
    return {{checked::add(x.b, checked::mul(k, s.D)), -k}, digit};
}

LatticePoint reduce_times(const System& s, LatticePoint x, int k) {
    for (int i = 0; i < k; ++i) x = reduce(s, x).y;
    return x;
}

bool is_fixed_point(const System& s, LatticePoint x) { return reduce(s, x).y == x; }

namespace {

double lattice_norm(const System& s, LatticePoint x) { return std::abs(lattice_to_complex(s, x)); }

// Lattice points in the disc of radius sqrt(n) + 1, over-estimated by area.
std::int64_t ball_count_bound(const System& s) {
    const double root = std::sqrt(static_cast<double>(s.n));
    const double reach = 2.0 * root + 2.0;
    return static_cast<std::int64_t>(std::ceil(std::numbers::pi * reach * reach / s.z.imag())) + 1;
}

}  // namespace

std::int64_t encode_step_cap(const System& s, LatticePoint x) {
    const double norm = std::max(lattice_norm(s, x), 2.0);
    const double shrink = std::log(std::sqrt(static_cast<double>(s.n)));
    const auto outside = static_cast<std::int64_t>(std::ceil(std::log(norm) / shrink));
    return 10 * (outside + ball_count_bound(s));
}

EncodeResult encode(const System& s, LatticePoint x) {
    EncodeResult out;
    const std::int64_t cap = encode_step_cap(s, x);
    LatticePoint cur = x;
    for (std::int64_t step = 0;; ++step) {
        const Reduction r = reduce(s, cur);
        if (r.y == cur) {
            out.terminal = cur;
            return out;
        }
        if (step >= cap) {
            throw CycleError("reduction of " + to_string(x) + " did not reach a fixed point within " +
                             std::to_string(cap) + " steps");
        }
        out.digits.digits.push_back(r.digit);
        cur = r.y;
    }
}

LatticePoint decode(const System& s, const DigitString& digits) {
    if (digits.offset < 0) {
        throw DomainError("decode needs a nonnegative offset");
    }
    validate_digits(s, digits);
    LatticePoint acc;
    for (auto it = digits.digits.rbegin(); it != digits.digits.rend(); ++it) {
        acc = lattice_mul_z(s, acc) + LatticePoint{*it, 0};
    }
    for (int i = 0; i < digits.offset; ++i) {
        acc = lattice_mul_z(s, acc);
    }
    return acc;
}

PseudoRepresentation carry_at(const System& s, PseudoRepresentation p, std::size_t position) {
    if (p.digits.size() < position + 3) {
        p.digits.resize(position + 3, 0);
    }
    const std::int64_t v = p.digits[position];
    const std::int64_t k = checked::floor_div(v, s.n);
    p.digits[position] = v - k * s.n;
    p.digits[position + 1] = checked::add(p.digits[position + 1], checked::mul(k, s.D));
    p.digits[position + 2] = checked::sub(p.digits[position + 2], k);
    return p;
}

EncodeResult normalize(const System& s, const PseudoRepresentation& p) {
    if (p.offset < 0) {
        throw DomainError("normalize needs a nonnegative offset");
    }
    PseudoRepresentation work;
    work.digits.assign(static_cast<std::size_t>(p.offset), 0);
    work.digits.insert(work.digits.end(), p.digits.begin(), p.digits.end());
    if (work.digits.size() < 2) {
        work.digits.resize(2, 0);
    }

    // Sweep until only two positions remain; those form a lattice point whose
    // further carries are exactly its reduction orbit.
    std::size_t pos = 0;
    for (; pos + 2 < work.digits.size(); ++pos) {
        work = carry_at(s, std::move(work), pos);
    }
    const EncodeResult tail = encode(s, {work.digits[pos], work.digits[pos + 1]});

    EncodeResult out;
    out.digits.digits.reserve(pos + tail.digits.size());
    for (std::size_t i = 0; i < pos; ++i) {
        out.digits.digits.push_back(static_cast<int>(work.digits[i]));
    }
    out.digits.digits.insert(out.digits.digits.end(), tail.digits.digits.begin(), tail.digits.digits.end());
    out.terminal = tail.terminal;
    if (out.terminal == LatticePoint{}) {
        out.digits = out.digits.canonical();
    }
    return out;
}

EncodeResult add(const System& s, const DigitString& x, const DigitString& y) {
    if (x.offset != 0 || y.offset != 0) {
        throw DomainError("add expects integer digit strings (offset 0)");
    }
    validate_digits(s, x);
    validate_digits(s, y);
    PseudoRepresentation sum;
    sum.digits.assign(std::max(x.size(), y.size()), 0);
    for (std::size_t i = 0; i < x.size(); ++i) sum.digits[i] += x.digits[i];
    for (std::size_t i = 0; i < y.size(); ++i) sum.digits[i] += y.digits[i];
    return normalize(s, sum);
}

std::string_view to_string(ProperTag tag) {
    switch (tag) {
        case ProperTag::Proper:
            return "Proper";
        case ProperTag::TwoAttractorsMirror:
            return "TwoAttractorsMirror";
        case ProperTag::ThreeAttractors:
            return "ThreeAttractors";
        case ProperTag::TwoAttractorsGeneric:
            return "TwoAttractorsGeneric";
    }
    return "Unknown";
}

std::vector<LatticePoint> fixed_points(const System& s) {
    // x = x z + d with x = a + b z reduces to a = b (1 - D), b (n + 1 - D) = d.
    const std::int64_t step = static_cast<std::int64_t>(s.n) + 1 - s.D;
    std::vector<LatticePoint> out;
    for (std::int64_t d = 0; d < s.n; d += step) {
        const std::int64_t b = d / step;
        out.push_back({b * (1 - s.D), b});
    }
    return out;
}

PropernessClass classify(const System& s) {
    PropernessClass out;
    out.fixed_points = fixed_points(s);
    if (s.D <= 1) {
        out.tag = ProperTag::Proper;
    } else if (s.D == 2) {
        out.tag = ProperTag::TwoAttractorsMirror;
    } else if (out.fixed_points.size() == 3) {
        out.tag = ProperTag::ThreeAttractors;
    } else {
        out.tag = ProperTag::TwoAttractorsGeneric;
    }
    for (LatticePoint p : out.fixed_points) {
        if (!is_fixed_point(s, p)) {
            throw std::logic_error("listed fixed point " + to_string(p) + " is not fixed under reduction");
        }
    }
    return out;
}

std::vector<LatticePoint> lattice_ball(const System& s, double radius) {
    std::vector<LatticePoint> out;
    if (radius < 0) return out;
    const auto bmax = static_cast<std::int64_t>(std::floor(radius / s.z.imag()));
    for (std::int64_t b = -bmax; b <= bmax; ++b) {
        const double shift = static_cast<double>(b) * s.z.real();
        const auto alo = static_cast<std::int64_t>(std::ceil(-shift - radius));
        const auto ahi = static_cast<std::int64_t>(std::floor(-shift + radius));
        for (std::int64_t a = alo; a <= ahi; ++a) {
            if (lattice_norm(s, {a, b}) <= radius) {
                out.push_back({a, b});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::map<LatticePoint, LatticePoint> attractor_map(const System& s, double radius) {
    const double minimum = std::sqrt(static_cast<double>(s.n)) + 1.0;
    if (radius < minimum) {
        throw DomainError("attractor_map radius must be at least sqrt(n)+1");
    }
    const std::vector<LatticePoint> ball = lattice_ball(s, radius);
    std::unordered_map<LatticePoint, LatticePoint, LatticePointHash> memo;
    std::unordered_map<LatticePoint, std::size_t, LatticePointHash> on_path;
    std::vector<LatticePoint> path;

    for (LatticePoint start : ball) {
        path.clear();
        on_path.clear();
        LatticePoint cur = start;
        LatticePoint terminal;
        for (;;) {
            if (auto hit = memo.find(cur); hit != memo.end()) {
                terminal = hit->second;
                break;
            }
            const LatticePoint next = reduce(s, cur).y;
            if (next == cur) {
                terminal = cur;
                break;
            }
            if (on_path.contains(cur)) {
                throw CycleError("reduction cycle through " + to_string(cur) + " that is not a fixed point");
            }
            on_path.emplace(cur, path.size());
            path.push_back(cur);
            if (static_cast<std::int64_t>(path.size()) > encode_step_cap(s, start)) {
                throw CycleError("reduction orbit of " + to_string(start) + " exceeded its step cap");
            }
            cur = next;
        }
        memo[cur] = terminal;
        for (LatticePoint p : path) {
            memo[p] = terminal;
        }
    }

    std::map<LatticePoint, LatticePoint> out;
    for (LatticePoint p : ball) {
        out.emplace(p, memo.at(p));
    }
    return out;
}

}  // namespace cbns

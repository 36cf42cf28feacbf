#include <cbns/boundary.hpp>
#include <cbns/integer_part.hpp>

#include <algorithm>
#include <cmath>
#include <deque>

namespace cbns {

namespace {

constexpr int wrap6(int r) { return ((r % 6) + 6) % 6; }

// Directions strictly between `in` and `out` going clockwise; all five other
// directions when the chain turns back on itself (in == out).
std::vector<int> left_directions(int in, int out) {
    std::vector<int> dirs;
    int k = wrap6(in + 1);
    do {
        if (k == out && in != out) break;
        dirs.push_back(k);
        k = wrap6(k + 1);
    } while (k != in);
    return dirs;
}

LatticePoint digit_point(std::int64_t d) { return {d, 0}; }

}  // namespace

std::optional<int> NeighborTable::direction(LatticePoint delta) const {
    for (int r = 0; r < 6; ++r) {
        if (offsets[static_cast<std::size_t>(r)] == delta) return r;
    }
    return std::nullopt;
}

NeighborTable neighbor_table(const System& s) {
    if (s.D >= 0) {
        throw DomainError("neighbour table is defined for D < 0; canonicalize the sign first");
    }
    const int n = s.n;
    const int D = s.D;
    NeighborTable t;
    t.system = s;
    t.offsets = {LatticePoint{1, 0}, {D + 1, -1}, {D, -1}, {-1, 0}, {-D - 1, 1}, {-D, 1}};
    t.meeting = {n + D, n - 1, n - 1, -D - 1, 0, 0};

    const Complex zm1 = s.z - 1.0;
    for (std::size_t r = 0; r < 6; ++r) {
        const LatticePoint via_a = digit_point(t.meeting[r]) + t.offsets[static_cast<std::size_t>(t.ra[r])];
        t.meeting_points[r] = lattice_to_complex(s, via_a) / zm1;
    }

    for (std::size_t r = 0; r < 6; ++r) {
        const std::size_t opp = (r + 3) % 6;
        const std::size_t next = (r + 1) % 6;
        if (t.offsets[opp] != -t.offsets[r]) {
            throw std::logic_error("neighbour offsets are not centrally symmetric");
        }
        if (t.meeting[r] < 0 || t.meeting[r] >= n) {
            throw std::logic_error("meeting place outside the digit range");
        }
        // The meeting place touches M(N_r) through N_ra and M(N_{r+1}) through N_rb.
        const LatticePoint via_a = digit_point(t.meeting[r]) + t.offsets[static_cast<std::size_t>(t.ra[r])];
        const LatticePoint via_b = digit_point(t.meeting[r]) + t.offsets[static_cast<std::size_t>(t.rb[r])];
        if (reduce(s, via_a).y != t.offsets[r] || reduce(s, via_b).y != t.offsets[next]) {
            throw std::logic_error("meeting place does not touch both neighbouring magnified tiles");
        }
        const Complex fixed = s.z * t.meeting_points[r] - t.meeting_points[r] - lattice_to_complex(s, via_a);
        const Complex sym = t.meeting_points[r] + t.meeting_points[opp] - static_cast<double>(n - 1) / zm1;
        if (std::abs(fixed.real()) > 1e-12 || std::abs(fixed.imag()) > 1e-12 || std::abs(sym.real()) > 1e-12 ||
            std::abs(sym.imag()) > 1e-12) {
            throw std::logic_error("meeting points violate their defining relation");
        }
    }
    return t;
}

Complex SignTransform::to_canonical(Complex x) const { return conjugate ? std::conj(x - translation) : x; }

Complex SignTransform::from_canonical(Complex x) const { return conjugate ? std::conj(x) + translation : x; }

SignTransform canonicalize_sign(const System& s) {
    if (s.D == 0) {
        throw DomainError("D = 0 is the rectangle case and has no hexagonal boundary");
    }
    SignTransform out;
    out.original = s;
    if (s.D < 0) {
        out.canonical = s;
        return out;
    }
    out.canonical = make_system(s.n, -s.D);
    out.conjugate = true;
    out.translation = static_cast<double>(s.n - 1) * s.z / (s.z * s.z - 1.0);
    return out;
}

std::vector<EdgeType> edge_types(const NeighborTable& t, const Chain& c) {
    const std::size_t len = c.points.size();
    std::vector<EdgeType> types;
    types.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        const LatticePoint x = c.points[i];
        const LatticePoint prev = c.points[(i + len - 1) % len];
        const LatticePoint next = c.points[(i + 1) % len];
        const auto in = t.direction(prev - x);
        const auto out = t.direction(next - x);
        if (!in || !out) {
            throw ChainError("chain points around " + to_string(x) + " are not neighbours");
        }
        types.push_back({*in, *out});
    }
    return types;
}

bool lies_on_left(const NeighborTable& t, const LatticeSet& set, const Chain& c) {
    const std::size_t len = c.points.size();
    if (len < 3) return true;
    const std::vector<EdgeType> types = edge_types(t, c);
    const std::size_t first = c.closed ? 0 : 1;
    const std::size_t last = c.closed ? len : len - 1;
    for (std::size_t i = first; i < last; ++i) {
        for (int k : left_directions(types[i].in, types[i].out)) {
            if (!set.contains(c.points[i] + t.offsets[static_cast<std::size_t>(k)])) return false;
        }
    }
    return true;
}

Chain initial_chain(const NeighborTable& t) {
    const LatticeSet origin{LatticePoint{}};
    for (int step : {-1, 1}) {
        Chain c;
        for (int i = 0; i < 6; ++i) {
            c.points.push_back(t.offsets[static_cast<std::size_t>(wrap6(step * i))]);
        }
        if (lies_on_left(t, origin, c)) return c;
    }
    throw std::logic_error("no orientation of the neighbour ring keeps the origin on its left");
}

BoundaryGrammar::BoundaryGrammar(const System& s) : table_(neighbor_table(s)) {
    const auto& N = table_.offsets;
    const auto& C = table_.meeting;
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            LatticeSet left;
            for (int k : left_directions(a, b)) left.insert(N[static_cast<std::size_t>(k)]);
            auto in_left = [&](LatticePoint y) { return left.contains(reduce(s, y).y); };

            // Enter at C_a from the exit of the predecessor's cell, C_{a+2} in M(N_a).
            const LatticePoint start = digit_point(C[static_cast<std::size_t>(a)]);
            const LatticePoint from = lattice_mul_z(s, N[static_cast<std::size_t>(a)]) +
                                      digit_point(C[static_cast<std::size_t>(wrap6(a + 2))]);
            const auto entry = table_.direction(from - start);
            if (!entry) continue;

            // Leave from C_{b-1} into the successor's entry C_{b+3} in M(N_b).
            const LatticePoint exit_point = digit_point(C[static_cast<std::size_t>(wrap6(b - 1))]);
            const LatticePoint target = lattice_mul_z(s, N[static_cast<std::size_t>(b)]) +
                                        digit_point(C[static_cast<std::size_t>(wrap6(b + 3))]);

            std::vector<RewriteStep> walk;
            LatticePoint x = start;
            int in = *entry;
            bool ok = false;
            for (int guard = 0; guard < 4 * s.n + 8; ++guard) {
                int out = -1;
                for (int j = 1; j <= 6; ++j) {
                    const int k = wrap6(in + j);
                    if (!in_left(x + N[static_cast<std::size_t>(k)])) {
                        out = k;
                        break;
                    }
                }
                if (out < 0) break;
                walk.push_back({static_cast<int>(x.a), {in, out}});
                const LatticePoint nx = x + N[static_cast<std::size_t>(out)];
                if (reduce(s, nx).y != LatticePoint{}) {
                    ok = (x == exit_point && nx == target);
                    break;
                }
                x = nx;
                in = wrap6(out + 3);
            }
            if (ok) rules_[static_cast<std::size_t>(a * 6 + b)] = std::move(walk);
        }
    }
}

Chain refine_chain(const BoundaryGrammar& g, const Chain& c) {
    const NeighborTable& t = g.table();
    const System& s = g.system();
    const std::vector<EdgeType> types = edge_types(t, c);
    Chain out;
    out.level = c.level + 1;
    out.closed = c.closed;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const auto& rule = g.rule(types[i]);
        if (!rule) {
            throw ChainError("edge type " + std::to_string(types[i].in) + "_" + std::to_string(types[i].out) +
                             " has no cell walk");
        }
        const LatticePoint base = lattice_mul_z(s, c.points[i]);
        for (const RewriteStep& step : *rule) out.points.push_back(base + digit_point(step.digit));
    }
    const std::size_t len = out.points.size();
    for (std::size_t i = 0; i < len; ++i) {
        if (!t.direction(out.points[(i + 1) % len] - out.points[i])) {
            throw ChainError("refined chain steps from " + to_string(out.points[i]) + " to a non-neighbour");
        }
    }
    return out;
}

LatticeSet integer_approximation(const System& s, int level) {
    if (level < 0) throw DomainError("level must be nonnegative");
    if (static_cast<double>(level) * std::log2(static_cast<double>(s.n)) > 24.0) {
        throw DomainError("n^k exceeds the enumeration budget of 2^24 points");
    }
    std::vector<LatticePoint> cur{LatticePoint{}};
    for (int i = 0; i < level; ++i) {
        std::vector<LatticePoint> next;
        next.reserve(cur.size() * static_cast<std::size_t>(s.n));
        for (LatticePoint p : cur) {
            const LatticePoint pz = lattice_mul_z(s, p);
            for (int d = 0; d < s.n; ++d) next.push_back(pz + digit_point(d));
        }
        cur = std::move(next);
    }
    return LatticeSet(cur.begin(), cur.end());
}

Chain trace_boundary_oracle(const NeighborTable& t, int level) {
    const System& s = t.system;
    const LatticeSet set = integer_approximation(s, level);
    const auto& N = t.offsets;

    // 6-connectivity
    {
        LatticeSet seen{LatticePoint{}};
        std::deque<LatticePoint> queue{LatticePoint{}};
        while (!queue.empty()) {
            const LatticePoint p = queue.front();
            queue.pop_front();
            for (LatticePoint d : N) {
                const LatticePoint q = p + d;
                if (set.contains(q) && seen.insert(q).second) queue.push_back(q);
            }
        }
        if (seen.size() != set.size()) {
            throw ChainError("level-" + std::to_string(level) + " integer approximation is not connected");
        }
    }

    // Start right of the rightmost point, which is certainly on the outer edge.
    LatticePoint rightmost = *set.begin();
    for (LatticePoint p : set) {
        const Complex v = lattice_to_complex(s, p);
        const Complex best = lattice_to_complex(s, rightmost);
        if (v.real() > best.real() || (v.real() == best.real() && v.imag() > best.imag()) ||
            (v == best && p < rightmost)) {
            rightmost = p;
        }
    }
    const LatticePoint start = rightmost + N[0];
    int start_in = -1;
    for (int j = 1; j <= 6; ++j) {
        const int k = wrap6(3 - j);
        if (!set.contains(start + N[static_cast<std::size_t>(k)])) {
            start_in = k;
            break;
        }
    }

    Chain c;
    c.level = level;
    LatticePoint x = start;
    int in = start_in;
    const std::size_t cap = 6 * set.size() + 12;
    do {
        c.points.push_back(x);
        int out = in;
        for (int j = 1; j <= 6; ++j) {
            const int k = wrap6(in + j);
            if (!set.contains(x + N[static_cast<std::size_t>(k)])) {
                out = k;
                break;
            }
        }
        x = x + N[static_cast<std::size_t>(out)];
        in = wrap6(out + 3);
        if (c.points.size() > cap) throw ChainError("boundary trace did not close");
    } while (x != start || in != start_in);
    return c;
}

SubstitutionMatrix SubstitutionMatrix::identity() {
    SubstitutionMatrix m;
    for (std::size_t i = 0; i < 36; ++i) {
        m.entries[i][i] = 1;
        m.reachable[i] = true;
    }
    return m;
}

SubstitutionMatrix substitution_matrix(const BoundaryGrammar& g) {
    SubstitutionMatrix m;
    for (int col = 0; col < 36; ++col) {
        const auto& rule = g.rule(EdgeType::from_index(col));
        if (!rule) continue;
        for (const RewriteStep& step : *rule) {
            ++m.entries[static_cast<std::size_t>(step.type.index())][static_cast<std::size_t>(col)];
        }
    }
    std::vector<int> stack;
    for (EdgeType e : edge_types(g.table(), initial_chain(g.table()))) {
        if (!m.reachable[static_cast<std::size_t>(e.index())]) {
            m.reachable[static_cast<std::size_t>(e.index())] = true;
            stack.push_back(e.index());
        }
    }
    while (!stack.empty()) {
        const int col = stack.back();
        stack.pop_back();
        const auto& rule = g.rule(EdgeType::from_index(col));
        if (!rule) {
            throw ChainError("reachable edge type " + std::to_string(col / 6) + "_" + std::to_string(col % 6) +
                             " has no cell walk");
        }
        for (const RewriteStep& step : *rule) {
            const auto row = static_cast<std::size_t>(step.type.index());
            if (!m.reachable[row]) {
                m.reachable[row] = true;
                stack.push_back(step.type.index());
            }
        }
    }
    return m;
}

EdgeCensus edge_census(const NeighborTable& t, const Chain& c) {
    EdgeCensus census{};
    for (EdgeType e : edge_types(t, c)) ++census[static_cast<std::size_t>(e.index())];
    return census;
}

EdgeCensus apply(const SubstitutionMatrix& m, const EdgeCensus& census) {
    EdgeCensus out{};
    for (std::size_t row = 0; row < 36; ++row) {
        std::int64_t acc = 0;
        for (std::size_t col = 0; col < 36; ++col) {
            acc = checked::add(acc, checked::mul(m.entries[row][col], census[col]));
        }
        out[row] = acc;
    }
    return out;
}

void check_substitution_matrix(const BoundaryGrammar& g, const SubstitutionMatrix& m, int level) {
    const EdgeCensus before = edge_census(g.table(), trace_boundary_oracle(g.table(), level));
    const EdgeCensus after = edge_census(g.table(), trace_boundary_oracle(g.table(), level + 1));
    if (apply(m, before) != after) {
        throw ChainError("edge census of the level-" + std::to_string(level + 1) +
                         " boundary does not match the substitution matrix applied to level " +
                         std::to_string(level));
    }
}

bool equal_up_to_rotation(const std::vector<LatticePoint>& lhs, const std::vector<LatticePoint>& rhs) {
    if (lhs.size() != rhs.size()) return false;
    if (lhs.empty()) return true;
    const std::size_t len = lhs.size();
    for (std::size_t shift = 0; shift < len; ++shift) {
        if (rhs[shift] != lhs[0]) continue;
        bool same = true;
        for (std::size_t i = 1; i < len && same; ++i) same = lhs[i] == rhs[(i + shift) % len];
        if (same) return true;
    }
    return false;
}

EigenResult dominant_eigenvalue(const SubstitutionMatrix& m, double tol, int max_iterations) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 36; ++i) {
        if (m.reachable[i]) idx.push_back(i);
    }
    if (idx.empty()) throw DomainError("substitution matrix has no reachable edge types");
    for (std::size_t r : idx) {
        for (std::size_t c : idx) {
            if (m.entries[r][c] < 0) throw DomainError("substitution matrix must be nonnegative");
        }
    }

    // The shift by the identity makes the Perron root strictly dominant even
    // when the block is periodic; it is removed from the Rayleigh quotient.
    const std::size_t dim = idx.size();
    std::vector<double> v(dim, 1.0 / static_cast<double>(dim));
    std::vector<double> w(dim);
    double previous = 0;
    EigenResult out;
    for (int it = 1; it <= max_iterations; ++it) {
        double vw = 0, vv = 0, norm = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            double acc = v[i];
            for (std::size_t j = 0; j < dim; ++j) acc += static_cast<double>(m.entries[idx[i]][idx[j]]) * v[j];
            w[i] = acc;
            vw += v[i] * acc;
            vv += v[i] * v[i];
            norm += std::abs(acc);
        }
        const double lambda = vw / vv - 1.0;
        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / norm;
        if (it > 1 && std::abs(lambda - previous) < tol) {
            out.value = lambda;
            out.iterations = it;
            out.vector.assign(36, 0.0);
            for (std::size_t i = 0; i < dim; ++i) out.vector[idx[i]] = v[i];
            return out;
        }
        previous = lambda;
    }
    throw ConvergenceError("power iteration did not converge within " + std::to_string(max_iterations) +
                           " iterations");
}

double boundary_dimension(const System& s, double tol) {
    if (s.D == 0) return 1.0;
    const SignTransform sign = canonicalize_sign(s);
    const BoundaryGrammar grammar(sign.canonical);
    const EigenResult eig = dominant_eigenvalue(substitution_matrix(grammar), tol);
    return std::log(eig.value) / std::log(std::sqrt(static_cast<double>(s.n)));
}

std::vector<Complex> boundary_polyline(const System& s, int level) {
    if (level < 0) throw DomainError("level must be nonnegative");
    const SignTransform sign = canonicalize_sign(s);
    const BoundaryGrammar grammar(sign.canonical);
    Chain c = initial_chain(grammar.table());
    for (int i = 0; i < level; ++i) c = refine_chain(grammar, c);

    Complex scale{1.0, 0.0};
    for (int i = 0; i < level; ++i) scale *= sign.canonical.z;
    std::vector<Complex> out;
    out.reserve(c.points.size());
    for (LatticePoint p : c.points) {
        out.push_back(sign.from_canonical(lattice_to_complex(sign.canonical, p) / scale));
    }
    return out;
}

}  // namespace cbns

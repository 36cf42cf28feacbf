#pragma once

// Boundary of the fractional tile F_z for D < 0.
//
// The tile of 0 has six lattice neighbours N_0..N_5 (indices increase
// clockwise). Magnification M(A) = A z + {0..n-1} splits every tile into n
// subtiles; M^k({0}) / z^k approximates F_z. The edge of M^k({0}) (the lattice
// points just outside it) forms a closed chain with M^k({0}) on its left.
//
// A chain point x with predecessor x + N_a and successor x + N_b has edge type
// a_b. Refining the chain replaces x by a walk through the cell M(x) which
// depends only on a_b, so chain lengths grow by the edge substitution matrix.
// Its Perron root lambda gives the boundary dimension log(lambda)/log(sqrt n).

#include <cbns/hull.hpp>
#include <cbns/lattice.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

namespace cbns {

using LatticeSet = std::unordered_set<LatticePoint, LatticePointHash>;

struct NeighborTable {
    System system;
    std::array<LatticePoint, 6> offsets;  // N_r
    std::array<int, 6> meeting;           // C_r, subtile of M(0) where M(N_r), M(N_r+1) meet
    std::array<Complex, 6> meeting_points;  // P_r
    std::array<int, 6> ra{4, 5, 0, 1, 2, 3};
    std::array<int, 6> rb{5, 0, 1, 2, 3, 4};

    // Index r with N_r == delta.
    std::optional<int> direction(LatticePoint delta) const;
};

// Builds and verifies the table; rejects D >= 0.
NeighborTable neighbor_table(const System& s);

// Relates (n, D) to the canonical sign (n, -|D|). With t = (n-1) z / (z^2 - 1)
// for the original base z, the tiles satisfy
//   F_canonical = conj(F_original - t)   when D > 0,
// and the map is the identity when D < 0.
struct SignTransform {
    System original;
    System canonical;
    bool conjugate = false;
    Complex translation{0.0, 0.0};

    Complex to_canonical(Complex x) const;
    Complex from_canonical(Complex x) const;
};

SignTransform canonicalize_sign(const System& s);

struct EdgeType {
    int in = 0;   // direction of the predecessor
    int out = 0;  // direction of the successor

    int index() const { return in * 6 + out; }
    static EdgeType from_index(int i) { return {i / 6, i % 6}; }
    friend bool operator==(const EdgeType&, const EdgeType&) = default;
};

struct Chain {
    std::vector<LatticePoint> points;
    int level = 0;
    bool closed = true;
};

// Edge type at every point of a closed chain; throws ChainError when two
// consecutive points are not neighbours.
std::vector<EdgeType> edge_types(const NeighborTable& t, const Chain& c);

// Every consecutive triple (cyclically for closed chains) has the points
// x_i + N_k, k in [a+1, b-1], inside `set`.
bool lies_on_left(const NeighborTable& t, const LatticeSet& set, const Chain& c);

Chain initial_chain(const NeighborTable& t);

// One step of a cell walk: the emitted point x z + digit and its edge type.
struct RewriteStep {
    int digit = 0;
    EdgeType type;
};

// The cell walk for every edge type that admits one, plus the substitution
// matrix they induce.
class BoundaryGrammar {
  public:
    explicit BoundaryGrammar(const System& s);

    const NeighborTable& table() const { return table_; }
    const System& system() const { return table_.system; }

    // Walk through M(0) for a point of edge type `type`; empty if the type
    // cannot occur in a boundary chain.
    const std::optional<std::vector<RewriteStep>>& rule(EdgeType type) const {
        return rules_[static_cast<std::size_t>(type.index())];
    }

  private:
    NeighborTable table_;
    std::array<std::optional<std::vector<RewriteStep>>, 36> rules_;
};

// Refines a closed chain by one magnification level.
Chain refine_chain(const BoundaryGrammar& g, const Chain& c);

// Builds S_k = sum_{i<k} z^i {0..n-1} explicitly and traces its outer edge by
// wall following. Throws ChainError when S_k is not 6-connected and
// DomainError when n^k exceeds the enumeration budget.
Chain trace_boundary_oracle(const NeighborTable& t, int level);

// S_k itself.
LatticeSet integer_approximation(const System& s, int level);

struct SubstitutionMatrix {
    // entries[row][col]: edges of type `row` produced from one edge of type `col`.
    std::array<std::array<std::int64_t, 36>, 36> entries{};
    // Edge types reachable from the initial chain.
    std::array<bool, 36> reachable{};

    static SubstitutionMatrix identity();
};

SubstitutionMatrix substitution_matrix(const BoundaryGrammar& g);

using EdgeCensus = std::array<std::int64_t, 36>;

EdgeCensus edge_census(const NeighborTable& t, const Chain& c);

EdgeCensus apply(const SubstitutionMatrix& m, const EdgeCensus& census);

// Throws ChainError unless census(oracle(level + 1)) == m * census(oracle(level)).
void check_substitution_matrix(const BoundaryGrammar& g, const SubstitutionMatrix& m, int level);

bool equal_up_to_rotation(const std::vector<LatticePoint>& lhs, const std::vector<LatticePoint>& rhs);

struct EigenResult {
    double value = 0;
    std::vector<double> vector;  // Perron vector on all 36 types, unit 1-norm
    int iterations = 0;
};

// Perron root of the reachable block by power iteration on M + I.
EigenResult dominant_eigenvalue(const SubstitutionMatrix& m, double tol = 1e-12, int max_iterations = 1000000);

// log(lambda) / log(sqrt n); exactly 1 for D = 0.
double boundary_dimension(const System& s, double tol = 1e-12);

// The k-times refined chain divided by z^k, mapped back to the original tile
// when D > 0.
std::vector<Complex> boundary_polyline(const System& s, int level);

}  // namespace cbns

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <complex>

namespace qpvi {

/// Support of a coefficient matrix, viewed as a bipartite graph on
/// {1..n} (rows) sqcup {1..n} (columns) with an edge per (i, j) in S.
struct SupportGraph {
    int n = 0;
    std::set<std::pair<int, int>> s;  // 1-based cells
};

struct GraphStats {
    int chi;         // connected components, isolated vertices included
    int stab_dim;    // chi - 1
    int cyclomatic;  // |S| - 2n + chi
};

GraphStats graph_stats(const SupportGraph& g);

/// Exponent vector of a cycle monomial; row and column sums vanish.
struct CycleMonomial {
    std::map<std::pair<int, int>, int> exponents;
};

// Fundamental cycles of a spanning forest, one monomial per non-tree edge.
// Orientation normalized so the smallest row index in the cycle starts it,
// with the smaller of its two cycle columns carrying +1.
std::vector<CycleMonomial> cycle_monomials(const SupportGraph& g);

struct InvariantDescriptor {
    enum Kind { coordinate, cycle } kind;
    std::string name;
    std::pair<int, int> cell;     // coordinate generators
    int component = 0;            // which coordinate of the cell (0 or 1)
    CycleMonomial monomial;       // cycle generators (invertible)
};

/// Chart data: a nonzero linear form per cell of S (cells are 2-dimensional).
using Chart = std::map<std::pair<int, int>, std::array<std::complex<double>, 2>>;

// Normalized coordinate functions u/e, v/e per cell plus one invertible
// generator e*M_c per fundamental cycle.
std::vector<InvariantDescriptor> invariant_generators(const SupportGraph& g, const Chart& chart);

// Numeric check utility: value of a descriptor at a point (one vector in C^2
// per cell), used by the invariance property tests.
std::complex<double> evaluate_descriptor(const InvariantDescriptor& d, const Chart& chart,
                                         const std::map<std::pair<int, int>,
                                                        std::array<std::complex<double>, 2>>& pt);

}  // namespace qpvi

#include "qpvi/torusgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpvi {

namespace {

// vertex ids: rows 0..n-1, columns n..2n-1
int find_root(std::vector<int>& parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

}  // namespace

GraphStats graph_stats(const SupportGraph& g) {
    std::vector<int> parent(2 * g.n);
    for (int v = 0; v < 2 * g.n; ++v) parent[v] = v;
    for (auto& [i, j] : g.s) {
        int a = find_root(parent, i - 1);
        int b = find_root(parent, g.n + j - 1);
        if (a != b) parent[a] = b;
    }
    std::set<int> roots;
    for (int v = 0; v < 2 * g.n; ++v) roots.insert(find_root(parent, v));
    GraphStats st;
    st.chi = static_cast<int>(roots.size());
    st.stab_dim = st.chi - 1;
    st.cyclomatic = static_cast<int>(g.s.size()) - 2 * g.n + st.chi;
    return st;
}

std::vector<CycleMonomial> cycle_monomials(const SupportGraph& g) {
    int n = g.n;
    // spanning forest by BFS; tree adjacency kept per vertex
    std::vector<int> parent(2 * n, -1), depth(2 * n, -1);
    std::vector<std::vector<std::pair<int, int>>> adj(2 * n);
    for (auto& [i, j] : g.s) {
        adj[i - 1].push_back({n + j - 1, 0});
        adj[n + j - 1].push_back({i - 1, 0});
    }
    std::set<std::pair<int, int>> tree;
    for (int start = 0; start < 2 * n; ++start) {
        if (depth[start] >= 0) continue;
        depth[start] = 0;
        std::vector<int> queue{start};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (auto& [w, _] : adj[v]) {
                if (depth[w] >= 0) continue;
                depth[w] = depth[v] + 1;
                parent[w] = v;
                int row = std::min(v, w), col = std::max(v, w);
                tree.insert({row + 1, col - n + 1});
                queue.push_back(w);
            }
        }
    }

    std::vector<CycleMonomial> out;
    for (auto& edge : g.s) {
        int u = edge.first - 1, v = n + edge.second - 1;
        if (tree.count(edge)) continue;
        // fundamental cycle as a closed vertex sequence: u, v, tree path from
        // v to the common ancestor, then back down to u
        std::vector<int> up_a{u}, up_b{v};
        {
            int a = u, b = v;
            while (depth[a] > depth[b]) up_a.push_back(a = parent[a]);
            while (depth[b] > depth[a]) up_b.push_back(b = parent[b]);
            while (a != b) {
                up_a.push_back(a = parent[a]);
                up_b.push_back(b = parent[b]);
            }
        }
        std::vector<int> loop(up_b);                       // u -> v -> ... -> anc
        loop.insert(loop.begin(), u);
        for (size_t t = up_a.size() - 1; t > 1; --t) loop.push_back(up_a[t - 1]);
        // exponents: +1 when the cycle traverses row -> column
        std::map<std::pair<int, int>, int> expo;
        for (size_t t = 0; t + 1 <= loop.size(); ++t) {
            int w = loop[t], wn = loop[(t + 1) % loop.size()];
            if (w < n)
                expo[{w + 1, wn - n + 1}] += 1;
            else
                expo[{wn + 1, w - n + 1}] -= 1;
        }
        for (auto it = expo.begin(); it != expo.end();)
            it = (it->second == 0) ? expo.erase(it) : std::next(it);

        // normalize orientation: smallest row index in the cycle carries a +1
        // on its smallest-column incident edge
        int imin = 1 << 30;
        for (auto& [cell, e] : expo) imin = std::min(imin, cell.first);
        int jmin = 1 << 30;
        for (auto& [cell, e] : expo)
            if (cell.first == imin && e != 0) jmin = std::min(jmin, cell.second);
        if (expo[{imin, jmin}] < 0)
            for (auto& [cell, e] : expo) e = -e;
        CycleMonomial m;
        m.exponents = std::move(expo);
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<InvariantDescriptor> invariant_generators(const SupportGraph& g, const Chart& chart) {
    std::vector<InvariantDescriptor> out;
    for (auto& cell : g.s) {
        if (!chart.count(cell)) throw std::invalid_argument("invariant_generators: chart misses a cell");
        for (int comp = 0; comp < 2; ++comp) {
            InvariantDescriptor d;
            d.kind = InvariantDescriptor::coordinate;
            d.cell = cell;
            d.component = comp;
            d.name = std::string(comp == 0 ? "x" : "y") + "(" + std::to_string(cell.first) + "," +
                     std::to_string(cell.second) + ")";
            out.push_back(d);
        }
    }
    for (auto& mc : cycle_monomials(g)) {
        InvariantDescriptor d;
        d.kind = InvariantDescriptor::cycle;
        d.monomial = mc;
        d.name = "e*M_c[";
        for (auto& [cell, e] : mc.exponents)
            d.name += "(" + std::to_string(cell.first) + "," + std::to_string(cell.second) +
                      ")^" + std::to_string(e);
        d.name += "]";
        out.push_back(d);
    }
    return out;
}

std::complex<double> evaluate_descriptor(
    const InvariantDescriptor& d, const Chart& chart,
    const std::map<std::pair<int, int>, std::array<std::complex<double>, 2>>& pt) {
    auto form_value = [&](const std::pair<int, int>& cell) {
        const auto& e = chart.at(cell);
        const auto& v = pt.at(cell);
        return e[0] * v[0] + e[1] * v[1];
    };
    if (d.kind == InvariantDescriptor::coordinate) {
        return pt.at(d.cell)[d.component] / form_value(d.cell);
    }
    std::complex<double> r = 1.0;
    for (auto& [cell, expo] : d.monomial.exponents) {
        std::complex<double> f = form_value(cell);
        for (int k = 0; k < std::abs(expo); ++k) r = (expo > 0) ? r * f : r / f;
    }
    return r;
}

}  // namespace qpvi

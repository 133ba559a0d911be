#include "pcert/lattice.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace pcert {

namespace {

struct Basis {
    int a, b, c, d;   // (dx,dy) -> (a dx + b dy, c dx + d dy)
    CellOffset apply(CellOffset t) const { return {a * t.dx + b * t.dy, c * t.dx + d * t.dy}; }
};

std::vector<Basis> unimodular_maps()
{
    std::vector<Basis> out;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
                for (int d = -1; d <= 1; ++d)
                    if (std::abs(a * d - b * c) == 1) out.push_back({a, b, c, d});
    // identity first, then the symmetries of the square, then the shears
    auto rank = [](const Basis& m) {
        bool identity = m.a == 1 && m.b == 0 && m.c == 0 && m.d == 1;
        bool square = std::abs(m.a) + std::abs(m.b) == 1 && std::abs(m.c) + std::abs(m.d) == 1;
        return identity ? 0 : square ? 1 : 2;
    };
    std::stable_sort(out.begin(), out.end(), [&](const Basis& x, const Basis& y) { return rank(x) < rank(y); });
    return out;
}

struct Arc {
    int to;
    CellOffset cell;
};

std::vector<std::vector<Arc>> arcs(const PeriodicGraph& g)
{
    std::vector<std::vector<Arc>> out(g.vertex_count);
    for (const auto& e : g.edges) {
        out[e.from].push_back({e.to, e.cell});
        out[e.to].push_back({e.from, -e.cell});
    }
    return out;
}

class Matcher {
public:
    Matcher(const PeriodicGraph& g, const PeriodicGraph& h, Basis basis)
        : g_arcs_(arcs(g)), h_arcs_(arcs(h)), basis_(basis), n_(g.vertex_count)
    {
        for (const auto& e : h.edges) {
            h_set_.insert(e);
            h_set_.insert({e.to, e.from, -e.cell});
        }
        // BFS order over the quotient graph, each vertex with a parent arc
        std::vector<bool> seen(n_, false);
        for (int root = 0; root < n_; ++root) {
            if (seen[root]) continue;
            seen[root] = true;
            order_.push_back({root, -1, {}});
            for (std::size_t i = order_.size() - 1; i < order_.size(); ++i) {
                int v = order_[i].vertex;
                for (const auto& arc : g_arcs_[v])
                    if (!seen[arc.to]) {
                        seen[arc.to] = true;
                        order_.push_back({arc.to, v, arc.cell});
                    }
            }
        }
        image_.assign(n_, -1);
        shift_.assign(n_, {});
        used_.assign(n_, false);
    }

    bool run() { return place(0); }

private:
    struct Step {
        int vertex;
        int parent;         // -1 for component roots
        CellOffset cell;    // parent at (0,0) -> vertex at cell
    };

    bool consistent(int v) const
    {
        for (const auto& arc : g_arcs_[v]) {
            if (image_[arc.to] < 0) continue;
            CellOffset t = basis_.apply(arc.cell) + shift_[arc.to] - shift_[v];
            if (!h_set_.count({image_[v], image_[arc.to], t})) return false;
        }
        return true;
    }

    bool try_assign(std::size_t i, int w, CellOffset shift)
    {
        int v = order_[i].vertex;
        if (used_[w] || g_arcs_[v].size() != h_arcs_[w].size()) return false;
        image_[v] = w;
        shift_[v] = shift;
        used_[w] = true;
        if (consistent(v) && place(i + 1)) return true;
        image_[v] = -1;
        used_[w] = false;
        return false;
    }

    bool place(std::size_t i)
    {
        if (i == order_.size()) return true;
        if (++steps_ > step_limit) return false;
        const Step& s = order_[i];
        if (s.parent < 0) {
            for (int w = 0; w < n_; ++w)
                if (try_assign(i, w, {})) return true;
            return false;
        }
        int pw = image_[s.parent];
        for (const auto& arc : h_arcs_[pw]) {
            // parent image at shift_[parent] -> arc.to at shift_[parent] + arc.cell
            CellOffset shift = shift_[s.parent] + arc.cell - basis_.apply(s.cell);
            if (try_assign(i, arc.to, shift)) return true;
        }
        return false;
    }

    static constexpr long step_limit = 2'000'000;

    std::vector<std::vector<Arc>> g_arcs_, h_arcs_;
    std::set<PeriodicEdge> h_set_;
    Basis basis_;
    int n_;
    std::vector<Step> order_;
    std::vector<int> image_;
    std::vector<CellOffset> shift_;
    std::vector<bool> used_;
    long steps_ = 0;
};

}  // namespace

bool periodic_isomorphic(const PeriodicGraph& g, const PeriodicGraph& h)
{
    if (g.vertex_count != h.vertex_count || g.edges.size() != h.edges.size()) return false;
    auto dg = g.degrees(), dh = h.degrees();
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh) return false;
    for (const Basis& b : unimodular_maps()) {
        Matcher m(g, h, b);
        if (m.run()) return true;
    }
    return false;
}

}  // namespace pcert

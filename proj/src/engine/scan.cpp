#include "pcert/engine.hpp"

#include <algorithm>
#include <cassert>

#include "pcert/event_policy.hpp"

namespace pcert {

namespace {

int find(std::vector<int>& parent, int x)
{
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

void unite(std::vector<int>& parent, std::vector<std::int64_t>& size, int a, int b)
{
    a = find(parent, a);
    b = find(parent, b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
}

}  // namespace

HalfScanSummary scan_half(const RectGraph& g, Mode mode, std::span<const std::uint8_t> open, Side side)
{
    assert(open.size() == static_cast<std::size_t>(g.element_count(mode)));
    const int W = g.columns_per_half;
    const int w = g.strip_width;
    const int depth = w + 1;   // the current column plus w columns behind it
    const bool left = side == Side::left;
    auto column_at = [&](int k) { return left ? k : 2 * W - 1 - k; };
    auto step_of = [&](int c) { return left ? c : 2 * W - 1 - c; };
    const std::uint8_t my_half = left ? 0 : 1;

    int height = 0;
    for (int k = 0; k < W; ++k) {
        int c = column_at(k);
        height = std::max(height, g.column_start[c + 1] - g.column_start[c]);
    }

    // ring[slot * height + row]: class label of a site in the window, -1 if closed
    std::vector<int> ring(static_cast<std::size_t>(depth) * height, -1);
    std::vector<int> parent;
    std::vector<std::int64_t> size;
    std::vector<int> renumber;
    LargestTracker best;
    HalfScanSummary out;

    auto label_ref = [&](int site) -> int& {
        int c = g.column[site];
        int slot = step_of(c) % depth;
        return ring[static_cast<std::size_t>(slot) * height + (site - g.column_start[c])];
    };

    for (int k = 0; k < W; ++k) {
        const int c = column_at(k);
        const int begin = g.column_start[c], end = g.column_start[c + 1];
        for (int v = begin; v < end; ++v) {
            int& lab = label_ref(v);
            if (mode == Mode::site && !open[v]) {
                lab = -1;
            } else {
                lab = static_cast<int>(parent.size());
                parent.push_back(lab);
                size.push_back(1);
            }
        }
        for (int v = begin; v < end; ++v) {
            const int lv = label_ref(v);
            if (lv < 0) continue;
            for (int a = g.adj_start[v]; a < g.adj_start[v + 1]; ++a) {
                const int u = g.adj_site[a];
                if (g.half[u] != my_half) continue;
                const int ku = step_of(g.column[u]);
                if (ku > k || (ku == k && u > v)) continue;   // handled from u later
                assert(k - ku <= w);
                const int lu = label_ref(u);
                if (mode == Mode::site ? lu < 0 : !open[g.adj_bond[a]]) continue;
                unite(parent, size, lv, lu);
            }
        }

        // Classes that no longer touch the window are complete clusters;
        // renumber the rest densely.
        const int first = std::max(0, k - w + 1);
        std::size_t live_labels = 0;
        renumber.assign(parent.size(), -1);
        for (int j = first; j <= k; ++j) {
            const int cj = column_at(j);
            for (int v = g.column_start[cj]; v < g.column_start[cj + 1]; ++v) {
                int lab = label_ref(v);
                if (lab < 0) continue;
                ++live_labels;
                renumber[find(parent, lab)] = 0;
            }
        }
        out.peak_live = std::max(out.peak_live, live_labels + parent.size());
        std::vector<std::int64_t> kept_size;
        for (std::size_t x = 0; x < parent.size(); ++x) {
            if (parent[x] != static_cast<int>(x)) continue;
            if (renumber[x] < 0) {
                best.offer(size[x]);
            } else {
                renumber[x] = static_cast<int>(kept_size.size());
                kept_size.push_back(size[x]);
            }
        }
        for (int j = first; j <= k; ++j) {
            const int cj = column_at(j);
            for (int v = g.column_start[cj]; v < g.column_start[cj + 1]; ++v) {
                int& lab = label_ref(v);
                if (lab >= 0) lab = renumber[find(parent, lab)];
            }
        }
        // relabelled values are already roots of the new numbering
        parent.resize(kept_size.size());
        for (std::size_t x = 0; x < parent.size(); ++x) parent[x] = static_cast<int>(x);
        size = std::move(kept_size);
    }

    for (std::int64_t sz : size) best.offer(sz);
    out.largest_size = best.size();
    out.largest_unique = best.unique();

    // frontier: the last (up to) w columns swept, listed in site order
    const int first = std::max(0, W - w);
    const int lo = std::min(column_at(first), column_at(W - 1));
    const int hi = std::max(column_at(first), column_at(W - 1));
    for (int c = lo; c <= hi; ++c)
        for (int v = g.column_start[c]; v < g.column_start[c + 1]; ++v) {
            int lab = label_ref(v);
            out.frontier_sites.push_back(v);
            out.frontier_class.push_back(lab);
            out.frontier_in_largest.push_back(lab >= 0 && out.largest_unique && size[lab] == out.largest_size);
        }
    return out;
}

EventResult evaluate_event(const RectGraph& g, Mode mode, std::span<const std::uint8_t> open)
{
    EventResult r;
    r.left = scan_half(g, mode, open, Side::left);
    r.right = scan_half(g, mode, open, Side::right);

    const auto& L = r.left.frontier_sites;
    const auto& R = r.right.frontier_sites;
    const int nl = static_cast<int>(L.size());
    std::vector<int> parent(L.size() + R.size());
    std::vector<std::int64_t> weight(parent.size(), 1);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);

    // seed with the within-half equivalences
    auto seed_half = [&](const HalfScanSummary& h, int offset) {
        std::vector<int> first_of;
        for (std::size_t i = 0; i < h.frontier_sites.size(); ++i) {
            int cls = h.frontier_class[i];
            if (cls < 0) continue;
            if (cls >= static_cast<int>(first_of.size())) first_of.resize(cls + 1, -1);
            if (first_of[cls] < 0) first_of[cls] = offset + static_cast<int>(i);
            else unite(parent, weight, first_of[cls], offset + static_cast<int>(i));
        }
    };
    seed_half(r.left, 0);
    seed_half(r.right, nl);

    auto local = [](const std::vector<int>& sites, int v) {
        auto it = std::lower_bound(sites.begin(), sites.end(), v);
        assert(it != sites.end() && *it == v);
        return static_cast<int>(it - sites.begin());
    };
    for (int b = g.interface_begin; b < g.bond_count(); ++b) {
        auto [u, v] = g.bonds[b];
        if (g.half[u] != 0) std::swap(u, v);
        const int iu = local(L, u), iv = local(R, v);
        const bool usable = mode == Mode::bond ? open[b] != 0
                                               : r.left.frontier_class[iu] >= 0 && r.right.frontier_class[iv] >= 0;
        if (usable) unite(parent, weight, iu, nl + iv);
    }

    std::vector<std::uint8_t> marked(parent.size(), 0);
    for (int i = 0; i < nl; ++i)
        if (r.left.frontier_in_largest[i]) marked[find(parent, i)] = 1;
    for (std::size_t i = 0; i < R.size() && !r.joined; ++i)
        if (r.right.frontier_in_largest[i] && marked[find(parent, nl + static_cast<int>(i))]) r.joined = true;

    r.holds = event_holds(r.left.largest_unique, r.right.largest_unique, r.joined);
    return r;
}

HalfScanSummary scan_half(const Configuration& c, Side side) { return scan_half(*c.graph, c.mode, c.open, side); }

EventResult evaluate_event(const Configuration& c) { return evaluate_event(*c.graph, c.mode, c.open); }

}  // namespace pcert

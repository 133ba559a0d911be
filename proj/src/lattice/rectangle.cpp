#include "pcert/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pcert {

void check_geometry(const LatticeRep& lat, const RectGeometry& geom)
{
    if (geom.scale <= 0 || geom.scale % lat.period != 0)
        throw std::invalid_argument("scale " + std::to_string(geom.scale) + " is not a positive multiple of the period " +
                                    std::to_string(lat.period) + " of '" + lat.name + "'");
}

RectGraph induce_rectangle(const LatticeRep& lat, const RectGeometry& geom)
{
    check_geometry(lat, geom);
    const int s = geom.scale, C = lat.period;
    const bool horizontal = geom.orientation == Orientation::horizontal;
    const int width = horizontal ? 2 * s : s;    // uncompacted extents
    const int height = horizontal ? s : 2 * s;

    RectGraph g;
    g.scale = s;
    g.orientation = geom.orientation;
    g.columns = horizontal ? width / lat.ratio : height;
    g.columns_per_half = g.columns / 2;
    // scan column and position within the column
    auto column = [&](GridPoint p) { return horizontal ? lat.compact(p).x : p.y; };
    auto row = [&](GridPoint p) { return horizontal ? p.y : p.x; };
    const int rows = horizontal ? height : width;
    auto inside = [&](GridPoint p) { return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height; };

    // strip width for the scan direction
    g.strip_width = 1;
    for (const auto& e : lat.edges) {
        int span = std::abs(column(lat.position(e.to, e.cell)) - column(lat.position(e.from)));
        g.strip_width = std::max(g.strip_width, span);
    }

    struct Raw {
        GridPoint pos;
        int vertex;
        CellOffset cell;
    };
    std::vector<Raw> raw;
    for (int cx = 0; cx < width / C; ++cx)
        for (int cy = 0; cy < height / C; ++cy)
            for (int v = 0; v < static_cast<int>(lat.vertices.size()); ++v)
                raw.push_back({lat.position(v, {cx, cy}), v, {cx, cy}});
    std::sort(raw.begin(), raw.end(), [&](const Raw& a, const Raw& b) {
        int ca = column(a.pos), cb = column(b.pos);
        return ca != cb ? ca < cb : row(a.pos) < row(b.pos);
    });

    const std::size_t n = raw.size();
    std::vector<int> lookup(static_cast<std::size_t>(g.columns) * rows, -1);
    auto slot = [&](GridPoint p) { return static_cast<std::size_t>(column(p)) * rows + row(p); };
    g.sites.reserve(n);
    g.half.reserve(n);
    g.column.reserve(n);
    g.column_start.assign(g.columns + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const GridPoint p = raw[i].pos;
        g.sites.push_back(p);
        g.column.push_back(column(p));
        g.half.push_back(column(p) < g.columns_per_half ? 0 : 1);
        lookup[slot(p)] = static_cast<int>(i);
        ++g.column_start[column(p) + 1];
    }
    std::partial_sum(g.column_start.begin(), g.column_start.end(), g.column_start.begin());

    std::vector<std::vector<const PeriodicEdge*>> out_edges(lat.vertices.size());
    for (const auto& e : lat.edges) out_edges[e.from].push_back(&e);

    std::vector<std::pair<int, int>> inner, cross;
    for (std::size_t i = 0; i < n; ++i) {
        for (const PeriodicEdge* e : out_edges[raw[i].vertex]) {
            GridPoint q = lat.position(e->to, raw[i].cell + e->cell);
            if (!inside(q)) continue;
            int j = lookup[slot(q)];
            std::pair<int, int> bond{std::min<int>(i, j), std::max<int>(i, j)};
            (g.half[i] == g.half[j] ? inner : cross).push_back(bond);
        }
    }
    std::sort(inner.begin(), inner.end());
    std::sort(cross.begin(), cross.end());
    g.interface_begin = static_cast<int>(inner.size());
    g.bonds = std::move(inner);
    g.bonds.insert(g.bonds.end(), cross.begin(), cross.end());

    g.adj_start.assign(n + 1, 0);
    for (auto [a, b] : g.bonds) {
        ++g.adj_start[a + 1];
        ++g.adj_start[b + 1];
    }
    std::partial_sum(g.adj_start.begin(), g.adj_start.end(), g.adj_start.begin());
    g.adj_site.resize(g.adj_start[n]);
    g.adj_bond.resize(g.adj_start[n]);
    std::vector<int> fill(g.adj_start.begin(), g.adj_start.end() - 1);
    for (int b = 0; b < static_cast<int>(g.bonds.size()); ++b) {
        auto [u, v] = g.bonds[b];
        g.adj_site[fill[u]] = v;
        g.adj_bond[fill[u]++] = b;
        g.adj_site[fill[v]] = u;
        g.adj_bond[fill[v]++] = b;
    }
    return g;
}

RectGraph scan_graph(const LatticeRep& lat, const RectGeometry& geom)
{
    if (geom.orientation == Orientation::horizontal) return induce_rectangle(lat, geom);
    RectGraph g = induce_rectangle(reflect_diagonal(lat), {geom.scale, Orientation::horizontal});
    return g;
}

bool same_rectangle_under(const RectGraph& a, const RectGraph& b, GridPoint (*map)(GridPoint))
{
    if (a.site_count() != b.site_count() || a.bond_count() != b.bond_count()) return false;
    std::map<GridPoint, int> where;
    for (int i = 0; i < b.site_count(); ++i) where.emplace(b.sites[i], i);
    std::vector<int> image(a.site_count());
    for (int i = 0; i < a.site_count(); ++i) {
        auto it = where.find(map(a.sites[i]));
        if (it == where.end() || a.half[i] != b.half[it->second]) return false;
        image[i] = it->second;
    }
    std::set<std::pair<int, int>> bonds_b(b.bonds.begin(), b.bonds.end());
    for (int k = 0; k < a.bond_count(); ++k) {
        auto [u, v] = a.bonds[k];
        std::pair<int, int> mapped{std::min(image[u], image[v]), std::max(image[u], image[v])};
        if (!bonds_b.count(mapped)) return false;
        bool cross_b = std::find(b.bonds.begin() + b.interface_begin, b.bonds.end(), mapped) != b.bonds.end();
        if ((k >= a.interface_begin) != cross_b) return false;
    }
    return true;
}

}  // namespace pcert

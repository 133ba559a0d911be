#include "pcert/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pcert {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int floor_mod(int a, int b) { return a - b * floor_div(a, b); }

[[noreturn]] void violated(const LatticeRep& lat, const std::string& what)
{
    throw LatticeError("lattice '" + lat.name + "': invariant violated: " + what);
}

std::string point_str(GridPoint p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

}  // namespace

std::string to_string(Mode m) { return m == Mode::site ? "site" : "bond"; }

std::string to_string(ModeHint m)
{
    switch (m) {
    case ModeHint::site: return "site";
    case ModeHint::bond: return "bond";
    case ModeHint::both: return "both";
    }
    return "both";
}

std::string to_string(Parity p)
{
    switch (p) {
    case Parity::any: return "any";
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    }
    return "any";
}

std::string to_string(Orientation o) { return o == Orientation::horizontal ? "h" : "v"; }

Mode parse_mode(std::string_view text)
{
    if (text == "site") return Mode::site;
    if (text == "bond") return Mode::bond;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected site or bond)");
}

Orientation parse_orientation(std::string_view text)
{
    if (text == "h" || text == "horizontal") return Orientation::horizontal;
    if (text == "v" || text == "vertical") return Orientation::vertical;
    throw std::invalid_argument("unknown orientation '" + std::string(text) + "'");
}

PeriodicEdge canonical(PeriodicEdge e)
{
    PeriodicEdge r{e.to, e.from, -e.cell};
    return std::min(e, r);
}

std::vector<int> PeriodicGraph::degrees() const
{
    std::vector<int> deg(vertex_count, 0);
    for (const auto& e : edges) {
        ++deg[e.from];
        ++deg[e.to];
    }
    return deg;
}

GridPoint LatticeRep::uncompact(GridPoint c) const
{
    if (ratio == 1) return c;
    int shift = parity == Parity::even ? floor_mod(c.y, 2) : floor_mod(c.y + 1, 2);
    return {2 * c.x + shift, c.y};
}

GridPoint LatticeRep::compact(GridPoint g) const
{
    if (ratio == 1) return g;
    return {floor_div(g.x, 2), g.y};
}

GridPoint LatticeRep::position(int v, CellOffset cell) const
{
    GridPoint p = uncompact(vertices[v]);
    return {p.x + period * cell.dx, p.y + period * cell.dy};
}

std::optional<int> LatticeRep::vertex_at(GridPoint c) const
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == c) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<int> LatticeRep::degrees() const { return topology().degrees(); }

int LatticeRep::strip_width() const
{
    int w = 1;
    for (const auto& e : edges) {
        int a = compact(position(e.from)).x;
        int b = compact(position(e.to, e.cell)).x;
        w = std::max(w, std::abs(a - b));
    }
    return w;
}

PeriodicGraph LatticeRep::topology() const
{
    PeriodicGraph g;
    g.vertex_count = static_cast<int>(vertices.size());
    for (const auto& e : edges) g.edges.push_back(canonical(e));
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

void validate(const LatticeRep& lat)
{
    const int C = lat.period;
    if (C < 1) violated(lat, "period must be positive");
    if (lat.ratio != 1 && lat.ratio != 2) violated(lat, "ratio must be 1 or 2");
    if (lat.ratio == 2 && lat.parity == Parity::any) violated(lat, "ratio 2 requires parity even or odd");
    if (lat.ratio == 2 && C % 2 != 0) violated(lat, "ratio 2 requires an even period");
    if (lat.vertices.empty()) violated(lat, "no vertices declared");

    std::set<GridPoint> seen;
    for (const auto& v : lat.vertices) {
        if (v.x < 0 || v.x >= lat.compact_width() || v.y < 0 || v.y >= C)
            violated(lat, "vertex " + point_str(v) + " outside the fundamental domain");
        if (!seen.insert(v).second) violated(lat, "vertex " + point_str(v) + " declared twice");
        if (lat.ratio == 1 && lat.parity != Parity::any) {
            int par = floor_mod(v.x + v.y, 2);
            if (par != (lat.parity == Parity::odd ? 1 : 0))
                violated(lat, "vertex " + point_str(v) + " breaks the parity constraint");
        }
    }

    const int n = static_cast<int>(lat.vertices.size());
    std::set<PeriodicEdge> edge_set;
    for (const auto& e : lat.edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            violated(lat, "edge endpoint references an undeclared vertex");
        if (std::abs(e.cell.dx) > 1 || std::abs(e.cell.dy) > 1)
            violated(lat, "edge cell offset outside {-1,0,1}");
        if (e.from == e.to && e.cell == CellOffset{})
            violated(lat, "self-loop at vertex " + point_str(lat.vertices[e.from]));
        if (!edge_set.insert(canonical(e)).second)
            violated(lat, "duplicate edge under periodic identification at vertex " +
                              point_str(lat.vertices[e.from]));
    }

    if (!periodicity_holds(lat)) violated(lat, "edge set is not reproduced by translation through the period");

    if (int want = expected_degree(lat.name); want > 0) {
        for (int d : lat.degrees())
            if (d != want) violated(lat, "degree " + std::to_string(d) + " where the lattice has degree " + std::to_string(want));
    }

    if (lat.symmetric && !same_drawing(reflect_diagonal(lat), lat))
        violated(lat, "symmetric flag set but the diagonal reflection changes the drawing");

    if (!lat.faces.empty()) {
        std::map<PeriodicEdge, int> sides;
        for (const auto& e : edge_set) sides[e] = 0;
        for (std::size_t f = 0; f < lat.faces.size(); ++f) {
            const Face& face = lat.faces[f];
            if (face.size() < 3) violated(lat, "face " + std::to_string(f) + " has fewer than 3 corners");
            for (std::size_t m = 0; m < face.size(); ++m) {
                const auto& a = face[m];
                const auto& b = face[(m + 1) % face.size()];
                if (a.vertex < 0 || a.vertex >= n) violated(lat, "face corner references an undeclared vertex");
                PeriodicEdge e = canonical({a.vertex, b.vertex, b.cell - a.cell});
                auto it = sides.find(e);
                if (it == sides.end())
                    violated(lat, "face " + std::to_string(f) + " is not a closed walk in the graph");
                ++it->second;
            }
        }
        for (const auto& [e, count] : sides)
            if (count != 2)
                violated(lat, "edge at vertex " + point_str(lat.vertices[e.from]) + " lies on " +
                                  std::to_string(count) + " face sides instead of 2");
        long euler = static_cast<long>(n) - static_cast<long>(edge_set.size()) + static_cast<long>(lat.faces.size());
        if (euler != 0) violated(lat, "Euler characteristic V - E + F = " + std::to_string(euler) + ", expected 0 on the torus");
    }
}

bool periodicity_holds(const LatticeRep& lat)
{
    // absolute edges with the lower endpoint inside a block of 3x3 cells
    using Seg = std::pair<GridPoint, GridPoint>;
    auto block = [&](int ox, int oy) {
        std::set<Seg> out;
        for (int cx = 0; cx < 3; ++cx)
            for (int cy = 0; cy < 3; ++cy)
                for (const auto& e : lat.edges) {
                    CellOffset c{cx + ox, cy + oy};
                    GridPoint a = lat.position(e.from, c), b = lat.position(e.to, c + e.cell);
                    out.insert(a < b ? std::pair{a, b} : std::pair{b, a});
                }
        return out;
    };
    const int C = lat.period;
    auto shifted = [&](const std::set<Seg>& s, int dx, int dy) {
        std::set<Seg> out;
        for (auto [a, b] : s) out.insert({{a.x + dx, a.y + dy}, {b.x + dx, b.y + dy}});
        return out;
    };
    // Re-identify positions modulo the period: every absolute edge must map to
    // a declared periodic edge and the translated block must be the block
    // generated at the translated origin.
    std::set<GridPoint> verts;
    for (std::size_t v = 0; v < lat.vertices.size(); ++v) verts.insert(lat.position(static_cast<int>(v)));
    auto base = block(0, 0);
    for (auto [a, b] : base) {
        GridPoint ra{floor_mod(a.x, C), floor_mod(a.y, C)}, rb{floor_mod(b.x, C), floor_mod(b.y, C)};
        if (!verts.count(ra) || !verts.count(rb)) return false;
    }
    return shifted(base, C, 0) == block(1, 0) && shifted(base, 0, C) == block(0, 1);
}

LatticeRep reflect_diagonal(const LatticeRep& lat)
{
    LatticeRep out = lat;
    out.name = vertical_variant_name(lat.name);
    for (std::size_t v = 0; v < lat.vertices.size(); ++v) {
        GridPoint p = lat.uncompact(lat.vertices[v]);
        out.vertices[v] = out.compact({p.y, p.x});
    }
    for (auto& e : out.edges) e = canonical({e.from, e.to, {e.cell.dy, e.cell.dx}});
    for (auto& f : out.faces) {
        for (auto& c : f) c.cell = {c.cell.dy, c.cell.dx};
        std::reverse(f.begin(), f.end());   // reflection reverses orientation
    }
    return out;
}

bool same_drawing(const LatticeRep& a, const LatticeRep& b)
{
    if (a.period != b.period || a.ratio != b.ratio || a.parity != b.parity) return false;
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    std::set<GridPoint> va(a.vertices.begin(), a.vertices.end()), vb(b.vertices.begin(), b.vertices.end());
    if (va != vb) return false;

    using Key = std::tuple<GridPoint, GridPoint, CellOffset>;
    auto keys = [](const LatticeRep& l) {
        std::set<Key> out;
        for (const auto& e : l.edges) {
            Key k1{l.vertices[e.from], l.vertices[e.to], e.cell};
            Key k2{l.vertices[e.to], l.vertices[e.from], -e.cell};
            out.insert(std::min(k1, k2));
        }
        return out;
    };
    return keys(a) == keys(b);
}

std::string vertical_variant_name(std::string_view name)
{
    std::string n(name);
    static const std::string tag = "-vert";
    auto pos = n.find(tag);
    if (pos != std::string::npos && (pos + tag.size() == n.size() || n[pos + tag.size()] == '-'))
        return n.erase(pos, tag.size());
    for (const char* suffix : {"-bond-dual", "-site-dual"}) {
        std::string s(suffix);
        if (n.size() > s.size() && n.compare(n.size() - s.size(), s.size(), s) == 0)
            return n.substr(0, n.size() - s.size()) + tag + s;
    }
    return n + tag;
}

std::string format_lattice(const LatticeRep& lat)
{
    std::ostringstream os;
    os << "name " << lat.name << "\nmode " << to_string(lat.mode_hint) << "\nperiod " << lat.period << "\nratio "
       << lat.ratio << "\nparity " << to_string(lat.parity) << "\nsymmetric " << (lat.symmetric ? "true" : "false")
       << "\n";
    for (const auto& v : lat.vertices) os << "vertex " << v.x << " " << v.y << "\n";
    for (const auto& e : lat.edges) {
        const auto& a = lat.vertices[e.from];
        const auto& b = lat.vertices[e.to];
        os << "edge " << a.x << " " << a.y << " " << b.x << " " << b.y << " " << e.cell.dx << " " << e.cell.dy << "\n";
    }
    for (const auto& f : lat.faces) {
        os << "face " << f.size();
        for (const auto& c : f) {
            const auto& v = lat.vertices[c.vertex];
            os << " " << v.x << " " << v.y << " " << c.cell.dx << " " << c.cell.dy;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace pcert

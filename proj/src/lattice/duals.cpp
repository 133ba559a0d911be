#include "pcert/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pcert {

PeriodicGraph bond_dual(const LatticeRep& lat)
{
    if (lat.faces.empty()) throw LatticeError("bond dual of '" + lat.name + "': no faces");

    // For every canonical primal edge, the faces on its two sides together with
    // the translation placing each face's stored instance next to the edge.
    struct Side {
        int face;
        CellOffset shift;
    };
    std::map<PeriodicEdge, std::vector<Side>> sides;
    for (const auto& e : lat.edges) sides[canonical(e)];

    for (std::size_t f = 0; f < lat.faces.size(); ++f) {
        const Face& face = lat.faces[f];
        for (std::size_t m = 0; m < face.size(); ++m) {
            const auto& a = face[m];
            const auto& b = face[(m + 1) % face.size()];
            PeriodicEdge dart{a.vertex, b.vertex, b.cell - a.cell};
            PeriodicEdge key = canonical(dart);
            auto it = sides.find(key);
            if (it == sides.end()) throw LatticeError("bond dual of '" + lat.name + "': face side is not an edge");
            // canonical edge runs from key.from at (0,0); the dart starts at a.cell
            CellOffset shift = key == dart ? -a.cell : key.cell - a.cell;
            it->second.push_back({static_cast<int>(f), shift});
        }
    }

    PeriodicGraph dual;
    dual.vertex_count = static_cast<int>(lat.faces.size());
    for (const auto& [e, s] : sides) {
        if (s.size() != 2)
            throw LatticeError("bond dual of '" + lat.name + "': an edge is bounded by " + std::to_string(s.size()) +
                               " face sides instead of 2");
        dual.edges.push_back(canonical({s[0].face, s[1].face, s[1].shift - s[0].shift}));
    }
    std::sort(dual.edges.begin(), dual.edges.end());
    return dual;
}

LatticeRep site_dual(const LatticeRep& lat)
{
    if (lat.faces.empty()) throw LatticeError("site dual of '" + lat.name + "': no faces");
    LatticeRep out = lat;
    out.name = lat.name + "-site-dual";
    out.mode_hint = ModeHint::site;
    out.faces.clear();

    std::set<PeriodicEdge> have;
    for (const auto& e : lat.edges) have.insert(canonical(e));
    for (const Face& face : lat.faces) {
        const std::size_t k = face.size();
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 2; b < k; ++b) {
                if (a == 0 && b == k - 1) continue;
                PeriodicEdge chord = canonical({face[a].vertex, face[b].vertex, face[b].cell - face[a].cell});
                if (std::abs(chord.cell.dx) > 1 || std::abs(chord.cell.dy) > 1)
                    throw LatticeError("site dual of '" + lat.name + "': chord leaves the neighbouring cells");
                if (chord.from == chord.to && chord.cell == CellOffset{}) continue;
                if (have.insert(chord).second) out.edges.push_back(chord);
            }
    }
    return out;
}

}  // namespace pcert

#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcert {

enum class Mode { site, bond };
enum class ModeHint { site, bond, both };
enum class Parity { any, even, odd };
enum class Orientation { horizontal, vertical };

std::string to_string(Mode m);
std::string to_string(ModeHint m);
std::string to_string(Parity p);
std::string to_string(Orientation o);
Mode parse_mode(std::string_view text);
Orientation parse_orientation(std::string_view text);   // "h"/"horizontal", "v"/"vertical"

struct GridPoint {
    int x = 0;
    int y = 0;
    auto operator<=>(const GridPoint&) const = default;
};

// Translation by whole fundamental cells.
struct CellOffset {
    int dx = 0;
    int dy = 0;
    auto operator<=>(const CellOffset&) const = default;
    CellOffset operator+(CellOffset o) const { return {dx + o.dx, dy + o.dy}; }
    CellOffset operator-(CellOffset o) const { return {dx - o.dx, dy - o.dy}; }
    CellOffset operator-() const { return {-dx, -dy}; }
};

// Vertex `from` in cell (0,0) is adjacent to vertex `to` in cell `cell`.
struct PeriodicEdge {
    int from = 0;
    int to = 0;
    CellOffset cell;
    auto operator<=>(const PeriodicEdge&) const = default;
};

struct FaceCorner {
    int vertex = 0;
    CellOffset cell;
    auto operator<=>(const FaceCorner&) const = default;
};
using Face = std::vector<FaceCorner>;

// Canonical form of an undirected periodic edge: the same edge seen from the
// other endpoint is (to, from, -cell); the smaller of the two is kept.
PeriodicEdge canonical(PeriodicEdge e);

// Doubly periodic graph without a grid embedding.
struct PeriodicGraph {
    int vertex_count = 0;
    std::vector<PeriodicEdge> edges;   // canonical, each undirected edge once

    std::vector<int> degrees() const;
};

class LatticeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LatticeRep {
    std::string name;
    ModeHint mode_hint = ModeHint::both;
    int period = 1;
    int ratio = 1;
    Parity parity = Parity::any;
    bool symmetric = false;
    std::vector<GridPoint> vertices;   // compact coordinates
    std::vector<PeriodicEdge> edges;
    std::vector<Face> faces;

    int compact_width() const { return period / ratio; }
    // Uncompacted coordinates of a compact point (any integers, not only the
    // fundamental domain).
    GridPoint uncompact(GridPoint compact) const;
    GridPoint compact(GridPoint grid) const;
    // Uncompacted position of vertex v translated by `cell`.
    GridPoint position(int v, CellOffset cell = {}) const;
    std::optional<int> vertex_at(GridPoint compact) const;

    std::vector<int> degrees() const;
    // Largest compact-column distance spanned by an edge (at least 1).
    int strip_width() const;
    PeriodicGraph topology() const;
};

// Parsing and validation. Parse errors carry "line N:"; validation errors
// name the violated invariant.
LatticeRep parse_lattice(std::string_view text);
LatticeRep load_lattice_file(const std::filesystem::path& path);
void validate(const LatticeRep& lat);
std::string format_lattice(const LatticeRep& lat);

LatticeRep reflect_diagonal(const LatticeRep& lat);
// Rebuilds the absolute edge set over a block of cells, shifts it by (C,0)
// and (0,C), and checks it is reproduced on the overlap.
bool periodicity_holds(const LatticeRep& lat);

// Same grid drawing: identical geometry metadata, vertex set and edge set.
bool same_drawing(const LatticeRep& a, const LatticeRep& b);

// Planar duals. The bond dual has one vertex per face of the fundamental
// domain and carries no grid embedding.
PeriodicGraph bond_dual(const LatticeRep& lat);
LatticeRep site_dual(const LatticeRep& lat);

// Isomorphism of doubly periodic graphs: a vertex bijection with per-vertex
// cell shifts, combined with a unimodular change of period basis (entries
// in {-1,0,1}) acting on edge offsets.
bool periodic_isomorphic(const PeriodicGraph& g, const PeriodicGraph& h);

// Rendering of the uncompacted drawing over `cells_x` x `cells_y` cells.
std::string render_text(const LatticeRep& lat, int cells_x, int cells_y);
std::string render_svg(const LatticeRep& lat, int cells_x, int cells_y);

// ---------------------------------------------------------------------------
// Rectangle subgraphs

struct RectGeometry {
    int scale = 0;
    Orientation orientation = Orientation::horizontal;
};

void check_geometry(const LatticeRep& lat, const RectGeometry& geom);

// Induced subgraph on the sites of the rectangle [0,2s)x[0,s) (horizontal)
// or [0,s)x[0,2s) (vertical), uncompacted units.
//
// Sites are numbered in scan order: by column along the long axis (compact x
// for horizontal, y for vertical), then by the other coordinate. Bonds are
// numbered with all within-half bonds first, then the interface bonds, each
// group sorted by (lower endpoint, higher endpoint). This order is the order
// in which random states are drawn.
struct RectGraph {
    int scale = 0;
    Orientation orientation = Orientation::horizontal;
    int columns = 0;             // scan columns in the whole rectangle
    int columns_per_half = 0;
    int strip_width = 1;         // no bond spans more than this many columns

    std::vector<GridPoint> sites;        // uncompacted positions
    std::vector<int> column_start;       // size columns+1
    std::vector<int> column;             // scan column of each site
    std::vector<std::uint8_t> half;      // 0 = left/bottom, 1 = right/top
    std::vector<std::pair<int, int>> bonds;
    int interface_begin = 0;             // bonds[interface_begin..] cross halves

    std::vector<int> adj_start;          // CSR: neighbours of site v are
    std::vector<int> adj_site;           //   adj_site[adj_start[v]..adj_start[v+1])
    std::vector<int> adj_bond;           //   via bond adj_bond[...]

    int site_count() const { return static_cast<int>(sites.size()); }
    int bond_count() const { return static_cast<int>(bonds.size()); }
    int column_of(int site) const { return column[site]; }
    int element_count(Mode mode) const { return mode == Mode::site ? site_count() : bond_count(); }
};

RectGraph induce_rectangle(const LatticeRep& lat, const RectGeometry& geom);

// Graph the engine scans for `geom`: vertical rectangles are handled by the
// horizontal machinery on the reflected drawing.
RectGraph scan_graph(const LatticeRep& lat, const RectGeometry& geom);

// Finite-graph isomorphism check for rectangle graphs related by a known
// map of positions (used to compare a rectangle and its reflection).
bool same_rectangle_under(const RectGraph& a, const RectGraph& b, GridPoint (*map)(GridPoint));

// ---------------------------------------------------------------------------
// Shipped catalogue

struct CatalogEntry {
    std::string name;          // primal name, e.g. "kagome"
    std::string display;       // table label, e.g. "(3,12^2)"
    std::string bond_dual;     // file name of the bond dual used for lower bounds
    std::string site_dual;     // file name of the site dual used for lower bounds
};

const std::vector<CatalogEntry>& archimedean_catalog();
const CatalogEntry* find_catalog_entry(std::string_view name);
int expected_degree(std::string_view primal_name);   // 0 if not a primal

std::filesystem::path default_data_dir();
std::filesystem::path lattice_dir(const std::optional<std::filesystem::path>& override_dir = std::nullopt);
LatticeRep load_named_lattice(std::string_view name, const std::filesystem::path& dir);
std::vector<std::string> shipped_lattice_names(const std::filesystem::path& dir);

// Name of the file holding the reflected drawing of an asymmetric lattice,
// e.g. "3.3.3.3.6" -> "3.3.3.3.6-vert", "3.3.3.3.6-bond-dual" ->
// "3.3.3.3.6-vert-bond-dual".
std::string vertical_variant_name(std::string_view name);

}  // namespace pcert

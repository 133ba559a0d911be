#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "pcert/lattice.hpp"

using namespace pcert;
using test::shipped;

namespace {

const char* square_text = R"(# unit grid
name square
mode both
period 1
ratio 1
parity any
symmetric true
vertex 0 0
edge 0 0 0 0 -1 0
edge 0 0 0 0 0 -1
face 4 0 0 0 0 0 0 -1 0 0 0 -1 -1 0 0 0 -1
)";

std::string replace(std::string s, const std::string& from, const std::string& to)
{
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

std::set<int> degree_set(const std::vector<int>& d) { return {d.begin(), d.end()}; }

GridPoint swap_xy(GridPoint p) { return {p.y, p.x}; }

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("square file: one vertex, uniform degree 4")
{
    LatticeRep lat = parse_lattice(square_text);
    CHECK(lat.period == 1);
    CHECK(lat.vertices.size() == 1);
    CHECK(lat.edges.size() == 2);
    CHECK(degree_set(lat.degrees()) == std::set<int>{4});
}

TEST_CASE("4.8.8 file: period 8, odd parity, ratio 2, degree 3")
{
    const LatticeRep& lat = shipped("4.8.8");
    CHECK(lat.period == 8);
    CHECK(lat.ratio == 2);
    CHECK(lat.parity == Parity::odd);
    CHECK(degree_set(lat.degrees()) == std::set<int>{3});
    // 8 squares and 8 octagons per fundamental domain
    std::multiset<std::size_t> sizes;
    for (const auto& f : lat.faces) sizes.insert(f.size());
    CHECK(sizes.count(4) == 8);
    CHECK(sizes.count(8) == 8);
}

TEST_CASE("every shipped primal has its Archimedean degree")
{
    for (const auto& e : archimedean_catalog()) {
        CAPTURE(e.name);
        CHECK(degree_set(shipped(e.name).degrees()) == std::set<int>{expected_degree(e.name)});
    }
}

TEST_CASE("undeclared vertex is a validation error")
{
    std::string text = replace(square_text, "edge 0 0 0 0 -1 0", "edge 0 0 3 3 -1 0");
    CHECK_THROWS_WITH_AS(parse_lattice(text), doctest::Contains("undeclared vertex"), LatticeError);
}

TEST_CASE("parse errors carry the line number")
{
    std::string text = replace(square_text, "period 1", "period one");
    CHECK_THROWS_WITH_AS(parse_lattice(text), doctest::Contains("line 4"), LatticeError);
}

TEST_CASE("validation names the violated invariant")
{
    SUBCASE("degree")
    {
        std::string text = replace(square_text, "edge 0 0 0 0 0 -1\n", "");
        text = replace(text, "face 4 0 0 0 0 0 0 -1 0 0 0 -1 -1 0 0 0 -1\n", "");
        CHECK_THROWS_WITH(parse_lattice(text), doctest::Contains("degree"));
    }
    SUBCASE("cell offset range")
    {
        std::string text = replace(square_text, "edge 0 0 0 0 -1 0", "edge 0 0 0 0 -2 0");
        CHECK_THROWS_WITH(parse_lattice(text), doctest::Contains("cell offset"));
    }
    SUBCASE("face that is not a walk")
    {
        std::string text = replace(square_text, "face 4 0 0 0 0 0 0 -1 0 0 0 -1 -1 0 0 0 -1",
                                   "face 4 0 0 0 0 0 0 -1 0 0 0 1 1 0 0 0 -1");
        CHECK_THROWS_WITH(parse_lattice(text), doctest::Contains("closed walk"));
    }
    SUBCASE("edges must border two faces")
    {
        std::string text = square_text;
        text += "face 4 0 0 0 0 0 0 -1 0 0 0 -1 -1 0 0 0 -1\n";
        CHECK_THROWS_AS(parse_lattice(text), LatticeError);
    }
    SUBCASE("wrong symmetric flag")
    {
        const LatticeRep& lat = shipped("3.3.3.3.6");
        LatticeRep bad = lat;
        bad.symmetric = true;
        CHECK_THROWS_WITH(validate(bad), doctest::Contains("reflection"));
    }
}

TEST_CASE("format_lattice round-trips every shipped file")
{
    for (const auto& name : shipped_lattice_names(lattice_dir())) {
        CAPTURE(name);
        const LatticeRep& lat = shipped(name);
        CHECK(same_drawing(parse_lattice(format_lattice(lat)), lat));
    }
}

TEST_CASE("shipped set: 11 primal, 9 bond duals, 9 site duals, 1 vertical primal")
{
    auto names = shipped_lattice_names(lattice_dir());
    auto count = [&](auto pred) { return std::count_if(names.begin(), names.end(), pred); };
    auto ends = [](const std::string& s, const std::string& tail) {
        return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
    };
    CHECK(count([&](const std::string& n) { return ends(n, "-bond-dual"); }) == 9);
    CHECK(count([&](const std::string& n) { return ends(n, "-site-dual"); }) == 9);
    CHECK(count([&](const std::string& n) { return find_catalog_entry(n) != nullptr; }) == 11);
    CHECK(std::find(names.begin(), names.end(), "3.3.3.3.6-vert") != names.end());
}

TEST_CASE("reflection")
{
    const LatticeRep& sq = shipped("square");
    CHECK(same_drawing(reflect_diagonal(sq), sq));
    for (const auto& name : shipped_lattice_names(lattice_dir())) {
        CAPTURE(name);
        const LatticeRep& lat = shipped(name);
        CHECK(same_drawing(reflect_diagonal(reflect_diagonal(lat)), lat));
        if (lat.symmetric) CHECK(same_drawing(reflect_diagonal(lat), lat));
    }
    CHECK(same_drawing(reflect_diagonal(shipped("3.3.3.3.6")), shipped("3.3.3.3.6-vert")));
    CHECK(vertical_variant_name("3.3.3.3.6-bond-dual") == "3.3.3.3.6-vert-bond-dual");
    CHECK(vertical_variant_name("3.3.3.3.6-vert") == "3.3.3.3.6");
}

}

TEST_SUITE("duals") {

TEST_CASE("classical bond duals")
{
    CHECK(periodic_isomorphic(bond_dual(shipped("square")), shipped("square").topology()));
    CHECK(periodic_isomorphic(bond_dual(shipped("triangular")), shipped("hexagonal").topology()));
    CHECK(periodic_isomorphic(bond_dual(shipped("hexagonal")), shipped("triangular").topology()));
    CHECK_FALSE(periodic_isomorphic(shipped("square").topology(), shipped("triangular").topology()));
}

TEST_CASE("triangular bond dual has degree 3 and hexagonal faces")
{
    PeriodicGraph d = bond_dual(shipped("triangular"));
    CHECK(degree_set(d.degrees()) == std::set<int>{3});
    CHECK(d.edges.size() == shipped("triangular").edges.size());
    for (const auto& f : shipped("hexagonal").faces) CHECK(f.size() == 6);
}

TEST_CASE("kagome bond dual: degrees 3,3,6 per domain and the same edge count")
{
    PeriodicGraph d = bond_dual(shipped("kagome"));
    auto deg = d.degrees();
    std::sort(deg.begin(), deg.end());
    CHECK(deg == std::vector<int>{3, 3, 6});
    CHECK(d.edges.size() == shipped("kagome").edges.size());
}

TEST_CASE("site duals")
{
    CHECK(same_drawing(site_dual(shipped("triangular")), shipped("triangular")));
    LatticeRep tri = site_dual(shipped("triangular"));
    CHECK(tri.edges == shipped("triangular").edges);

    LatticeRep sq = site_dual(shipped("square"));
    CHECK(degree_set(sq.degrees()) == std::set<int>{8});

    // k(k-3)/2 chords per k-face: 2 per square, 20 per octagon
    LatticeRep o = site_dual(shipped("4.8.8"));
    CHECK(o.edges.size() == shipped("4.8.8").edges.size() + 8 * 2 + 8 * 20);
}

TEST_CASE("every shipped dual matches the computed dual")
{
    for (const auto& e : archimedean_catalog()) {
        CAPTURE(e.name);
        const LatticeRep& primal = shipped(e.name);
        CHECK(periodic_isomorphic(bond_dual(primal), shipped(e.bond_dual).topology()));
        if (!e.site_dual.empty() && e.site_dual != e.name) {
            LatticeRep computed = site_dual(primal);
            CHECK(same_drawing(computed, shipped(e.site_dual)));
        }
    }
    LatticeRep v = site_dual(shipped("3.3.3.3.6-vert"));
    CHECK(same_drawing(v, shipped("3.3.3.3.6-vert-site-dual")));
    CHECK(periodic_isomorphic(bond_dual(shipped("3.3.3.3.6-vert")), shipped("3.3.3.3.6-vert-bond-dual").topology()));
}

TEST_CASE("duals need faces")
{
    LatticeRep lat = shipped("square");
    lat.faces.clear();
    CHECK_THROWS(bond_dual(lat));
    CHECK_THROWS(site_dual(lat));
}

}

TEST_SUITE("rectangle") {

TEST_CASE("square, s = 2: 8 sites, 10 bonds of which 2 cross the interface")
{
    RectGraph g = induce_rectangle(shipped("square"), {2, Orientation::horizontal});
    CHECK(g.site_count() == 8);
    CHECK(g.bond_count() == 10);
    CHECK(g.bond_count() - g.interface_begin == 2);
    for (int b = 0; b < g.bond_count(); ++b) {
        auto [u, v] = g.bonds[b];
        CHECK((g.half[u] != g.half[v]) == (b >= g.interface_begin));
    }
}

TEST_CASE("at s = C the rectangle holds two fundamental domains of sites")
{
    for (const auto& name : shipped_lattice_names(lattice_dir())) {
        CAPTURE(name);
        const LatticeRep& lat = shipped(name);
        RectGraph g = induce_rectangle(lat, {lat.period, Orientation::horizontal});
        CHECK(g.site_count() == 2 * static_cast<int>(lat.vertices.size()));
    }
}

TEST_CASE("scan order: columns ascending, bonds within strip width")
{
    for (const auto& name : {"4.8.8", "3.3.3.3.6", "kagome", "4.6.12-site-dual"}) {
        CAPTURE(name);
        const LatticeRep& lat = shipped(name);
        for (Orientation o : {Orientation::horizontal, Orientation::vertical}) {
            RectGraph g = scan_graph(lat, {2 * lat.period, o});
            for (int v = 1; v < g.site_count(); ++v) CHECK(g.column[v - 1] <= g.column[v]);
            for (auto [u, v] : g.bonds) CHECK(std::abs(g.column[u] - g.column[v]) <= g.strip_width);
            CHECK(g.strip_width == lat.strip_width());
        }
    }
}

TEST_CASE("3.3.3.3.6 vertical rectangle is the reflection of the vertical-file horizontal one")
{
    const LatticeRep& h = shipped("3.3.3.3.6");
    const LatticeRep& v = shipped("3.3.3.3.6-vert");
    for (int s : {7, 14}) {
        RectGraph a = induce_rectangle(h, {s, Orientation::vertical});
        RectGraph b = induce_rectangle(v, {s, Orientation::horizontal});
        CHECK(same_rectangle_under(a, b, swap_xy));
    }
}

TEST_CASE("scale must be a positive multiple of the period")
{
    CHECK_THROWS(check_geometry(shipped("4.8.8"), {12, Orientation::horizontal}));
    CHECK_THROWS(check_geometry(shipped("square"), {0, Orientation::horizontal}));
    CHECK_NOTHROW(check_geometry(shipped("4.8.8"), {16, Orientation::horizontal}));
}

}

TEST_SUITE("render") {

TEST_CASE("square renders as a 4-regular grid")
{
    std::string t = render_text(shipped("square"), 3, 3);
    CHECK(t.find("o-o-o") != std::string::npos);
    CHECK(t.find("| | |") != std::string::npos);
}

TEST_CASE("svg has one circle per vertex instance")
{
    const LatticeRep& lat = shipped("4.8.8");
    std::string svg = render_svg(lat, 2, 2);
    std::size_t circles = 0;
    for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
    CHECK(circles == 4 * lat.vertices.size());
}

}

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "pcert/engine.hpp"
#include "pcert/oracle.hpp"
#include "pcert/rng.hpp"

using namespace pcert;
using test::shipped;

namespace {

int site_at(const RectGraph& g, int x, int y)
{
    for (int v = 0; v < g.site_count(); ++v)
        if (g.sites[v].x == x && g.sites[v].y == y) return v;
    FAIL("no site at (" << x << "," << y << ")");
    return 0;
}

bool same(const EventResult& r, const FlatEvent& f)
{
    return r.holds == f.holds && r.joined == f.joined && r.left.largest_size == f.left_size &&
           r.right.largest_size == f.right_size && r.left.largest_unique == f.left_unique &&
           r.right.largest_unique == f.right_unique;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("p = 1 opens everything, p = 0 nothing")
{
    RectGraph g = scan_graph(shipped("kagome"), {4, Orientation::horizontal});
    std::vector<std::uint8_t> open;
    for (Mode m : {Mode::site, Mode::bond}) {
        draw_states(g, m, Probability::parse("1"), 7, open);
        CHECK(open.size() == static_cast<std::size_t>(g.element_count(m)));
        CHECK(std::all_of(open.begin(), open.end(), [](auto b) { return b == 1; }));
        draw_states(g, m, Probability::parse("0"), 7, open);
        CHECK(std::none_of(open.begin(), open.end(), [](auto b) { return b == 1; }));
    }
}

TEST_CASE("open fraction at p = 0.6 over 100 square s = 64 replicates")
{
    RectGraph g = scan_graph(shipped("square"), {64, Orientation::horizontal});
    std::vector<std::uint8_t> open;
    double total = 0, count = 0;
    for (std::uint32_t seed = 100; seed < 200; ++seed) {
        draw_states(g, Mode::site, Probability::parse("0.6"), seed, open);
        total += std::count(open.begin(), open.end(), 1);
        count += static_cast<double>(open.size());
    }
    CHECK(std::abs(total / count - 0.6) < 0.01);
}

TEST_CASE("states come from one stream per seed, in element order")
{
    RectGraph g = scan_graph(shipped("square"), {3, Orientation::horizontal});
    std::vector<std::uint8_t> open;
    const Probability p = Probability::parse("0.37");
    draw_states(g, Mode::bond, p, 4242, open);
    Mt19937 rng(4242u);
    for (int b = 0; b < g.bond_count(); ++b) CHECK(open[b] == (p.is_open(rng.next_u32()) ? 1 : 0));
}

TEST_CASE("all-open square half, s = 4")
{
    RectGraph g = scan_graph(shipped("square"), {4, Orientation::horizontal});
    std::vector<std::uint8_t> open(g.site_count(), 1);
    for (Side side : {Side::left, Side::right}) {
        HalfScanSummary h = scan_half(g, Mode::site, open, side);
        CHECK(h.largest_size == 16);
        CHECK(h.largest_unique);
        CHECK(!h.frontier_sites.empty());
        CHECK(std::all_of(h.frontier_in_largest.begin(), h.frontier_in_largest.end(), [](auto b) { return b; }));
    }
}

TEST_CASE("all-closed site configuration")
{
    RectGraph g = scan_graph(shipped("square"), {4, Orientation::horizontal});
    std::vector<std::uint8_t> open(g.site_count(), 0);
    HalfScanSummary h = scan_half(g, Mode::site, open, Side::left);
    CHECK(h.largest_size == 0);
    CHECK_FALSE(h.largest_unique);
    CHECK_FALSE(evaluate_event(g, Mode::site, open).holds);
}

TEST_CASE("all-open holds and all-closed fails on every shipped lattice")
{
    for (const auto& name : shipped_lattice_names(lattice_dir())) {
        CAPTURE(name);
        const LatticeRep& lat = shipped(name);
        for (Mode m : {Mode::site, Mode::bond}) {
            RectGraph g = scan_graph(lat, {lat.period, Orientation::horizontal});
            std::vector<std::uint8_t> all(g.element_count(m), 1), none(g.element_count(m), 0);
            CHECK(evaluate_event(g, m, all).holds);
            CHECK_FALSE(evaluate_event(g, m, none).holds);
        }
    }
}

TEST_CASE("a tie for largest cluster is not a unique largest cluster")
{
    RectGraph g = scan_graph(shipped("square"), {2, Orientation::horizontal});
    std::vector<std::uint8_t> open(g.site_count(), 0);
    open[site_at(g, 0, 0)] = 1;   // two singletons in the left half
    open[site_at(g, 1, 1)] = 1;
    open[site_at(g, 2, 0)] = 1;
    open[site_at(g, 3, 0)] = 1;
    EventResult r = evaluate_event(g, Mode::site, open);
    CHECK(r.left.largest_size == 1);
    CHECK_FALSE(r.left.largest_unique);
    CHECK(r.right.largest_unique);
    CHECK_FALSE(r.holds);
}

TEST_CASE("unique largest clusters that do not meet are not joined")
{
    RectGraph g = scan_graph(shipped("square"), {4, Orientation::horizontal});
    std::vector<std::uint8_t> open(g.site_count(), 0);
    for (int y = 0; y < 4; ++y) open[site_at(g, 0, y)] = 1;   // left edge column, away from the interface
    for (int y = 0; y < 4; ++y) open[site_at(g, 7, y)] = 1;   // right edge column
    EventResult r = evaluate_event(g, Mode::site, open);
    CHECK(r.left.largest_unique);
    CHECK(r.right.largest_unique);
    CHECK(std::none_of(r.left.frontier_in_largest.begin(), r.left.frontier_in_largest.end(), [](auto b) { return b; }));
    CHECK_FALSE(r.joined);
    CHECK_FALSE(r.holds);
}

TEST_CASE("a path through another half's cluster joins the largest clusters")
{
    // Square bond, s = 2: the left largest cluster reaches the right half's
    // largest only by crossing both interface bonds.
    RectGraph g = scan_graph(shipped("square"), {2, Orientation::horizontal});
    std::vector<std::uint8_t> open(g.bond_count(), 0);
    auto bond = [&](int a, int b) {
        for (int i = 0; i < g.bond_count(); ++i) {
            auto [u, v] = g.bonds[i];
            if ((u == a && v == b) || (u == b && v == a)) return i;
        }
        FAIL("no bond");
        return 0;
    };
    const int l00 = site_at(g, 0, 0), l10 = site_at(g, 1, 0), l11 = site_at(g, 1, 1);
    const int r20 = site_at(g, 2, 0), r21 = site_at(g, 2, 1), r30 = site_at(g, 3, 0);
    open[bond(l00, l10)] = 1;   // left largest {00,10}, size 2; 11 and 01 singletons
    open[bond(r20, r30)] = 1;   // right largest {20,30}
    open[bond(l10, r20)] = 1;   // interface
    EventResult r = evaluate_event(g, Mode::bond, open);
    CHECK(r.left.largest_size == 2);
    CHECK(r.left.largest_unique);
    CHECK(r.right.largest_unique);
    CHECK(r.joined);
    CHECK(r.holds);
    (void)l11;
    (void)r21;
}

TEST_CASE("strip scan equals the flat reference on random configurations")
{
    std::vector<std::uint8_t> open;
    for (const auto& name : shipped_lattice_names(lattice_dir())) {
        CAPTURE(name);
        const LatticeRep& lat = shipped(name);
        for (Orientation o : {Orientation::horizontal, Orientation::vertical}) {
            for (int s : {lat.period, 2 * lat.period}) {
                if (s > 24) continue;
                RectGraph g = scan_graph(lat, {s, o});
                for (Mode m : {Mode::site, Mode::bond}) {
                    for (std::uint32_t seed = 0; seed < 40; ++seed) {
                        const char* p = seed % 4 == 0 ? "0.3" : seed % 4 == 1 ? "0.5" : seed % 4 == 2 ? "0.65" : "0.8";
                        draw_states(g, m, Probability::parse(p), 5000 + seed, open);
                        REQUIRE(same(evaluate_event(g, m, open), flat_evaluate(g, m, open)));
                    }
                }
            }
        }
    }
}

TEST_CASE("live labels stay proportional to the strip, not the area")
{
    const LatticeRep& lat = shipped("square");
    std::vector<std::uint8_t> open;
    std::size_t peak_small = 0, peak_large = 0;
    for (int s : {64, 256}) {
        RectGraph g = scan_graph(lat, {s, Orientation::horizontal});
        int max_column = 0;
        for (int c = 0; c < g.columns; ++c) max_column = std::max(max_column, g.column_start[c + 1] - g.column_start[c]);
        std::size_t peak = 0;
        for (std::uint32_t seed = 0; seed < 5; ++seed) {
            draw_states(g, Mode::bond, Probability::parse("0.5"), seed, open);
            EventResult r = evaluate_event(g, Mode::bond, open);
            peak = std::max({peak, r.left.peak_live, r.right.peak_live});
        }
        CHECK(peak <= static_cast<std::size_t>(2 * (g.strip_width + 1) * max_column));
        (s == 64 ? peak_small : peak_large) = peak;
    }
    // four times the side length, about four times the memory (not sixteen)
    CHECK(peak_large < 6 * peak_small);
}

TEST_CASE("estimates: p = 1 and p = 0, seeds and threads")
{
    const LatticeRep& lat = shipped("hexagonal");
    RectGraph g = scan_graph(lat, {8, Orientation::horizontal});
    CHECK(estimate_event_probability(g, Mode::bond, Probability::parse("1"), 50, 1).successes == 50);
    CHECK(estimate_event_probability(g, Mode::bond, Probability::parse("0"), 50, 1).successes == 0);

    std::vector<ReplicateOutcome> log1, log4;
    EstimateOptions one{1, [&](const ReplicateOutcome& r) { log1.push_back(r); }};
    EstimateOptions four{4, [&](const ReplicateOutcome& r) { log4.push_back(r); }};
    Estimate a = estimate_event_probability(g, Mode::bond, Probability::parse("0.66"), 300, 777, one);
    Estimate b = estimate_event_probability(g, Mode::bond, Probability::parse("0.66"), 300, 777, four);
    CHECK(a.successes == b.successes);
    REQUIRE(log1.size() == 300);
    REQUIRE(log4.size() == 300);
    for (std::size_t i = 0; i < log1.size(); ++i) {
        CHECK(log1[i].seed == 777 + i);
        CHECK(format_replicate(log1[i]) == format_replicate(log4[i]));
    }
    // each replicate is a pure function of its seed
    Configuration c = sample_configuration(lat, {8, Orientation::horizontal}, Mode::bond, Probability::parse("0.66"), 780);
    CHECK(evaluate_event(c).holds == log1[3].holds);
}

TEST_CASE("seed range may not wrap around")
{
    RectGraph g = scan_graph(shipped("square"), {2, Orientation::horizontal});
    CHECK_THROWS(estimate_event_probability(g, Mode::site, Probability::parse("0.5"), 10, 0xFFFFFFFAu));
}

TEST_CASE("square bond, s = 2, p = 0.6: Monte Carlo agrees with the frozen exact value")
{
    const double pi = 4766229.0 / 9765625.0;
    Estimate e = estimate_event_probability(shipped("square"), {2, Orientation::horizontal}, Mode::bond,
                                            Probability::parse("0.6"), 100000, 12345678);
    CHECK(std::abs(e.fraction() - pi) <= 3 * std::sqrt(pi * (1 - pi) / 1e5));
}

}

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pcert/decimal.hpp"
#include "pcert/lattice.hpp"

namespace pcert {

enum class Side { left, right };

// States of the random elements of one rectangle, in the graph's element
// order (sites in site mode; within-half bonds then interface bonds in bond
// mode).
struct Configuration {
    Mode mode = Mode::site;
    std::shared_ptr<const RectGraph> graph;
    std::vector<std::uint8_t> open;

    std::string lattice;
    RectGeometry geom;
    Probability p;
    std::uint32_t seed = 0;
};

// Fills `open` with fresh states: one MT19937 stream seeded with `seed`,
// one 32-bit draw per element in element order.
void draw_states(const RectGraph& g, Mode mode, const Probability& p, std::uint32_t seed,
                 std::vector<std::uint8_t>& open);

Configuration sample_configuration(const LatticeRep& lat, const RectGeometry& geom, Mode mode, const Probability& p,
                                   std::uint32_t seed);
Configuration sample_configuration(std::shared_ptr<const RectGraph> graph, std::string lattice, Mode mode,
                                   const Probability& p, std::uint32_t seed);

struct HalfScanSummary {
    std::int64_t largest_size = 0;
    bool largest_unique = false;
    // Sites of the strip next to the interface, ascending; the cluster class
    // of each (-1 for a closed site) and whether it lies in the unique
    // largest cluster of the half.
    std::vector<int> frontier_sites;
    std::vector<int> frontier_class;
    std::vector<std::uint8_t> frontier_in_largest;
    // Instrumentation: most labels + classes alive at once during the sweep.
    std::size_t peak_live = 0;
};

struct EventResult {
    HalfScanSummary left;
    HalfScanSummary right;
    bool joined = false;
    bool holds = false;
};

// Sweeps one half towards the interface keeping only a window of
// strip_width columns of labels.
HalfScanSummary scan_half(const RectGraph& g, Mode mode, std::span<const std::uint8_t> open, Side side);
EventResult evaluate_event(const RectGraph& g, Mode mode, std::span<const std::uint8_t> open);

HalfScanSummary scan_half(const Configuration& c, Side side);
EventResult evaluate_event(const Configuration& c);

struct ReplicateOutcome {
    std::uint32_t seed = 0;
    bool holds = false;
    std::int64_t left_size = 0;
    std::int64_t right_size = 0;
    bool joined = false;
};

struct EstimateOptions {
    unsigned threads = 0;   // 0: hardware concurrency
    // Called once per replicate, in seed order, after all replicates ran.
    std::function<void(const ReplicateOutcome&)> log;
};

struct Estimate {
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    double fraction() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

// Replicates use seeds base_seed, ..., base_seed + n - 1.
Estimate estimate_event_probability(const RectGraph& g, Mode mode, const Probability& p, std::int64_t n,
                                    std::uint32_t base_seed, const EstimateOptions& options = {});
Estimate estimate_event_probability(const LatticeRep& lat, const RectGeometry& geom, Mode mode,
                                    const Probability& p, std::int64_t n, std::uint32_t base_seed,
                                    const EstimateOptions& options = {});

// Replicate log line: "seed holds left_size right_size joined".
std::string format_replicate(const ReplicateOutcome& r);

}  // namespace pcert

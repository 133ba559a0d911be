#include "pcert/engine.hpp"

#include <stdexcept>
#include <thread>

namespace pcert {

Estimate estimate_event_probability(const RectGraph& g, Mode mode, const Probability& p, std::int64_t n,
                                    std::uint32_t base_seed, const EstimateOptions& options)
{
    if (n < 1) throw std::invalid_argument("replicate count must be positive");
    if (static_cast<std::uint64_t>(base_seed) + static_cast<std::uint64_t>(n) - 1 > UINT32_MAX)
        throw std::invalid_argument("seed range runs past 2^32 - 1");

    std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(n));
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::int64_t>(threads, n));

    auto work = [&](std::int64_t begin, std::int64_t end) {
        std::vector<std::uint8_t> open;
        for (std::int64_t i = begin; i < end; ++i) {
            const auto seed = static_cast<std::uint32_t>(base_seed + i);
            draw_states(g, mode, p, seed, open);
            EventResult r = evaluate_event(g, mode, open);
            outcomes[i] = {seed, r.holds, r.left.largest_size, r.right.largest_size, r.joined};
        }
    };
    if (threads == 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, n * t / threads, n * (t + 1) / threads);
        for (auto& th : pool) th.join();
    }

    Estimate e;
    e.trials = n;
    for (const auto& o : outcomes) {
        e.successes += o.holds;
        if (options.log) options.log(o);
    }
    return e;
}

Estimate estimate_event_probability(const LatticeRep& lat, const RectGeometry& geom, Mode mode,
                                    const Probability& p, std::int64_t n, std::uint32_t base_seed,
                                    const EstimateOptions& options)
{
    return estimate_event_probability(scan_graph(lat, geom), mode, p, n, base_seed, options);
}

std::string format_replicate(const ReplicateOutcome& r)
{
    return std::to_string(r.seed) + " " + (r.holds ? "1" : "0") + " " + std::to_string(r.left_size) + " " +
           std::to_string(r.right_size) + " " + (r.joined ? "1" : "0");
}

}  // namespace pcert

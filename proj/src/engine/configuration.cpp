#include "pcert/engine.hpp"

#include "pcert/rng.hpp"

namespace pcert {

void draw_states(const RectGraph& g, Mode mode, const Probability& p, std::uint32_t seed,
                 std::vector<std::uint8_t>& open)
{
    const std::size_t n = static_cast<std::size_t>(g.element_count(mode));
    open.resize(n);
    Mt19937 rng(seed);
    const std::uint64_t threshold = p.threshold();
    for (std::size_t i = 0; i < n; ++i) open[i] = rng.next_u32() < threshold;
}

Configuration sample_configuration(std::shared_ptr<const RectGraph> graph, std::string lattice, Mode mode,
                                   const Probability& p, std::uint32_t seed)
{
    Configuration c;
    c.mode = mode;
    c.lattice = std::move(lattice);
    c.geom = {graph->scale, graph->orientation};
    c.p = p;
    c.seed = seed;
    draw_states(*graph, mode, p, seed, c.open);
    c.graph = std::move(graph);
    return c;
}

Configuration sample_configuration(const LatticeRep& lat, const RectGeometry& geom, Mode mode, const Probability& p,
                                   std::uint32_t seed)
{
    auto graph = std::make_shared<const RectGraph>(scan_graph(lat, geom));
    Configuration c = sample_configuration(std::move(graph), lat.name, mode, p, seed);
    c.geom = geom;
    return c;
}

}  // namespace pcert

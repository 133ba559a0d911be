#include "pcert/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pcert/event_policy.hpp"

namespace pcert {

namespace {

struct Labelling {
    std::vector<int> comp;                 // -1 for closed sites
    std::vector<std::int64_t> comp_size;
};

bool site_open(const RectGraph&, Mode mode, std::span<const std::uint8_t> open, int v)
{
    return mode == Mode::bond || open[v] != 0;
}

bool edge_usable(const RectGraph& g, Mode mode, std::span<const std::uint8_t> open, int bond)
{
    auto [a, b] = g.bonds[bond];
    return mode == Mode::bond ? open[bond] != 0 : (open[a] != 0 && open[b] != 0);
}

// Components of the open subgraph; `within_halves` drops the interface.
Labelling label(const RectGraph& g, Mode mode, std::span<const std::uint8_t> open, bool within_halves)
{
    Labelling L;
    const int n = g.site_count();
    L.comp.assign(n, -1);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (L.comp[s] >= 0 || !site_open(g, mode, open, s)) continue;
        const int id = static_cast<int>(L.comp_size.size());
        L.comp_size.push_back(0);
        L.comp[s] = id;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            ++L.comp_size[id];
            for (int a = g.adj_start[v]; a < g.adj_start[v + 1]; ++a) {
                const int u = g.adj_site[a], b = g.adj_bond[a];
                if (within_halves && b >= g.interface_begin) continue;
                if (L.comp[u] >= 0 || !edge_usable(g, mode, open, b)) continue;
                L.comp[u] = id;
                queue.push_back(u);
            }
        }
    }
    return L;
}

}  // namespace

FlatEvent flat_evaluate(const RectGraph& g, Mode mode, std::span<const std::uint8_t> open)
{
    FlatEvent r;
    const Labelling halves = label(g, mode, open, true);
    LargestTracker best[2];
    std::vector<int> comp_half(halves.comp_size.size(), 0);
    for (int s = 0; s < g.site_count(); ++s)
        if (halves.comp[s] >= 0) comp_half[halves.comp[s]] = g.half[s];
    for (std::size_t c = 0; c < halves.comp_size.size(); ++c) best[comp_half[c]].offer(halves.comp_size[c]);
    r.left_size = best[0].size();
    r.left_unique = best[0].unique();
    r.right_size = best[1].size();
    r.right_unique = best[1].unique();

    if (r.left_unique && r.right_unique) {
        int largest[2] = {-1, -1};
        for (std::size_t c = 0; c < halves.comp_size.size(); ++c)
            if (halves.comp_size[c] == best[comp_half[c]].size()) largest[comp_half[c]] = static_cast<int>(c);
        const Labelling whole = label(g, mode, open, false);
        int left_whole = -1, right_whole = -1;
        for (int s = 0; s < g.site_count(); ++s) {
            if (halves.comp[s] == largest[0]) left_whole = whole.comp[s];
            if (halves.comp[s] == largest[1]) right_whole = whole.comp[s];
        }
        r.joined = left_whole >= 0 && left_whole == right_whole;
    }
    r.holds = event_holds(r.left_unique, r.right_unique, r.joined);
    return r;
}

Rational EventPolynomial::evaluate(const Rational& p) const
{
    Rational q = 1 - p, total = 0;
    for (int k = 0; k <= elements; ++k) {
        if (coefficients[k] == 0) continue;
        Rational term = Rational(coefficients[k]);
        for (int i = 0; i < k; ++i) term *= p;
        for (int i = k; i < elements; ++i) term *= q;
        total += term;
    }
    return total;
}

double EventPolynomial::evaluate(double p) const
{
    double total = 0.0;
    for (int k = 0; k <= elements; ++k)
        total += coefficients[k].convert_to<double>() * std::pow(p, k) * std::pow(1.0 - p, elements - k);
    return total;
}

EventPolynomial exact_event_polynomial(const LatticeRep& lat, const RectGeometry& geom, Mode mode, int budget)
{
    const RectGraph g = scan_graph(lat, geom);
    EventPolynomial poly;
    poly.lattice = lat.name;
    poly.geom = geom;
    poly.mode = mode;
    poly.elements = g.element_count(mode);
    if (poly.elements > budget)
        throw std::runtime_error("oracle budget exceeded: " + lat.name + " " + to_string(mode) + " at s=" +
                                 std::to_string(geom.scale) + " has " + std::to_string(poly.elements) +
                                 " random elements (limit " + std::to_string(budget) + ")");
    const int M = poly.elements;
    std::vector<std::uint64_t> counts(M + 1, 0);
    std::vector<std::uint8_t> open(M);
    const std::uint64_t total = std::uint64_t{1} << M;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < M; ++i) open[i] = (mask >> i) & 1u;
        if (flat_evaluate(g, mode, open).holds) ++counts[std::popcount(mask)];
    }
    for (auto c : counts) poly.coefficients.emplace_back(c);
    return poly;
}

std::string format_polynomial(const EventPolynomial& poly)
{
    std::ostringstream os;
    os << "lattice " << poly.lattice << "\nscale " << poly.geom.scale << "\norientation "
       << to_string(poly.geom.orientation) << "\nmode " << to_string(poly.mode) << "\nelements " << poly.elements
       << "\ncoefficients";
    for (const auto& c : poly.coefficients) os << " " << c.str();
    os << "\n";
    return os.str();
}

EventPolynomial parse_polynomial(const std::string& text)
{
    EventPolynomial poly;
    std::istringstream in(text);
    std::string key;
    while (in >> key) {
        if (key[0] == '#') {
            std::getline(in, key);
            continue;
        }
        if (key == "lattice") in >> poly.lattice;
        else if (key == "scale") in >> poly.geom.scale;
        else if (key == "orientation") {
            std::string o;
            in >> o;
            poly.geom.orientation = parse_orientation(o);
        } else if (key == "mode") {
            std::string m;
            in >> m;
            poly.mode = parse_mode(m);
        } else if (key == "elements") in >> poly.elements;
        else if (key == "coefficients") {
            for (int k = 0; k <= poly.elements; ++k) {
                std::string c;
                if (!(in >> c)) throw std::runtime_error("polynomial: too few coefficients");
                poly.coefficients.emplace_back(c);
            }
        } else {
            throw std::runtime_error("polynomial: unknown key '" + key + "'");
        }
    }
    if (static_cast<int>(poly.coefficients.size()) != poly.elements + 1)
        throw std::runtime_error("polynomial: coefficient count does not match element count");
    return poly;
}

double z_score(std::int64_t successes, std::int64_t n, double pi)
{
    const double f = static_cast<double>(successes) / static_cast<double>(n);
    const double var = pi * (1.0 - pi) / static_cast<double>(n);
    if (var <= 0.0) return f == pi ? 0.0 : std::numeric_limits<double>::infinity();
    return (f - pi) / std::sqrt(var);
}

OracleComparison compare_engine_to_oracle(const LatticeRep& lat, const EventPolynomial& poly, const Probability& p,
                                          std::int64_t n, std::uint32_t base_seed)
{
    OracleComparison c;
    c.estimate = estimate_event_probability(lat, poly.geom, poly.mode, p, n, base_seed);
    c.exact = poly.evaluate(p.value().exact()).convert_to<double>();
    c.z = z_score(c.estimate.successes, n, c.exact);
    return c;
}

}  // namespace pcert

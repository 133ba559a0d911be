#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "kv.hpp"
#include "pcert/cli.hpp"

namespace pcert {

namespace {

std::vector<Orientation> parse_orientations(const std::string& s)
{
    std::vector<Orientation> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) out.push_back(parse_orientation(cur));
    return out;
}

std::string join_orientations(const std::vector<Orientation>& os)
{
    std::string out;
    for (std::size_t i = 0; i < os.size(); ++i) out += (i ? "," : "") + to_string(os[i]);
    return out;
}

JobManifest manifest_from(const std::map<std::string, std::string>& kv)
{
    using detail::need;
    using detail::to_integer;
    const char* what = "manifest";
    JobManifest m;
    m.run_id = need(kv, "run_id", what);
    if (m.run_id.empty() || m.run_id.find_first_of(" \t/") != std::string::npos)
        throw ConfigError("manifest: run_id must be a non-empty word without '/'");
    m.lattice = need(kv, "lattice", what);
    m.target = kv.count("target") ? kv.at("target") : m.lattice;
    m.mode = parse_mode(need(kv, "mode", what));
    if (kv.count("side")) {
        const auto& s = kv.at("side");
        if (s == "upper") m.side = BoundSide::upper;
        else if (s == "lower") m.side = BoundSide::lower;
        else throw ConfigError("manifest: side must be upper or lower");
    }
    if (kv.count("attempt")) m.attempt = static_cast<int>(to_integer(kv.at("attempt"), "attempt"));
    if (m.attempt < 1 || m.attempt > max_attempts_per_side) throw ConfigError("manifest: attempt must be 1..3");
    if (kv.count("orientations")) m.orientations = parse_orientations(kv.at("orientations"));
    m.scale = static_cast<int>(to_integer(need(kv, "scale", what), "scale"));
    m.p = Decimal::parse(need(kv, "p", what));
    m.trials = static_cast<int>(to_integer(need(kv, "trials", what), "trials"));
    m.base_seed = static_cast<std::uint32_t>(to_integer(need(kv, "base_seed", what), "base_seed"));
    m.chunks = kv.count("chunks") ? static_cast<int>(to_integer(kv.at("chunks"), "chunks")) : 1;
    if (m.trials < 1) throw ConfigError("manifest: trials must be positive");
    if (m.chunks < 1 || m.chunks > m.trials) throw ConfigError("manifest: chunks must be in 1..trials");
    if (static_cast<std::uint64_t>(m.base_seed) + m.trials > (std::uint64_t{1} << 32))
        throw ConfigError("manifest: seed range overflows 32 bits");
    return m;
}

const std::set<std::string> manifest_keys = {"run_id", "target", "lattice", "mode", "side", "attempt", "orientations",
                                             "scale", "p", "trials", "base_seed", "chunks"};

}  // namespace

JobManifest parse_manifest(const std::string& text)
{
    auto kv = detail::parse_lines(text, "manifest");
    for (const auto& [k, v] : kv)
        if (!manifest_keys.count(k)) throw ConfigError("manifest: unknown key '" + k + "'");
    return manifest_from(kv);
}

std::string format_manifest(const JobManifest& m)
{
    std::ostringstream os;
    os << "run_id=" << m.run_id << "\n"
       << "target=" << m.target << "\n"
       << "lattice=" << m.lattice << "\n"
       << "mode=" << to_string(m.mode) << "\n"
       << "side=" << to_string(m.side) << "\n"
       << "attempt=" << m.attempt << "\n";
    if (!m.orientations.empty()) os << "orientations=" << join_orientations(m.orientations) << "\n";
    os << "scale=" << m.scale << "\n"
       << "p=" << m.p.str() << "\n"
       << "trials=" << m.trials << "\n"
       << "base_seed=" << m.base_seed << "\n"
       << "chunks=" << m.chunks << "\n";
    return os.str();
}

std::vector<JobChunk> split_manifest(const JobManifest& m)
{
    std::vector<int> sizes;
    for (int i = 0; i < m.chunks; ++i) sizes.push_back(m.trials / m.chunks + (i < m.trials % m.chunks ? 1 : 0));
    return split_manifest(m, sizes);
}

std::vector<JobChunk> split_manifest(const JobManifest& m, const std::vector<int>& sizes)
{
    long long total = 0;
    for (int s : sizes) {
        if (s < 1) throw ConfigError("split: chunk sizes must be positive");
        total += s;
    }
    if (total != m.trials) throw ConfigError("split: chunk sizes sum to " + std::to_string(total) + ", not " +
                                             std::to_string(m.trials));
    if (m.orientations.empty()) throw ConfigError("split: manifest lists no orientations");
    std::vector<JobChunk> out;
    for (Orientation o : m.orientations) {
        std::uint32_t seed = m.base_seed;
        for (int s : sizes) {
            out.push_back({static_cast<int>(out.size()), o, seed, seed + static_cast<std::uint32_t>(s)});
            seed += static_cast<std::uint32_t>(s);
        }
    }
    return out;
}

std::string format_chunk(const JobManifest& m, const JobChunk& c)
{
    std::ostringstream os;
    os << format_manifest(m) << "chunk=" << c.index << "\n"
       << "orientation=" << to_string(c.orientation) << "\n"
       << "seed_begin=" << c.seed_begin << "\n"
       << "seed_end=" << c.seed_end << "\n";
    return os.str();
}

std::pair<JobManifest, JobChunk> parse_chunk(const std::string& text)
{
    auto kv = detail::parse_lines(text, "chunk file");
    JobChunk c;
    c.index = static_cast<int>(detail::to_integer(detail::need(kv, "chunk", "chunk file"), "chunk"));
    c.orientation = parse_orientation(detail::need(kv, "orientation", "chunk file"));
    c.seed_begin = static_cast<std::uint32_t>(detail::to_integer(detail::need(kv, "seed_begin", "chunk file"), "seed_begin"));
    c.seed_end = static_cast<std::uint32_t>(detail::to_integer(detail::need(kv, "seed_end", "chunk file"), "seed_end"));
    for (const char* k : {"chunk", "orientation", "seed_begin", "seed_end"}) kv.erase(k);
    for (const auto& [k, v] : kv)
        if (!manifest_keys.count(k)) throw ConfigError("chunk file: unknown key '" + k + "'");
    JobManifest m = manifest_from(kv);
    if (c.seed_end <= c.seed_begin) throw ConfigError("chunk file: empty seed range");
    return {m, c};
}

JobResult run_chunk(const LatticeRep& lat, const JobManifest& m, const JobChunk& c, unsigned threads)
{
    if (lat.name != m.lattice) throw ConfigError("chunk is for lattice '" + m.lattice + "', got '" + lat.name + "'");
    EstimateOptions opts;
    opts.threads = threads;
    Estimate e = estimate_event_probability(lat, {m.scale, c.orientation}, m.mode, Probability(m.p),
                                            static_cast<std::int64_t>(c.seed_end - c.seed_begin), c.seed_begin, opts);
    return {m.run_id, c, e.successes};
}

std::string format_result(const JobResult& r)
{
    std::ostringstream os;
    os << "result run_id=" << r.run_id << " chunk=" << r.chunk.index
       << " orientation=" << to_string(r.chunk.orientation) << " seed_begin=" << r.chunk.seed_begin
       << " seed_end=" << r.chunk.seed_end << " successes=" << r.successes << "\n";
    return os.str();
}

JobResult parse_result(const std::string& text)
{
    std::string line = text.substr(0, text.find('\n'));
    if (line.rfind("result ", 0) != 0) throw ConfigError("result file must start with 'result'");
    auto kv = detail::parse_pairs(line.substr(7), "result");
    using detail::need;
    using detail::to_integer;
    JobResult r;
    r.run_id = need(kv, "run_id", "result");
    r.chunk.index = static_cast<int>(to_integer(need(kv, "chunk", "result"), "chunk"));
    r.chunk.orientation = parse_orientation(need(kv, "orientation", "result"));
    r.chunk.seed_begin = static_cast<std::uint32_t>(to_integer(need(kv, "seed_begin", "result"), "seed_begin"));
    r.chunk.seed_end = static_cast<std::uint32_t>(to_integer(need(kv, "seed_end", "result"), "seed_end"));
    r.successes = to_integer(need(kv, "successes", "result"), "successes");
    if (r.successes < 0 || r.successes > static_cast<std::int64_t>(r.chunk.seed_end) - r.chunk.seed_begin)
        throw ConfigError("result for chunk " + std::to_string(r.chunk.index) + ": success count out of range");
    return r;
}

RunRecord merge_results(const LatticeRep& lat, const JobManifest& m, const std::vector<JobResult>& results)
{
    if (lat.name != m.lattice) throw ConfigError("merge: manifest is for '" + m.lattice + "', got '" + lat.name + "'");
    const auto required = required_orientations(lat);
    if (m.orientations != required)
        throw ConfigError("merge: manifest orientations " + join_orientations(m.orientations) + " but '" + lat.name +
                          "' needs " + join_orientations(required));

    std::set<int> seen;
    std::map<Orientation, std::vector<const JobResult*>> by_orientation;
    for (const auto& r : results) {
        if (r.run_id != m.run_id)
            throw ConfigError("merge: result for run '" + r.run_id + "' does not belong to run '" + m.run_id + "'");
        if (!seen.insert(r.chunk.index).second)
            throw ConfigError("merge: duplicate result for chunk " + std::to_string(r.chunk.index));
        if (std::find(required.begin(), required.end(), r.chunk.orientation) == required.end())
            throw ConfigError("merge: chunk " + std::to_string(r.chunk.index) + " has unexpected orientation " +
                              to_string(r.chunk.orientation));
        by_orientation[r.chunk.orientation].push_back(&r);
    }

    RunRecord rec;
    rec.target = m.target;
    rec.lattice = m.lattice;
    rec.mode = m.mode;
    rec.side = m.side;
    rec.attempt = m.attempt;
    rec.scale = m.scale;
    rec.p = m.p;
    rec.trials = m.trials;
    rec.base_seed = m.base_seed;
    rec.threshold = run_threshold(lat, m.trials);
    rec.pass = true;
    rec.error_bound = 0;
    const Rational tail = binomial_tail({m.trials, percolation_p0(), rec.threshold});
    const std::uint64_t end = static_cast<std::uint64_t>(m.base_seed) + m.trials;
    for (Orientation o : required) {
        auto chunks = by_orientation[o];
        std::sort(chunks.begin(), chunks.end(),
                  [](const JobResult* a, const JobResult* b) { return a->chunk.seed_begin < b->chunk.seed_begin; });
        std::uint64_t next = m.base_seed;
        std::int64_t successes = 0;
        for (const JobResult* r : chunks) {
            if (r->chunk.seed_begin > next)
                throw ConfigError("merge: missing seeds [" + std::to_string(next) + ", " +
                                  std::to_string(r->chunk.seed_begin) + ") for orientation " + to_string(o));
            if (r->chunk.seed_begin < next)
                throw ConfigError("merge: chunk " + std::to_string(r->chunk.index) + " overlaps seeds below " +
                                  std::to_string(next) + " for orientation " + to_string(o));
            next = r->chunk.seed_end;
            successes += r->successes;
        }
        if (next > end)
            throw ConfigError("merge: seeds beyond " + std::to_string(end) + " for orientation " + to_string(o));
        if (next < end)
            throw ConfigError("merge: missing seeds [" + std::to_string(next) + ", " + std::to_string(end) +
                              ") for orientation " + to_string(o));
        rec.counts.push_back({o, successes});
        rec.pass = rec.pass && successes >= rec.threshold;
        rec.error_bound += tail;
    }
    return rec;
}

}  // namespace pcert

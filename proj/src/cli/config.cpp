#include <cstdlib>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "kv.hpp"
#include "pcert/cli.hpp"

namespace pcert {

namespace pt = boost::property_tree;

namespace {

pt::ptree read_ini(const std::string& text, const char* what)
{
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string(what) + ": line " + std::to_string(e.line()) + ": " + e.message());
    }
    return tree;
}

// Rejects unknown sections and keys so typos do not silently fall back to
// defaults.
void check_keys(const pt::ptree& tree, const std::map<std::string, std::set<std::string>>& allowed, const char* what)
{
    for (const auto& [section, body] : tree) {
        auto it = allowed.find(section);
        if (it == allowed.end()) throw ConfigError(std::string(what) + ": unknown section [" + section + "]");
        for (const auto& [key, value] : body)
            if (!it->second.count(key))
                throw ConfigError(std::string(what) + ": unknown key '" + key + "' in [" + section + "]");
    }
}

std::string get(const pt::ptree& tree, const std::string& path, const char* what)
{
    auto v = tree.get_optional<std::string>(path);
    if (!v || v->empty()) throw ConfigError(std::string(what) + ": missing " + path);
    return *v;
}

long long get_int(const pt::ptree& tree, const std::string& path, long long fallback)
{
    auto v = tree.get_optional<std::string>(path);
    return v ? detail::to_integer(*v, path) : fallback;
}

Mode get_mode(const pt::ptree& tree, const char* what)
{
    try {
        return parse_mode(get(tree, "target.mode", what));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

std::string default_dual(const std::string& lattice, Mode mode)
{
    const CatalogEntry* e = find_catalog_entry(lattice);
    if (!e) return "";
    return mode == Mode::bond ? e->bond_dual : e->site_dual;
}

std::vector<Attempt> read_attempts(const pt::ptree& tree, const std::string& section, const char* what)
{
    std::vector<Attempt> out;
    auto body = tree.get_child_optional(section);
    if (!body) return out;
    for (int k = 1; k <= max_attempts_per_side + 1; ++k) {
        auto v = body->get_optional<std::string>("attempt" + std::to_string(k));
        if (!v) break;
        if (k > max_attempts_per_side)
            throw ConfigError(std::string(what) + ": at most 3 attempts per side ([" + section + "])");
        std::istringstream in(*v);
        std::string scale, p, extra;
        if (!(in >> scale >> p) || (in >> extra))
            throw ConfigError(std::string(what) + ": [" + section + "] attempt" + std::to_string(k) +
                              " must be '<scale> <p>'");
        Attempt a;
        a.scale = static_cast<int>(detail::to_integer(scale, "scale"));
        try {
            a.p = Decimal::parse(p);
            (void)Probability(a.p);
        } catch (const std::exception& e) {
            throw ConfigError(std::string(what) + ": [" + section + "] attempt" + std::to_string(k) + ": " + e.what());
        }
        if (a.scale < 1) throw ConfigError(std::string(what) + ": scale must be positive");
        out.push_back(a);
    }
    if (body->size() != out.size())
        throw ConfigError(std::string(what) + ": [" + section + "] keys must be attempt1, attempt2, attempt3 in order");
    return out;
}

}  // namespace

CertifyConfig parse_certify_config(const std::string& text)
{
    const char* what = "certify config";
    pt::ptree tree = read_ini(text, what);
    check_keys(tree,
               {{"target", {"lattice", "mode", "dual"}},
                {"run", {"trials", "seed", "threads"}},
                {"upper", {"attempt1", "attempt2", "attempt3", "attempt4"}},
                {"lower", {"attempt1", "attempt2", "attempt3", "attempt4"}}},
               what);
    CertifyConfig c;
    c.lattice = get(tree, "target.lattice", what);
    c.mode = get_mode(tree, what);
    c.dual = tree.get<std::string>("target.dual", default_dual(c.lattice, c.mode));
    if (c.dual.empty())
        throw ConfigError(std::string(what) + ": no " + to_string(c.mode) + " dual known for '" + c.lattice +
                          "'; name one with target.dual");
    c.trials = static_cast<int>(get_int(tree, "run.trials", default_trials));
    if (c.trials < 1) throw ConfigError(std::string(what) + ": trials must be positive");
    c.seeds.base = static_cast<std::uint32_t>(get_int(tree, "run.seed", default_base_seed));
    c.seeds.stride = static_cast<std::uint32_t>(c.trials);
    c.threads = static_cast<unsigned>(get_int(tree, "run.threads", 0));
    c.plan.upper = read_attempts(tree, "upper", what);
    c.plan.lower = read_attempts(tree, "lower", what);
    if (c.plan.upper.empty() && c.plan.lower.empty()) throw ConfigError(std::string(what) + ": plan has no attempts");
    return c;
}

std::string format_certify_config(const CertifyConfig& c)
{
    std::ostringstream os;
    os << "[target]\nlattice = " << c.lattice << "\nmode = " << to_string(c.mode) << "\ndual = " << c.dual << "\n\n";
    os << "[run]\ntrials = " << c.trials << "\nseed = " << c.seeds.base << "\nthreads = " << c.threads << "\n";
    auto section = [&](const char* name, const std::vector<Attempt>& attempts) {
        if (attempts.empty()) return;
        os << "\n[" << name << "]\n";
        for (std::size_t k = 0; k < attempts.size(); ++k)
            os << "attempt" << k + 1 << " = " << attempts[k].scale << " " << attempts[k].p.str() << "\n";
    };
    section("upper", c.plan.upper);
    section("lower", c.plan.lower);
    return os.str();
}

TuneConfig parse_tune_config(const std::string& text)
{
    const char* what = "tune config";
    pt::ptree tree = read_ini(text, what);
    check_keys(tree,
               {{"target", {"lattice", "mode", "dual"}},
                {"pilot", {"scales", "n", "bisect_n", "refine_n", "points"}},
                {"budget", {"max_scale", "width", "attempts"}},
                {"run", {"trials", "seed", "threads"}}},
               what);
    TuneConfig c;
    c.lattice = get(tree, "target.lattice", what);
    c.mode = get_mode(tree, what);
    c.dual = tree.get<std::string>("target.dual", default_dual(c.lattice, c.mode));
    if (c.dual.empty())
        throw ConfigError(std::string(what) + ": no " + to_string(c.mode) + " dual known for '" + c.lattice + "'");
    if (auto scales = tree.get_optional<std::string>("pilot.scales")) {
        std::istringstream in(*scales);
        std::string tok;
        while (in >> tok) c.pilot_scales.push_back(static_cast<int>(detail::to_integer(tok, "pilot.scales")));
        if (c.pilot_scales.empty() || c.pilot_scales.size() > 2)
            throw ConfigError(std::string(what) + ": pilot.scales takes one or two scales");
    }
    c.pilot_n = get_int(tree, "pilot.n", c.pilot_n);
    c.bisect_n = get_int(tree, "pilot.bisect_n", c.bisect_n);
    c.refine_n = get_int(tree, "pilot.refine_n", c.refine_n);
    c.pilot_points = static_cast<int>(get_int(tree, "pilot.points", c.pilot_points));
    c.max_scale = static_cast<int>(get_int(tree, "budget.max_scale", c.max_scale));
    if (auto w = tree.get_optional<std::string>("budget.width")) {
        try {
            c.width = Decimal::parse(*w).to_double();
        } catch (const std::exception& e) {
            throw ConfigError(std::string(what) + ": budget.width: " + e.what());
        }
    }
    c.attempts = static_cast<int>(get_int(tree, "budget.attempts", c.attempts));
    c.trials = static_cast<int>(get_int(tree, "run.trials", c.trials));
    c.seed = static_cast<std::uint32_t>(get_int(tree, "run.seed", c.seed));
    c.threads = static_cast<unsigned>(get_int(tree, "run.threads", 0));
    if (c.attempts < 1 || c.attempts > max_attempts_per_side)
        throw ConfigError(std::string(what) + ": budget.attempts must be 1..3");
    if (c.pilot_n < 1 || c.bisect_n < 1 || c.refine_n < 1 || c.pilot_points < 2 || c.max_scale < 1 || c.trials < 1)
        throw ConfigError(std::string(what) + ": counts and scales must be positive (points >= 2)");
    for (int s : c.pilot_scales)
        if (s < 1 || s > c.max_scale) throw ConfigError(std::string(what) + ": pilot scales must be in 1..max_scale");
    return c;
}

std::filesystem::path resolve_output(const std::filesystem::path& p)
{
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv("PCERT_OUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
    return p;
}

}  // namespace pcert

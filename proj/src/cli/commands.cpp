#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "pcert/cli.hpp"
#include "pcert/oracle.hpp"

namespace pcert {

namespace {

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text, bool append = false)
{
    const auto path = resolve_output(p);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

// Writes to --out when given, else to stdout.
void emit(const std::string& out_path, const std::string& text, bool append = false)
{
    if (out_path.empty()) std::cout << text;
    else write_file(out_path, text, append);
}

struct Common {
    std::string lattice_dir;
    std::filesystem::path dir() const
    {
        return lattice_dir.empty() ? pcert::lattice_dir() : std::filesystem::path(lattice_dir);
    }
};

int cmd_lattices(const Common& common)
{
    const auto dir = common.dir();
    for (const auto& name : shipped_lattice_names(dir)) {
        std::cout << std::left << std::setw(28) << name;
        try {
            LatticeRep lat = load_named_lattice(name, dir);
            std::cout << "valid  period=" << lat.period << " degree-classes=";
            auto deg = lat.degrees();
            std::set<int> distinct(deg.begin(), deg.end());
            for (auto it = distinct.begin(); it != distinct.end(); ++it) std::cout << (it == distinct.begin() ? "" : ",") << *it;
            std::cout << (lat.symmetric ? " symmetric" : " asymmetric") << "\n";
        } catch (const std::exception& e) {
            std::cout << "INVALID  " << e.what() << "\n";
        }
    }
    for (const auto& e : archimedean_catalog()) {
        for (Mode mode : {Mode::bond, Mode::site}) {
            const std::string& dual = mode == Mode::bond ? e.bond_dual : e.site_dual;
            if (dual.empty() || dual == e.name) continue;
            try {
                check_dual(load_named_lattice(e.name, dir), load_named_lattice(dual, dir), mode);
                std::cout << "dual " << dual << " is the " << to_string(mode) << " dual of " << e.name << "\n";
            } catch (const std::exception& ex) {
                std::cout << "dual " << dual << " FAILED: " << ex.what() << "\n";
            }
        }
    }
    return exit_ok;
}

int cmd_certify(const std::string& config_path, std::optional<std::uint32_t> seed, std::optional<int> attempts,
                const std::string& out, const Common& common)
{
    CertifyConfig cfg = parse_certify_config(read_file(config_path));
    if (seed) cfg.seeds.base = *seed;
    if (attempts) {
        if (*attempts < 1 || *attempts > max_attempts_per_side) throw ConfigError("--attempts must be 1..3");
        if (cfg.plan.upper.size() > static_cast<std::size_t>(*attempts)) cfg.plan.upper.resize(*attempts);
        if (cfg.plan.lower.size() > static_cast<std::size_t>(*attempts)) cfg.plan.lower.resize(*attempts);
    }
    const auto dir = common.dir();
    const LatticeRep primal = load_named_lattice(cfg.lattice, dir);
    const LatticeRep dual = load_named_lattice(cfg.dual, dir);
    for (const auto& a : cfg.plan.upper) check_geometry(primal, {a.scale, Orientation::horizontal});
    for (const auto& a : cfg.plan.lower) check_geometry(dual, {a.scale, Orientation::horizontal});

    CertifyOptions opts;
    opts.trials = cfg.trials;
    opts.threads = cfg.threads;
    opts.on_record = [&](const RunRecord& r) {
        const std::string line = format_record(r) + "\n";
        std::cout << line << std::flush;
        if (!out.empty()) write_file(out, line, true);
    };
    ConfidenceInterval ci = certify_interval(primal, dual, cfg.mode, cfg.plan, cfg.seeds, opts);
    std::cout << "interval target=" << ci.lattice << " mode=" << to_string(ci.mode) << " lower=" << ci.lower.str()
              << " upper=" << ci.upper.str() << " width=" << ci.width().str()
              << " error=" << to_scientific(ci.total_error, 4) << "\n";

    const bool upper_trivial = !cfg.plan.upper.empty() && !ci.upper_provenance;
    const bool lower_trivial = !cfg.plan.lower.empty() && !ci.lower_provenance;
    if (upper_trivial || lower_trivial) {
        std::cerr << "no attempt passed on the " << (upper_trivial ? "upper" : "lower") << " side; that bound is trivial\n";
        return exit_bound_trivial;
    }
    return exit_ok;
}

}  // namespace

int run_cli(int argc, char** argv)
{
    CLI::App app{"Certified confidence intervals for percolation thresholds"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--lattice-dir", common.lattice_dir, "Directory of .lat files (default: shipped data)");

    std::string lattice, mode_text = "bond", out, format = "text";
    int scale = 0;
    std::int64_t n = 1000;
    std::vector<std::string> ps;
    std::optional<std::uint32_t> seed;
    std::optional<int> attempts;
    std::vector<int> cells = {3, 3};
    std::string config, manifest_path, chunk_path;
    std::vector<std::string> inputs;
    unsigned threads = 0;

    auto* lattices = app.add_subcommand("lattices", "List shipped lattices and their validation status");

    auto* print = app.add_subcommand("print-lattice", "Render the uncompacted drawing of a lattice");
    print->add_option("name", lattice)->required();
    print->add_option("--format", format)->check(CLI::IsMember({"text", "svg"}));
    print->add_option("--cells", cells, "Unit cells across and up")->expected(2);
    print->add_option("--out", out);

    auto* pilot_cmd = app.add_subcommand("pilot", "Estimate the event probability (pilot seeds)");
    pilot_cmd->add_option("--lattice", lattice)->required();
    pilot_cmd->add_option("--mode", mode_text)->check(CLI::IsMember({"site", "bond"}));
    pilot_cmd->add_option("--scale", scale)->required();
    pilot_cmd->add_option("--p", ps, "One or more values")->required()->delimiter(',');
    pilot_cmd->add_option("--n", n);
    pilot_cmd->add_option("--seed", seed, "First seed (default 1000000000)");
    pilot_cmd->add_option("--threads", threads);
    pilot_cmd->add_option("--out", out);

    auto* tune = app.add_subcommand("tune", "Pilot runs and a certification plan");
    tune->add_option("config", config)->required();
    tune->add_option("--seed", seed, "Base seed of the planned certification runs");
    tune->add_option("--attempts", attempts);
    tune->add_option("--out", out, "Write the plan as a certify config");

    auto* certify = app.add_subcommand("certify", "Run a certification plan");
    certify->add_option("config", config)->required();
    certify->add_option("--seed", seed, "Base seed (default 12345678)");
    certify->add_option("--attempts", attempts, "Use at most this many attempts per side");
    certify->add_option("--out", out, "Append run records to this file");

    auto* oracle = app.add_subcommand("oracle", "Exact event polynomial by enumeration");
    oracle->add_option("--lattice", lattice)->required();
    oracle->add_option("--mode", mode_text)->check(CLI::IsMember({"site", "bond"}));
    oracle->add_option("--scale", scale, "Default: the lattice period");
    oracle->add_option("--p", ps, "Compare the engine against the polynomial at these p")->delimiter(',');
    oracle->add_option("--n", n);
    oracle->add_option("--seed", seed);
    oracle->add_option("--out", out);

    auto* report = app.add_subcommand("report", "Table of intervals and conjecture checks");
    report->add_option("inputs", inputs, "Record / interval files")->required();
    report->add_option("--out", out);

    auto* jobs = app.add_subcommand("jobs", "File-based batch runs");
    jobs->require_subcommand(1);
    auto* split = jobs->add_subcommand("split", "Write chunk files for a manifest");
    split->add_option("manifest", manifest_path)->required();
    split->add_option("--out", out, "Directory for chunk files");
    auto* run = jobs->add_subcommand("run", "Run one chunk file");
    run->add_option("chunk", chunk_path)->required();
    run->add_option("--threads", threads);
    run->add_option("--out", out, "Directory for the result file");
    auto* merge = jobs->add_subcommand("merge", "Merge chunk results into one run record");
    merge->add_option("manifest", manifest_path)->required();
    merge->add_option("results", inputs)->required();
    merge->add_option("--out", out, "Append the record to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        const Mode mode = parse_mode(mode_text);
        if (*lattices) return cmd_lattices(common);

        if (*print) {
            LatticeRep lat = load_named_lattice(lattice, common.dir());
            emit(out, format == "svg" ? render_svg(lat, cells[0], cells[1]) : render_text(lat, cells[0], cells[1]));
            return exit_ok;
        }

        if (*pilot_cmd) {
            LatticeRep lat = load_named_lattice(lattice, common.dir());
            check_geometry(lat, {scale, Orientation::horizontal});
            const std::uint32_t base = seed.value_or(pilot_seed_base);
            if (base < pilot_seed_base) throw ConfigError("pilot seeds must be >= 1000000000");
            std::vector<Decimal> values;
            for (const auto& p : ps) values.push_back(Decimal::parse(p));
            std::ostringstream os;
            for (const auto& s : pilot(lat, mode, scale, values, n, base, threads))
                os << "pilot lattice=" << lat.name << " mode=" << to_string(mode) << " scale=" << s.scale
                   << " p=" << s.p << " n=" << s.n << " m=" << s.m << "\n";
            emit(out, os.str());
            return exit_ok;
        }

        if (*tune) {
            TuneConfig cfg = parse_tune_config(read_file(config));
            if (seed) cfg.seed = *seed;
            if (attempts) {
                if (*attempts < 1 || *attempts > max_attempts_per_side) throw ConfigError("--attempts must be 1..3");
                cfg.attempts = *attempts;
            }
            TuneResult t = run_tuning(cfg, common.dir(), &std::cerr);
            std::string report_text = format_tuning(t);
            std::cout << report_text;
            if (!out.empty()) {
                std::string commented;
                std::istringstream in(report_text);
                for (std::string line; std::getline(in, line);) commented += "# " + line + "\n";
                write_file(out, commented + "\n" + format_certify_config(t.certify));
            }
            return exit_ok;
        }

        if (*certify) return cmd_certify(config, seed, attempts, out, common);

        if (*oracle) {
            LatticeRep lat = load_named_lattice(lattice, common.dir());
            const RectGeometry geom{scale ? scale : lat.period, Orientation::horizontal};
            check_geometry(lat, geom);
            EventPolynomial poly = exact_event_polynomial(lat, geom, mode);
            std::ostringstream os;
            os << format_polynomial(poly);
            for (const auto& p : ps) {
                auto cmp = compare_engine_to_oracle(lat, poly, Probability::parse(p), n, seed.value_or(default_base_seed));
                os << "compare p=" << p << " n=" << n << " m=" << cmp.estimate.successes << " exact=" << cmp.exact
                   << " z=" << cmp.z << "\n";
            }
            emit(out, os.str());
            return exit_ok;
        }

        if (*report) {
            std::string text;
            for (const auto& f : inputs) text += read_file(f) + "\n";
            emit(out, render_report(read_report_input(text)));
            return exit_ok;
        }

        if (*split) {
            JobManifest m = parse_manifest(read_file(manifest_path));
            if (m.orientations.empty())
                m.orientations = required_orientations(load_named_lattice(m.lattice, common.dir()));
            const std::filesystem::path dir = out.empty() ? std::filesystem::path(".") : std::filesystem::path(out);
            for (const auto& c : split_manifest(m)) {
                const auto name = dir / (m.run_id + ".chunk-" + std::to_string(c.index) + ".txt");
                write_file(name, format_chunk(m, c));
                std::cout << resolve_output(name).string() << "\n";
            }
            return exit_ok;
        }

        if (*run) {
            auto [m, c] = parse_chunk(read_file(chunk_path));
            LatticeRep lat = load_named_lattice(m.lattice, common.dir());
            JobResult r = run_chunk(lat, m, c, threads);
            const std::string text = format_result(r);
            if (out.empty()) {
                std::cout << text;
            } else {
                const auto name = std::filesystem::path(out) / (m.run_id + ".result-" + std::to_string(c.index) + ".txt");
                write_file(name, text);
                std::cout << resolve_output(name).string() << "\n";
            }
            return exit_ok;
        }

        if (*merge) {
            JobManifest m = parse_manifest(read_file(manifest_path));
            LatticeRep lat = load_named_lattice(m.lattice, common.dir());
            if (m.orientations.empty()) m.orientations = required_orientations(lat);
            std::vector<JobResult> results;
            for (const auto& f : inputs) results.push_back(parse_result(read_file(f)));
            const std::string line = format_record(merge_results(lat, m, results)) + "\n";
            std::cout << line;
            if (!out.empty()) write_file(out, line, true);
            return exit_ok;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    return exit_ok;
}

}  // namespace pcert

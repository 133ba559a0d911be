#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcert/lattice.hpp"
#include "pcert/stats.hpp"
#include "pcert/tuner.hpp"

namespace pcert {

// Exit codes of the command-line tool.
constexpr int exit_ok = 0;
constexpr int exit_bound_trivial = 2;   // a side ran all its attempts and none passed
constexpr int exit_invalid = 3;         // bad config, bad input files, budget violations

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Known values

struct KnownValue {
    std::string lattice;
    Mode mode;
    std::string expression;   // closed form, e.g. "1 - 2 sin(pi/18)"
    double value;
};

// Exact critical values; the others in the table are only bracketed.
const std::vector<KnownValue>& known_values();
const KnownValue* find_known_value(std::string_view lattice, Mode mode);

double two_sin_pi_18();
// Root in (0,1) of p^6 - 6p^5 + 12p^4 - 6p^3 - 3p^2 + 1, by bisection.
double wu_polynomial(double p);
double wu_root();

struct Conjecture {
    std::string author;
    std::string lattice;
    Mode mode;
    double value;
};
const std::vector<Conjecture>& conjectures();

// ---------------------------------------------------------------------------
// Report

// "interval target=kagome mode=bond lower=0.52415 upper=0.52465": a bound
// taken as given (e.g. a published one) rather than from run records.
struct IntervalLine {
    std::string target;
    Mode mode = Mode::bond;
    Decimal lower;
    Decimal upper;
};
IntervalLine parse_interval_line(std::string_view line);
std::string format_interval_line(const IntervalLine& iv);

struct ReportInput {
    std::vector<RunRecord> records;
    std::vector<IntervalLine> intervals;
};
// Reads both "record ..." and "interval ..." lines; blank and # lines skipped.
ReportInput read_report_input(const std::string& text);

// Interval for (target, mode) from the input: run records take precedence
// over given interval lines. nullopt if neither is present.
std::optional<IntervalLine> interval_for(const ReportInput& in, std::string_view target, Mode mode);

enum class ConjectureStatus { excluded, not_excluded, no_interval };
ConjectureStatus check_conjecture(const Conjecture& c, const ReportInput& in);

// "5×10⁻⁴"-style rendering of an interval width.
std::string format_width(const Decimal& w);

std::string render_report(const ReportInput& in);

// ---------------------------------------------------------------------------
// Batch jobs: manifest -> chunk files -> result files -> one run record

struct JobChunk {
    int index = 0;
    Orientation orientation = Orientation::horizontal;
    std::uint32_t seed_begin = 0;
    std::uint32_t seed_end = 0;   // exclusive
};

struct JobManifest {
    std::string run_id;
    std::string target;   // defaults to the lattice
    std::string lattice;
    Mode mode = Mode::bond;
    BoundSide side = BoundSide::upper;
    int attempt = 1;
    std::vector<Orientation> orientations;
    int scale = 0;
    Decimal p;
    int trials = default_trials;
    std::uint32_t base_seed = default_base_seed;
    int chunks = 1;   // per orientation
};

struct JobResult {
    std::string run_id;
    JobChunk chunk;
    std::int64_t successes = 0;
};

JobManifest parse_manifest(const std::string& text);
std::string format_manifest(const JobManifest& m);

// Equal split of each orientation's seed range into m.chunks pieces, or
// the given piece sizes (which must sum to the trial count).
std::vector<JobChunk> split_manifest(const JobManifest& m);
std::vector<JobChunk> split_manifest(const JobManifest& m, const std::vector<int>& sizes);

std::string format_chunk(const JobManifest& m, const JobChunk& c);
std::pair<JobManifest, JobChunk> parse_chunk(const std::string& text);

JobResult run_chunk(const LatticeRep& lat, const JobManifest& m, const JobChunk& c, unsigned threads = 0);
std::string format_result(const JobResult& r);
JobResult parse_result(const std::string& text);

// Throws ConfigError naming any gap, overlap, duplicate chunk or foreign
// result. The record is identical to a single-process certify_upper run.
RunRecord merge_results(const LatticeRep& lat, const JobManifest& m, const std::vector<JobResult>& results);

// ---------------------------------------------------------------------------
// Config files (INI)

struct CertifyConfig {
    std::string lattice;
    std::string dual;   // defaults to the catalogue entry
    Mode mode = Mode::bond;
    CertificationPlan plan;
    int trials = default_trials;
    SeedPolicy seeds;
    unsigned threads = 0;
};

// [target] lattice, mode, dual (optional)
// [run] trials, seed, threads (all optional)
// [upper] / [lower] attempt1..attempt3 = "<scale> <p>"
CertifyConfig parse_certify_config(const std::string& text);
std::string format_certify_config(const CertifyConfig& c);

struct TuneConfig {
    std::string lattice;
    std::string dual;
    Mode mode = Mode::bond;
    std::vector<int> pilot_scales;     // one or two
    std::int64_t pilot_n = 400;        // replicates per pilot point
    std::int64_t bisect_n = 200;       // replicates per bisection step
    std::int64_t refine_n = 2000;      // replicates at the 1/3 and 2/3 points
    int pilot_points = 5;
    int max_scale = 512;
    double width = 0.02;
    int attempts = 3;
    int trials = default_trials;
    std::uint32_t seed = default_base_seed;
    unsigned threads = 0;
};

// [target] lattice, mode, dual; [pilot] scales, n, bisect_n, refine_n,
// points; [budget] max_scale, width, attempts; [run] trials, seed, threads.
TuneConfig parse_tune_config(const std::string& text);

struct SideTuning {
    std::string lattice;
    std::vector<PilotSample> samples;
    LogisticModel model;
    SidePlan plan;
};

struct TuneResult {
    SideTuning upper;
    SideTuning lower;
    CertifyConfig certify;
};

TuneResult run_tuning(const TuneConfig& cfg, const std::filesystem::path& dir,
                      std::ostream* progress = nullptr);
std::string format_tuning(const TuneResult& t);

// ---------------------------------------------------------------------------

// Relative output paths resolve against $PCERT_OUT_DIR when it is set.
std::filesystem::path resolve_output(const std::filesystem::path& p);

int run_cli(int argc, char** argv);

}  // namespace pcert

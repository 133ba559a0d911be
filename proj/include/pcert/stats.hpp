#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcert/decimal.hpp"
#include "pcert/engine.hpp"
#include "pcert/lattice.hpp"

namespace pcert {

// ---------------------------------------------------------------------------
// Exact binomial tails

struct TailQuery {
    int trials = 0;
    Rational p0;
    int threshold = 0;
};

// Pr(Bi(trials, p0) >= threshold), exactly.
Rational binomial_tail(const TailQuery& q);

// Smallest m with binomial_tail(trials, p0, m) <= eps. Throws if even
// m = trials is not enough.
int min_threshold(int trials, const Rational& p0, const Rational& eps);

// Success probability of the 1-independent bond model above which it is
// known to percolate: 8639/10000.
Rational percolation_p0();
// Error budget of one certification run (10^-6 / 6) and of one interval.
Rational run_error_budget();
Rational interval_error_budget();

constexpr int default_trials = 400;
constexpr std::uint32_t default_base_seed = 12345678;
constexpr int max_attempts_per_side = 3;

// ---------------------------------------------------------------------------
// Runs and intervals

enum class BoundSide { upper, lower };
std::string to_string(BoundSide s);

struct OrientationCount {
    Orientation orientation = Orientation::horizontal;
    std::int64_t successes = 0;
};

// One certification attempt: "pc(lattice, mode) <= p" is asserted when the
// verdict is pass. Lower bounds are attempts on the dual lattice, recorded
// with side = lower and target = the primal lattice.
struct RunRecord {
    std::string target;
    std::string lattice;
    Mode mode = Mode::bond;
    BoundSide side = BoundSide::upper;
    int attempt = 1;
    int scale = 0;
    Decimal p;
    int trials = default_trials;
    std::uint32_t base_seed = default_base_seed;
    int threshold = 0;
    std::vector<OrientationCount> counts;
    bool pass = false;
    Rational error_bound;

    // The bound on the target's critical value this record supports, if it
    // passed: p for upper runs, 1 - p for lower runs.
    std::optional<Decimal> bound() const;
};

std::string format_record(const RunRecord& r);
RunRecord parse_record(std::string_view line);
std::vector<RunRecord> read_records(const std::string& text);

// Orientations a lattice must be certified in, and the per-orientation
// error allowance that keeps one attempt within run_error_budget().
std::vector<Orientation> required_orientations(const LatticeRep& lat);
int run_threshold(const LatticeRep& lat, int trials);

RunRecord certify_upper(const LatticeRep& lat, Mode mode, int scale, const Decimal& p, std::uint32_t base_seed,
                        int trials = default_trials, int attempt = 1, unsigned threads = 0);

struct Attempt {
    int scale = 0;
    Decimal p;
};

// Upper attempts are (s, p) on the primal lattice; lower attempts are
// (s, q) on the dual lattice and certify the lower bound 1 - q.
struct CertificationPlan {
    std::vector<Attempt> upper;
    std::vector<Attempt> lower;
};

// Attempt k (1-based) on either side uses base + (k - 1) * stride.
struct SeedPolicy {
    std::uint32_t base = default_base_seed;
    std::uint32_t stride = default_trials;
    std::uint32_t seed_for(int attempt) const { return base + static_cast<std::uint32_t>(attempt - 1) * stride; }
};

struct ConfidenceInterval {
    std::string lattice;
    Mode mode = Mode::bond;
    Decimal lower{0, 0};
    Decimal upper{1, 0};
    std::optional<RunRecord> lower_provenance;
    std::optional<RunRecord> upper_provenance;
    std::vector<RunRecord> records;   // every attempt executed, both sides
    Rational total_error;

    Decimal width() const { return upper - lower; }
};

// Throws LatticeError if `dual` is not the bond dual (bond mode) or the
// site dual (site mode) of `primal`.
void check_dual(const LatticeRep& primal, const LatticeRep& dual, Mode mode);

struct CertifyOptions {
    int trials = default_trials;
    unsigned threads = 0;
    std::function<void(const RunRecord&)> on_record;   // after each attempt
};

ConfidenceInterval certify_interval(const LatticeRep& primal, const LatticeRep& dual, Mode mode,
                                    const CertificationPlan& plan, const SeedPolicy& seeds = {},
                                    const CertifyOptions& options = {});

// Interval assembled from records (e.g. read back from a record file):
// best passing bound on each side, errors of all listed attempts summed.
ConfidenceInterval assemble_interval(const std::string& target, Mode mode, const std::vector<RunRecord>& records);

}  // namespace pcert

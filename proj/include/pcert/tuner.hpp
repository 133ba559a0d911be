#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcert/decimal.hpp"
#include "pcert/lattice.hpp"

namespace pcert {

// Heuristic model of the event probability near criticality:
//   f(s, p) = 1 / (1 + exp(a - b s^(3/4) (p - pc)))
// Nothing here affects the soundness of a certified bound.
struct LogisticModel {
    double a = 0.0;
    double b = 1.0;
    double pc = 0.5;

    double predict(int s, double p) const;
    // p at which the model predicts `f` at scale s.
    double invert(int s, double f) const;
};

double scale_factor(int s);   // s^(3/4)
double logit(double f);

struct PilotSample {
    int scale = 0;
    double p = 0.0;
    std::int64_t n = 0;
    std::int64_t m = 0;
    double fraction() const { return n ? static_cast<double>(m) / static_cast<double>(n) : 0.0; }
};

// Pilot seeds start here, far above any certification seed.
constexpr std::uint32_t pilot_seed_base = 1'000'000'000u;

std::vector<PilotSample> pilot(const LatticeRep& lat, Mode mode, int scale, const std::vector<Decimal>& ps,
                               std::int64_t n, std::uint32_t seed_base = pilot_seed_base, unsigned threads = 0);

// Logit-linear least squares on fractions clipped to [1/(2n), 1 - 1/(2n)].
// Two scales: lines intersect at (pc, a). One scale: pc must be supplied.
LogisticModel fit_model(const std::vector<PilotSample>& samples, std::optional<double> pc = std::nullopt);

struct Thirds {
    double p_third;       // model predicts 1/3
    double p_two_thirds;  // model predicts 2/3
};
Thirds thirds_points(const LogisticModel& model, int s0);

// Refit a and b from two samples at one scale with pc held fixed.
LogisticModel refit_two_points(const PilotSample& lo, const PilotSample& hi, double pc);

// Larger pilots at the model's 1/3 and 2/3 points, then refit with pc fixed.
LogisticModel thirds_refine(const LatticeRep& lat, Mode mode, const LogisticModel& model, int s0,
                            std::int64_t n_large, std::uint32_t seed_base = pilot_seed_base + 50'000'000u,
                            unsigned threads = 0);

struct PlannedAttempt {
    int scale = 0;
    Decimal p;
    double predicted_f = 0.0;      // model value at (scale, p)
    double pass_probability = 0.0; // Pr(Bi(N, predicted_f) >= threshold)
};

struct SidePlan {
    std::vector<PlannedAttempt> attempts;
    double implied_width = 0.0;     // 2 (p - pc) for the first attempt
    bool width_met = true;
    double pass_within_attempts = 0.0;
};

constexpr double default_formula_target = 0.945;

// Largest multiple of `period` not above the budget, and the smallest p the
// model gives the formula value `target` at that scale, rounded up to
// `places` decimals. Later attempts aim higher to recover from a failure.
SidePlan choose_parameters(const LogisticModel& model, int s_budget, int period, double width_target,
                           int trials, int threshold, int attempts = 3, int places = 4,
                           const std::vector<double>& targets = {0.945, 0.97, 0.985});

// Unrounded p for the formula target at scale s.
double target_p(const LogisticModel& model, int s, double target = default_formula_target);

// Pr(Bi(n, f) >= m) in floating point, for planning only.
double planning_tail(int n, double f, int m);

}  // namespace pcert

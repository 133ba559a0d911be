#include "pcert/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pcert/engine.hpp"

namespace pcert {

double scale_factor(int s) { return std::pow(static_cast<double>(s), 0.75); }

double logit(double f) { return std::log(f / (1.0 - f)); }

double LogisticModel::predict(int s, double p) const
{
    return 1.0 / (1.0 + std::exp(a - b * scale_factor(s) * (p - pc)));
}

double LogisticModel::invert(int s, double f) const { return pc + (a + logit(f)) / (b * scale_factor(s)); }

std::vector<PilotSample> pilot(const LatticeRep& lat, Mode mode, int scale, const std::vector<Decimal>& ps,
                               std::int64_t n, std::uint32_t seed_base, unsigned threads)
{
    const RectGraph g = scan_graph(lat, {scale, Orientation::horizontal});
    std::vector<PilotSample> out;
    EstimateOptions opts;
    opts.threads = threads;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto seed = static_cast<std::uint32_t>(seed_base + i * static_cast<std::uint64_t>(n));
        Estimate e = estimate_event_probability(g, mode, Probability(ps[i]), n, seed, opts);
        out.push_back({scale, ps[i].to_double(), n, e.successes});
    }
    return out;
}

namespace {

struct Line {
    double intercept;
    double slope;
};

double clipped_logit(const PilotSample& s)
{
    const double lo = 1.0 / (2.0 * static_cast<double>(s.n));
    return logit(std::clamp(s.fraction(), lo, 1.0 - lo));
}

Line fit_line(const std::vector<const PilotSample*>& samples)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(samples.size());
    for (const PilotSample* s : samples) {
        const double y = clipped_logit(*s);
        sx += s->p;
        sy += y;
        sxx += s->p * s->p;
        sxy += s->p * y;
    }
    const double det = k * sxx - sx * sx;
    if (std::abs(det) < 1e-300) throw std::invalid_argument("fit_model: need at least two distinct p values per scale");
    const double slope = (k * sxy - sx * sy) / det;
    return {(sy - slope * sx) / k, slope};
}

}  // namespace

LogisticModel fit_model(const std::vector<PilotSample>& samples, std::optional<double> pc)
{
    if (samples.size() < 2) throw std::invalid_argument("fit_model: need at least two samples");
    bool informative = false;
    for (const auto& s : samples)
        if (s.m > 0 && s.m < s.n) informative = true;
    if (!informative) throw std::invalid_argument("fit_model: degenerate samples (every fraction is 0 or 1)");

    std::map<int, std::vector<const PilotSample*>> by_scale;
    for (const auto& s : samples) by_scale[s.scale].push_back(&s);
    if (by_scale.size() > 2) throw std::invalid_argument("fit_model: samples must come from one or two scales");

    std::vector<std::pair<int, Line>> lines;
    for (const auto& [scale, group] : by_scale) {
        Line l = fit_line(group);
        if (l.slope <= 0) throw std::invalid_argument("fit_model: fitted slope is not positive");
        lines.push_back({scale, l});
    }

    LogisticModel m;
    if (lines.size() == 1) {
        if (!pc) throw std::invalid_argument("fit_model: a single scale needs a supplied pc estimate");
        const auto& [scale, l] = lines[0];
        m.pc = *pc;
        m.b = l.slope / scale_factor(scale);
        m.a = -(l.intercept + l.slope * m.pc);
        return m;
    }
    const auto& [s1, l1] = lines[0];
    const auto& [s2, l2] = lines[1];
    if (std::abs(l1.slope - l2.slope) < 1e-12 * std::max(l1.slope, l2.slope))
        throw std::invalid_argument("fit_model: lines at the two scales do not intersect");
    const double sig1 = scale_factor(s1), sig2 = scale_factor(s2);
    m.pc = pc ? *pc : (l2.intercept - l1.intercept) / (l1.slope - l2.slope);
    m.a = -(l1.intercept + l1.slope * m.pc);
    // least squares for slope_i = b * sigma_i
    m.b = (l1.slope * sig1 + l2.slope * sig2) / (sig1 * sig1 + sig2 * sig2);
    return m;
}

Thirds thirds_points(const LogisticModel& model, int s0)
{
    return {model.invert(s0, 1.0 / 3.0), model.invert(s0, 2.0 / 3.0)};
}

LogisticModel refit_two_points(const PilotSample& lo, const PilotSample& hi, double pc)
{
    if (lo.scale != hi.scale) throw std::invalid_argument("refit: samples must share a scale");
    if (lo.p == hi.p) throw std::invalid_argument("refit: samples must have distinct p");
    const double sigma = scale_factor(lo.scale);
    const double ylo = clipped_logit(lo), yhi = clipped_logit(hi);
    LogisticModel m;
    m.pc = pc;
    m.b = (yhi - ylo) / (sigma * (hi.p - lo.p));
    if (m.b <= 0) throw std::invalid_argument("refit: fitted slope is not positive");
    m.a = m.b * sigma * (lo.p - pc) - ylo;
    return m;
}

LogisticModel thirds_refine(const LatticeRep& lat, Mode mode, const LogisticModel& model, int s0,
                            std::int64_t n_large, std::uint32_t seed_base, unsigned threads)
{
    const Thirds t = thirds_points(model, s0);
    if (!(t.p_third > 0 && t.p_third < 1 && t.p_two_thirds > 0 && t.p_two_thirds < 1))
        throw std::invalid_argument("thirds_refine: predicted p outside (0,1)");
    std::vector<Decimal> ps = {Decimal::from_double(t.p_third, 6, false), Decimal::from_double(t.p_two_thirds, 6, false)};
    auto samples = pilot(lat, mode, s0, ps, n_large, seed_base, threads);
    return refit_two_points(samples[0], samples[1], model.pc);
}

double target_p(const LogisticModel& model, int s, double target) { return model.invert(s, target); }

double planning_tail(int n, double f, int m)
{
    if (f <= 0) return m <= 0 ? 1.0 : 0.0;
    if (f >= 1) return m <= n ? 1.0 : 0.0;
    double total = 0;
    for (int k = std::max(m, 0); k <= n; ++k) {
        double lt = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(f) +
                    (n - k) * std::log1p(-f);
        total += std::exp(lt);
    }
    return std::min(total, 1.0);
}

SidePlan choose_parameters(const LogisticModel& model, int s_budget, int period, double width_target, int trials,
                           int threshold, int attempts, int places, const std::vector<double>& targets)
{
    if (s_budget < period) throw std::invalid_argument("scale budget is below the lattice period");
    if (attempts < 1 || attempts > 3) throw std::invalid_argument("between 1 and 3 attempts per side");
    const int s = (s_budget / period) * period;
    SidePlan plan;
    double all_fail = 1.0;
    for (int k = 0; k < attempts; ++k) {
        const double target = targets[std::min<std::size_t>(k, targets.size() - 1)];
        double p = std::clamp(target_p(model, s, target), 0.0, 1.0);
        PlannedAttempt a;
        a.scale = s;
        a.p = Decimal::from_double(p, places, true);
        if (a.p > Decimal(1, 0)) a.p = Decimal(1, 0);
        a.predicted_f = model.predict(s, a.p.to_double());
        a.pass_probability = planning_tail(trials, a.predicted_f, threshold);
        all_fail *= 1.0 - a.pass_probability;
        plan.attempts.push_back(a);
    }
    plan.implied_width = 2.0 * (target_p(model, s, targets.front()) - model.pc);
    plan.width_met = plan.implied_width <= width_target;
    plan.pass_within_attempts = 1.0 - all_fail;
    return plan;
}

}  // namespace pcert

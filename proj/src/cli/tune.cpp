#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pcert/cli.hpp"

namespace pcert {

namespace {

// Hands out disjoint pilot seed ranges, all at or above pilot_seed_base.
class PilotSeeds {
public:
    std::uint32_t take(std::int64_t n)
    {
        const std::uint64_t start = next_;
        next_ += static_cast<std::uint64_t>(n);
        if (next_ > 0xFFFFFFFFull) throw ConfigError("pilot seed range exhausted");
        return static_cast<std::uint32_t>(start);
    }

private:
    std::uint64_t next_ = pilot_seed_base;
};

struct SideTuner {
    const LatticeRep& lat;
    Mode mode;
    const TuneConfig& cfg;
    PilotSeeds& seeds;
    std::ostream* progress;

    double fraction(int s, double p, std::int64_t n)
    {
        Decimal d = Decimal::from_double(std::clamp(p, 0.0, 1.0), 6, false);
        auto sample = pilot(lat, mode, s, {d}, n, seeds.take(n), cfg.threads);
        return sample[0].fraction();
    }

    // p where the event probability crosses 1/2 at scale s.
    double bisect_half(int s)
    {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 12; ++i) {
            const double mid = 0.5 * (lo + hi);
            (fraction(s, mid, cfg.bisect_n) < 0.5 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    std::vector<PilotSample> scale_pilots(int s)
    {
        const double half = bisect_half(s);
        double d_lo = 0.01, d_hi = 0.01;
        while (d_hi < 1.0 && fraction(s, half + d_hi, cfg.bisect_n) < 0.85) d_hi *= 2;
        while (d_lo < 1.0 && fraction(s, half - d_lo, cfg.bisect_n) > 0.15) d_lo *= 2;
        const double lo = std::max(0.0, half - d_lo), hi = std::min(1.0, half + d_hi);
        std::vector<Decimal> ps;
        for (int i = 0; i < cfg.pilot_points; ++i)
            ps.push_back(Decimal::from_double(lo + (hi - lo) * i / (cfg.pilot_points - 1), 6, false));
        auto out = pilot(lat, mode, s, ps, cfg.pilot_n, seeds.take(cfg.pilot_n * static_cast<std::int64_t>(ps.size())),
                         cfg.threads);
        if (progress)
            *progress << "  " << lat.name << " s=" << s << ": f=1/2 near " << std::setprecision(6) << half
                      << ", pilots on [" << lo << ", " << hi << "]\n";
        return out;
    }

    SideTuning run()
    {
        SideTuning t;
        t.lattice = lat.name;
        const int C = lat.period;
        std::vector<int> scales = cfg.pilot_scales;
        if (scales.empty()) scales = {std::max(C, cfg.max_scale / 16 / C * C), std::max(C, cfg.max_scale / 4 / C * C)};
        for (int& s : scales) s = std::max(C, s / C * C);
        std::sort(scales.begin(), scales.end());
        scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

        std::optional<double> pc;
        for (int s : scales) {
            auto samples = scale_pilots(s);
            t.samples.insert(t.samples.end(), samples.begin(), samples.end());
        }
        if (scales.size() == 1) pc = bisect_half(scales[0]);
        LogisticModel m = fit_model(t.samples, pc);
        const int s0 = scales.back();
        try {
            m = thirds_refine(lat, mode, m, s0, cfg.refine_n, seeds.take(2 * cfg.refine_n), cfg.threads);
        } catch (const std::invalid_argument& e) {
            if (progress) *progress << "  " << lat.name << ": refinement skipped (" << e.what() << ")\n";
        }
        t.model = m;
        const int threshold = run_threshold(lat, cfg.trials);
        t.plan = choose_parameters(m, cfg.max_scale, C, cfg.width, cfg.trials, threshold, cfg.attempts);
        return t;
    }
};

}  // namespace

TuneResult run_tuning(const TuneConfig& cfg, const std::filesystem::path& dir, std::ostream* progress)
{
    const LatticeRep primal = load_named_lattice(cfg.lattice, dir);
    const LatticeRep dual = load_named_lattice(cfg.dual, dir);
    check_dual(primal, dual, cfg.mode);
    PilotSeeds seeds;
    TuneResult r;
    r.upper = SideTuner{primal, cfg.mode, cfg, seeds, progress}.run();
    r.lower = SideTuner{dual, cfg.mode, cfg, seeds, progress}.run();

    r.certify.lattice = cfg.lattice;
    r.certify.dual = cfg.dual;
    r.certify.mode = cfg.mode;
    r.certify.trials = cfg.trials;
    r.certify.seeds.base = cfg.seed;
    r.certify.seeds.stride = static_cast<std::uint32_t>(cfg.trials);
    r.certify.threads = cfg.threads;
    for (const auto& a : r.upper.plan.attempts) r.certify.plan.upper.push_back({a.scale, a.p});
    for (const auto& a : r.lower.plan.attempts) r.certify.plan.lower.push_back({a.scale, a.p});
    return r;
}

std::string format_tuning(const TuneResult& t)
{
    std::ostringstream os;
    os << std::setprecision(8);
    auto side = [&](const char* name, const SideTuning& s) {
        os << "tune side=" << name << " lattice=" << s.lattice << "\n";
        for (const auto& p : s.samples)
            os << "pilot scale=" << p.scale << " p=" << p.p << " n=" << p.n << " m=" << p.m << "\n";
        os << "model a=" << s.model.a << " b=" << s.model.b << " pc=" << s.model.pc << "\n";
        for (std::size_t k = 0; k < s.plan.attempts.size(); ++k) {
            const auto& a = s.plan.attempts[k];
            os << "plan attempt=" << k + 1 << " scale=" << a.scale << " p=" << a.p.str()
               << " predicted_f=" << a.predicted_f << " pass_probability=" << a.pass_probability << "\n";
        }
        os << "plan implied_width=" << s.plan.implied_width << " width_met=" << (s.plan.width_met ? "yes" : "no")
           << " pass_within_attempts=" << s.plan.pass_within_attempts << "\n";
    };
    side("upper", t.upper);
    side("lower", t.lower);
    // The planned interval: upper bound p, lower bound 1 - q on the dual.
    if (!t.upper.plan.attempts.empty() && !t.lower.plan.attempts.empty()) {
        const Decimal lo = Decimal(1, 0) - t.lower.plan.attempts.front().p;
        const Decimal hi = t.upper.plan.attempts.front().p;
        os << "planned interval=[" << lo.str() << "," << hi.str() << "]";
        if (lo <= hi) os << " width=" << (hi - lo).str();
        os << "\n";
    }
    return os.str();
}

}  // namespace pcert

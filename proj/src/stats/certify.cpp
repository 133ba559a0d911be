#include "pcert/stats.hpp"

#include <stdexcept>

namespace pcert {

std::vector<Orientation> required_orientations(const LatticeRep& lat)
{
    if (lat.symmetric) return {Orientation::horizontal};
    return {Orientation::horizontal, Orientation::vertical};
}

int run_threshold(const LatticeRep& lat, int trials)
{
    const auto n = static_cast<int>(required_orientations(lat).size());
    return min_threshold(trials, percolation_p0(), run_error_budget() / n);
}

RunRecord certify_upper(const LatticeRep& lat, Mode mode, int scale, const Decimal& p, std::uint32_t base_seed,
                        int trials, int attempt, unsigned threads)
{
    RunRecord r;
    r.target = lat.name;
    r.lattice = lat.name;
    r.mode = mode;
    r.side = BoundSide::upper;
    r.attempt = attempt;
    r.scale = scale;
    r.p = p;
    r.trials = trials;
    r.base_seed = base_seed;
    r.threshold = run_threshold(lat, trials);
    const Probability prob(p);
    r.pass = true;
    r.error_bound = 0;
    const Rational tail = binomial_tail({trials, percolation_p0(), r.threshold});
    EstimateOptions opts;
    opts.threads = threads;
    for (Orientation o : required_orientations(lat)) {
        Estimate e = estimate_event_probability(lat, {scale, o}, mode, prob, trials, base_seed, opts);
        r.counts.push_back({o, e.successes});
        r.pass = r.pass && e.successes >= r.threshold;
        r.error_bound += tail;
    }
    return r;
}

void check_dual(const LatticeRep& primal, const LatticeRep& dual, Mode mode)
{
    if (primal.faces.empty())
        throw LatticeError("cannot verify '" + dual.name + "' as the dual of '" + primal.name + "': primal has no faces");
    bool ok = false;
    if (mode == Mode::bond) {
        ok = periodic_isomorphic(bond_dual(primal), dual.topology());
    } else {
        LatticeRep computed = site_dual(primal);
        ok = same_drawing(computed, dual) || periodic_isomorphic(computed.topology(), dual.topology());
    }
    if (!ok)
        throw LatticeError("'" + dual.name + "' is not the " + to_string(mode) + " dual of '" + primal.name + "'");
}

ConfidenceInterval certify_interval(const LatticeRep& primal, const LatticeRep& dual, Mode mode,
                                    const CertificationPlan& plan, const SeedPolicy& seeds,
                                    const CertifyOptions& options)
{
    if (plan.upper.size() > max_attempts_per_side || plan.lower.size() > max_attempts_per_side)
        throw std::invalid_argument("a plan may hold at most 3 attempts per side");
    check_dual(primal, dual, mode);

    std::vector<RunRecord> records;
    auto run_side = [&](const std::vector<Attempt>& attempts, const LatticeRep& lat, BoundSide side) {
        for (std::size_t k = 0; k < attempts.size(); ++k) {
            const int attempt = static_cast<int>(k) + 1;
            RunRecord r = certify_upper(lat, mode, attempts[k].scale, attempts[k].p, seeds.seed_for(attempt),
                                        options.trials, attempt, options.threads);
            r.target = primal.name;
            r.side = side;
            records.push_back(r);
            if (options.on_record) options.on_record(r);
            if (r.pass) break;   // later attempts on this side are skipped
        }
    };
    run_side(plan.upper, primal, BoundSide::upper);
    run_side(plan.lower, dual, BoundSide::lower);
    return assemble_interval(primal.name, mode, records);
}

ConfidenceInterval assemble_interval(const std::string& target, Mode mode, const std::vector<RunRecord>& records)
{
    ConfidenceInterval ci;
    ci.lattice = target;
    ci.mode = mode;
    ci.total_error = 0;
    for (const auto& r : records) {
        if (r.target != target || r.mode != mode) continue;
        ci.records.push_back(r);
        ci.total_error += r.error_bound;
        auto b = r.bound();
        if (!b) continue;
        if (r.side == BoundSide::upper && (!ci.upper_provenance || *b < ci.upper)) {
            ci.upper = *b;
            ci.upper_provenance = r;
        }
        if (r.side == BoundSide::lower && (!ci.lower_provenance || *b > ci.lower)) {
            ci.lower = *b;
            ci.lower_provenance = r;
        }
    }
    return ci;
}

std::optional<Decimal> RunRecord::bound() const
{
    if (!pass) return std::nullopt;
    if (side == BoundSide::upper) return p;
    return Decimal(1, 0) - p;
}

}  // namespace pcert

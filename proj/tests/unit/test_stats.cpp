#include <doctest.h>

#include "fixtures.hpp"
#include "pcert/stats.hpp"

using namespace pcert;
using test::shipped;

TEST_SUITE("stats") {

TEST_CASE("binomial tails")
{
    const Rational tail = binomial_tail({400, percolation_p0(), 378});
    CHECK(to_scientific(tail, 5, true) == "1.1489e-07");
    CHECK(tail < run_error_budget());
    CHECK(binomial_tail({400, percolation_p0(), 0}) == 1);
    CHECK(binomial_tail({4, Rational(1, 2), 3}) == Rational(5, 16));
    CHECK(binomial_tail({4, Rational(1, 2), 4}) == Rational(1, 16));
    CHECK(binomial_tail({10, Rational(0), 1}) == 0);
    CHECK_THROWS(binomial_tail({4, Rational(1, 2), 5}));
}

TEST_CASE("tail by summation of the other side")
{
    // Pr(X >= m) + Pr(X <= m - 1) = 1
    const Rational p(3, 7);
    for (int m = 1; m <= 12; ++m) {
        Rational below = 0;
        BigInt c = 1;
        Rational pk = 1;
        for (int k = 0; k < m; ++k) {
            Rational term = Rational(c) * pk;
            for (int j = 0; j < 12 - k; ++j) term *= (1 - p);
            below += term;
            c = c * (12 - k) / (k + 1);
            pk *= p;
        }
        CHECK(binomial_tail({12, p, m}) + below == 1);
    }
}

TEST_CASE("minimal thresholds")
{
    CHECK(min_threshold(400, percolation_p0(), run_error_budget()) == 378);
    CHECK(min_threshold(400, percolation_p0(), run_error_budget() / 2) == 379);
    CHECK(min_threshold(400, percolation_p0(), Rational(1)) == 0);
    CHECK_THROWS(min_threshold(10, percolation_p0(), Rational(1, 1000000000)));
    CHECK(run_error_budget() * 6 == interval_error_budget());

    CHECK(run_threshold(shipped("square"), 400) == 378);
    CHECK(run_threshold(shipped("3.3.3.3.6"), 400) == 379);
}

TEST_CASE("single attempts")
{
    const LatticeRep& sq = shipped("square");
    RunRecord r = certify_upper(sq, Mode::bond, 8, Decimal::parse("1"), 100);
    CHECK(r.pass);
    REQUIRE(r.counts.size() == 1);
    CHECK(r.counts[0].successes == 400);
    CHECK(r.error_bound == binomial_tail({400, percolation_p0(), 378}));
    CHECK(r.bound() == Decimal::parse("1"));

    RunRecord f = certify_upper(sq, Mode::bond, 8, Decimal::parse("0"), 100);
    CHECK_FALSE(f.pass);
    CHECK(f.counts[0].successes == 0);
    CHECK(!f.bound());
    CHECK(f.error_bound == r.error_bound);

    RunRecord v = certify_upper(shipped("3.3.3.3.6"), Mode::site, 7, Decimal::parse("1"), 5);
    CHECK(v.counts.size() == 2);
    CHECK(v.error_bound == 2 * binomial_tail({400, percolation_p0(), 379}));
}

TEST_CASE("record lines round-trip")
{
    RunRecord r = certify_upper(shipped("3.3.3.3.6"), Mode::bond, 7, Decimal::parse("0.61"), 77);
    r.target = "3.3.3.3.6";
    r.side = BoundSide::lower;
    r.attempt = 2;
    const std::string line = format_record(r);
    CHECK(line.find("orientations=h,v") != std::string::npos);
    CHECK(format_record(parse_record(line)) == line);
    RunRecord back = parse_record(line);
    CHECK(back.error_bound == r.error_bound);
    CHECK(back.p == r.p);
    CHECK(back.side == BoundSide::lower);
    CHECK_THROWS(parse_record("record target=square"));
    CHECK_THROWS(parse_record("nonsense"));
}

TEST_CASE("intervals stop a side at its first pass")
{
    const LatticeRep& sq = shipped("square");
    CertificationPlan plan;
    plan.upper = {{8, Decimal::parse("0")}, {8, Decimal::parse("1")}, {8, Decimal::parse("1")}};
    plan.lower = {{8, Decimal::parse("0.9")}};
    std::vector<RunRecord> seen;
    CertifyOptions opts;
    opts.on_record = [&](const RunRecord& r) { seen.push_back(r); };
    ConfidenceInterval ci = certify_interval(sq, sq, Mode::bond, plan, {}, opts);
    REQUIRE(ci.records.size() == 3);
    CHECK(seen.size() == 3);
    CHECK(ci.records[0].base_seed == 12345678);
    CHECK(ci.records[1].base_seed == 12345678 + 400);
    CHECK(ci.records[2].base_seed == 12345678);   // lower side starts again at attempt 1
    CHECK(ci.upper == Decimal::parse("1"));
    CHECK(ci.lower == Decimal::parse("0.1"));
    CHECK(ci.total_error == 3 * binomial_tail({400, percolation_p0(), 378}));
    CHECK(ci.total_error <= interval_error_budget());

    ConfidenceInterval again = assemble_interval("square", Mode::bond, ci.records);
    CHECK(again.lower == ci.lower);
    CHECK(again.upper == ci.upper);
    CHECK(again.total_error == ci.total_error);
}

TEST_CASE("all attempts failing gives the trivial interval, error still counted")
{
    const LatticeRep& sq = shipped("square");
    CertificationPlan plan;
    for (int k = 0; k < 3; ++k) {
        plan.upper.push_back({4, Decimal::parse("0")});
        plan.lower.push_back({4, Decimal::parse("0")});
    }
    ConfidenceInterval ci = certify_interval(sq, sq, Mode::bond, plan);
    CHECK(ci.records.size() == 6);
    CHECK(ci.lower == Decimal::parse("0"));
    CHECK(ci.upper == Decimal::parse("1"));
    CHECK(ci.total_error == 6 * binomial_tail({400, percolation_p0(), 378}));
    CHECK(ci.total_error <= interval_error_budget());
}

TEST_CASE("plan and dual checks")
{
    const LatticeRep& sq = shipped("square");
    CertificationPlan plan;
    plan.upper.assign(4, {4, Decimal::parse("1")});
    CHECK_THROWS_AS(certify_interval(sq, sq, Mode::bond, plan), std::invalid_argument);
    CHECK_THROWS_AS(certify_interval(shipped("triangular"), shipped("triangular"), Mode::bond, {}), LatticeError);
    CHECK_NOTHROW(check_dual(shipped("triangular"), shipped("hexagonal"), Mode::bond));
    CHECK_NOTHROW(check_dual(shipped("triangular"), shipped("triangular"), Mode::site));
}

}

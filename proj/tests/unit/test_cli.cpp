#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "pcert/cli.hpp"

using namespace pcert;
using test::shipped;

namespace {

ReportInput reference() { return read_report_input(test::slurp(pcert::default_data_dir() / "reference_intervals.txt")); }

JobManifest manifest(const std::string& lattice, int scale, const char* p)
{
    JobManifest m;
    m.run_id = "t1";
    m.target = lattice;
    m.lattice = lattice;
    m.mode = Mode::bond;
    m.orientations = required_orientations(shipped(lattice));
    m.scale = scale;
    m.p = Decimal::parse(p);
    m.base_seed = 4000;
    m.chunks = 8;
    return m;
}

std::vector<JobResult> run_all(const JobManifest& m, const std::vector<JobChunk>& chunks)
{
    std::vector<JobResult> out;
    for (const auto& c : chunks) {
        // through the text formats, as the separate processes would
        auto [mm, cc] = parse_chunk(format_chunk(m, c));
        out.push_back(parse_result(format_result(run_chunk(shipped(mm.lattice), mm, cc, 1))));
    }
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("constants")
{
    auto fixed8 = [](double v) { return std::round(v * 1e8) / 1e8; };
    CHECK(fixed8(two_sin_pi_18()) == doctest::Approx(0.34729636).epsilon(1e-12));
    CHECK(fixed8(1 - two_sin_pi_18()) == doctest::Approx(0.65270364).epsilon(1e-12));
    CHECK(fixed8(std::sqrt(1 - two_sin_pi_18())) == doctest::Approx(0.80790076).epsilon(1e-12));
    CHECK(fixed8(wu_root()) == doctest::Approx(0.52442972).epsilon(1e-12));
    CHECK(std::abs(wu_polynomial(wu_root())) < 1e-12);
}

TEST_CASE("width rendering")
{
    CHECK(format_width(Decimal::parse("0.0005")) == "5×10⁻⁴");
    CHECK(format_width(Decimal::parse("0.00045")) == "4.5×10⁻⁴");
    CHECK(format_width(Decimal::parse("0.00040")) == "4×10⁻⁴");
    CHECK(format_width(Decimal::parse("0.002")) == "2×10⁻³");
    CHECK(format_width(Decimal::parse("0")) == "0");
}

TEST_CASE("report over the reference intervals")
{
    const ReportInput in = reference();
    CHECK(in.intervals.size() == 16);
    const std::string text = render_report(in);
    CHECK(text == render_report(reference()));
    CHECK(text.find("[0.52415,0.52465]") != std::string::npos);
    CHECK(text.find("0.5 (exact)") != std::string::npos);
    CHECK(text.find("0.34729636 = 2 sin(pi/18)") != std::string::npos);
    CHECK(text.find("0.80790076") != std::string::npos);

    const auto& cs = conjectures();
    REQUIRE(cs.size() == 3);
    CHECK(check_conjecture(cs[0], in) == ConjectureStatus::not_excluded);
    CHECK(check_conjecture(cs[1], in) == ConjectureStatus::excluded);
    CHECK(check_conjecture(cs[2], in) == ConjectureStatus::excluded);
    CHECK(check_conjecture(cs[0], ReportInput{}) == ConjectureStatus::no_interval);
}

TEST_CASE("records take precedence over interval lines")
{
    ReportInput in = reference();
    RunRecord r;
    r.target = "kagome";
    r.lattice = "kagome";
    r.mode = Mode::bond;
    r.p = Decimal::parse("0.53");
    r.pass = true;
    r.counts = {{Orientation::horizontal, 400}};
    in.records.push_back(r);
    auto iv = interval_for(in, "kagome", Mode::bond);
    REQUIRE(iv);
    CHECK(iv->upper == Decimal::parse("0.53"));
    CHECK(iv->lower == Decimal::parse("0"));
    CHECK(check_conjecture(conjectures()[1], in) == ConjectureStatus::not_excluded);
}

TEST_CASE("interval lines")
{
    IntervalLine iv = parse_interval_line("interval target=kagome mode=bond lower=0.52415 upper=0.52465");
    CHECK(format_interval_line(iv) == "interval target=kagome mode=bond lower=0.52415 upper=0.52465");
    CHECK_THROWS(parse_interval_line("interval target=kagome mode=bond lower=0.6 upper=0.5"));
    CHECK_THROWS(read_report_input("garbage line\n"));
}

TEST_CASE("split jobs merge to the single-process record")
{
    for (const char* lattice : {"square", "3.3.3.3.6"}) {
        const std::string name = lattice;
        CAPTURE(name);
        const int s = shipped(lattice).period * (name == "square" ? 4 : 1);
        JobManifest m = manifest(lattice, s, "0.62");
        CHECK(format_manifest(parse_manifest(format_manifest(m))) == format_manifest(m));
        const std::string single = format_record(certify_upper(shipped(lattice), Mode::bond, s, m.p, 4000, 400, 1, 1));

        auto chunks = split_manifest(m);
        CHECK(chunks.size() == 8 * m.orientations.size());
        auto results = run_all(m, chunks);
        CHECK(format_record(merge_results(shipped(lattice), m, results)) == single);

        std::mt19937 shuffle_rng(3);
        std::shuffle(results.begin(), results.end(), shuffle_rng);
        CHECK(format_record(merge_results(shipped(lattice), m, results)) == single);

        auto uneven = run_all(m, split_manifest(m, {1, 99, 3, 297}));
        CHECK(format_record(merge_results(shipped(lattice), m, uneven)) == single);
    }
}

TEST_CASE("merge rejects incomplete or inconsistent results")
{
    const LatticeRep& sq = shipped("square");
    JobManifest m = manifest("square", 4, "0.62");
    auto results = run_all(m, split_manifest(m));

    auto missing = results;
    missing.erase(missing.begin() + 2);
    try {
        merge_results(sq, m, missing);
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("missing seeds [4100, 4150)") != std::string::npos);
    }

    auto dup = results;
    dup.push_back(results[3]);
    CHECK_THROWS_AS(merge_results(sq, m, dup), ConfigError);

    auto foreign = results;
    foreign[0].run_id = "other";
    CHECK_THROWS_AS(merge_results(sq, m, foreign), ConfigError);

    auto overlap = results;
    overlap[1].chunk.seed_begin -= 1;
    CHECK_THROWS_AS(merge_results(sq, m, overlap), ConfigError);

    JobManifest wrong = m;
    wrong.orientations = {Orientation::horizontal, Orientation::vertical};
    CHECK_THROWS_AS(merge_results(sq, wrong, results), ConfigError);

    CHECK_THROWS(split_manifest(m, {100, 100}));
}

TEST_CASE("certify configs")
{
    const std::string text = "[target]\nlattice = kagome\nmode = bond\n"
                             "[run]\ntrials = 400\nseed = 12345678\n"
                             "[upper]\nattempt1 = 512 0.5301\nattempt2 = 512 0.5332\n"
                             "[lower]\nattempt1 = 512 0.4811\n";
    CertifyConfig c = parse_certify_config(text);
    CHECK(c.lattice == "kagome");
    CHECK(c.dual == find_catalog_entry("kagome")->bond_dual);
    CHECK(c.plan.upper.size() == 2);
    CHECK(c.plan.lower.size() == 1);
    CHECK(c.plan.upper[1].p == Decimal::parse("0.5332"));
    CHECK(c.seeds.seed_for(2) == 12345678 + 400);
    CertifyConfig again = parse_certify_config(format_certify_config(c));
    CHECK(format_certify_config(again) == format_certify_config(c));

    CHECK_THROWS_AS(parse_certify_config(text + "colour = blue\n"), ConfigError);
    CHECK_THROWS_AS(parse_certify_config(text + "attempt2 = 4 0.5\nattempt3 = 4 0.5\nattempt4 = 4 0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_certify_config("[target]\nlattice = kagome\n"), ConfigError);
    CHECK_THROWS_AS(parse_certify_config(text + "[extra]\nx = 1\n"), ConfigError);
}

TEST_CASE("tune configs")
{
    TuneConfig t = parse_tune_config(test::slurp(pcert::default_data_dir() / "configs" / "square-bond.tune.ini"));
    CHECK(t.lattice == "square");
    CHECK(t.mode == Mode::bond);
    CHECK(t.max_scale == 512);
    CHECK(t.width == 0.02);
    CHECK_THROWS_AS(parse_tune_config("[target]\nlattice = square\nmode = bond\n[budget]\nattempts = 4\n"), ConfigError);
}

}

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pcert/decimal.hpp"
#include "pcert/rng.hpp"

using namespace pcert;

TEST_SUITE("rng") {

TEST_CASE("seed 5489 matches the reference stream")
{
    auto ref = test::read_u32("mt19937_seed5489.u32");
    REQUIRE(ref.size() == 1024);
    CHECK(ref[0] == 3499211612u);
    Mt19937 g(5489u);
    for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(g.next_u32() == ref[i]);
}

TEST_CASE("default construction is seed 5489")
{
    Mt19937 a, b(5489u);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u32() == b.next_u32());
}

TEST_CASE("seed 12345678 matches the reference stream")
{
    auto ref = test::read_u32("mt19937_seed12345678.u32");
    REQUIRE(ref.size() == 1024);
    Mt19937 g(12345678u);
    for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(g.next_u32() == ref[i]);
}

TEST_CASE("array seeding matches the reference stream")
{
    auto ref = test::read_u32("mt19937_array_123_234_345_456.u32");
    const std::uint32_t key[] = {0x123, 0x234, 0x345, 0x456};
    Mt19937 g{std::span<const std::uint32_t>(key)};
    for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(g.next_u32() == ref[i]);
}

TEST_CASE("reseeding replays the stream")
{
    Mt19937 g(987654u);
    std::vector<std::uint32_t> first;
    for (int i = 0; i < 1000; ++i) first.push_back(g.next_u32());
    g.seed_with(987654u);
    for (int i = 0; i < 1000; ++i) REQUIRE(g.next_u32() == first[i]);
}

TEST_CASE("next_unit mean is within 3 sigma of 1/2")
{
    Mt19937 g(42u);
    double sum = 0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) {
        const double u = g.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.002);
}

}

TEST_SUITE("decimal") {

TEST_CASE("parse and render")
{
    CHECK(Decimal::parse("0.5930").str() == "0.5930");
    CHECK(Decimal::parse("1").str() == "1");
    CHECK(Decimal::parse(".25") == Decimal(25, 2));
    CHECK(Decimal::parse("0.50") == Decimal::parse("0.5"));
    CHECK_THROWS(Decimal::parse("-0.1"));
    CHECK_THROWS(Decimal::parse("1e-3"));
    CHECK_THROWS(Decimal::parse("0.1234567890123456"));
    CHECK_THROWS(Decimal::parse(""));
}

TEST_CASE("arithmetic is exact")
{
    CHECK((Decimal(1, 0) - Decimal::parse("0.4919")).str() == "0.5081");
    CHECK((Decimal::parse("0.55105") - Decimal::parse("0.5506")).str() == "0.00045");
    CHECK(Decimal::parse("0.1").exact() == Rational(1, 10));
}

TEST_CASE("from_double rounds in the requested direction")
{
    CHECK(Decimal::from_double(0.50711, 4, true).str() == "0.5072");
    CHECK(Decimal::from_double(0.50711, 4, false).str() == "0.5071");
    CHECK(Decimal::from_double(0.5, 4, true).str() == "0.5000");
}

TEST_CASE("probability thresholds")
{
    CHECK(Probability::parse("0").threshold() == 0);
    CHECK(Probability::parse("1").threshold() == (std::uint64_t{1} << 32));
    CHECK(Probability::parse("0.5").threshold() == (std::uint64_t{1} << 31));
    // ceil(0.6 * 2^32) = 2576980378 (0.6 * 2^32 = 2576980377.6)
    CHECK(Probability::parse("0.6").threshold() == 2576980378u);
    Probability one = Probability::parse("1"), zero = Probability::parse("0");
    CHECK(one.is_open(0xFFFFFFFFu));
    CHECK_FALSE(zero.is_open(0));
    CHECK_THROWS(Probability::parse("1.01"));
}

TEST_CASE("u < threshold is exactly u / 2^32 < p")
{
    const Probability p = Probability::parse("0.6");
    const Rational pr = p.value().exact();
    for (std::uint64_t u : {2576980376ull, 2576980377ull, 2576980378ull, 2576980379ull})
        CHECK(p.is_open(static_cast<std::uint32_t>(u)) == (Rational(BigInt(u), BigInt(1) << 32) < pr));
}

TEST_CASE("scientific rendering")
{
    CHECK(to_scientific(Rational(1, 8), 3) == "1.25e-01");
    CHECK(to_scientific(Rational(114899, 1000000000000ll), 4) == "1.149e-07");
    CHECK(to_scientific(Rational(114899, 1000000000000ll), 4, true) == "1.148e-07");
    CHECK(to_scientific(Rational(9999, 1000), 2) == "1.0e+01");
    CHECK(to_scientific(Rational(0), 3) == "0.00e+00");
}

}

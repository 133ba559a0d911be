#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcert {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact decimal fraction: units / 10^places. Probabilities, certified bounds
// and widths are carried in this form so nothing written to a record file
// depends on binary floating point.
class Decimal {
public:
    static constexpr int max_places = 15;

    Decimal() = default;
    Decimal(std::int64_t units, int places);

    // Accepts "1", "0.5123", ".25"; rejects signs, exponents and more than
    // max_places fractional digits.
    static Decimal parse(std::string_view text);
    static Decimal from_int(std::int64_t v) { return Decimal(v, 0); }

    // Round a double to `places` decimals; `up` rounds toward +infinity.
    static Decimal from_double(double v, int places, bool up);

    std::int64_t units() const { return units_; }
    int places() const { return places_; }

    double to_double() const;
    Rational exact() const;
    std::string str() const;

    Decimal operator-(const Decimal& other) const;
    Decimal operator+(const Decimal& other) const;
    Decimal with_places(int places) const;   // pads with zeros only

    bool operator==(const Decimal& other) const;
    std::strong_ordering operator<=>(const Decimal& other) const;

private:
    std::int64_t units_ = 0;
    int places_ = 0;
};

// Probability in [0,1] together with the 32-bit decision threshold:
// an element is open iff a uniform 32-bit draw u satisfies u < threshold,
// where threshold = ceil(p * 2^32). This is exactly "u / 2^32 < p".
class Probability {
public:
    Probability() = default;
    explicit Probability(Decimal p);
    static Probability parse(std::string_view text) { return Probability(Decimal::parse(text)); }

    const Decimal& value() const { return value_; }
    std::uint64_t threshold() const { return threshold_; }
    double to_double() const { return value_.to_double(); }
    std::string str() const { return value_.str(); }

    bool is_open(std::uint32_t draw) const { return draw < threshold_; }

private:
    Decimal value_;
    std::uint64_t threshold_ = 0;
};

// Scientific rendering of a non-negative rational with `digits` significant
// digits, rounded to nearest; e.g. "1.149e-07". With `truncate` the
// digits are the leading ones (1.14899... -> "1.1489e-07").
std::string to_scientific(const Rational& value, int digits, bool truncate = false);

}  // namespace pcert

#include "pcert/decimal.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pcert {

namespace {

std::int64_t pow10(int n)
{
    std::int64_t r = 1;
    for (int i = 0; i < n; ++i) r *= 10;
    return r;
}

// Align two decimals to a common number of places.
std::pair<__int128, __int128> aligned(const Decimal& a, const Decimal& b, int& places)
{
    places = std::max(a.places(), b.places());
    __int128 x = a.units(), y = b.units();
    x *= pow10(places - a.places());
    y *= pow10(places - b.places());
    return {x, y};
}

BigInt pow10_big(int n)
{
    BigInt r = 1;
    for (int i = 0; i < n; ++i) r *= 10;
    return r;
}

}  // namespace

Decimal::Decimal(std::int64_t units, int places) : units_(units), places_(places)
{
    if (places < 0 || places > max_places) throw std::invalid_argument("decimal: unsupported precision");
}

Decimal Decimal::parse(std::string_view text)
{
    if (text.empty()) throw std::invalid_argument("decimal: empty value");
    std::int64_t units = 0;
    int places = 0;
    bool seen_point = false, seen_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_point) throw std::invalid_argument("decimal: malformed value '" + std::string(text) + "'");
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("decimal: malformed value '" + std::string(text) + "'");
        seen_digit = true;
        if (seen_point && ++places > max_places)
            throw std::invalid_argument("decimal: too many digits in '" + std::string(text) + "'");
        if (units > (INT64_MAX - 9) / 10) throw std::invalid_argument("decimal: value out of range");
        units = units * 10 + (c - '0');
    }
    if (!seen_digit) throw std::invalid_argument("decimal: malformed value '" + std::string(text) + "'");
    return Decimal(units, places);
}

Decimal Decimal::from_double(double v, int places, bool up)
{
    double scaled = v * static_cast<double>(pow10(places));
    double r = up ? std::ceil(scaled) : std::nearbyint(scaled);
    return Decimal(static_cast<std::int64_t>(r), places);
}

double Decimal::to_double() const { return static_cast<double>(units_) / static_cast<double>(pow10(places_)); }

Rational Decimal::exact() const { return Rational(BigInt(units_), BigInt(pow10(places_))); }

std::string Decimal::str() const
{
    std::int64_t mag = units_ < 0 ? -units_ : units_;
    std::string digits = std::to_string(mag);
    if (places_ > 0) {
        if (static_cast<int>(digits.size()) <= places_) digits.insert(0, places_ + 1 - digits.size(), '0');
        digits.insert(digits.size() - places_, ".");
    }
    return units_ < 0 ? "-" + digits : digits;
}

Decimal Decimal::operator-(const Decimal& other) const
{
    int places;
    auto [x, y] = aligned(*this, other, places);
    return Decimal(static_cast<std::int64_t>(x - y), places);
}

Decimal Decimal::operator+(const Decimal& other) const
{
    int places;
    auto [x, y] = aligned(*this, other, places);
    return Decimal(static_cast<std::int64_t>(x + y), places);
}

Decimal Decimal::with_places(int places) const
{
    if (places < places_) throw std::invalid_argument("decimal: cannot drop digits");
    return Decimal(units_ * pow10(places - places_), places);
}

bool Decimal::operator==(const Decimal& other) const { return (*this <=> other) == 0; }

std::strong_ordering Decimal::operator<=>(const Decimal& other) const
{
    int places;
    auto [x, y] = aligned(*this, other, places);
    return x < y ? std::strong_ordering::less : x > y ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Probability::Probability(Decimal p) : value_(p)
{
    if (p < Decimal(0, 0) || p > Decimal(1, 0)) throw std::invalid_argument("probability outside [0,1]: " + p.str());
    // ceil(units * 2^32 / 10^places), exact in 128-bit arithmetic
    unsigned __int128 num = static_cast<unsigned __int128>(p.units()) << 32;
    unsigned __int128 den = static_cast<unsigned __int128>(pow10(p.places()));
    threshold_ = static_cast<std::uint64_t>((num + den - 1) / den);
}

std::string to_scientific(const Rational& value, int digits, bool truncate)
{
    if (value < 0) throw std::invalid_argument("to_scientific: negative value");
    if (digits < 1) throw std::invalid_argument("to_scientific: need at least one digit");
    if (value == 0) {
        std::string s = "0";
        if (digits > 1) s += "." + std::string(digits - 1, '0');
        return s + "e+00";
    }
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);

    // exponent estimate from digit counts, then correct exactly
    int e = static_cast<int>(num.str().size()) - static_cast<int>(den.str().size());
    auto at_least = [&](int k) {  // value >= 10^k
        return k >= 0 ? num >= den * pow10_big(k) : num * pow10_big(-k) >= den;
    };
    while (!at_least(e)) --e;
    while (at_least(e + 1)) ++e;

    // mantissa = round (or floor) of value * 10^(digits-1-e)
    int shift = digits - 1 - e;
    BigInt n = num, d = den;
    if (shift >= 0) n *= pow10_big(shift);
    else d *= pow10_big(-shift);
    BigInt mant = truncate ? BigInt(n / d) : BigInt((2 * n + d) / (2 * d));
    if (mant == pow10_big(digits)) {
        mant /= 10;
        ++e;
    }
    std::string m = mant.str();
    std::string out = m.substr(0, 1);
    if (digits > 1) out += "." + m.substr(1);
    char exp[16];
    std::snprintf(exp, sizeof exp, "e%c%02d", e < 0 ? '-' : '+', e < 0 ? -e : e);
    return out + exp;
}

}  // namespace pcert

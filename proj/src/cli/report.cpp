#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "kv.hpp"
#include "pcert/cli.hpp"

namespace pcert {

double two_sin_pi_18() { return 2.0 * std::sin(std::numbers::pi / 18.0); }

const std::vector<KnownValue>& known_values()
{
    static const std::vector<KnownValue> values = {
        {"square", Mode::bond, "1/2", 0.5},
        {"triangular", Mode::site, "1/2", 0.5},
        {"triangular", Mode::bond, "2 sin(pi/18)", two_sin_pi_18()},
        {"hexagonal", Mode::bond, "1 - 2 sin(pi/18)", 1.0 - two_sin_pi_18()},
        {"kagome", Mode::site, "1 - 2 sin(pi/18)", 1.0 - two_sin_pi_18()},
        {"3.12.12", Mode::site, "sqrt(1 - 2 sin(pi/18))", std::sqrt(1.0 - two_sin_pi_18())},
    };
    return values;
}

const KnownValue* find_known_value(std::string_view lattice, Mode mode)
{
    for (const auto& k : known_values())
        if (k.lattice == lattice && k.mode == mode) return &k;
    return nullptr;
}

double wu_polynomial(double p)
{
    return ((((p - 6) * p + 12) * p - 6) * p - 3) * p * p + 1;
}

double wu_root()
{
    double lo = 0.0, hi = 1.0;   // wu_polynomial(0) = 1 > 0 > -1 = wu_polynomial(1)
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (wu_polynomial(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

const std::vector<Conjecture>& conjectures()
{
    static const std::vector<Conjecture> list = {
        {"Wu", "kagome", Mode::bond, 0.524429},
        {"Tsallis", "kagome", Mode::bond, 0.522372},
        {"Tsallis", "3.12.12", Mode::bond, 0.739830},
    };
    return list;
}

IntervalLine parse_interval_line(std::string_view line)
{
    if (line.rfind("interval ", 0) != 0) throw ConfigError("interval line must start with 'interval'");
    auto kv = detail::parse_pairs(line.substr(9), "interval line");
    IntervalLine iv;
    iv.target = detail::need(kv, "target", "interval line");
    iv.mode = parse_mode(detail::need(kv, "mode", "interval line"));
    iv.lower = Decimal::parse(detail::need(kv, "lower", "interval line"));
    iv.upper = Decimal::parse(detail::need(kv, "upper", "interval line"));
    if (iv.upper < iv.lower) throw ConfigError("interval line: lower above upper for " + iv.target);
    return iv;
}

std::string format_interval_line(const IntervalLine& iv)
{
    return "interval target=" + iv.target + " mode=" + to_string(iv.mode) + " lower=" + iv.lower.str() +
           " upper=" + iv.upper.str();
}

ReportInput read_report_input(const std::string& text)
{
    ReportInput in;
    std::istringstream is(text);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        try {
            if (line.rfind("record ", 0) == 0) in.records.push_back(parse_record(line));
            else if (line.rfind("interval ", 0) == 0) in.intervals.push_back(parse_interval_line(line));
            else throw ConfigError("expected a 'record' or 'interval' line");
        } catch (const std::exception& e) {
            throw ConfigError("report input line " + std::to_string(n) + ": " + e.what());
        }
    }
    return in;
}

std::optional<IntervalLine> interval_for(const ReportInput& in, std::string_view target, Mode mode)
{
    bool any = false;
    for (const auto& r : in.records)
        if (r.target == target && r.mode == mode) any = true;
    if (any) {
        ConfidenceInterval ci = assemble_interval(std::string(target), mode, in.records);
        return IntervalLine{std::string(target), mode, ci.lower, ci.upper};
    }
    std::optional<IntervalLine> out;
    for (const auto& iv : in.intervals)
        if (iv.target == target && iv.mode == mode) out = iv;   // last one wins
    return out;
}

ConjectureStatus check_conjecture(const Conjecture& c, const ReportInput& in)
{
    auto iv = interval_for(in, c.lattice, c.mode);
    if (!iv) return ConjectureStatus::no_interval;
    const bool inside = iv->lower.to_double() <= c.value && c.value <= iv->upper.to_double();
    return inside ? ConjectureStatus::not_excluded : ConjectureStatus::excluded;
}

std::string format_width(const Decimal& w)
{
    if (w.units() == 0) return "0";
    std::string digits = std::to_string(w.units());
    int places = w.places();
    while (digits.size() > 1 && digits.back() == '0') {
        digits.pop_back();
        --places;
    }
    const int exponent = static_cast<int>(digits.size()) - 1 - places;
    std::string mant = digits.substr(0, 1);
    if (digits.size() > 1) mant += "." + digits.substr(1);
    if (exponent == 0) return mant;
    static const char* sup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string e = exponent < 0 ? "⁻" : "";
    for (char c : std::to_string(std::abs(exponent))) e += sup[c - '0'];
    return mant + "×10" + e;
}

namespace {

std::size_t display_width(const std::string& s)
{
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

std::string pad(const std::string& s, std::size_t w)
{
    const std::size_t d = display_width(s);
    return d >= w ? s + " " : s + std::string(w - d, ' ');
}

std::string fixed8(double v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(8) << v;
    return os.str();
}

std::pair<std::string, std::string> cell(const ReportInput& in, const std::string& lattice, Mode mode)
{
    if (const KnownValue* k = find_known_value(lattice, mode)) {
        if (k->expression == "1/2") return {"0.5 (exact)", "0"};
        return {fixed8(k->value) + " = " + k->expression, "0"};
    }
    auto iv = interval_for(in, lattice, mode);
    if (!iv) return {"-", "-"};
    return {"[" + iv->lower.str() + "," + iv->upper.str() + "]", format_width(iv->upper - iv->lower)};
}

}  // namespace

std::string render_report(const ReportInput& in)
{
    std::ostringstream os;
    os << pad("lattice", 14) << pad("site", 40) << pad("width", 11) << pad("bond", 40) << "width\n";
    for (const auto& e : archimedean_catalog()) {
        auto [site, sw] = cell(in, e.name, Mode::site);
        auto [bond, bw] = cell(in, e.name, Mode::bond);
        os << pad(e.display, 14) << pad(site, 40) << pad(sw, 11) << pad(bond, 40) << bw << "\n";
    }

    os << "\nconstants\n";
    os << "  2 sin(pi/18)            = " << fixed8(two_sin_pi_18()) << "\n";
    os << "  1 - 2 sin(pi/18)        = " << fixed8(1.0 - two_sin_pi_18()) << "\n";
    os << "  sqrt(1 - 2 sin(pi/18))  = " << fixed8(std::sqrt(1.0 - two_sin_pi_18())) << "\n";
    os << "  root of p^6-6p^5+12p^4-6p^3-3p^2+1 in (0,1) = " << fixed8(wu_root()) << "\n";

    os << "\nconjectures\n";
    for (const auto& c : conjectures()) {
        std::ostringstream v;
        v << std::fixed << std::setprecision(6) << c.value;
        os << "  " << pad(c.author, 9) << pad(c.lattice + " " + to_string(c.mode), 14) << pad(v.str(), 10);
        auto iv = interval_for(in, c.lattice, c.mode);
        switch (check_conjecture(c, in)) {
        case ConjectureStatus::excluded:
            os << "excluded at 99.9999% (outside [" << iv->lower.str() << "," << iv->upper.str() << "])\n";
            break;
        case ConjectureStatus::not_excluded:
            os << "not excluded (inside [" << iv->lower.str() << "," << iv->upper.str() << "])\n";
            break;
        case ConjectureStatus::no_interval:
            os << "no interval available\n";
            break;
        }
    }
    return os.str();
}

}  // namespace pcert

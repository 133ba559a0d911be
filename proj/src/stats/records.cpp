#include "pcert/stats.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace pcert {

std::string to_string(BoundSide s) { return s == BoundSide::upper ? "upper" : "lower"; }

// One line per attempt:
// record target=T lattice=L mode=M side=S attempt=K scale=s p=P trials=N
//   seed=B threshold=m0 orientations=h[,v] counts=m[,m'] verdict=pass|fail
//   error=1.149e-07 (NUM/DEN)
std::string format_record(const RunRecord& r)
{
    std::ostringstream os;
    os << "record target=" << r.target << " lattice=" << r.lattice << " mode=" << to_string(r.mode)
       << " side=" << to_string(r.side) << " attempt=" << r.attempt << " scale=" << r.scale << " p=" << r.p.str()
       << " trials=" << r.trials << " seed=" << r.base_seed << " threshold=" << r.threshold << " orientations=";
    for (std::size_t i = 0; i < r.counts.size(); ++i) os << (i ? "," : "") << to_string(r.counts[i].orientation);
    os << " counts=";
    for (std::size_t i = 0; i < r.counts.size(); ++i) os << (i ? "," : "") << r.counts[i].successes;
    os << " verdict=" << (r.pass ? "pass" : "fail") << " error=" << to_scientific(r.error_bound, 4) << " ("
       << boost::multiprecision::numerator(r.error_bound).str() << "/"
       << boost::multiprecision::denominator(r.error_bound).str() << ")";
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

RunRecord parse_record(std::string_view line_view)
{
    std::string line(line_view);
    auto fail = [&](const std::string& what) -> RunRecord {
        throw std::runtime_error("malformed record (" + what + "): " + line.substr(0, 120));
    };
    if (line.rfind("record ", 0) != 0) return fail("missing 'record' tag");
    auto err = line.find(" error=");
    if (err == std::string::npos) return fail("missing error");
    std::map<std::string, std::string> kv;
    {
        std::istringstream in(line.substr(7, err - 7));
        std::string tok;
        while (in >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) return fail("token without '='");
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }
    auto need = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error(std::string("malformed record (missing ") + key + ")");
        return it->second;
    };
    RunRecord r;
    r.target = need("target");
    r.lattice = need("lattice");
    r.mode = parse_mode(need("mode"));
    const std::string& side = need("side");
    if (side == "upper") r.side = BoundSide::upper;
    else if (side == "lower") r.side = BoundSide::lower;
    else return fail("side");
    r.attempt = std::stoi(need("attempt"));
    r.scale = std::stoi(need("scale"));
    r.p = Decimal::parse(need("p"));
    r.trials = std::stoi(need("trials"));
    r.base_seed = static_cast<std::uint32_t>(std::stoul(need("seed")));
    r.threshold = std::stoi(need("threshold"));
    auto orients = split(need("orientations"), ',');
    auto counts = split(need("counts"), ',');
    if (orients.size() != counts.size()) return fail("orientation/count mismatch");
    for (std::size_t i = 0; i < orients.size(); ++i)
        r.counts.push_back({parse_orientation(orients[i]), std::stoll(counts[i])});
    const std::string& verdict = need("verdict");
    if (verdict != "pass" && verdict != "fail") return fail("verdict");
    r.pass = verdict == "pass";

    auto open = line.find('(', err), slash = line.find('/', err), close = line.find(')', err);
    if (open == std::string::npos || slash == std::string::npos || close == std::string::npos) return fail("exact error");
    r.error_bound = Rational(BigInt(line.substr(open + 1, slash - open - 1)), BigInt(line.substr(slash + 1, close - slash - 1)));
    return r;
}

std::vector<RunRecord> read_records(const std::string& text)
{
    std::vector<RunRecord> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("record ", 0) == 0) out.push_back(parse_record(line));
    }
    return out;
}

}  // namespace pcert

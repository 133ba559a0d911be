#include "pcert/lattice.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace pcert {

namespace {

struct Line {
    int number;
    std::vector<std::string_view> tokens;
};

[[noreturn]] void fail(int line, const std::string& what)
{
    throw LatticeError("line " + std::to_string(line) + ": " + what);
}

int to_int(const Line& l, std::size_t i)
{
    if (i >= l.tokens.size()) fail(l.number, "missing integer field");
    int v = 0;
    auto tok = l.tokens[i];
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(l.number, "expected an integer, got '" + std::string(tok) + "'");
    return v;
}

void expect_fields(const Line& l, std::size_t n)
{
    if (l.tokens.size() != n)
        fail(l.number, "'" + std::string(l.tokens[0]) + "' expects " + std::to_string(n - 1) + " fields, got " +
                           std::to_string(l.tokens.size() - 1));
}

}  // namespace

LatticeRep parse_lattice(std::string_view text)
{
    LatticeRep lat;
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line l{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
            if (j > i) l.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (!l.tokens.empty()) lines.push_back(std::move(l));
        if (end == text.size()) break;
    }

    bool have_period = false;
    std::vector<const Line*> edge_lines, face_lines;
    for (const auto& l : lines) {
        std::string_view key = l.tokens[0];
        if (key == "name") {
            expect_fields(l, 2);
            lat.name = std::string(l.tokens[1]);
        } else if (key == "mode") {
            expect_fields(l, 2);
            if (l.tokens[1] == "site") lat.mode_hint = ModeHint::site;
            else if (l.tokens[1] == "bond") lat.mode_hint = ModeHint::bond;
            else if (l.tokens[1] == "both") lat.mode_hint = ModeHint::both;
            else fail(l.number, "mode must be site, bond or both");
        } else if (key == "period") {
            expect_fields(l, 2);
            lat.period = to_int(l, 1);
            have_period = true;
        } else if (key == "ratio") {
            expect_fields(l, 2);
            lat.ratio = to_int(l, 1);
        } else if (key == "parity") {
            expect_fields(l, 2);
            if (l.tokens[1] == "any") lat.parity = Parity::any;
            else if (l.tokens[1] == "even") lat.parity = Parity::even;
            else if (l.tokens[1] == "odd") lat.parity = Parity::odd;
            else fail(l.number, "parity must be any, even or odd");
        } else if (key == "symmetric") {
            expect_fields(l, 2);
            if (l.tokens[1] == "true") lat.symmetric = true;
            else if (l.tokens[1] == "false") lat.symmetric = false;
            else fail(l.number, "symmetric must be true or false");
        } else if (key == "vertex") {
            expect_fields(l, 3);
            lat.vertices.push_back({to_int(l, 1), to_int(l, 2)});
        } else if (key == "edge") {
            expect_fields(l, 7);
            edge_lines.push_back(&l);
        } else if (key == "face") {
            int k = to_int(l, 1);
            if (k < 1) fail(l.number, "face length must be positive");
            expect_fields(l, 2 + 4 * static_cast<std::size_t>(k));
            face_lines.push_back(&l);
        } else {
            fail(l.number, "unknown keyword '" + std::string(key) + "'");
        }
    }
    if (lat.name.empty()) throw LatticeError("missing 'name'");
    if (!have_period) throw LatticeError("missing 'period'");

    std::map<GridPoint, int> index;
    for (std::size_t i = 0; i < lat.vertices.size(); ++i) index.emplace(lat.vertices[i], static_cast<int>(i));
    auto lookup = [&](const Line& l, int x, int y, const char* what) {
        auto it = index.find({x, y});
        if (it == index.end())
            throw LatticeError("lattice '" + lat.name + "': invariant violated: " + what + " (" + std::to_string(x) +
                               "," + std::to_string(y) + ") references an undeclared vertex (line " +
                               std::to_string(l.number) + ")");
        return it->second;
    };
    for (const Line* l : edge_lines) {
        PeriodicEdge e;
        e.from = lookup(*l, to_int(*l, 1), to_int(*l, 2), "edge endpoint");
        e.to = lookup(*l, to_int(*l, 3), to_int(*l, 4), "edge endpoint");
        e.cell = {to_int(*l, 5), to_int(*l, 6)};
        lat.edges.push_back(e);
    }
    for (const Line* l : face_lines) {
        int k = to_int(*l, 1);
        Face f;
        for (int m = 0; m < k; ++m) {
            std::size_t b = 2 + 4 * static_cast<std::size_t>(m);
            f.push_back({lookup(*l, to_int(*l, b), to_int(*l, b + 1), "face corner"), {to_int(*l, b + 2), to_int(*l, b + 3)}});
        }
        lat.faces.push_back(std::move(f));
    }

    validate(lat);
    return lat;
}

LatticeRep load_lattice_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw LatticeError("cannot open lattice file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_lattice(ss.str());
    } catch (const LatticeError& e) {
        throw LatticeError(path.filename().string() + ": " + e.what());
    }
}

}  // namespace pcert

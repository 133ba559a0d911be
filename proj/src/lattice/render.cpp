#include "pcert/lattice.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace pcert {

namespace {

// Every edge instance generated from the cells of the window. Edges that leave
// the window are kept; the text canvas drops what falls outside.
std::set<std::pair<GridPoint, GridPoint>> segments(const LatticeRep& lat, int cells_x, int cells_y)
{
    std::set<std::pair<GridPoint, GridPoint>> out;
    for (int cx = 0; cx < cells_x; ++cx)
        for (int cy = 0; cy < cells_y; ++cy)
            for (const auto& e : lat.edges) {
                GridPoint a = lat.position(e.from, {cx, cy});
                GridPoint b = lat.position(e.to, CellOffset{cx, cy} + e.cell);
                out.insert(a < b ? std::pair{a, b} : std::pair{b, a});
            }
    return out;
}

}  // namespace

std::string render_text(const LatticeRep& lat, int cells_x, int cells_y)
{
    // Two characters per grid unit both ways: grid points land on even
    // positions, so unit and diagonal edges get one character between ends.
    constexpr int k = 2;
    const int W = lat.period * cells_x, H = lat.period * cells_y;
    const int cols = W * k + 1, rows = H * k + 1;
    std::vector<std::string> canvas(rows, std::string(cols, ' '));
    auto put = [&](int col, int row_up, char c) {
        const int row = rows - 1 - row_up;
        if (col < 0 || col >= cols || row < 0 || row >= rows) return;
        char& cell = canvas[row][col];
        if (cell == 'o') return;
        cell = (cell == ' ' || cell == c) ? c : '*';
    };
    for (auto [a, b] : segments(lat, cells_x, cells_y)) {
        const int dx = (b.x - a.x) * k, dy = (b.y - a.y) * k;
        const char c = dy == 0 ? '-' : dx == 0 ? '|' : (dx > 0) == (dy > 0) ? '/' : '\\';
        const int steps = std::max(std::abs(dx), std::abs(dy));
        for (int i = 1; i < steps; ++i)
            if ((dx * i) % steps == 0 && (dy * i) % steps == 0)   // character-aligned points only
                put(a.x * k + dx * i / steps, a.y * k + dy * i / steps, c);
    }
    for (int cx = 0; cx < cells_x; ++cx)
        for (int cy = 0; cy < cells_y; ++cy)
            for (int v = 0; v < static_cast<int>(lat.vertices.size()); ++v) {
                GridPoint p = lat.position(v, {cx, cy});
                const int col = p.x * k, row = rows - 1 - p.y * k;
                if (col >= 0 && col < cols && row >= 0 && row < rows) canvas[row][col] = 'o';
            }
    std::ostringstream os;
    os << "# " << lat.name << ": period " << lat.period << ", uncompacted drawing, " << cells_x << "x" << cells_y
       << " cells\n";
    bool started = false;
    for (auto& line : canvas) {
        while (!line.empty() && line.back() == ' ') line.pop_back();
        if (line.empty() && !started) continue;
        started = true;
        os << line << "\n";
    }
    return os.str();
}

std::string render_svg(const LatticeRep& lat, int cells_x, int cells_y)
{
    constexpr int unit = 20, margin = 20;
    const int W = lat.period * cells_x, H = lat.period * cells_y;
    auto X = [&](int x) { return margin + x * unit; };
    auto Y = [&](int y) { return margin + (H - y) * unit; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W * unit + 2 * margin << "\" height=\""
       << H * unit + 2 * margin << "\">\n";
    os << "<title>" << lat.name << "</title>\n<g stroke=\"black\" stroke-width=\"1.5\">\n";
    for (auto [a, b] : segments(lat, cells_x, cells_y))
        os << "<line x1=\"" << X(a.x) << "\" y1=\"" << Y(a.y) << "\" x2=\"" << X(b.x) << "\" y2=\"" << Y(b.y)
           << "\"/>\n";
    os << "</g>\n<g fill=\"black\">\n";
    for (int cx = 0; cx < cells_x; ++cx)
        for (int cy = 0; cy < cells_y; ++cy)
            for (int v = 0; v < static_cast<int>(lat.vertices.size()); ++v) {
                GridPoint p = lat.position(v, {cx, cy});
                os << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"3\"/>\n";
            }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace pcert

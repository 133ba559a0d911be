#include "pcert/lattice.hpp"

#include <algorithm>

namespace pcert {

const std::vector<CatalogEntry>& archimedean_catalog()
{
    // Table order; an empty dual name means that critical value is known
    // exactly and no lower-bound run is needed.
    static const std::vector<CatalogEntry> entries = {
        {"square", "Square", "square", "square-site-dual"},
        {"triangular", "Triangular", "hexagonal", "triangular"},
        {"hexagonal", "Hexagonal", "triangular", "hexagonal-site-dual"},
        {"kagome", "Kagome", "kagome-bond-dual", ""},
        {"3.12.12", "(3,12^2)", "3.12.12-bond-dual", ""},
        {"3.4.6.4", "(3,4,6,4)", "3.4.6.4-bond-dual", "3.4.6.4-site-dual"},
        {"3.3.3.4.4", "(3^3,4^2)", "3.3.3.4.4-bond-dual", "3.3.3.4.4-site-dual"},
        {"3.3.4.3.4", "(3^2,4,3,4)", "3.3.4.3.4-bond-dual", "3.3.4.3.4-site-dual"},
        {"3.3.3.3.6", "(3^4,6)", "3.3.3.3.6-bond-dual", "3.3.3.3.6-site-dual"},
        {"4.6.12", "(4,6,12)", "4.6.12-bond-dual", "4.6.12-site-dual"},
        {"4.8.8", "(4,8^2)", "4.8.8-bond-dual", "4.8.8-site-dual"},
    };
    return entries;
}

const CatalogEntry* find_catalog_entry(std::string_view name)
{
    for (const auto& e : archimedean_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

int expected_degree(std::string_view name)
{
    std::string base(name);
    if (base.size() > 5 && base.compare(base.size() - 5, 5, "-vert") == 0) base.resize(base.size() - 5);
    static const std::pair<const char*, int> degrees[] = {
        {"square", 4},   {"triangular", 6}, {"hexagonal", 3}, {"kagome", 4},    {"3.12.12", 3}, {"3.4.6.4", 4},
        {"3.3.3.4.4", 5}, {"3.3.4.3.4", 5},  {"3.3.3.3.6", 5}, {"4.6.12", 3}, {"4.8.8", 3},
    };
    for (auto [n, d] : degrees)
        if (base == n) return d;
    return 0;
}

std::filesystem::path default_data_dir() { return PCERT_DATA_DIR; }

std::filesystem::path lattice_dir(const std::optional<std::filesystem::path>& override_dir)
{
    if (override_dir) return *override_dir;
    return default_data_dir() / "lattices";
}

LatticeRep load_named_lattice(std::string_view name, const std::filesystem::path& dir)
{
    auto path = dir / (std::string(name) + ".lat");
    if (!std::filesystem::exists(path)) throw LatticeError("unknown lattice '" + std::string(name) + "' (no " + path.string() + ")");
    LatticeRep lat = load_lattice_file(path);
    if (lat.name != name) throw LatticeError(path.string() + ": file declares name '" + lat.name + "'");
    return lat;
}

std::vector<std::string> shipped_lattice_names(const std::filesystem::path& dir)
{
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".lat") names.push_back(entry.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace pcert

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pcert/lattice.hpp"

namespace test {

inline std::filesystem::path fixture(const std::string& name) { return pcert::default_data_dir() / "fixtures" / name; }

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::vector<std::uint32_t> read_u32(const std::string& name)
{
    std::ifstream in(fixture(name));
    std::vector<std::uint32_t> out;
    for (std::uint64_t v; in >> v;) out.push_back(static_cast<std::uint32_t>(v));
    return out;
}

inline const pcert::LatticeRep& shipped(const std::string& name)
{
    static std::map<std::string, pcert::LatticeRep> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, pcert::load_named_lattice(name, pcert::lattice_dir())).first;
    return it->second;
}

}  // namespace test

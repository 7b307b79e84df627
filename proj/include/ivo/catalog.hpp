#ifndef IVO_CATALOG_HPP
#define IVO_CATALOG_HPP

#include <functional>
#include <string>
#include <vector>

#include "ivo/rivf.hpp"

namespace ivo {

// Named fixtures exercised by the suites: six interval-valued functions plus
// one geodesically convex set. Keys are stable and form part of the CLI
// surface.
struct CatalogEntry {
    std::string key;
    std::string kind;  // "function" | "set"
    std::string model;
    std::string description;
    std::string anchor;  // the property the fixture is built to exhibit

    Rivf fn;  // valid when kind == "function"

    // Set fixtures: membership and a sampler staying inside the set.
    std::function<bool(const ManifoldPoint&)> member;
    std::function<ManifoldPoint(CounterRng&)> sample_member;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_get(const std::string& key);  // throws std::out_of_range
Rivf catalog_fn(const std::string& key);
bool catalog_has(const std::string& key);

}  // namespace ivo

#endif

// Disk cache for built complexes: header line plus one maximal simplex per
// line as sorted vertex payloads, bit-exact across runs, content-hashed.
#pragma once

#include <optional>
#include <string>

#include "stabverify/complexes.hpp"

namespace sv {

enum class CacheMode { Off, Read, Write, ReadWrite };

struct ComplexCache {
    std::string dir;
    CacheMode mode = CacheMode::Off;

    bool readable() const { return mode == CacheMode::Read || mode == CacheMode::ReadWrite; }
    bool writable() const { return mode == CacheMode::Write || mode == CacheMode::ReadWrite; }
};

// key: "<builder>/<ring>/<params>"; sanitized into a file name.
std::string cache_path(const ComplexCache& cache, const std::string& key);

void cache_store(const ComplexCache& cache, const std::string& key, const SimplicialComplex& x);

// nullopt on miss; corrupt files are reported through `warning` and treated
// as misses so callers rebuild.
std::optional<SimplicialComplex> cache_load(const ComplexCache& cache, const std::string& key,
                                            std::string* warning = nullptr);

}  // namespace sv

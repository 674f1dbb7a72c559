#include "stabverify/cache.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace sv {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string sanitize(const std::string& key) {
    std::string out;
    for (char c : key)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
    return out;
}

// maximal simplices: those without a coface
std::vector<std::vector<std::uint32_t>> maximal_simplices(const SimplicialComplex& x) {
    std::vector<std::vector<std::uint32_t>> out;
    const int top = x.dim();
    for (int d = 0; d <= top; ++d) {
        const std::size_t w = d + 1;
        std::unordered_set<std::uint64_t> covered;
        if (d + 1 <= top && std::size_t(d + 1) < x.simplices.size()) {
            const std::size_t wu = d + 2;
            const auto& flat = x.simplices[d + 1];
            std::vector<std::uint32_t> face(w);
            for (std::size_t s = 0; s * wu < flat.size(); ++s) {
                const std::uint32_t* verts = flat.data() + s * wu;
                for (std::size_t skip = 0; skip < wu; ++skip) {
                    std::size_t j = 0;
                    for (std::size_t i = 0; i < wu; ++i)
                        if (i != skip) face[j++] = verts[i];
                    covered.insert(pack_simplex_key(face.data(), w));
                }
            }
        }
        const auto& flat = x.simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            const std::uint32_t* verts = flat.data() + s * w;
            if (!covered.count(pack_simplex_key(verts, w)))
                out.emplace_back(verts, verts + w);
        }
    }
    return out;
}

}  // namespace

std::string cache_path(const ComplexCache& cache, const std::string& key) {
    return cache.dir + "/" + sanitize(key) + ".cx";
}

void cache_store(const ComplexCache& cache, const std::string& key, const SimplicialComplex& x) {
    if (!cache.writable()) return;
    std::filesystem::create_directories(cache.dir);

    std::ostringstream body;
    for (const auto& simplex : maximal_simplices(x)) {
        for (std::size_t i = 0; i < simplex.size(); ++i)
            body << (i ? " " : "") << x.payloads[simplex[i]];
        body << "\n";
    }
    const std::string text = body.str();
    std::ofstream f(cache_path(cache, key));
    if (!f) throw std::runtime_error("cannot write cache file for " + key);
    f << "stabverify-cache " << key << " fnv1a=" << std::hex << fnv1a(text) << std::dec << "\n";
    f << text;
}

std::optional<SimplicialComplex> cache_load(const ComplexCache& cache, const std::string& key,
                                            std::string* warning) {
    if (!cache.readable()) return std::nullopt;
    std::ifstream f(cache_path(cache, key));
    if (!f) return std::nullopt;

    std::string header;
    std::getline(f, header);
    std::ostringstream rest;
    rest << f.rdbuf();
    const std::string text = rest.str();

    std::ostringstream expect;
    expect << "stabverify-cache " << key << " fnv1a=" << std::hex << fnv1a(text) << std::dec;
    if (header != expect.str()) {
        if (warning) *warning = "cache hash mismatch for " + key + "; rebuilding";
        return std::nullopt;
    }

    // payloads ascending give the canonical vertex numbering
    std::vector<std::vector<std::uint64_t>> lines;
    std::vector<std::uint64_t> all_payloads;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::uint64_t> pl;
        std::uint64_t v;
        while (ls >> v) pl.push_back(v);
        for (auto p : pl) all_payloads.push_back(p);
        lines.push_back(std::move(pl));
    }
    std::sort(all_payloads.begin(), all_payloads.end());
    all_payloads.erase(std::unique(all_payloads.begin(), all_payloads.end()), all_payloads.end());

    SimplicialComplex x;
    for (auto p : all_payloads) x.add_vertex(p);
    for (const auto& pl : lines) {
        std::vector<std::uint32_t> verts;
        for (auto p : pl) verts.push_back(*x.vertex_of(p));
        // downward closure of the maximal simplex
        const std::size_t k = verts.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
            std::vector<std::uint32_t> face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t(1) << i)) face.push_back(verts[i]);
            x.add_simplex(face);
        }
    }
    x.freeze();
    return x;
}

}  // namespace sv

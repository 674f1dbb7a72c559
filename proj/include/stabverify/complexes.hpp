// Simplicial complexes with canonical vertex payloads, finite posets and
// order complexes, and the structural checks shared by all builders.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stabverify/ring.hpp"

namespace sv {

// Exact 64-bit key for a sorted vertex tuple of fixed length: the id width
// adapts to the tuple length and out-of-range ids are rejected, so distinct
// tuples never collide. Keys are only comparable within one dimension.
std::uint64_t pack_simplex_key(const std::uint32_t* v, std::size_t len);

// Simplices are stored as sorted vertex-id tuples, at most 8 vertices each.
// Vertex ids are dense and assigned in ascending payload order, so complexes
// built twice compare equal structurally.
class SimplicialComplex {
public:
    std::vector<std::uint64_t> payloads;  // vertex id -> payload code
    std::unordered_map<std::uint64_t, std::uint32_t> payload_index;
    // simplices[d]: flat array of (d+1)-tuples, lexicographically sorted once frozen
    std::vector<std::vector<std::uint32_t>> simplices;

    std::uint32_t add_vertex(std::uint64_t payload);
    std::optional<std::uint32_t> vertex_of(std::uint64_t payload) const;
    // verts need not be sorted; duplicates rejected. Returns false if already present.
    bool add_simplex(std::vector<std::uint32_t> verts);
    bool has_simplex(const std::uint32_t* verts, std::size_t len) const;
    bool has_simplex(const std::vector<std::uint32_t>& verts) const;

    // Sorts simplex lists; call once after building.
    void freeze();

    int dim() const { return payloads.empty() ? -1 : int(simplices.size()) - 1; }
    std::size_t count(int d) const;
    std::vector<std::size_t> f_vector() const;
    long long euler_characteristic() const;  // reduced: empty complex -> -1 convention not applied
    bool empty() const { return payloads.empty(); }

    // Every face of every simplex present, tuples sorted, vertices registered.
    void validate_closed() const;
    bool is_pure() const;

private:
    std::vector<std::unordered_set<std::uint64_t>> keys_;  // per-dim packed keys
    static std::uint64_t pack(const std::uint32_t* v, std::size_t len);
};

SimplicialComplex link_of(const SimplicialComplex& x, const std::vector<std::uint32_t>& simplex);
SimplicialComplex join_complexes(const SimplicialComplex& x, const SimplicialComplex& y);

struct SimplicialMap {
    const SimplicialComplex* src = nullptr;
    const SimplicialComplex* dst = nullptr;
    std::vector<std::uint32_t> image;  // per src vertex id

    // every simplex maps to a simplex (dimension may drop if not injective)
    bool is_simplicial() const;
    bool injective_on_simplices() const;
};

// Hatcher–Wahl complete-join property: the map is vertex-surjective, injective
// on simplices, and over each simplex of dst the preimage simplices are the
// full join of the vertex fibers.
bool complete_join_check(const SimplicialMap& pi, std::string* why = nullptr);

class Poset {
public:
    std::vector<std::string> keys;        // canonical, ascending; id = index
    std::vector<std::vector<bool>> lt;    // strict order matrix

    static Poset build(std::vector<std::string> keys,
                       const std::function<bool(std::size_t, std::size_t)>& less_by_orig_index,
                       std::vector<std::size_t>* order_out = nullptr);

    std::size_t size() const { return keys.size(); }
    bool less(std::size_t a, std::size_t b) const { return lt[a][b]; }
    std::optional<std::size_t> index_of(const std::string& key) const;

    void validate() const;  // irreflexive, antisymmetric, transitive
    int height() const;     // longest chain length - 1 (dimension of order complex)
    bool is_antichain() const;
    std::size_t relation_count() const;
    std::size_t covering_count() const;

private:
    std::unordered_map<std::string, std::size_t> index_;
};

// Vertices of the order complex carry the poset element index as payload.
SimplicialComplex order_complex(const Poset& p);

struct PosetMap {
    const Poset* src = nullptr;
    const Poset* dst = nullptr;
    std::vector<std::uint32_t> image;

    bool order_preserving(bool strict = true) const;
    bool order_reversing(bool strict = true) const;
    bool bijective() const;
    bool surjective() const;
};

}  // namespace sv

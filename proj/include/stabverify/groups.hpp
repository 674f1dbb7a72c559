// Finite matrix groups over a finite ring, their actions on complexes, and
// coinvariants of the resulting integral representations.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stabverify/complexes.hpp"
#include "stabverify/homology.hpp"
#include "stabverify/linalg.hpp"

namespace sv {

class FiniteMatrixGroup {
public:
    const Ring* ring = nullptr;
    std::size_t degree = 0;
    std::vector<Mat> elems;  // elems[0] = identity
    std::string provenance;  // "exhaustive" or "generator-closure[,unverified]"

    std::size_t order() const { return elems.size(); }
    std::uint32_t id() const { return 0; }
    std::uint32_t index_of(const Mat& m) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;  // right-to-left product a*b
    std::uint32_t inverse(std::uint32_t a) const;
    bool contains(const Mat& m) const;

    void finish();  // builds the index, moves identity first
    static std::string key_of(const Mat& m);

private:
    std::unordered_map<std::string, std::uint32_t> index_;
    mutable std::vector<std::uint32_t> inv_;
};

constexpr std::size_t kGlScanGuard = 1u << 24;
constexpr std::size_t kGroupOrderGuard = 200000;

// Full unit group of n x n matrices. Scans all |R|^(n^2) matrices when that
// fits the guard, otherwise closes the elementary + diagonal-unit generators
// and cross-checks against the scan count when both are feasible.
FiniteMatrixGroup enumerate_gl(const Ring* R, std::size_t n,
                               std::size_t scan_guard = kGlScanGuard,
                               std::size_t order_guard = kGroupOrderGuard);

// Elements fixing each vector in `fix` (v*g = v) and mapping each submodule in
// `preserve` onto itself.
FiniteMatrixGroup stabilizer_subgroup(const FiniteMatrixGroup& g, const std::vector<Vec>& fix,
                                      const std::vector<Submodule>& preserve = {});

// G/[G,G] via the relation lattice [g] + [h] - [gh].
HomologyResult abelianization(const FiniteMatrixGroup& g);

// A finitely generated abelian group with a right group action: column
// coordinate vectors, action matrices act by left multiplication, so
// rho(gh) = rho(h) * rho(g).
struct GModule {
    const FiniteMatrixGroup* group = nullptr;
    std::size_t rank = 0;                  // kernel basis size
    DMat relations;                        // rank x nrel, coordinates of boundaries
    std::vector<std::uint32_t> gen_ids;    // group elements with stored action
    std::vector<DMat> action;              // aligned with gen_ids
    std::string provenance;                // which complex / degree / group

    const DMat& action_of(std::uint32_t gid) const;

    // chain-level data (for pushforward coordinates)
    DMat kernel_basis;             // chain_dim x rank
    DMat coord_from_chain;         // rank x chain_dim (Vinv rows for kernel coords)
    std::size_t chain_dim = 0;
    std::size_t snf_rank = 0;      // rank of the boundary below

    HomologyResult group_shape() const;  // underlying abelian group
    // coordinates of a chain vector lying in the kernel
    std::vector<long long> coords_of(const std::vector<long long>& chain) const;
};

using VertexAction = std::function<std::uint32_t(std::uint32_t, const Mat&)>;

// A small verified generating set: greedy closure over heuristic candidates
// (elementary matrices, diagonal units, permutations) and, failing that, all
// elements. The returned ids generate the whole group (checked by closure).
std::vector<std::uint32_t> find_small_generating_set(const FiniteMatrixGroup& g);

// The induced right action on reduced H_degree of x. The group must permute
// vertices simplicially via `act`; throws otherwise. Action matrices are
// stored for `generator_ids` (empty = every element).
GModule action_on_homology(const FiniteMatrixGroup& g, const SimplicialComplex& x, int degree,
                           const VertexAction& act,
                           const std::vector<std::uint32_t>& generator_ids = {});

// M_G = M / span{m*g - m}, computed integrally from the stacked (g-1) blocks
// over the module's stored generators (coinvariants only need generators).
HomologyResult coinvariants(const GModule& m);

bool invert_two_vanishes(const HomologyResult& h);

// Chain map on C_degree induced by a vertex permutation, as a signed
// permutation matrix (used by the apartment machinery too).
DMat chain_map_matrix(const SimplicialComplex& x, int degree, const Mat& g,
                      const VertexAction& act);

}  // namespace sv

// Builders for the complexes and posets under study: partial-basis /
// unimodular complexes, externally augmented complexes, Tits posets and their
// relative versions, splitting posets, frame and co-frame complexes, together
// with the structural isomorphism checks between them.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabverify/complexes.hpp"
#include "stabverify/groups.hpp"
#include "stabverify/linalg.hpp"

namespace sv {

constexpr std::size_t kVectorScanGuard = 1u << 22;

Vec unit_vector(const Ring* R, std::size_t n, std::size_t i);

// Image of a submodule under a module automorphism (elementwise, exact).
Submodule submodule_apply(const Submodule& s, const Mat& m);

// Deterministic rejection sampling of invertible matrices (seeded).
std::vector<Mat> sample_gl(const Ring* R, std::size_t n, std::size_t count, std::uint64_t seed);

struct BasisComplex {
    SimplicialComplex complex;  // built by the unimodular-summand route
    const Ring* ring = nullptr;
    int n = 0, m = 0;
    bool routes_compared = false;
    bool routes_agree = true;   // partial-basis route produced the same complex
    std::string mismatch;

    Vec vertex_vector(std::uint32_t id) const;
};

// B_n(R) (m = 0) or B_n^m(R) (m > 0): vertices are vectors v in R^(m+n) with
// {e_1..e_m, v} spanning a free summand; the same complex is rebuilt through
// the subset-of-a-basis definition and compared when compare_routes is set.
// max_dim < 0 means all dimensions.
BasisComplex build_basis_complex(const Ring* R, int n, int m, int max_dim = -1,
                                 bool compare_routes = true,
                                 std::size_t guard = kVectorScanGuard);

struct BxComplex {
    SimplicialComplex complex;
    const Ring* ring = nullptr;
    int n = 0, m = 0;
    std::vector<std::size_t> standard_counts;  // per dim; rest are externally additive
    std::size_t merged_coincidences = 0;       // additive simplices that were already standard
};

// Externally augmented partial-basis complex BX^{m,gamma}_n(R).
BxComplex build_bx(const Ring* R, int n, int m, const std::vector<Vec>& gamma = {});

struct TitsPoset {
    Poset poset;
    std::vector<Submodule> elements;  // aligned with poset ids
    const Ring* ring = nullptr;
    int n = 0, m = 0;

    std::optional<std::size_t> id_of(const Submodule& s) const;
};

// Poset of nonzero proper free summands of R^n (m = 0), or of summands of
// complements of the standard R^m inside R^(m+n) (m > 0), ordered by inclusion.
TitsPoset build_tits(const Ring* R, int n, int m);

// All free summands of R^n of rank 1..n-1 (include_full adds rank n).
std::vector<Submodule> all_free_summands(const Ring* R, int n, bool include_full = false);

struct SplittingConstraints {
    std::optional<Submodule> p_below;   // require P inside this
    std::optional<Submodule> q_above;   // require this inside Q
    std::optional<Submodule> ambient;   // splittings of this module (default R^n)
};

struct SplittingPoset {
    Poset poset;
    std::vector<std::pair<Submodule, Submodule>> elements;
    const Ring* ring = nullptr;
    int n = 0;

    std::optional<std::size_t> id_of(const Submodule& p, const Submodule& q) const;
};

// Pairs (P,Q) of nonzero free submodules with P + Q a direct sum equal to the
// ambient, ordered by (P,Q) <= (P',Q') iff P inside P' and Q' inside Q.
SplittingPoset build_splitting(const Ring* R, int n, const SplittingConstraints& cons = {});

struct FrameComplex {
    SimplicialComplex complex;         // vertex payload = index into `spaces`
    std::vector<Submodule> spaces;     // lines (frames) or hyperplanes (co-frames)
    const Ring* ring = nullptr;
    int n = 0;
    bool coframe = false;
};

FrameComplex build_frames(const Ring* R, int n, bool coframe);

struct CheckReport {
    bool pass = true;
    std::string detail;
    std::size_t instances = 0;
};

// Span maps B^(n-2) -> T_n or B^m_n -> T^m_n: order-preserving with strict
// chains, surjective.
CheckReport span_map_check(const Ring* R, int n, int m);

// V -> V°: order-reversing bijection T_n(R) -> T_n(R^op), equivariant against
// the inverse-transpose on sampled group elements.
CheckReport dual_tits_check(const Ring* R, int n, std::size_t equivariance_samples = 24);

// L -> L°: simplicial isomorphism F(R^n) -> coF((R^op)^n).
CheckReport frame_coframe_check(const Ring* R, int n);

// (U,T) -> (U, T n C) against (U',T') -> (U', T' + W): mutually inverse order
// isomorphisms between the constrained splitting posets of Lemma-style cutting
// down. Throws std::invalid_argument on violated preconditions.
CheckReport cutting_down_check(const Submodule& V, const Submodule& W, const Submodule& C);

// (U,T) -> (T°, U°): order isomorphism onto the dual constrained splitting
// poset, with rank bookkeeping and sampled subgroup equivariance.
CheckReport dualizing_splitting_check(const Ring* R, int ambient_rank, const Submodule& V,
                                      std::size_t equivariance_samples = 16);

// Upper/lower/interval fibers of (relative) Tits posets against the model
// posets, via explicit quotient/restriction coordinate maps.
CheckReport fiber_isos_check(const Ring* R, int n, int m);

}  // namespace sv

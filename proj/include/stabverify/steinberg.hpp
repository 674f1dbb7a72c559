// Steinberg, relative Steinberg, and Charney modules; apartment classes and
// relative apartment symbols; generation and coinvariant-vanishing checks.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabverify/builders.hpp"
#include "stabverify/groups.hpp"
#include "stabverify/homology.hpp"

namespace sv {

struct SteinbergLikeModule {
    std::string provenance;  // which complex, degree, group
    const Ring* ring = nullptr;
    int n = 0, m = 0;
    int degree = 0;
    bool is_splitting = false;

    std::shared_ptr<FiniteMatrixGroup> group;
    TitsPoset tits;            // populated unless is_splitting
    SplittingPoset splitting;  // populated when is_splitting
    SimplicialComplex order_cx;
    GModule module;
    SphericalReport sphericity;

    HomologyResult shape() const { return module.group_shape(); }
};

// St_n(R) = H~_{n-2} of the Tits order complex (m = 0), or
// St^m_n(R) = H~_{n-1} of the relative Tits order complex (m > 0).
SteinbergLikeModule steinberg_module(const Ring* R, int n, int m);

// Ch_n(R) = H~_{n-2} of the splitting poset, or the relative Charney module
// H~_{n-rank(W)-1} of the W-constrained splitting poset.
SteinbergLikeModule charney_module(const Ring* R, int n,
                                   const std::optional<Submodule>& relative_W = {});

// Chain vector (top-degree, frozen simplex order) of the apartment class of M:
// flags of spans of row prefixes, summed with permutation signs.
std::vector<long long> apartment_class(const Mat& M, const TitsPoset& T,
                                       const SimplicialComplex& order_cx);

struct RelativeSymbol {
    std::vector<Vec> v;      // ordered simplex of B^m_n, vectors in R^(m+n)
    std::vector<Elem> r;     // nonzero coefficients
    std::vector<int> beta;   // beta[i] < m: e_{beta[i]}; else v[beta[i]-m]
    std::string str() const;
};

std::vector<RelativeSymbol> enumerate_symbols(const Ring* R, int n, int m, int j,
                                              std::size_t guard = 2000000);

std::vector<long long> relative_apartment_class(const RelativeSymbol& sym, const TitsPoset& Trel,
                                                const SimplicialComplex& order_cx);

struct GenerationReport {
    bool pass = false;
    bool equivariance_ok = false;
    std::size_t generator_count = 0;
    long long lattice_rank = 0, target_rank = 0;
    std::vector<long long> lattice_divisors;  // nontrivial SNF divisors of the class matrix
    std::string detail;
};

// The lattice spanned by all apartment classes {[M] : M in GL_n(R)} together
// with the boundaries equals the full cycle lattice.
GenerationReport verify_apartments_generate(const Ring* R, int n);

// Same for the relative apartment classes of all symbols in S^m_n.
GenerationReport verify_relative_generate(const Ring* R, int n, int m);

struct CoinvariantReport {
    HomologyResult integral;
    bool vanishes_with_two_inverted = false;
    std::string provenance;
};

CoinvariantReport verify_coinvariants_vanish(const SteinbergLikeModule& mod);

}  // namespace sv

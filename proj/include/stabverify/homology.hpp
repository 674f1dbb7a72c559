// Chain complexes and exact homology over Z, Q, F_p, and Z with 2 inverted;
// homology-level sphericity and Cohen-Macaulay verification.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "stabverify/complexes.hpp"
#include "stabverify/snf.hpp"

namespace sv {

enum class CoeffKind { Integers, Rationals, PrimeField, IntegersWithTwoInverted };

struct Coeff {
    CoeffKind kind = CoeffKind::Integers;
    long long p = 0;

    static Coeff Z() { return {CoeffKind::Integers, 0}; }
    static Coeff Q() { return {CoeffKind::Rationals, 0}; }
    static Coeff Fp(long long p) { return {CoeffKind::PrimeField, p}; }
    static Coeff Half() { return {CoeffKind::IntegersWithTwoInverted, 0}; }
    // flag grammar: "Z" | "Q" | "Fp:<p>" | "half"
    static Coeff parse(const std::string& flag);
    std::string name() const;
};

struct HomologyResult {
    long long rank = 0;
    std::vector<long long> torsion;  // divisors > 1, divisibility chain

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    bool operator==(const HomologyResult& o) const {
        return rank == o.rank && torsion == o.torsion;
    }
    std::string str() const;
    std::string json() const;  // {"rank": r, "torsion": [...]}
};

struct ChainComplex {
    int lowest = 0;                      // -1 when reduced
    std::vector<std::size_t> dims;       // dims[i] = rank of C_{lowest+i}
    std::vector<SparseIntMatrix> bnd;    // bnd[i] : C_{lowest+i} -> C_{lowest+i-1}

    int top() const { return lowest + int(dims.size()) - 1; }
    std::size_t dim_at(int deg) const;
    const SparseIntMatrix* boundary_at(int deg) const;  // null when out of range
    void verify_dd() const;                             // boundary-squared == 0
};

// Orientation comes from the sorted vertex order of each simplex.
ChainComplex chain_complex_of(const SimplicialComplex& x, bool reduced);

// Homology per degree. `up_to` limits the expensive degrees (inclusive);
// degrees above it are omitted.
std::map<int, HomologyResult> homology(const ChainComplex& c, Coeff coeff,
                                       int up_to = 1 << 20);
std::map<int, HomologyResult> reduced_homology(const SimplicialComplex& x, Coeff coeff,
                                               int up_to = 1 << 20);

// Relative homology of the pair (x, a); a must be a subcomplex of x.
std::map<int, HomologyResult> relative_homology(const SimplicialComplex& x,
                                                const SimplicialComplex& a, Coeff coeff);
ChainComplex relative_chain_complex(const SimplicialComplex& x, const SimplicialComplex& a);

struct SphericalReport {
    bool pass = false;
    bool homology_proxy = true;  // connectivity is certified at homology level only
    int dimension = -1;
    std::string detail;
};

// dim(x) == d and reduced integral homology vanishes below d.
SphericalReport verify_spherical(const SimplicialComplex& x, int d);

struct CmReport {
    bool pass = false;
    bool homology_proxy = true;
    std::string failure_witness;
    std::size_t links_checked = 0;
};

// d-spherical plus every p-simplex link (d-p-1)-spherical; first failure wins.
CmReport verify_cm(const SimplicialComplex& x, int d);

}  // namespace sv

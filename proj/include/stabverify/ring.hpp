// Finite unital rings as enumerable element tables.
//
// Supported kinds: Z/N, Galois fields F_{p^k} (fixed modulus table so runs
// are bit-for-bit reproducible), finite products, rings of upper-triangular
// matrices over a smaller ring, and the opposite ring of any of these.
// All rings are immutable after construction and safe to share.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sv {

using Elem = uint16_t;

// Thrown when an enumeration guard would be exceeded. CLI layers report this
// as "infeasible" rather than a failure.
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultRingGuard = 4096;

enum class RingKind { ZmodN, GaloisField, Product, UpperTriangular, Opposite };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring : public std::enable_shared_from_this<Ring> {
public:
    // Grammar: "Z/N" | "F_q" | "prod(R1,R2,...)" | "UT<k>(R)" | "op(R)".
    static RingPtr parse(const std::string& spec, std::size_t guard = kDefaultRingGuard);

    RingKind kind() const { return kind_; }
    std::size_t size() const { return size_; }
    const std::string& name() const { return name_; }
    bool commutative() const { return commutative_; }

    Elem zero() const { return 0; }
    Elem one() const { return one_; }

    Elem add(Elem a, Elem b) const {
        return table_backed_ ? add_tab_[a * size_ + b] : Elem((a + b) % size_);
    }
    Elem mul(Elem a, Elem b) const {
        return table_backed_ ? mul_tab_[a * size_ + b]
                             : Elem((std::uint64_t(a) * b) % size_);
    }
    Elem neg(Elem a) const { return neg_tab_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    bool is_unit(Elem a) const { return inv_tab_[a] != kNoInverse; }
    // Two-sided inverse; throws if `a` is not a unit.
    Elem inv(Elem a) const;
    const std::vector<Elem>& units() const { return units_; }

    // Same elements, multiplication reversed. op(op(R)) returns R itself.
    RingPtr opposite() const;

    // True iff for every left-unimodular pair (a,b) some a + c*b is a unit.
    // Exhaustive; guarded by total work.
    bool stable_rank_one(std::size_t work_guard = std::size_t(1) << 28) const;

    // --- kind-specific structure used by linear-algebra fast paths ---
    // ZmodN
    std::size_t zmod_n() const { return size_; }
    // GaloisField
    long gf_p() const { return gf_p_; }
    int gf_k() const { return gf_k_; }
    // Product
    const std::vector<RingPtr>& components() const { return components_; }
    Elem component_of(Elem a, std::size_t i) const;
    // UpperTriangular: matrix_size x matrix_size over ut_base(); diagonal
    // projection gives the i-th diagonal entry of an element.
    int ut_size() const { return ut_size_; }
    const RingPtr& ut_base() const { return ut_base_; }
    Elem ut_diag(Elem a, int i) const;
    // Opposite
    const RingPtr& inner() const { return inner_; }

    std::string elem_name(Elem a) const;

    // Canonical JSON block: {"kind":..., "spec":..., "elements":..., "commutative":...}
    std::string json() const;

private:
    Ring() = default;
    static RingPtr make_zmod(std::uint64_t n, std::size_t guard);
    static RingPtr make_gf(long p, int k, std::size_t guard);
    static RingPtr make_product(std::vector<RingPtr> comps, std::size_t guard);
    static RingPtr make_ut(int s, RingPtr base, std::size_t guard);
    static RingPtr make_opposite(RingPtr inner);
    void finish_tables();       // neg/units/inverse + axiom validation
    void validate_axioms() const;

    static constexpr Elem kNoInverse = 0xffff;

    RingKind kind_ = RingKind::ZmodN;
    std::string name_;
    std::size_t size_ = 0;
    Elem one_ = 1;
    bool commutative_ = true;
    bool table_backed_ = false;
    std::vector<Elem> add_tab_, mul_tab_, neg_tab_, inv_tab_;
    std::vector<Elem> units_;

    long gf_p_ = 0;
    int gf_k_ = 0;
    std::vector<RingPtr> components_;
    std::vector<std::size_t> comp_stride_;
    int ut_size_ = 0;
    RingPtr ut_base_;
    std::vector<std::pair<int, int>> ut_cells_;  // (row,col) per mixed-radix digit
    RingPtr inner_;
    mutable std::shared_ptr<const Ring> opposite_cache_;
};

}  // namespace sv

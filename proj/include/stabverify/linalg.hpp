// Exact module linear algebra over a finite ring.
//
// Conventions (fixed once, everything downstream inherits them): modules are
// left modules, vectors are rows, matrices act on row vectors from the right.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabverify/ring.hpp"

namespace sv {

struct Vec {
    const Ring* ring = nullptr;
    std::vector<Elem> c;

    std::size_t size() const { return c.size(); }
    Elem& operator[](std::size_t i) { return c[i]; }
    Elem operator[](std::size_t i) const { return c[i]; }
    bool operator==(const Vec& o) const { return c == o.c; }
};

struct Mat {
    const Ring* ring = nullptr;
    std::size_t rows = 0, cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(const Ring* R, std::size_t r, std::size_t c) : ring(R), rows(r), cols(c), a(r * c, 0) {}
    Elem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    Elem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    Vec row(std::size_t r) const;
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Dense element codes: a vector in R^n <-> integer in base |R|.
std::uint64_t vec_code(const Vec& v);
Vec vec_from_code(const Ring* R, std::size_t n, std::uint64_t code);

Mat identity_mat(const Ring* R, std::size_t n);
Mat mat_from_rows(const std::vector<Vec>& rows);
Vec vec_add(const Vec& x, const Vec& y);
Vec vec_scale(Elem r, const Vec& x);  // left scalar multiple r*x
Vec vec_mat(const Vec& x, const Mat& m);
Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_transpose_over(const Mat& m, const Ring* target_ring);

// Fixture text format: rows of comma-separated element indices, ';' between rows.
Mat parse_mat(const Ring* R, const std::string& text);
std::string format_mat(const Mat& m);

// v spans a free rank-1 summand, i.e. some right coefficient column evaluates
// to 1 on it. Fast paths per ring kind, generic search otherwise.
bool is_unimodular(const Vec& v);

// Rows form a basis of a free direct summand of R^cols, i.e. the matrix has a
// right inverse. k > cols returns false.
bool has_right_inverse(const Mat& m);
bool has_left_inverse(const Mat& m);
// Witness versions via generic span search (exact for every ring kind).
std::optional<Mat> right_inverse(const Mat& m);
std::optional<Mat> mat_inverse(const Mat& m);  // square, two-sided

bool is_partial_basis(const std::vector<Vec>& vs, std::size_t n);

// Greedy deterministic completion of a partial basis to a basis of R^n
// (lexicographic in element codes). nullopt if the input is no partial basis
// or no completion exists.
std::optional<std::vector<Vec>> extends_to_basis(const std::vector<Vec>& vs, std::size_t n,
                                                 std::size_t work_guard = 1u << 24);

// Unique canonical row form over Z/N; row span preserved, idempotent.
Mat howell_form(const Mat& m);
// Reduced row echelon form over a field.
Mat rref(const Mat& m);

constexpr std::size_t kSubmoduleGuard = 200000;

struct Submodule {
    const Ring* ring = nullptr;
    std::size_t ambient = 0;
    std::vector<std::uint64_t> elems;  // sorted element codes; canonical representation
    Mat gens;                          // some generating rows (canonical form when available)
    std::optional<int> free_rank;
    Mat witness;  // partial basis of R^ambient spanning this submodule (if free summand)

    bool contains(std::uint64_t code) const;
    bool contains_sub(const Submodule& other) const;
    std::size_t size() const { return elems.size(); }
    std::string key() const;  // canonical id string
    bool operator==(const Submodule& o) const {
        return ambient == o.ambient && elems == o.elems;
    }
};

Submodule span_submodule(const Ring* R, std::size_t n, const std::vector<Vec>& gens,
                         std::size_t guard = kSubmoduleGuard);
Submodule zero_submodule(const Ring* R, std::size_t n);
Submodule full_submodule(const Ring* R, std::size_t n);

// Determines whether s is a free direct summand of R^ambient; on success
// stores rank and a partial-basis witness in s and returns the rank.
std::optional<int> free_summand_rank(Submodule& s, std::size_t work_guard = 1u << 22);

// A free complement C with s (+) C = R^n, from deterministic basis completion.
Submodule complement_of(const Submodule& s);

// V° = {f in dual | f|_V = 0} as a submodule of (R^op)^n, via coefficient rows.
Submodule annihilator_dual(const Submodule& s);

// Evaluation pairing <x, f> = sum x_i f_i in R, x in R^n, f in (R^op)^n.
Elem dual_pairing(const Vec& x, const Vec& f);

// Matrix of (phi^{-1})^* in dual coordinates, over R^op. Throws on singular input.
Mat inverse_transpose(const Mat& m);

// Intersection/sum as element sets (same ambient module).
Submodule submodule_intersection(const Submodule& a, const Submodule& b);
std::vector<Vec> submodule_vectors(const Submodule& s);

}  // namespace sv

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stabverify/builders.hpp"
#include "stabverify/homology.hpp"

using namespace sv;

namespace {

// independent F_p rank oracle over plain integer vectors (no library code)
std::size_t fp_rank(std::vector<std::vector<int>> rows, int p) {
    std::size_t rank = 0;
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] % p == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] % p == 0) continue;
            const int a = ((rows[i][col] % p) + p) % p;
            const int b = ((rows[rank][col] % p) + p) % p;
            for (std::size_t j = 0; j < n; ++j)
                rows[i][j] = ((rows[i][j] * b - rows[rank][j] * a) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("basis complexes over F_2 against the brute-force rank oracle") {
    auto f2 = Ring::parse("F_2");

    // oracle: enumerate all subsets of nonzero vectors of F_2^3, count the
    // independent ones per size
    std::vector<std::vector<int>> vecs;
    for (int c = 1; c < 8; ++c) vecs.push_back({c & 1, (c >> 1) & 1, (c >> 2) & 1});
    std::size_t want[3] = {0, 0, 0};
    for (int mask = 1; mask < (1 << 7); ++mask) {
        std::vector<std::vector<int>> rows;
        for (int i = 0; i < 7; ++i)
            if (mask & (1 << i)) rows.push_back(vecs[i]);
        if (rows.size() > 3) continue;
        if (fp_rank(rows, 2) == rows.size()) ++want[rows.size() - 1];
    }
    CHECK(want[0] == 7);
    CHECK(want[1] == 21);
    CHECK(want[2] == 28);

    auto bc = build_basis_complex(f2.get(), 3, 0, -1, true);
    CHECK(bc.routes_agree);
    CHECK(bc.complex.f_vector() == std::vector<std::size_t>{want[0], want[1], want[2]});
}

TEST_CASE("basis complex spec examples") {
    auto f2 = Ring::parse("F_2");
    CHECK(build_basis_complex(f2.get(), 1, 0).complex.f_vector() == std::vector<std::size_t>{1});
    CHECK(build_basis_complex(f2.get(), 2, 0).complex.f_vector() ==
          std::vector<std::size_t>{3, 3});
    auto b11 = build_basis_complex(f2.get(), 1, 1);
    CHECK(b11.complex.f_vector() == std::vector<std::size_t>{2});
    // the two vertices are e_2 and e_1 + e_2
    CHECK(b11.complex.payloads == std::vector<std::uint64_t>{2, 3});
}

TEST_CASE("routes agree on every desk ring at n <= 2 including relative") {
    for (const char* spec : {"F_2", "F_3", "F_4", "Z/4", "Z/6", "UT2(F_2)", "op(UT2(F_2))"}) {
        auto R = Ring::parse(spec);
        for (int n = 1; n <= 2; ++n) {
            auto bc = build_basis_complex(R.get(), n, 0, -1, true);
            CHECK(bc.routes_agree);
        }
        auto rel = build_basis_complex(R.get(), 1, 1, -1, true);
        CHECK(rel.routes_agree);
    }
}

TEST_CASE("link of a vertex in B_3 matches the relative complex") {
    auto f2 = Ring::parse("F_2");
    auto b3 = build_basis_complex(f2.get(), 3, 0, -1, false);
    auto e1 = b3.complex.vertex_of(1);  // code of e_1
    REQUIRE(e1.has_value());
    auto lk = link_of(b3.complex, {*e1});
    auto b21 = build_basis_complex(f2.get(), 2, 1, -1, false);
    CHECK(lk.f_vector() == b21.complex.f_vector());
}

TEST_CASE("externally augmented complexes") {
    auto f2 = Ring::parse("F_2");
    {
        auto bx = build_bx(f2.get(), 1, 1);
        CHECK(bx.complex.f_vector() == std::vector<std::size_t>{2, 1});
        CHECK(bx.standard_counts == std::vector<std::size_t>{2});
        // the single edge is externally additive: {e_2, e_1 + e_2}
    }
    {
        auto bx = build_bx(f2.get(), 2, 1);
        auto bmn = build_basis_complex(f2.get(), 2, 1, -1, false);
        // B^m_n is a subcomplex: every standard simplex is present
        CHECK(bx.complex.payloads == bmn.complex.payloads);
        for (std::size_t d = 0; d < bmn.complex.simplices.size(); ++d) {
            const std::size_t w = d + 1;
            const auto& flat = bmn.complex.simplices[d];
            for (std::size_t s = 0; s * w < flat.size(); ++s) {
                std::vector<std::uint32_t> verts(flat.begin() + s * w, flat.begin() + (s + 1) * w);
                // payload-translate into bx ids
                for (auto& v : verts) v = *bx.complex.vertex_of(bmn.complex.payloads[v]);
                CHECK(bx.complex.has_simplex(verts));
            }
        }
        // negative control: not 1-spherical
        auto h = reduced_homology(bx.complex, Coeff::Z());
        CHECK_FALSE(h[1].is_zero());
    }
    // gamma must be a simplex
    Vec junk{f2.get(), {0, 0, 0}};
    CHECK_THROWS_AS(build_bx(f2.get(), 1, 1, {junk}), std::invalid_argument);
}

TEST_CASE("BX with nonempty gamma is the link plus additive simplices") {
    auto f2 = Ring::parse("F_2");
    // gamma = {e_3} inside B^1_2(F_2): BX^{1,gamma}_2 has vertices v with
    // {e_1, e_3, v} a partial basis
    Vec e3{f2.get(), {0, 0, 1}};
    auto bx = build_bx(f2.get(), 2, 1, {e3});
    CHECK(bx.complex.count(0) == 4);
    for (std::size_t d = 0; d < bx.standard_counts.size(); ++d)
        CHECK(bx.standard_counts[d] <= bx.complex.count(int(d)));
}

TEST_CASE("Tits posets") {
    auto f2 = Ring::parse("F_2");
    {
        auto t = build_tits(f2.get(), 2, 0);
        CHECK(t.poset.size() == 3);
        CHECK(t.poset.is_antichain());
    }
    {
        auto t = build_tits(f2.get(), 3, 0);
        CHECK(t.poset.size() == 14);
        CHECK(t.poset.covering_count() == 21);
        // order complex: 14 vertices, 21 edges
        auto ocx = order_complex(t.poset);
        CHECK(ocx.f_vector() == std::vector<std::size_t>{14, 21});
    }
    {
        auto t = build_tits(f2.get(), 1, 1);
        CHECK(t.poset.size() == 2);
    }
    // every element is a free summand with a witness
    auto t = build_tits(f2.get(), 3, 0);
    for (const auto& el : t.elements) {
        CHECK(el.free_rank.has_value());
        CHECK((*el.free_rank == 1 || *el.free_rank == 2));
    }
}

TEST_CASE("summands contained in summands split (enumerated)") {
    // for every V < V' in the Tits poset, V is a direct summand of V'
    for (const char* spec : {"F_2", "Z/4"}) {
        auto R = Ring::parse(spec);
        auto t = build_tits(R.get(), 3, 0);
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < t.poset.size(); ++i)
            for (std::size_t j = 0; j < t.poset.size(); ++j) {
                if (!t.poset.less(i, j)) continue;
                ++pairs;
                SplittingConstraints cons;
                cons.p_below = t.elements[i];
                cons.ambient = t.elements[j];
                auto s = build_splitting(R.get(), 3, cons);
                bool witnessed = false;
                for (const auto& [p, q] : s.elements)
                    if (p.elems == t.elements[i].elems) witnessed = true;
                CHECK(witnessed);
            }
        CHECK(pairs > 0);
    }
}

TEST_CASE("splitting posets") {
    auto f2 = Ring::parse("F_2");
    {
        auto s = build_splitting(f2.get(), 2);
        CHECK(s.poset.size() == 6);
        CHECK(s.poset.is_antichain());
    }
    CHECK(build_splitting(f2.get(), 1).poset.size() == 0);
    {
        // forced single element when V + W = R^n with complementary ranks
        SplittingConstraints cons;
        cons.p_below = span_submodule(f2.get(), 2, {unit_vector(f2.get(), 2, 0)});
        cons.q_above = span_submodule(f2.get(), 2, {unit_vector(f2.get(), 2, 1)});
        auto s = build_splitting(f2.get(), 2, cons);
        CHECK(s.poset.size() == 1);
    }
    // dimension bookkeeping: order complex of the splitting poset is (n-2)-dim
    for (const char* spec : {"F_2", "F_3"}) {
        auto R = Ring::parse(spec);
        for (int n = 2; n <= 3; ++n) {
            auto s = build_splitting(R.get(), n);
            CHECK(s.poset.height() == n - 2);
        }
    }
}

TEST_CASE("frame and co-frame complexes") {
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");
    CHECK(build_frames(f2.get(), 2, false).complex.f_vector() ==
          std::vector<std::size_t>{3, 3});
    CHECK(build_frames(f3.get(), 2, false).complex.f_vector() ==
          std::vector<std::size_t>{4, 6});
    // hyperplanes = lines when n = 2
    CHECK(build_frames(f2.get(), 2, true).complex.f_vector() ==
          build_frames(f2.get(), 2, false).complex.f_vector());
    // n = 1: one line (the module itself); one co-frame vertex (zero submodule)
    CHECK(build_frames(f2.get(), 1, false).complex.f_vector() == std::vector<std::size_t>{1});
    CHECK(build_frames(f2.get(), 1, true).complex.f_vector() == std::vector<std::size_t>{1});
}

TEST_CASE("span maps") {
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");
    CHECK(span_map_check(f2.get(), 2, 0).pass);
    CHECK(span_map_check(f2.get(), 3, 0).pass);
    CHECK(span_map_check(f3.get(), 2, 1).pass);  // exhaustive surjectivity
}

TEST_CASE("dual Tits isomorphism") {
    auto f2 = Ring::parse("F_2");
    CHECK(dual_tits_check(f2.get(), 2, 6).pass);
    CHECK(dual_tits_check(f2.get(), 3, 6).pass);

    // equivariance checked exhaustively over GL_2(F_3)
    auto f3 = Ring::parse("F_3");
    auto T = build_tits(f3.get(), 2, 0);
    auto G = enumerate_gl(f3.get(), 2);
    CHECK(G.order() == 48);
    for (const auto& phi : G.elems) {
        Mat it = inverse_transpose(phi);
        for (const auto& V : T.elements) {
            Submodule lhs = annihilator_dual(submodule_apply(V, phi));
            Submodule rhs = submodule_apply(annihilator_dual(V), it);
            CHECK(lhs.elems == rhs.elems);
        }
    }
}

TEST_CASE("frame to co-frame duality") {
    for (const char* spec : {"F_2", "F_3", "Z/4"}) {
        auto R = Ring::parse(spec);
        CHECK(frame_coframe_check(R.get(), 2).pass);
    }
    CHECK(frame_coframe_check(Ring::parse("F_2").get(), 3).pass);
}

TEST_CASE("cutting down") {
    auto f2 = Ring::parse("F_2");
    auto mk = [&](std::initializer_list<std::size_t> coords) {
        std::vector<Vec> gens;
        for (auto i : coords) gens.push_back(unit_vector(f2.get(), 3, i));
        Submodule s = span_submodule(f2.get(), 3, gens);
        s.free_rank = int(gens.size());
        s.witness = mat_from_rows(gens);
        return s;
    };
    auto rep = cutting_down_check(mk({0}), mk({2}), mk({0, 1}));
    CHECK(rep.pass);
    CHECK(rep.instances > 0);

    // degenerate V + W = M rejected
    auto f22 = [&](std::initializer_list<std::size_t> coords) {
        std::vector<Vec> gens;
        for (auto i : coords) gens.push_back(unit_vector(f2.get(), 2, i));
        Submodule s = span_submodule(f2.get(), 2, gens);
        s.free_rank = int(gens.size());
        s.witness = mat_from_rows(gens);
        return s;
    };
    CHECK_THROWS_AS(cutting_down_check(f22({0}), f22({1}), f22({0})), std::invalid_argument);
}

TEST_CASE("dualizing splittings") {
    auto f2 = Ring::parse("F_2");
    {
        Submodule V = span_submodule(f2.get(), 2, {unit_vector(f2.get(), 2, 0)});
        auto rep = dualizing_splitting_check(f2.get(), 2, V, 8);
        CHECK(rep.pass);
        CHECK(rep.instances == 2);  // two complements of a line in F_2^2
    }
    {
        Submodule V = span_submodule(f2.get(), 3, {unit_vector(f2.get(), 3, 0)});
        auto rep = dualizing_splitting_check(f2.get(), 3, V, 8);
        CHECK(rep.pass);
    }
}

TEST_CASE("fiber identifications") {
    auto f2 = Ring::parse("F_2");
    auto rep = fiber_isos_check(f2.get(), 3, 0);
    CHECK(rep.pass);
    CHECK(rep.instances > 0);
    auto rel = fiber_isos_check(f2.get(), 2, 1);
    CHECK(rel.pass);
}

TEST_CASE("builders respect sampled group actions") {
    auto f2 = Ring::parse("F_2");
    auto b3 = build_basis_complex(f2.get(), 3, 0, -1, false);
    auto samples = sample_gl(f2.get(), 3, 6, 123);
    for (const auto& phi : samples) {
        VertexAction act = [&](std::uint32_t v, const Mat& g) {
            Vec img = vec_mat(b3.vertex_vector(v), g);
            auto id = b3.complex.vertex_of(vec_code(img));
            REQUIRE(id.has_value());
            return *id;
        };
        // throws if the permutation is not simplicial
        chain_map_matrix(b3.complex, 1, phi, act);
        chain_map_matrix(b3.complex, 2, phi, act);
    }
}

TEST_CASE("complete join structures") {
    auto f3 = Ring::parse("F_3");
    // B_2(F_3) over the frame complex F_2(F_3): forget the vector, keep the line
    auto b2 = build_basis_complex(f3.get(), 2, 0, -1, false);
    auto fr = build_frames(f3.get(), 2, false);
    SimplicialMap pi;
    pi.src = &b2.complex;
    pi.dst = &fr.complex;
    pi.image.resize(b2.complex.payloads.size());
    for (std::uint32_t v = 0; v < pi.image.size(); ++v) {
        Submodule line = span_submodule(f3.get(), 2, {b2.vertex_vector(v)});
        bool found = false;
        for (std::uint32_t i = 0; i < fr.spaces.size(); ++i)
            if (fr.spaces[i].elems == line.elems) {
                pi.image[v] = *fr.complex.vertex_of(i);
                found = true;
            }
        REQUIRE(found);
    }
    CHECK(complete_join_check(pi));

    // B^1_2(F_2) over B_2(F_2): zero out the first coordinate
    auto f2 = Ring::parse("F_2");
    auto b21 = build_basis_complex(f2.get(), 2, 1, -1, false);
    auto b2f2 = build_basis_complex(f2.get(), 2, 0, -1, false);
    SimplicialMap zero;
    zero.src = &b21.complex;
    zero.dst = &b2f2.complex;
    zero.image.resize(b21.complex.payloads.size());
    for (std::uint32_t v = 0; v < zero.image.size(); ++v) {
        const std::uint64_t code = b21.complex.payloads[v];
        const std::uint64_t dropped = code / f2->size();  // forget the e_1 digit
        auto id = b2f2.complex.vertex_of(dropped);
        REQUIRE(id.has_value());
        zero.image[v] = *id;
    }
    CHECK(complete_join_check(zero));

    // the identity map is trivially a complete join
    SimplicialMap ident;
    ident.src = &b2f2.complex;
    ident.dst = &b2f2.complex;
    for (std::uint32_t v = 0; v < b2f2.complex.payloads.size(); ++v) ident.image.push_back(v);
    CHECK(complete_join_check(ident));
}

TEST_CASE("purity of the desk complexes") {
    for (const char* spec : {"F_2", "F_3", "Z/4"}) {
        auto R = Ring::parse(spec);
        CHECK(build_basis_complex(R.get(), 3, 0, -1, false).complex.is_pure());
        auto t = build_tits(R.get(), 3, 0);
        CHECK(order_complex(t.poset).is_pure());
    }
}

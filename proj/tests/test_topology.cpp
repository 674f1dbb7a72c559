#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stabverify/builders.hpp"
#include "stabverify/homology.hpp"

using namespace sv;

namespace {

SimplicialComplex sphere0(std::uint64_t base) {
    SimplicialComplex s;
    s.add_vertex(base);
    s.add_vertex(base + 1);
    s.freeze();
    return s;
}

// minimal triangulation of the real projective plane (6 vertices, 10 triangles)
SimplicialComplex rp2() {
    SimplicialComplex x;
    for (std::uint64_t v = 1; v <= 6; ++v) x.add_vertex(v);
    const int tri[10][3] = {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
                            {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}};
    for (const auto& t : tri) {
        std::vector<std::uint32_t> s;
        for (int v : t) s.push_back(*x.vertex_of(v));
        x.add_simplex({s[0], s[1]});
        x.add_simplex({s[0], s[2]});
        x.add_simplex({s[1], s[2]});
        x.add_simplex(s);
    }
    x.freeze();
    x.validate_closed();
    return x;
}

SimplicialComplex random_complex(std::mt19937_64& rng, std::uint64_t base, std::size_t nv) {
    SimplicialComplex x;
    for (std::size_t v = 0; v < nv; ++v) x.add_vertex(base + v);
    for (int t = 0; t < 6; ++t) {
        std::vector<std::uint32_t> s;
        for (std::size_t v = 0; v < nv; ++v)
            if (rng() % 2) s.push_back(std::uint32_t(v));
        if (s.size() < 2 || s.size() > 3) continue;
        // downward closure by inserting every nonempty subset
        for (std::size_t mask = 1; mask < (std::size_t(1) << s.size()); ++mask) {
            std::vector<std::uint32_t> face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (mask & (std::size_t(1) << i)) face.push_back(s[i]);
            x.add_simplex(face);
        }
    }
    x.freeze();
    x.validate_closed();
    return x;
}

}  // namespace

TEST_CASE("links") {
    // boundary of a 2-simplex: link of a vertex is two points, of an edge empty
    SimplicialComplex x;
    auto a = x.add_vertex(0), b = x.add_vertex(1), c = x.add_vertex(2);
    x.add_simplex({a, b});
    x.add_simplex({b, c});
    x.add_simplex({a, c});
    x.freeze();
    auto lk = link_of(x, {a});
    CHECK(lk.f_vector() == std::vector<std::size_t>{2});
    auto lke = link_of(x, {a, b});
    CHECK(lke.empty());
    CHECK_THROWS_AS(link_of(x, {a, b, c}), std::invalid_argument);
}

TEST_CASE("joins and their homology") {
    auto s0a = sphere0(10), s0b = sphere0(20), s0c = sphere0(30);
    auto circle = join_complexes(s0a, s0b);
    CHECK(circle.f_vector() == std::vector<std::size_t>{4, 4});
    auto h = reduced_homology(circle, Coeff::Z());
    CHECK(h[0].is_zero());
    CHECK((h[1].rank == 1 && h[1].torsion.empty()));

    auto octa = join_complexes(circle, s0c);
    CHECK(octa.f_vector() == std::vector<std::size_t>{6, 12, 8});
    auto h2 = reduced_homology(octa, Coeff::Z());
    CHECK(h2[0].is_zero());
    CHECK(h2[1].is_zero());
    CHECK((h2[2].rank == 1 && h2[2].torsion.empty()));

    // X * empty = X
    SimplicialComplex empty;
    auto same = join_complexes(circle, empty);
    CHECK(same.f_vector() == circle.f_vector());

    CHECK_THROWS_AS(join_complexes(s0a, sphere0(10)), std::invalid_argument);
}

TEST_CASE("link of a join is the join of the links") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_complex(rng, 100, 4);
        auto y = random_complex(rng, 200, 4);
        auto j = join_complexes(x, y);
        if (x.count(0) == 0 || y.count(0) == 0) continue;
        // sigma = first vertex of x, tau = first vertex of y
        auto sx = *j.vertex_of(x.payloads[0]);
        auto sy = *j.vertex_of(y.payloads[0]);
        auto lhs = link_of(j, {sx, sy});
        auto rhs = join_complexes(link_of(x, {0}), link_of(y, {0}));
        CHECK(lhs.payloads == rhs.payloads);
        CHECK(lhs.simplices == rhs.simplices);
    }
}

TEST_CASE("order complexes") {
    // antichain of 3 elements: 3 points
    Poset anti = Poset::build({"a", "b", "c"}, [](std::size_t, std::size_t) { return false; });
    CHECK(order_complex(anti).f_vector() == std::vector<std::size_t>{3});
    CHECK(anti.is_antichain());
    CHECK(anti.height() == 0);

    // chain a < b: one edge
    Poset chain = Poset::build({"a", "b"}, [](std::size_t i, std::size_t j) {
        return i == 0 && j == 1;
    });
    CHECK(order_complex(chain).f_vector() == std::vector<std::size_t>{2, 1});
}

TEST_CASE("poset validation rejects broken relations") {
    CHECK_THROWS_AS(Poset::build({"a", "b", "c"},
                                 [](std::size_t i, std::size_t j) {
                                     // a<b, b<c but not a<c: transitivity fails
                                     return (i == 0 && j == 1) || (i == 1 && j == 2);
                                 }),
                    std::logic_error);
}

TEST_CASE("chain complexes and boundary squared") {
    SimplicialComplex pt;
    pt.add_vertex(0);
    pt.freeze();
    auto h = reduced_homology(pt, Coeff::Z());
    for (const auto& [d, hr] : h) CHECK(hr.is_zero());

    auto f2 = Ring::parse("F_2");
    auto u3 = build_basis_complex(f2.get(), 3, 0, -1, false);
    auto cc = chain_complex_of(u3.complex, true);
    cc.verify_dd();

    // 3-cycle: boundary_1 has rank 2
    SimplicialComplex cyc;
    auto a = cyc.add_vertex(0), b = cyc.add_vertex(1), c = cyc.add_vertex(2);
    cyc.add_simplex({a, b});
    cyc.add_simplex({b, c});
    cyc.add_simplex({a, c});
    cyc.freeze();
    auto cc2 = chain_complex_of(cyc, false);
    CHECK(smith_normal_form(*cc2.boundary_at(1)).rank() == 2);
}

TEST_CASE("integral homology with torsion and universal coefficients") {
    auto x = rp2();
    auto hz = reduced_homology(x, Coeff::Z());
    CHECK(hz[0].is_zero());
    CHECK((hz[1].rank == 0 && hz[1].torsion == std::vector<long long>{2}));
    CHECK(hz[2].is_zero());

    // with 2 inverted everything dies
    auto hh = reduced_homology(x, Coeff::Half());
    for (const auto& [d, hr] : hh) CHECK(hr.is_zero());

    // F_2 picks up both the torsion and its shadow one degree up
    auto h2 = reduced_homology(x, Coeff::Fp(2));
    CHECK(h2[1].rank == 1);
    CHECK(h2[2].rank == 1);
    auto h3 = reduced_homology(x, Coeff::Fp(3));
    CHECK(h3[1].rank == 0);
    CHECK(h3[2].rank == 0);

    // universal coefficients consistency on a batch of desk complexes
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");
    std::vector<SimplicialComplex> desk;
    desk.push_back(build_basis_complex(f2.get(), 2, 0, -1, false).complex);
    desk.push_back(build_basis_complex(f3.get(), 2, 0, -1, false).complex);
    desk.push_back(order_complex(build_tits(f2.get(), 3, 0).poset));
    desk.push_back(rp2());
    for (const auto& X : desk) {
        auto hzz = reduced_homology(X, Coeff::Z());
        for (long long p : {2, 3, 5}) {
            auto hp = reduced_homology(X, Coeff::Fp(p));
            for (const auto& [d, hr] : hp) {
                auto count_p = [&](int deg) {
                    long long c = 0;
                    auto it = hzz.find(deg);
                    if (it == hzz.end()) return 0LL;
                    for (auto t : it->second.torsion)
                        if (t % p == 0) ++c;
                    return c;
                };
                const long long want =
                    (hzz.count(d) ? hzz[d].rank : 0) + count_p(d) + count_p(d - 1);
                CHECK(hr.rank == want);
            }
        }
    }
}

TEST_CASE("relative homology") {
    auto f2 = Ring::parse("F_2");
    auto x = build_basis_complex(f2.get(), 2, 0, -1, false).complex;
    // (X, X) vanishes identically
    auto same = relative_homology(x, x, Coeff::Z());
    for (const auto& [d, hr] : same) CHECK(hr.is_zero());

    // (disc, boundary circle) has H_2 = Z
    SimplicialComplex disc;
    auto a = disc.add_vertex(0), b = disc.add_vertex(1), c = disc.add_vertex(2);
    disc.add_simplex({a, b});
    disc.add_simplex({b, c});
    disc.add_simplex({a, c});
    disc.add_simplex({a, b, c});
    disc.freeze();
    SimplicialComplex boundary;
    auto a2 = boundary.add_vertex(0), b2 = boundary.add_vertex(1), c2 = boundary.add_vertex(2);
    boundary.add_simplex({a2, b2});
    boundary.add_simplex({b2, c2});
    boundary.add_simplex({a2, c2});
    boundary.freeze();
    auto rel = relative_homology(disc, boundary, Coeff::Z());
    CHECK(rel[0].is_zero());
    CHECK(rel[1].is_zero());
    CHECK((rel[2].rank == 1 && rel[2].torsion.empty()));

    SimplicialComplex stranger;
    stranger.add_vertex(99);
    stranger.freeze();
    CHECK_THROWS_AS(relative_homology(disc, stranger, Coeff::Z()), std::invalid_argument);
}

TEST_CASE("sphericity and Cohen-Macaulay verification") {
    auto f2 = Ring::parse("F_2");
    auto b2 = build_basis_complex(f2.get(), 2, 0, -1, false).complex;
    CHECK(verify_spherical(b2, 1).pass);
    CHECK_FALSE(verify_spherical(b2, 2).pass);

    SimplicialComplex empty;
    CHECK(verify_spherical(empty, -1).pass);

    auto bx = build_bx(f2.get(), 2, 1);
    CHECK_FALSE(verify_spherical(bx.complex, 1).pass);

    CHECK(verify_cm(b2, 1).pass);
    auto b3 = build_basis_complex(f2.get(), 3, 0, -1, false).complex;
    CHECK(verify_cm(b3, 2).pass);
    auto t3 = order_complex(build_tits(f2.get(), 3, 0).poset);
    CHECK(verify_cm(t3, 1).pass);

    // a complex with a dangling edge is not CM at its dimension
    SimplicialComplex bad;
    auto a = bad.add_vertex(0), b = bad.add_vertex(1), c = bad.add_vertex(2), d = bad.add_vertex(3);
    bad.add_simplex({a, b});
    bad.add_simplex({b, c});
    bad.add_simplex({a, c});
    bad.add_simplex({a, b, c});
    bad.add_simplex({c, d});
    bad.freeze();
    CHECK_FALSE(verify_cm(bad, 2).pass);
}

TEST_CASE("Euler characteristic against rational Betti numbers") {
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");
    std::vector<SimplicialComplex> desk;
    desk.push_back(build_basis_complex(f2.get(), 3, 0, -1, false).complex);
    desk.push_back(build_basis_complex(f3.get(), 2, 0, -1, false).complex);
    desk.push_back(rp2());
    for (const auto& X : desk) {
        auto h = reduced_homology(X, Coeff::Q());
        long long chi = 0;
        for (const auto& [d, hr] : h)
            if (d >= 0) chi += (d % 2 == 0 ? 1 : -1) * hr.rank;
        CHECK(chi == X.euler_characteristic() - 1);
    }
}

TEST_CASE("purity flags") {
    auto f2 = Ring::parse("F_2");
    auto b3 = build_basis_complex(f2.get(), 3, 0, -1, false).complex;
    CHECK(b3.is_pure());
    SimplicialComplex bad;
    auto a = bad.add_vertex(0), b = bad.add_vertex(1), c = bad.add_vertex(2);
    bad.add_simplex({a, b});
    (void)c;  // isolated vertex in a 1-dimensional complex
    bad.freeze();
    CHECK_FALSE(bad.is_pure());
}

TEST_CASE("coefficient flag grammar") {
    CHECK(Coeff::parse("Z").kind == CoeffKind::Integers);
    CHECK(Coeff::parse("Q").kind == CoeffKind::Rationals);
    CHECK(Coeff::parse("half").kind == CoeffKind::IntegersWithTwoInverted);
    CHECK(Coeff::parse("Fp:5").p == 5);
    CHECK_THROWS_AS(Coeff::parse("Fp:4"), std::invalid_argument);
    CHECK_THROWS_AS(Coeff::parse("R"), std::invalid_argument);
}

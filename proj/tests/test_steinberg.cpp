#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabverify/steinberg.hpp"

using namespace sv;

TEST_CASE("Steinberg module shapes and degrees") {
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");

    auto st2 = steinberg_module(f2.get(), 2, 0);
    CHECK(st2.shape() == HomologyResult{2, {}});
    CHECK(st2.degree == 0);
    CHECK(st2.sphericity.pass);

    auto st3 = steinberg_module(f2.get(), 3, 0);
    CHECK(st3.shape() == HomologyResult{8, {}});
    CHECK(st3.degree == 1);
    CHECK(st3.order_cx.dim() == 1);  // T_n order complex is (n-2)-dimensional

    auto stf3 = steinberg_module(f3.get(), 2, 0);
    CHECK(stf3.shape() == HomologyResult{3, {}});

    auto st11 = steinberg_module(f2.get(), 1, 1);
    CHECK(st11.shape() == HomologyResult{1, {}});
    CHECK(st11.degree == 0);

    auto st12 = steinberg_module(f2.get(), 2, 1);
    CHECK(st12.degree == 1);
    CHECK(st12.order_cx.dim() == 1);  // relative Tits complexes are (n-1)-dimensional
    CHECK(st12.sphericity.pass);
    CHECK(st12.shape().torsion.empty());
}

TEST_CASE("apartment classes") {
    auto f2 = Ring::parse("F_2");
    auto st = steinberg_module(f2.get(), 2, 0);

    // identity apartment: <e_1> - <e_2>; poset keys sort e_1 < e_2 < e_1+e_2
    Mat id = identity_mat(f2.get(), 2);
    auto chain = apartment_class(id, st.tits, st.order_cx);
    CHECK(chain == std::vector<long long>{1, -1, 0});

    // swapping the two rows negates the class
    Mat swap(f2.get(), 2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    auto swapped = apartment_class(swap, st.tits, st.order_cx);
    CHECK(swapped == std::vector<long long>{-1, 1, 0});

    // the identity apartment of GL_3 is a nonzero hexagonal cycle
    auto st3 = steinberg_module(f2.get(), 3, 0);
    auto hex = apartment_class(identity_mat(f2.get(), 3), st3.tits, st3.order_cx);
    std::size_t support = 0;
    for (auto c : hex) support += (c != 0);
    CHECK(support == 6);
    auto coords = st3.module.coords_of(hex);
    bool nonzero = false;
    for (auto c : coords) nonzero |= (c != 0);
    CHECK(nonzero);

    Mat singular(f2.get(), 2, 2);
    CHECK_THROWS_AS(apartment_class(singular, st.tits, st.order_cx), std::invalid_argument);
}

TEST_CASE("apartment generation") {
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");
    {
        auto rep = verify_apartments_generate(f2.get(), 2);
        CHECK(rep.pass);
        CHECK(rep.equivariance_ok);
        CHECK(rep.generator_count == 6);
        CHECK(rep.target_rank == 2);
    }
    {
        auto rep = verify_apartments_generate(f3.get(), 2);
        CHECK(rep.pass);
        CHECK(rep.generator_count == 48);
        CHECK(rep.target_rank == 3);
    }
}

TEST_CASE("relative symbols") {
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");
    {
        auto syms = enumerate_symbols(f2.get(), 1, 1, 1);
        REQUIRE(syms.size() == 2);
        // [e_2, e_2 + e_1] and [e_1+e_2, (e_1+e_2) + e_1]
        CHECK(vec_code(syms[0].v[0]) == 2);
        CHECK(vec_code(syms[1].v[0]) == 3);
        CHECK(syms[0].beta[0] == 0);
        CHECK(syms[0].r[0] == 1);
    }
    // S^m_n(0) is a single empty symbol
    CHECK(enumerate_symbols(f2.get(), 1, 1, 0).size() == 1);
    CHECK(enumerate_symbols(f2.get(), 2, 1, 0).size() == 1);
    // 6 vertices x 2 coefficients x 1 target
    CHECK(enumerate_symbols(f3.get(), 1, 1, 1).size() == 12);

    CHECK_THROWS_AS(enumerate_symbols(f2.get(), 1, 0, 1), std::invalid_argument);
}

TEST_CASE("relative apartment classes") {
    auto f2 = Ring::parse("F_2");
    auto st = steinberg_module(f2.get(), 1, 1);
    auto syms = enumerate_symbols(f2.get(), 1, 1, 1);
    REQUIRE(syms.size() == 2);
    auto c0 = relative_apartment_class(syms[0], st.tits, st.order_cx);
    auto c1 = relative_apartment_class(syms[1], st.tits, st.order_cx);
    REQUIRE(c0.size() == 2);
    // the two symbols map to opposite generators
    CHECK(c0[0] == -c1[0]);
    CHECK(c0[1] == -c1[1]);
    CHECK((c0[0] != 0 || c0[1] != 0));

    // the sign-reversing element phi: v -> -v - r e_1 negates the class
    for (const char* spec : {"F_2", "F_3"}) {
        auto R = Ring::parse(spec);
        auto stm = steinberg_module(R.get(), 1, 1);
        auto symbols = enumerate_symbols(R.get(), 1, 1, 1);
        for (const auto& sym : symbols) {
            // build phi in the basis (e_1, v): e_1 -> e_1, v -> -v - r e_1
            Mat basis = mat_from_rows({unit_vector(R.get(), 2, 0), sym.v[0]});
            Mat action(R.get(), 2, 2);
            action.at(0, 0) = R->one();
            action.at(1, 0) = R->neg(sym.r[0]);
            action.at(1, 1) = R->neg(R->one());
            auto binv = mat_inverse(basis);
            REQUIRE(binv.has_value());
            Mat phi = mat_mul(*binv, mat_mul(action, basis));
            // phi fixes e_1 and lies in the relative group
            CHECK(vec_mat(unit_vector(R.get(), 2, 0), phi) == unit_vector(R.get(), 2, 0));

            RelativeSymbol moved = sym;
            for (auto& v : moved.v) v = vec_mat(v, phi);
            auto direct = relative_apartment_class(sym, stm.tits, stm.order_cx);
            auto negated = relative_apartment_class(moved, stm.tits, stm.order_cx);
            for (std::size_t i = 0; i < direct.size(); ++i) CHECK(direct[i] == -negated[i]);
        }
    }
}

TEST_CASE("relative generation") {
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");
    {
        auto rep = verify_relative_generate(f2.get(), 1, 1);
        CHECK(rep.pass);
        CHECK(rep.target_rank == 1);
    }
    {
        auto rep = verify_relative_generate(f3.get(), 1, 1);
        CHECK(rep.pass);
        CHECK(rep.target_rank == 2);  // three complements of <e_1> in F_3^2
    }
    {
        auto rep = verify_relative_generate(f2.get(), 2, 1);
        CHECK(rep.pass);
        CHECK(rep.equivariance_ok);
    }
}

TEST_CASE("Charney modules") {
    auto f2 = Ring::parse("F_2");
    auto f3 = Ring::parse("F_3");
    auto ch2 = charney_module(f2.get(), 2);
    CHECK(ch2.shape() == HomologyResult{5, {}});
    CHECK(ch2.sphericity.pass);
    auto ch2f3 = charney_module(f3.get(), 2);
    CHECK(ch2f3.shape() == HomologyResult{11, {}});

    // relative degree bookkeeping: Ch(R^3, <e_3>) lives in degree 3 - 1 - 1 = 1
    Submodule W = span_submodule(f2.get(), 3, {unit_vector(f2.get(), 3, 2)});
    W.free_rank = 1;
    W.witness = mat_from_rows({unit_vector(f2.get(), 3, 2)});
    auto chrel = charney_module(f2.get(), 3, W);
    CHECK(chrel.degree == 1);
    CHECK(chrel.sphericity.pass);

    CHECK_THROWS_AS(charney_module(f2.get(), 1), std::invalid_argument);
}

TEST_CASE("coinvariant reports") {
    auto f2 = Ring::parse("F_2");
    {
        auto rep = verify_coinvariants_vanish(steinberg_module(f2.get(), 2, 0));
        CHECK(rep.vanishes_with_two_inverted);
    }
    {
        auto rep = verify_coinvariants_vanish(charney_module(f2.get(), 2));
        CHECK(rep.vanishes_with_two_inverted);
    }
    {
        auto rep = verify_coinvariants_vanish(steinberg_module(f2.get(), 1, 1));
        CHECK(rep.integral == HomologyResult{0, {2}});
        CHECK(rep.vanishes_with_two_inverted);
    }
}

TEST_CASE("dual Steinberg lattices across the opposite ring") {
    // the apartment class matrices over R and R^op have the same SNF
    auto ut = Ring::parse("UT2(F_2)");
    auto compute = [](const Ring* R) {
        auto st = steinberg_module(R, 2, 0);
        const auto& G = *st.group;
        DMat classes(st.module.rank, G.order());
        for (std::size_t c = 0; c < G.order(); ++c) {
            auto coords = st.module.coords_of(apartment_class(G.elems[c], st.tits, st.order_cx));
            for (std::size_t r = 0; r < st.module.rank; ++r) classes.at(r, c) = coords[r];
        }
        return dense_snf(classes, false).divisors;
    };
    auto dR = compute(ut.get());
    auto dOp = compute(ut->opposite().get());
    CHECK(dR == dOp);
    CHECK(!dR.empty());
}

TEST_CASE("sphericity proxies carry the homology-only flag") {
    auto f2 = Ring::parse("F_2");
    auto st = steinberg_module(f2.get(), 2, 0);
    CHECK(st.sphericity.homology_proxy);
    auto cm = verify_cm(st.order_cx, st.degree);
    CHECK(cm.homology_proxy);
}

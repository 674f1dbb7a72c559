#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>

#include "stabverify/battery.hpp"
#include "stabverify/builders.hpp"
#include "stabverify/cache.hpp"
#include "stabverify/report.hpp"

using namespace sv;

namespace {

std::string strip_volatile(std::string s) {
    // wall times are the only nondeterministic field
    static const std::regex wall("\"wall_ms\": [0-9.e+-]+");
    return std::regex_replace(s, wall, "\"wall_ms\": X");
}

}  // namespace

TEST_CASE("reports are deterministic modulo timings") {
    auto a = run_profile("smoke");
    auto b = run_profile("smoke");
    CHECK(strip_volatile(a.json()) == strip_volatile(b.json()));
    CHECK(a.all_ok());
}

TEST_CASE("every anchor in a report is registered") {
    auto rep = run_profile("smoke");
    for (const auto& c : rep.checks) CHECK(anchor_known(c.anchor));
    CHECK(anchor_known("plumbing"));
    CHECK_FALSE(anchor_known("made-up-anchor"));
}

TEST_CASE("report json structure") {
    VerificationReport rep;
    rep.command = "test";
    rep.checks.push_back({"a \"quoted\" check", "plumbing", "pass", "w", 1.5});
    const std::string j = rep.json();
    CHECK(j.find("\"schema\": 1") != std::string::npos);
    CHECK(j.find("\\\"quoted\\\"") != std::string::npos);
    CHECK(rep.all_ok());
    rep.checks.push_back({"bad", "plumbing", "fail", "", 0});
    CHECK_FALSE(rep.all_ok());
    rep.checks.back().status = "infeasible";
    CHECK(rep.all_ok());
}

TEST_CASE("complex cache round trip") {
    const std::string dir = std::filesystem::temp_directory_path() / "stabverify-cache-test";
    std::filesystem::remove_all(dir);
    ComplexCache cache{dir, CacheMode::ReadWrite};

    auto f2 = Ring::parse("F_2");
    auto built = build_basis_complex(f2.get(), 3, 0, -1, false);
    cache_store(cache, "B/F_2/n3-m0", built.complex);

    auto loaded = cache_load(cache, "B/F_2/n3-m0");
    REQUIRE(loaded.has_value());
    CHECK(loaded->payloads == built.complex.payloads);
    CHECK(loaded->simplices == built.complex.simplices);

    // corrupt the payload body: detected via the content hash, treated as a miss
    {
        std::ofstream f(cache_path(cache, "B/F_2/n3-m0"), std::ios::app);
        f << "9 9 9\n";
    }
    std::string warning;
    auto corrupt = cache_load(cache, "B/F_2/n3-m0", &warning);
    CHECK_FALSE(corrupt.has_value());
    CHECK(warning.find("hash mismatch") != std::string::npos);

    // off mode touches nothing
    ComplexCache off{dir, CacheMode::Off};
    cache_store(off, "untouched", built.complex);
    CHECK_FALSE(std::filesystem::exists(cache_path(off, "untouched")));
    CHECK_FALSE(cache_load(off, "B/F_2/n3-m0").has_value());

    // cache files are bit-exact across runs
    cache_store(cache, "again", built.complex);
    cache_store(ComplexCache{dir + "/second", CacheMode::ReadWrite}, "again", built.complex);
    std::ifstream f1(cache_path(cache, "again"));
    std::ifstream f2cmp(cache_path(ComplexCache{dir + "/second", CacheMode::ReadWrite}, "again"));
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2cmp)), std::istreambuf_iterator<char>());
    // headers embed the same key, so whole files agree
    CHECK(s1 == s2);

    std::filesystem::remove_all(dir);
}

TEST_CASE("ring json blocks") {
    auto ut = Ring::parse("UT2(F_2)");
    const std::string j = ut->json();
    CHECK(j.find("\"kind\":\"UpperTriangular\"") != std::string::npos);
    CHECK(j.find("\"elements\":8") != std::string::npos);
    CHECK(j.find("\"commutative\":false") != std::string::npos);
}

TEST_CASE("smoke profile passes and unknown profiles are rejected") {
    auto rep = run_profile("smoke");
    CHECK(rep.all_ok());
    CHECK(rep.checks.size() >= 3);
    CHECK_THROWS_AS(run_profile("bogus"), std::invalid_argument);
}

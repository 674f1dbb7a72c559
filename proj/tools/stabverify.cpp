// stabverify: build the complexes, run the verification battery, emit reports.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "stabverify/bar.hpp"
#include "stabverify/battery.hpp"
#include "stabverify/builders.hpp"
#include "stabverify/cache.hpp"
#include "stabverify/report.hpp"
#include "stabverify/steinberg.hpp"

using namespace sv;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Common {
    std::string ring = "F_2";
    int n = 2;
    int m = 0;
    std::string coeff = "half";
    int max_degree = 1;
    std::size_t guard = kDefaultRingGuard;
    std::string out;
    std::string cache_dir;
    std::string cache_mode = "rw";
};

ComplexCache make_cache(const Common& c) {
    ComplexCache cache;
    const char* env = std::getenv("STABVERIFY_CACHE");
    cache.dir = env ? env : c.cache_dir;
    if (cache.dir.empty() || c.cache_mode == "off") {
        cache.mode = CacheMode::Off;
    } else if (c.cache_mode == "read") {
        cache.mode = CacheMode::Read;
    } else if (c.cache_mode == "write") {
        cache.mode = CacheMode::Write;
    } else {
        cache.mode = CacheMode::ReadWrite;
    }
    return cache;
}

int finish(VerificationReport& rep, const Common& c) {
    const std::string text = rep.json();
    if (!c.out.empty()) {
        rep.write_file(c.out);
        std::cout << (rep.all_ok() ? "ok" : "FAIL") << ", report written to " << c.out << "\n";
    } else {
        std::cout << text;
    }
    return rep.all_ok() ? 0 : 1;
}

std::string fv_string(const SimplicialComplex& x) {
    std::string s = "(";
    auto f = x.f_vector();
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    return s + ")";
}

// builder-name dispatch shared by `build` and `homology`
SimplicialComplex build_named(const std::string& kind, const Ring* R, int n, int m,
                              std::string* describe) {
    if (kind == "B" || kind == "Brel") {
        auto bc = build_basis_complex(R, n, kind == "B" ? 0 : m, -1, false);
        *describe = "f-vector " + fv_string(bc.complex);
        return std::move(bc.complex);
    }
    if (kind == "BX") {
        auto bx = build_bx(R, n, m);
        *describe = "f-vector " + fv_string(bx.complex) + ", " +
                    std::to_string(bx.merged_coincidences) + " merged coincidences";
        return std::move(bx.complex);
    }
    if (kind == "T" || kind == "Trel") {
        auto t = build_tits(R, n, kind == "T" ? 0 : m);
        *describe = std::to_string(t.poset.size()) + " summands, " +
                    std::to_string(t.poset.covering_count()) + " covering relations";
        return order_complex(t.poset);
    }
    if (kind == "SE1" || kind == "SE1rel") {
        SplittingConstraints cons;
        if (kind == "SE1rel") {
            std::vector<Vec> gens;
            for (int i = 0; i < m; ++i) gens.push_back(unit_vector(R, std::size_t(n), n - 1 - i));
            Submodule W = span_submodule(R, std::size_t(n), gens);
            W.witness = mat_from_rows(gens);
            W.free_rank = m;
            cons.q_above = W;
        }
        auto s = build_splitting(R, n, cons);
        *describe = std::to_string(s.poset.size()) + " splittings";
        return order_complex(s.poset);
    }
    if (kind == "F" || kind == "coF") {
        auto f = build_frames(R, n, kind == "coF");
        *describe = "f-vector " + fv_string(f.complex);
        return std::move(f.complex);
    }
    throw CLI::ValidationError("unknown builder " + kind +
                               " (expected B|Brel|BX|T|Trel|SE1|SE1rel|F|coF)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact desk-scale verification of partial-basis complexes, Steinberg modules, "
                 "and homological stability ranges over small finite rings"};
    app.set_config("--config");
    app.require_subcommand(1);

    Common c;
    std::string spec, complex_kind = "B", module_kind = "St", profile = "desk";
    int nmax = 2, imax = 1;

    auto add_common = [&](CLI::App* sub, bool with_ring = true) {
        if (with_ring) sub->add_option("--ring", c.ring, "ring spec, e.g. F_2, Z/6, UT2(F_2)");
        sub->add_option("--n", c.n, "rank parameter n");
        sub->add_option("--m", c.m, "relative parameter m");
        sub->add_option("--coeff", c.coeff, "coefficients: Z | Q | Fp:<p> | half");
        sub->add_option("--max-degree", c.max_degree, "top homological degree");
        sub->add_option("--guard", c.guard, "element-count guard");
        sub->add_option("--out", c.out, "write the JSON report here");
        sub->add_option("--cache", c.cache_dir, "complex cache directory");
        sub->add_option("--cache-mode", c.cache_mode, "off | read | write | rw");
    };

    auto* ring_cmd = app.add_subcommand("ring", "parse and validate a ring");
    ring_cmd->add_option("--spec", spec, "ring spec")->required();
    add_common(ring_cmd, false);

    auto* build_cmd = app.add_subcommand("build", "build a complex or poset");
    build_cmd->add_option("--complex", complex_kind, "B|Brel|BX|T|Trel|SE1|SE1rel|F|coF");
    add_common(build_cmd);

    auto* hom_cmd = app.add_subcommand("homology", "reduced homology of a built complex");
    hom_cmd->add_option("--complex", complex_kind, "builder name");
    add_common(hom_cmd);

    auto* cm_cmd = app.add_subcommand("verify-cm", "Cohen-Macaulay verification (homology proxy)");
    cm_cmd->add_option("--complex", complex_kind, "B or T");
    add_common(cm_cmd);

    auto* st_cmd = app.add_subcommand("steinberg", "Steinberg module shape and sphericity");
    add_common(st_cmd);

    auto* gen_cmd = app.add_subcommand("relative-generators",
                                       "apartment/symbol generation of the Steinberg lattice");
    add_common(gen_cmd);

    auto* ch_cmd = app.add_subcommand("charney", "Charney module shape and sphericity");
    add_common(ch_cmd);

    auto* co_cmd = app.add_subcommand("coinvariants", "coinvariants of a Steinberg-like module");
    co_cmd->add_option("--module", module_kind, "St | Strel | Ch");
    add_common(co_cmd);

    auto* stab_cmd = app.add_subcommand("stability", "bar-resolution stability table");
    stab_cmd->add_option("--nmax", nmax, "largest GL_n");
    stab_cmd->add_option("--imax", imax, "largest homological degree");
    add_common(stab_cmd);

    auto* suite_cmd = app.add_subcommand("suite", "run a verification battery");
    suite_cmd->add_option("--profile", profile, "smoke | desk | extended");
    add_common(suite_cmd);

    CLI11_PARSE(app, argc, argv);

    VerificationReport rep;
    try {
        if (ring_cmd->parsed()) {
            rep.command = "ring --spec " + spec;
            auto t0 = Clock::now();
            auto R = Ring::parse(spec, c.guard);
            rep.ring_json = R->json();
            bool sr1 = false;
            std::string sr_status = "pass";
            try {
                sr1 = R->stable_rank_one();
            } catch (const guard_error&) {
                sr_status = "infeasible";
            }
            rep.checks.push_back({"ring axioms and units", "plumbing", "pass",
                                  std::to_string(R->units().size()) + " units of " +
                                      std::to_string(R->size()) + " elements",
                                  ms_since(t0)});
            rep.checks.push_back({"stable rank 1 (eligibility gate)", "stable-rank-one-gate",
                                  sr_status == "pass" ? (sr1 ? "pass" : "fail") : sr_status,
                                  sr1 ? "every unimodular pair shortens" : "", ms_since(t0)});
            return finish(rep, c);
        }

        if (build_cmd->parsed() || hom_cmd->parsed() || cm_cmd->parsed()) {
            auto R = Ring::parse(c.ring, c.guard);
            rep.ring_json = R->json();
            auto cache = make_cache(c);
            const std::string key = complex_kind + "/" + c.ring + "/n" + std::to_string(c.n) +
                                    "-m" + std::to_string(c.m);
            auto t0 = Clock::now();
            std::string describe;
            SimplicialComplex X;
            std::string cache_note;
            bool loaded = false;
            if (cache.readable()) {
                std::string warn;
                auto cached = cache_load(cache, key, &warn);
                if (cached) {
                    X = std::move(*cached);
                    describe = "f-vector " + fv_string(X);
                    cache_note = " (cache hit)";
                    loaded = true;
                }
                if (!warn.empty()) cache_note = " (" + warn + ")";
            }
            if (!loaded) {
                X = build_named(complex_kind, R.get(), c.n, c.m, &describe);
                if (cache.writable()) cache_store(cache, key, X);
            }

            if (build_cmd->parsed()) {
                rep.command = "build --complex " + complex_kind;
                rep.checks.push_back({"built " + key, "plumbing", "pass", describe + cache_note,
                                      ms_since(t0)});
            } else if (hom_cmd->parsed()) {
                rep.command = "homology --complex " + complex_kind;
                auto h = reduced_homology(X, Coeff::parse(c.coeff));
                std::string w;
                for (const auto& [d, hr] : h)
                    if (d >= 0) w += "H~_" + std::to_string(d) + "=" + hr.str() + " ";
                rep.checks.push_back({"homology of " + key, "plumbing", "pass", w, ms_since(t0)});
            } else {
                rep.command = "verify-cm --complex " + complex_kind;
                const int d = X.dim();
                auto cm = verify_cm(X, d);
                rep.checks.push_back({"CM of " + key,
                                      complex_kind == "T" ? "tits-order-complex-cohen-macaulay"
                                                          : "basis-complex-cohen-macaulay",
                                      cm.pass ? "pass" : "fail",
                                      cm.pass ? std::to_string(cm.links_checked) + " links checked"
                                              : cm.failure_witness,
                                      ms_since(t0)});
            }
            return finish(rep, c);
        }

        if (st_cmd->parsed() || ch_cmd->parsed()) {
            auto R = Ring::parse(c.ring, c.guard);
            rep.ring_json = R->json();
            auto t0 = Clock::now();
            SteinbergLikeModule mod = st_cmd->parsed() ? steinberg_module(R.get(), c.n, c.m)
                                                       : charney_module(R.get(), c.n);
            rep.command = (st_cmd->parsed() ? "steinberg" : "charney");
            rep.checks.push_back({mod.provenance + " shape", "steinberg-rank", "pass",
                                  mod.shape().str(), ms_since(t0)});
            rep.checks.push_back({mod.provenance + " sphericity proxy",
                                  st_cmd->parsed() ? "steinberg-rank" : "splitting-poset-spherical",
                                  mod.sphericity.pass ? "pass" : "fail", mod.sphericity.detail,
                                  ms_since(t0)});
            return finish(rep, c);
        }

        if (gen_cmd->parsed()) {
            auto R = Ring::parse(c.ring, c.guard);
            rep.ring_json = R->json();
            rep.command = "relative-generators";
            auto t0 = Clock::now();
            GenerationReport g = (c.m == 0) ? verify_apartments_generate(R.get(), c.n)
                                            : verify_relative_generate(R.get(), c.n, c.m);
            rep.checks.push_back({c.m == 0 ? "apartment classes generate" : "symbols generate",
                                  c.m == 0 ? "apartments-generate" : "relative-symbols-generate",
                                  g.pass ? "pass" : "fail",
                                  std::to_string(g.generator_count) + " generators, rank " +
                                      std::to_string(g.lattice_rank) + "/" +
                                      std::to_string(g.target_rank) + g.detail,
                                  ms_since(t0)});
            return finish(rep, c);
        }

        if (co_cmd->parsed()) {
            auto R = Ring::parse(c.ring, c.guard);
            rep.ring_json = R->json();
            rep.command = "coinvariants --module " + module_kind;
            auto t0 = Clock::now();
            SteinbergLikeModule mod = module_kind == "Ch"
                                          ? charney_module(R.get(), c.n)
                                          : steinberg_module(R.get(), c.n,
                                                             module_kind == "Strel" ? c.m : 0);
            auto co = verify_coinvariants_vanish(mod);
            const Coeff coeff = Coeff::parse(c.coeff);
            bool ok = true;
            std::string verdict = "integral " + co.integral.str();
            if (coeff.kind == CoeffKind::IntegersWithTwoInverted ||
                (coeff.kind == CoeffKind::PrimeField && coeff.p != 2)) {
                ok = co.vanishes_with_two_inverted;
                verdict += ok ? "; vanishes with 2 inverted" : "; survives inverting 2";
            }
            rep.checks.push_back({"coinvariants of " + mod.provenance,
                                  module_kind == "Ch" ? "charney-coinvariants-vanish-half"
                                                      : "coinvariants-vanish-half",
                                  ok ? "pass" : "fail", verdict, ms_since(t0)});
            return finish(rep, c);
        }

        if (stab_cmd->parsed()) {
            auto R = Ring::parse(c.ring, c.guard);
            rep.ring_json = R->json();
            rep.command = "stability";
            auto t0 = Clock::now();
            auto table = stability_table(R.get(), nmax, imax, Coeff::parse(c.coeff));
            rep.csv = table.csv();
            rep.checks.push_back({"stability table", "stability-range-slope-one",
                                  table.any_violation ? "fail" : "pass",
                                  std::to_string(table.cells.size()) + " cells", ms_since(t0)});
            return finish(rep, c);
        }

        if (suite_cmd->parsed()) {
            rep = run_profile(profile, &std::cerr);
            return finish(rep, c);
        }
    } catch (const guard_error& e) {
        rep.checks.push_back({"guarded computation", "plumbing", "infeasible", e.what(), 0});
        return finish(rep, c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

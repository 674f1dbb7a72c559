#include "stabverify/steinberg.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <random>
#include <unordered_map>

namespace sv {

namespace {

// simplex index lookup in the frozen top-degree list
std::unordered_map<std::uint64_t, std::uint32_t> simplex_index(const SimplicialComplex& x,
                                                               int degree) {
    std::unordered_map<std::uint64_t, std::uint32_t> idx;
    if (degree < 0 || degree > x.dim()) return idx;
    const std::size_t w = degree + 1;
    const auto& flat = x.simplices[degree];
    for (std::size_t s = 0; s * w < flat.size(); ++s)
        idx.emplace(pack_simplex_key(flat.data() + s * w, w), std::uint32_t(s));
    return idx;
}

// add sign * [tuple of poset ids] to the chain, sorting with parity
void accumulate_flag(std::vector<long long>& chain,
                     const std::unordered_map<std::uint64_t, std::uint32_t>& idx,
                     std::vector<std::uint32_t> verts, long long sign) {
    for (std::size_t i = 1; i < verts.size(); ++i)
        for (std::size_t j = i; j > 0 && verts[j - 1] > verts[j]; --j) {
            std::swap(verts[j - 1], verts[j]);
            sign = -sign;
        }
    auto it = idx.find(pack_simplex_key(verts.data(), verts.size()));
    if (it == idx.end()) throw std::logic_error("flag simplex missing from order complex");
    chain[it->second] += sign;
}

void assert_cycle(const SimplicialComplex& x, int degree, const std::vector<long long>& chain) {
    ChainComplex cc = chain_complex_of(x, true);
    const SparseIntMatrix* bd = cc.boundary_at(degree);
    if (!bd) return;
    std::unordered_map<std::uint32_t, long long> acc;
    for (std::size_t c = 0; c < chain.size(); ++c) {
        if (chain[c] == 0) continue;
        for (const auto& [r, v] : bd->col[c]) acc[r] += v * chain[c];
    }
    for (const auto& [r, v] : acc)
        if (v != 0) throw std::logic_error("pushforward chain is not a cycle");
}

}  // namespace

SteinbergLikeModule steinberg_module(const Ring* R, int n, int m) {
    SteinbergLikeModule out;
    out.ring = R;
    out.n = n;
    out.m = m;
    out.degree = (m == 0) ? n - 2 : n - 1;
    out.provenance = (m == 0 ? "St(" : "Strel(") + std::to_string(n) +
                     (m > 0 ? ("," + std::to_string(m)) : "") + ";" + R->name() + ")";

    out.tits = build_tits(R, n, m);
    out.order_cx = order_complex(out.tits.poset);
    out.sphericity = verify_spherical(out.order_cx, out.degree);

    auto gl = std::make_shared<FiniteMatrixGroup>(enumerate_gl(R, std::size_t(n + m)));
    if (m > 0) {
        std::vector<Vec> fix;
        for (int i = 0; i < m; ++i) fix.push_back(unit_vector(R, std::size_t(n + m), i));
        out.group = std::make_shared<FiniteMatrixGroup>(stabilizer_subgroup(*gl, fix));
    } else {
        out.group = gl;
    }

    const TitsPoset& T = out.tits;
    VertexAction act = [&T](std::uint32_t vertex, const Mat& g) -> std::uint32_t {
        Submodule img = submodule_apply(T.elements[vertex], g);
        auto id = T.poset.index_of(img.key());
        if (!id) throw std::logic_error("group action leaves the Tits poset");
        return std::uint32_t(*id);
    };
    const std::vector<std::uint32_t> gens =
        out.group->order() <= 256 ? std::vector<std::uint32_t>{}
                                  : find_small_generating_set(*out.group);
    out.module = action_on_homology(*out.group, out.order_cx, out.degree, act, gens);
    return out;
}

SteinbergLikeModule charney_module(const Ring* R, int n,
                                   const std::optional<Submodule>& relative_W) {
    SteinbergLikeModule out;
    out.ring = R;
    out.n = n;
    out.is_splitting = true;

    SplittingConstraints cons;
    if (relative_W) {
        Submodule W = *relative_W;
        auto wr = free_summand_rank(W);
        if (!wr || *wr == 0 || *wr == n)
            throw std::invalid_argument("relative Charney needs a nonzero proper free summand");
        cons.q_above = W;
        out.degree = n - *wr - 1;
        out.provenance = "Chrel(" + std::to_string(n) + ",W-rank" + std::to_string(*wr) + ";" +
                         R->name() + ")";
    } else {
        if (n < 2) throw std::invalid_argument("Charney module needs n >= 2");
        out.degree = n - 2;
        out.provenance = "Ch(" + std::to_string(n) + ";" + R->name() + ")";
    }

    out.splitting = build_splitting(R, n, cons);
    out.order_cx = order_complex(out.splitting.poset);
    out.sphericity = verify_spherical(out.order_cx, out.degree);

    auto gl = std::make_shared<FiniteMatrixGroup>(enumerate_gl(R, std::size_t(n)));
    if (relative_W) {
        std::vector<Vec> fix;
        for (std::size_t r = 0; r < relative_W->gens.rows; ++r)
            fix.push_back(relative_W->gens.row(r));
        out.group = std::make_shared<FiniteMatrixGroup>(stabilizer_subgroup(*gl, fix));
    } else {
        out.group = gl;
    }

    const SplittingPoset& S = out.splitting;
    VertexAction act = [&S](std::uint32_t vertex, const Mat& g) -> std::uint32_t {
        const auto& [P, Q] = S.elements[vertex];
        Submodule Pi = submodule_apply(P, g);
        Submodule Qi = submodule_apply(Q, g);
        auto id = S.id_of(Pi, Qi);
        if (!id) throw std::logic_error("group action leaves the splitting poset");
        return std::uint32_t(*id);
    };
    const std::vector<std::uint32_t> gens =
        out.group->order() <= 256 ? std::vector<std::uint32_t>{}
                                  : find_small_generating_set(*out.group);
    out.module = action_on_homology(*out.group, out.order_cx, out.degree, act, gens);
    return out;
}

std::vector<long long> apartment_class(const Mat& M, const TitsPoset& T,
                                       const SimplicialComplex& order_cx) {
    const Ring* R = M.ring;
    const std::size_t n = M.rows;
    if (!has_right_inverse(M)) throw std::invalid_argument("apartment class of a singular matrix");
    const int degree = int(n) - 2;
    auto idx = simplex_index(order_cx, degree);
    std::vector<long long> chain(order_cx.count(degree), 0);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
        long long sign = 1;
        {  // permutation parity
            std::vector<std::size_t> p = perm;
            for (std::size_t i = 0; i < n; ++i)
                while (p[i] != i) {
                    std::swap(p[i], p[p[i]]);
                    sign = -sign;
                }
        }
        std::vector<Vec> rows;
        std::vector<std::uint32_t> flag;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            rows.push_back(M.row(perm[j]));
            Submodule s = span_submodule(R, n, rows);
            auto id = T.poset.index_of(s.key());
            if (!id) throw std::logic_error("apartment flag misses the Tits poset");
            flag.push_back(std::uint32_t(*id));
        }
        accumulate_flag(chain, idx, flag, sign);
    } while (std::next_permutation(perm.begin(), perm.end()));

    assert_cycle(order_cx, degree, chain);
    return chain;
}

std::string RelativeSymbol::str() const {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += "*";
        s += "[v" + std::to_string(vec_code(v[i])) + ",r" + std::to_string(r[i]) + ",b" +
             std::to_string(beta[i]) + "]";
    }
    return s.empty() ? "[]" : s;
}

std::vector<RelativeSymbol> enumerate_symbols(const Ring* R, int n, int m, int j,
                                              std::size_t guard) {
    if (m < 1 || n < 1 || j < 0 || j > n) throw std::invalid_argument("enumerate_symbols ranges");
    const std::size_t N = std::size_t(n + m);
    std::vector<Vec> base;
    for (int i = 0; i < m; ++i) base.push_back(unit_vector(R, N, i));

    auto bc = build_basis_complex(R, n, m, -1, false);
    std::vector<Vec> verts;
    for (std::uint32_t v = 0; v < bc.complex.payloads.size(); ++v)
        verts.push_back(bc.vertex_vector(v));

    std::vector<RelativeSymbol> out;
    if (j == 0) {
        out.push_back({});  // the single empty symbol
        return out;
    }

    // ordered tuples whose underlying set is a simplex of B^m_n
    std::vector<std::uint32_t> pick;
    std::vector<const Vec*> sel;
    auto emit = [&](auto&& self) -> void {
        if (int(pick.size()) == j) {
            // coefficient and target loops, lexicographic
            std::vector<std::size_t> rdig(j, 0);
            std::vector<int> bdig(j, 0);
            auto rec = [&](auto&& rself, int pos) -> void {
                if (pos == j) {
                    RelativeSymbol sym;
                    for (int i = 0; i < j; ++i) {
                        sym.v.push_back(verts[pick[i]]);
                        sym.r.push_back(Elem(rdig[i] + 1));  // nonzero elements are indices 1..|R|-1
                        sym.beta.push_back(bdig[i]);
                    }
                    out.push_back(std::move(sym));
                    if (out.size() > guard) throw guard_error("symbol guard exceeded");
                    return;
                }
                for (rdig[pos] = 0; rdig[pos] < R->size() - 1; ++rdig[pos])
                    for (bdig[pos] = 0; bdig[pos] < m + pos; ++bdig[pos]) rself(rself, pos + 1);
                bdig[pos] = 0;
            };
            rec(rec, 0);
            return;
        }
        for (std::uint32_t cand = 0; cand < verts.size(); ++cand) {
            bool dup = false;
            for (auto p : pick)
                if (p == cand) dup = true;
            if (dup) continue;
            sel.push_back(&verts[cand]);
            Mat mrows(R, base.size() + sel.size(), N);
            std::size_t rr = 0;
            for (const auto& b : base) {
                std::copy(b.c.begin(), b.c.end(), mrows.a.begin() + (rr++) * N);
            }
            for (const auto* s : sel)
                std::copy(s->c.begin(), s->c.end(), mrows.a.begin() + (rr++) * N);
            if (has_right_inverse(mrows)) {
                pick.push_back(cand);
                self(self);
                pick.pop_back();
            }
            sel.pop_back();
        }
    };
    emit(emit);
    return out;
}

std::vector<long long> relative_apartment_class(const RelativeSymbol& sym, const TitsPoset& Trel,
                                                const SimplicialComplex& order_cx) {
    const std::size_t n = sym.v.size();
    if (n == 0) throw std::invalid_argument("relative class needs a full symbol");
    const Ring* R = sym.v[0].ring;
    const std::size_t N = sym.v[0].size();
    const int m = Trel.m;
    const int degree = int(n) - 1;

    // the two candidate vectors of each 0-sphere factor
    std::vector<std::array<Vec, 2>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        Vec target = (sym.beta[i] < m) ? unit_vector(R, N, sym.beta[i]) : sym.v[sym.beta[i] - m];
        pairs.push_back({sym.v[i], vec_add(sym.v[i], vec_scale(sym.r[i], target))});
    }

    auto idx = simplex_index(order_cx, degree);
    std::vector<long long> chain(order_cx.count(degree), 0);

    std::vector<std::size_t> perm(n);
    for (std::size_t choice = 0; choice < (std::size_t(1) << n); ++choice) {
        long long base_sign = (__builtin_popcountll(choice) % 2 == 0) ? 1 : -1;
        std::vector<Vec> chosen;
        for (std::size_t i = 0; i < n; ++i) chosen.push_back(pairs[i][(choice >> i) & 1]);

        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        do {
            long long sign = base_sign;
            {
                std::vector<std::size_t> p = perm;
                for (std::size_t i = 0; i < n; ++i)
                    while (p[i] != i) {
                        std::swap(p[i], p[p[i]]);
                        sign = -sign;
                    }
            }
            std::vector<Vec> rows;
            std::vector<std::uint32_t> flag;
            for (std::size_t j = 0; j < n; ++j) {
                rows.push_back(chosen[perm[j]]);
                Submodule s = span_submodule(R, N, rows);
                auto id = Trel.poset.index_of(s.key());
                if (!id)
                    throw std::invalid_argument(
                        "symbol span is not an element of the relative Tits poset");
                flag.push_back(std::uint32_t(*id));
            }
            accumulate_flag(chain, idx, flag, sign);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    assert_cycle(order_cx, degree, chain);
    return chain;
}

namespace {

// SNF criterion: the columns (class coordinates and relations) span the full
// coordinate lattice Z^rank
GenerationReport lattice_check(const GModule& mod, const std::vector<std::vector<long long>>& coords) {
    GenerationReport rep;
    rep.generator_count = coords.size();
    rep.target_rank = (long long)mod.rank;

    DMat big(mod.rank, coords.size() + mod.relations.cols);
    for (std::size_t c = 0; c < coords.size(); ++c)
        for (std::size_t r = 0; r < mod.rank; ++r) big.at(r, c) = coords[c][r];
    for (std::size_t c = 0; c < mod.relations.cols; ++c)
        for (std::size_t r = 0; r < mod.rank; ++r)
            big.at(r, coords.size() + c) = mod.relations.at(r, c);
    auto snf = dense_snf(big, false);
    rep.lattice_rank = (long long)snf.rank();
    rep.lattice_divisors = snf.torsion();
    rep.pass = (rep.lattice_rank == rep.target_rank) && rep.lattice_divisors.empty();
    if (!rep.pass)
        rep.detail = "span rank " + std::to_string(rep.lattice_rank) + " of " +
                     std::to_string(rep.target_rank) +
                     (rep.lattice_divisors.empty() ? "" : ", nontrivial divisors");
    return rep;
}

bool chains_equal_mod_relations(const GModule& mod, const std::vector<long long>& a,
                                const std::vector<long long>& b) {
    std::vector<long long> diff(mod.rank);
    for (std::size_t i = 0; i < mod.rank; ++i) diff[i] = a[i] - b[i];
    if (mod.relations.cols == 0)
        return std::all_of(diff.begin(), diff.end(), [](long long v) { return v == 0; });
    DMat with(mod.rank, mod.relations.cols + 1);
    for (std::size_t r = 0; r < mod.rank; ++r) {
        for (std::size_t c = 0; c < mod.relations.cols; ++c) with.at(r, c) = mod.relations.at(r, c);
        with.at(r, mod.relations.cols) = diff[r];
    }
    auto s0 = dense_snf(mod.relations, false);
    auto s1 = dense_snf(with, false);
    return s0.divisors == s1.divisors;
}

}  // namespace

GenerationReport verify_apartments_generate(const Ring* R, int n) {
    auto st = steinberg_module(R, n, 0);
    const auto& G = *st.group;

    std::vector<std::vector<long long>> coords;
    coords.reserve(G.order());
    for (const auto& M : G.elems)
        coords.push_back(st.module.coords_of(apartment_class(M, st.tits, st.order_cx)));
    GenerationReport rep = lattice_check(st.module, coords);

    // equivariance [M phi] = [M] . phi on sampled pairs (phi among the stored
    // generators so the action matrix is available)
    rep.equivariance_ok = true;
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 16 && rep.equivariance_ok; ++t) {
        const std::uint32_t a = std::uint32_t(rng() % G.order());
        const std::uint32_t b = st.module.gen_ids[rng() % st.module.gen_ids.size()];
        auto direct = st.module.coords_of(apartment_class(G.elems[G.mul(a, b)], st.tits, st.order_cx));
        // [M_a] . phi_b through the action matrix
        const DMat& rho = st.module.action_of(b);
        std::vector<long long> acted(st.module.rank, 0);
        for (std::size_t r = 0; r < st.module.rank; ++r)
            for (std::size_t c = 0; c < st.module.rank; ++c)
                acted[r] += rho.at(r, c) * coords[a][c];
        if (!chains_equal_mod_relations(st.module, direct, acted)) rep.equivariance_ok = false;
    }
    if (!rep.equivariance_ok) {
        rep.pass = false;
        rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("equivariance failed");
    }
    return rep;
}

GenerationReport verify_relative_generate(const Ring* R, int n, int m) {
    auto st = steinberg_module(R, n, m);
    auto symbols = enumerate_symbols(R, n, m, n);

    std::vector<std::vector<long long>> coords;
    coords.reserve(symbols.size());
    for (const auto& sym : symbols)
        coords.push_back(st.module.coords_of(relative_apartment_class(sym, st.tits, st.order_cx)));
    GenerationReport rep = lattice_check(st.module, coords);

    // equivariance on sampled (symbol, group element) pairs via the symbol action
    rep.equivariance_ok = true;
    const auto& G = *st.group;
    std::mt19937_64 rng(4321);
    for (int t = 0; t < 12 && rep.equivariance_ok && !symbols.empty(); ++t) {
        const std::size_t si = rng() % symbols.size();
        const std::uint32_t gi = st.module.gen_ids[rng() % st.module.gen_ids.size()];
        const Mat& phi = G.elems[gi];
        RelativeSymbol moved = symbols[si];
        for (auto& v : moved.v) v = vec_mat(v, phi);
        auto direct = st.module.coords_of(relative_apartment_class(moved, st.tits, st.order_cx));
        const DMat& rho = st.module.action_of(gi);
        std::vector<long long> acted(st.module.rank, 0);
        for (std::size_t r = 0; r < st.module.rank; ++r)
            for (std::size_t c = 0; c < st.module.rank; ++c)
                acted[r] += rho.at(r, c) * coords[si][c];
        if (!chains_equal_mod_relations(st.module, direct, acted)) rep.equivariance_ok = false;
    }
    if (!rep.equivariance_ok) {
        rep.pass = false;
        rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("equivariance failed");
    }
    return rep;
}

CoinvariantReport verify_coinvariants_vanish(const SteinbergLikeModule& mod) {
    CoinvariantReport rep;
    rep.integral = coinvariants(mod.module);
    rep.vanishes_with_two_inverted = invert_two_vanishes(rep.integral);
    rep.provenance = mod.provenance;
    return rep;
}

}  // namespace sv

#include "stabverify/builders.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace sv {

namespace {

double pow_size(const Ring* R, std::size_t n) {
    double t = 1;
    for (std::size_t i = 0; i < n; ++i) t *= double(R->size());
    return t;
}

// rows = base ∪ sel ∪ {extra?}; right-invertibility of the stacked matrix
bool stacked_right_invertible(const Ring* R, std::size_t N, const std::vector<Vec>& base,
                              const std::vector<const Vec*>& sel, const Vec* extra) {
    const std::size_t k = base.size() + sel.size() + (extra ? 1 : 0);
    if (k > N) return false;
    Mat m(R, k, N);
    std::size_t r = 0;
    for (const auto& v : base) {
        std::copy(v.c.begin(), v.c.end(), m.a.begin() + r * N);
        ++r;
    }
    for (const auto* v : sel) {
        std::copy(v->c.begin(), v->c.end(), m.a.begin() + r * N);
        ++r;
    }
    if (extra) std::copy(extra->c.begin(), extra->c.end(), m.a.begin() + r * N);
    return has_right_inverse(m);
}

// subset-of-a-basis test: DFS completion over the vertex pool, pruned by
// right-invertibility (a sound pruning: subsets of bases are right-invertible)
bool stacked_extends_to_basis(const Ring* R, std::size_t N, const std::vector<Vec>& base,
                              const std::vector<const Vec*>& sel, const Vec* extra,
                              const std::vector<Vec>& pool, std::size_t& work,
                              std::size_t work_guard) {
    if (!stacked_right_invertible(R, N, base, sel, extra)) return false;
    std::size_t have = base.size() + sel.size() + (extra ? 1 : 0);
    if (have == N) return true;  // square and right-invertible = basis

    std::vector<const Vec*> cur = sel;
    if (extra) cur.push_back(extra);
    auto used = [&](const Vec& w) {
        for (const auto& b : base)
            if (b == w) return true;
        for (const auto* s : cur)
            if (*s == w) return true;
        return false;
    };
    auto dfs = [&](auto&& self) -> bool {
        if (base.size() + cur.size() == N)
            return true;  // invariant: current stack is right-invertible
        for (const auto& w : pool) {
            if (used(w)) continue;
            if (++work > work_guard) throw guard_error("basis-route completion guard exceeded");
            if (stacked_right_invertible(R, N, base, cur, &w)) {
                cur.push_back(&w);
                const bool sub = self(self);
                cur.pop_back();
                if (sub) return true;
            }
        }
        return false;
    };
    // the last level is decided by right-invertibility of the square matrix,
    // which the pruning test already performs
    return dfs(dfs);
}

struct LevelBuilder {
    SimplicialComplex complex;
    std::vector<Vec> vertex_vecs;  // aligned with vertex ids

    // assumes candidate vertices arrive in ascending payload order
    void set_vertices(const Ring* R, std::size_t N, const std::vector<std::uint64_t>& codes) {
        for (auto c : codes) {
            complex.add_vertex(c);
            vertex_vecs.push_back(vec_from_code(R, N, c));
        }
    }
};

}  // namespace

Vec unit_vector(const Ring* R, std::size_t n, std::size_t i) {
    Vec e;
    e.ring = R;
    e.c.assign(n, 0);
    e.c[i] = R->one();
    return e;
}

Submodule submodule_apply(const Submodule& s, const Mat& m) {
    Submodule out;
    out.ring = s.ring;
    out.ambient = s.ambient;
    out.elems.reserve(s.elems.size());
    for (auto code : s.elems)
        out.elems.push_back(vec_code(vec_mat(vec_from_code(s.ring, s.ambient, code), m)));
    std::sort(out.elems.begin(), out.elems.end());
    out.elems.erase(std::unique(out.elems.begin(), out.elems.end()), out.elems.end());
    if (out.elems.size() != s.elems.size())
        throw std::invalid_argument("submodule_apply: map not injective on elements");
    if (s.free_rank) {
        out.free_rank = s.free_rank;
        out.witness = Mat(s.ring, s.witness.rows, s.ambient);
        for (std::size_t r = 0; r < s.witness.rows; ++r) {
            Vec img = vec_mat(s.witness.row(r), m);
            std::copy(img.c.begin(), img.c.end(), out.witness.a.begin() + r * s.ambient);
        }
    }
    // generators map to generators
    out.gens = Mat(s.ring, s.gens.rows, s.ambient);
    for (std::size_t r = 0; r < s.gens.rows; ++r) {
        Vec img = vec_mat(s.gens.row(r), m);
        std::copy(img.c.begin(), img.c.end(), out.gens.a.begin() + r * s.ambient);
    }
    return out;
}

std::vector<Mat> sample_gl(const Ring* R, std::size_t n, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Mat> out;
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 200000) throw guard_error("sample_gl: rejection sampling stuck");
        Mat m(R, n, n);
        for (auto& e : m.a) e = Elem(rng() % R->size());
        if (has_right_inverse(m)) out.push_back(std::move(m));
    }
    return out;
}

Vec BasisComplex::vertex_vector(std::uint32_t id) const {
    return vec_from_code(ring, std::size_t(n + m), complex.payloads[id]);
}

BasisComplex build_basis_complex(const Ring* R, int n, int m, int max_dim, bool compare_routes,
                                 std::size_t guard) {
    if (n < 0 || m < 0) throw std::invalid_argument("build_basis_complex: negative parameters");
    const std::size_t N = std::size_t(n + m);
    BasisComplex out;
    out.ring = R;
    out.n = n;
    out.m = m;
    if (n == 0 || N == 0) return out;  // empty complex
    const double total_d = pow_size(R, N);
    if (total_d > double(guard)) throw guard_error("vector scan guard exceeded");
    const std::uint64_t total = (std::uint64_t)total_d;

    std::vector<Vec> base;
    for (int i = 0; i < m; ++i) base.push_back(unit_vector(R, N, i));

    // vertex scan (shared pool for both routes; the pool is a superset of the
    // basis-route vertex set since subsets of bases are right-invertible)
    std::vector<std::uint64_t> ucodes;
    for (std::uint64_t code = 0; code < total; ++code) {
        Vec v = vec_from_code(R, N, code);
        if (stacked_right_invertible(R, N, base, {}, &v)) ucodes.push_back(code);
    }
    std::vector<Vec> pool;
    pool.reserve(ucodes.size());
    for (auto c : ucodes) pool.push_back(vec_from_code(R, N, c));

    const int cap = (max_dim < 0) ? n - 1 : std::min(max_dim, n - 1);

    auto build_route = [&](bool basis_route) {
        LevelBuilder lb;
        std::size_t work = 0;
        const std::size_t work_guard = 1u << 28;
        if (!basis_route) {
            lb.set_vertices(R, N, ucodes);
        } else {
            std::vector<std::uint64_t> bcodes;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (stacked_extends_to_basis(R, N, base, {}, &pool[i], pool, work, work_guard))
                    bcodes.push_back(ucodes[i]);
            lb.set_vertices(R, N, bcodes);
        }
        const std::size_t nv = lb.vertex_vecs.size();
        std::vector<std::uint32_t> prev;  // flat (d)-tuples of vertex ids
        prev.reserve(nv);
        for (std::uint32_t v = 0; v < nv; ++v) prev.push_back(v);
        std::vector<const Vec*> sel;
        for (int d = 1; d <= cap; ++d) {
            std::vector<std::uint32_t> curr;
            const std::size_t w = d;  // width of prev tuples
            for (std::size_t s = 0; s * w < prev.size(); ++s) {
                const std::uint32_t* verts = &prev[s * w];
                sel.clear();
                for (std::size_t i = 0; i < w; ++i) sel.push_back(&lb.vertex_vecs[verts[i]]);
                for (std::uint32_t cand = verts[w - 1] + 1; cand < nv; ++cand) {
                    const Vec& wv = lb.vertex_vecs[cand];
                    const bool ok =
                        basis_route
                            ? stacked_extends_to_basis(R, N, base, sel, &wv, pool, work, work_guard)
                            : stacked_right_invertible(R, N, base, sel, &wv);
                    if (ok) {
                        curr.insert(curr.end(), verts, verts + w);
                        curr.push_back(cand);
                        std::vector<std::uint32_t> simplex(verts, verts + w);
                        simplex.push_back(cand);
                        lb.complex.add_simplex(simplex);
                    }
                }
            }
            prev = std::move(curr);
            if (prev.empty()) break;
        }
        lb.complex.freeze();
        return lb;
    };

    LevelBuilder uroute = build_route(false);
    out.complex = std::move(uroute.complex);
    if (compare_routes) {
        LevelBuilder broute = build_route(true);
        out.routes_compared = true;
        if (!(broute.complex.payloads == out.complex.payloads &&
              broute.complex.simplices == out.complex.simplices)) {
            out.routes_agree = false;
            out.mismatch = "partial-basis route differs from unimodular route";
            for (std::size_t d = 0;
                 d < std::max(out.complex.simplices.size(), broute.complex.simplices.size()); ++d) {
                const std::size_t cu = out.complex.count(int(d));
                const std::size_t cb = broute.complex.count(int(d));
                if (cu != cb)
                    out.mismatch += "; dim " + std::to_string(d) + ": " + std::to_string(cb) +
                                    " vs " + std::to_string(cu);
            }
        }
    }
    out.complex.validate_closed();
    return out;
}

BxComplex build_bx(const Ring* R, int n, int m, const std::vector<Vec>& gamma) {
    if (m < 1) throw std::invalid_argument("build_bx needs m >= 1");
    const std::size_t N = std::size_t(n + m);
    const double total_d = pow_size(R, N);
    if (total_d > double(kVectorScanGuard)) throw guard_error("vector scan guard exceeded");
    const std::uint64_t total = (std::uint64_t)total_d;

    std::vector<Vec> base;
    for (int i = 0; i < m; ++i) base.push_back(unit_vector(R, N, i));
    for (const auto& g : gamma) {
        if (g.size() != N) throw std::invalid_argument("gamma vector has wrong ambient");
        base.push_back(g);
    }

    BxComplex out;
    out.ring = R;
    out.n = n;
    out.m = m;

    // vertices and the shared pool
    std::vector<std::uint64_t> vcodes;
    for (std::uint64_t code = 0; code < total; ++code) {
        Vec v = vec_from_code(R, N, code);
        if (stacked_right_invertible(R, N, base, {}, &v)) vcodes.push_back(code);
    }
    std::vector<Vec> pool;
    for (auto c : vcodes) pool.push_back(vec_from_code(R, N, c));

    std::size_t work = 0;
    const std::size_t work_guard = 1u << 28;
    // gamma must be a simplex of B^m_n (or empty)
    if (!gamma.empty()) {
        std::vector<const Vec*> gsel;
        std::vector<Vec> ebase;
        for (int i = 0; i < m; ++i) ebase.push_back(unit_vector(R, N, i));
        for (const auto& g : gamma) gsel.push_back(&g);
        std::vector<Vec> gpool;
        for (std::uint64_t code = 0; code < total; ++code) gpool.push_back(vec_from_code(R, N, code));
        if (!stacked_extends_to_basis(R, N, ebase, gsel, nullptr, gpool, work, work_guard))
            throw std::invalid_argument("gamma is not a simplex of B^m_n");
    }

    SimplicialComplex& X = out.complex;
    std::vector<Vec> vertex_vecs;
    for (auto c : vcodes) {
        X.add_vertex(c);
        vertex_vecs.push_back(vec_from_code(R, N, c));
    }
    const std::size_t nv = vertex_vecs.size();

    // standard simplices: {E} ∪ gamma ∪ sigma is a partial basis
    std::vector<std::vector<std::uint32_t>> standard_by_dim;
    {
        std::vector<std::uint32_t> prev;
        for (std::uint32_t v = 0; v < nv; ++v) prev.push_back(v);
        standard_by_dim.push_back(prev);
        std::vector<const Vec*> sel;
        const int cap = n - int(gamma.size());
        for (int d = 1; d < cap; ++d) {
            std::vector<std::uint32_t> curr;
            const std::size_t w = d;
            for (std::size_t s = 0; s * w < prev.size(); ++s) {
                const std::uint32_t* verts = &prev[s * w];
                sel.clear();
                for (std::size_t i = 0; i < w; ++i) sel.push_back(&vertex_vecs[verts[i]]);
                for (std::uint32_t cand = verts[w - 1] + 1; cand < nv; ++cand) {
                    if (stacked_extends_to_basis(R, N, base, sel, &vertex_vecs[cand], pool, work,
                                                 work_guard)) {
                        curr.insert(curr.end(), verts, verts + w);
                        curr.push_back(cand);
                    }
                }
            }
            standard_by_dim.push_back(curr);
            prev = std::move(curr);
            if (prev.empty()) break;
        }
    }
    for (std::size_t d = 0; d < standard_by_dim.size(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = standard_by_dim[d];
        out.standard_counts.push_back(flat.size() / w);
        for (std::size_t s = 0; s * w < flat.size(); ++s)
            X.add_simplex(std::vector<std::uint32_t>(flat.begin() + s * w,
                                                     flat.begin() + (s + 1) * w));
    }

    // externally additive: {v2 + r e_beta} ∪ tau for tau standard, v2 in tau,
    // e_beta among the standard vectors and gamma
    std::vector<Vec> beta_targets = base;  // E ∪ gamma
    for (std::size_t d = 0; d < standard_by_dim.size(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = standard_by_dim[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            const std::uint32_t* verts = &flat[s * w];
            for (std::size_t i = 0; i < w; ++i) {
                const Vec& v2 = vertex_vecs[verts[i]];
                for (const auto& eb : beta_targets)
                    for (std::size_t r = 1; r < R->size(); ++r) {
                        Vec v1 = vec_add(v2, vec_scale(Elem(r), eb));
                        auto id = X.vertex_of(vec_code(v1));
                        if (!id) throw std::logic_error("externally additive vertex missing");
                        bool dup = false;
                        for (std::size_t j = 0; j < w; ++j)
                            if (verts[j] == *id) dup = true;
                        if (dup) continue;
                        std::vector<std::uint32_t> simplex(verts, verts + w);
                        simplex.push_back(*id);
                        std::sort(simplex.begin(), simplex.end());
                        if (!X.add_simplex(simplex)) ++out.merged_coincidences;
                    }
            }
        }
    }
    X.freeze();
    X.validate_closed();
    return out;
}

std::vector<Submodule> all_free_summands(const Ring* R, int n, bool include_full) {
    if (n < 1 || (n == 1 && !include_full)) return {};
    auto bc = build_basis_complex(R, n, 0, include_full ? n - 1 : n - 2, false);
    std::vector<Submodule> out;
    std::unordered_map<std::string, std::size_t> seen;
    const auto& X = bc.complex;
    for (int d = 0; d <= X.dim(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = X.simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            std::vector<Vec> rows;
            for (std::size_t i = 0; i < w; ++i)
                rows.push_back(bc.vertex_vector(flat[s * w + i]));
            Submodule sub = span_submodule(R, n, rows);
            sub.free_rank = int(w);
            sub.witness = mat_from_rows(rows);
            auto key = sub.key();
            if (seen.emplace(key, out.size()).second) out.push_back(std::move(sub));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Submodule& a, const Submodule& b) { return a.key() < b.key(); });
    return out;
}

std::optional<std::size_t> TitsPoset::id_of(const Submodule& s) const {
    return poset.index_of(s.key());
}

TitsPoset build_tits(const Ring* R, int n, int m) {
    if (n < 1) throw std::invalid_argument("build_tits needs n >= 1");
    TitsPoset out;
    out.ring = R;
    out.n = n;
    out.m = m;

    std::vector<Submodule> elements;
    if (m == 0) {
        elements = all_free_summands(R, n, false);
    } else {
        auto cand = all_free_summands(R, n + m, false);
        // complements of the standard R^m: spans of facets of B^m_n
        auto bmn = build_basis_complex(R, n, m, -1, false);
        std::vector<Submodule> complements;
        std::unordered_map<std::string, char> seen;
        const auto& X = bmn.complex;
        if (X.dim() + 1 == n) {
            const std::size_t w = n;
            const auto& flat = X.simplices[n - 1];
            for (std::size_t s = 0; s * w < flat.size(); ++s) {
                std::vector<Vec> rows;
                for (std::size_t i = 0; i < w; ++i)
                    rows.push_back(bmn.vertex_vector(flat[s * w + i]));
                Submodule c = span_submodule(R, n + m, rows);
                if (seen.emplace(c.key(), 1).second) complements.push_back(std::move(c));
            }
        }
        for (auto& v : cand) {
            for (const auto& c : complements)
                if (c.contains_sub(v)) {
                    elements.push_back(v);
                    break;
                }
        }
    }

    std::vector<std::string> keys;
    for (const auto& e : elements) keys.push_back(e.key());
    std::vector<std::size_t> order;
    out.poset = Poset::build(
        keys,
        [&](std::size_t a, std::size_t b) {
            return elements[a].elems.size() < elements[b].elems.size() &&
                   elements[b].contains_sub(elements[a]);
        },
        &order);
    out.elements.resize(elements.size());
    for (std::size_t i = 0; i < order.size(); ++i) out.elements[i] = std::move(elements[order[i]]);
    return out;
}

std::optional<std::size_t> SplittingPoset::id_of(const Submodule& p, const Submodule& q) const {
    return poset.index_of(p.key() + "|" + q.key());
}

SplittingPoset build_splitting(const Ring* R, int n, const SplittingConstraints& cons) {
    SplittingPoset out;
    out.ring = R;
    out.n = n;

    Submodule ambient = cons.ambient ? *cons.ambient : full_submodule(R, n);
    auto cand = all_free_summands(R, n, false);

    std::vector<std::pair<Submodule, Submodule>> elems;
    for (const auto& p : cand) {
        if (!ambient.contains_sub(p)) continue;
        if (cons.p_below && !cons.p_below->contains_sub(p)) continue;
        for (const auto& q : cand) {
            if (!ambient.contains_sub(q)) continue;
            if (cons.q_above && !q.contains_sub(*cons.q_above)) continue;
            if (double(p.elems.size()) * double(q.elems.size()) != double(ambient.elems.size()))
                continue;
            Submodule inter = submodule_intersection(p, q);
            if (inter.elems.size() != 1) continue;
            elems.emplace_back(p, q);
        }
    }

    std::vector<std::string> keys;
    for (const auto& [p, q] : elems) keys.push_back(p.key() + "|" + q.key());
    std::vector<std::size_t> order;
    out.poset = Poset::build(
        keys,
        [&](std::size_t a, std::size_t b) {
            const auto& [pa, qa] = elems[a];
            const auto& [pb, qb] = elems[b];
            if (pa.elems == pb.elems && qa.elems == qb.elems) return false;
            return pb.contains_sub(pa) && qa.contains_sub(qb);
        },
        &order);
    out.elements.resize(elems.size());
    for (std::size_t i = 0; i < order.size(); ++i) out.elements[i] = std::move(elems[order[i]]);
    return out;
}

FrameComplex build_frames(const Ring* R, int n, bool coframe) {
    FrameComplex out;
    out.ring = R;
    out.n = n;
    out.coframe = coframe;

    const int want = coframe ? n - 1 : 1;
    if (want >= 1) {
        // spans of (want-1)-simplices of the unimodular complex are exactly the
        // rank-`want` free summands
        auto bc = build_basis_complex(R, n, 0, want - 1, false);
        std::unordered_map<std::string, char> seen;
        const auto& X = bc.complex;
        if (X.dim() >= want - 1) {
            const std::size_t w = want;
            const auto& flat = X.simplices[want - 1];
            for (std::size_t s = 0; s * w < flat.size(); ++s) {
                std::vector<Vec> rows;
                for (std::size_t i = 0; i < w; ++i) rows.push_back(bc.vertex_vector(flat[s * w + i]));
                Submodule sub = span_submodule(R, n, rows);
                sub.free_rank = want;
                sub.witness = mat_from_rows(rows);
                if (seen.emplace(sub.key(), 1).second) out.spaces.push_back(std::move(sub));
            }
        }
    }
    if (coframe && n == 1) {
        auto z = zero_submodule(R, 1);
        z.free_rank = 0;
        z.witness = Mat(R, 0, 1);
        out.spaces.push_back(z);
    }
    std::sort(out.spaces.begin(), out.spaces.end(),
              [](const Submodule& a, const Submodule& b) { return a.key() < b.key(); });

    SimplicialComplex& X = out.complex;

    std::size_t work = 0;
    const std::size_t work_guard = 1u << 28;

    // pool for frame completions: all generators of all candidate lines
    std::vector<Vec> line_pool;
    if (!coframe)
        for (const auto& s : out.spaces)
            for (Elem u : R->units()) line_pool.push_back(vec_scale(u, s.witness.row(0)));

    auto frame_test = [&](const std::vector<std::uint32_t>& ids) {
        std::vector<const Vec*> sel;
        std::vector<Vec> rows;
        rows.reserve(ids.size());
        for (auto id : ids) rows.push_back(out.spaces[id].witness.row(0));
        for (auto& r : rows) sel.push_back(&r);
        return stacked_extends_to_basis(R, n, {}, sel, nullptr, line_pool, work, work_guard);
    };

    auto coframe_test = [&](const std::vector<std::uint32_t>& ids) {
        const std::size_t k = ids.size();
        // T = intersection of the chosen hyperplanes, must be free of rank n-k
        Submodule T = out.spaces[ids[0]];
        for (std::size_t i = 1; i < k; ++i) T = submodule_intersection(T, out.spaces[ids[i]]);
        auto tr = free_summand_rank(T);
        if (!tr || *tr != int(n) - int(k)) return false;
        // candidate w_i: unimodular vectors in (∩_{j≠i} C_j) \ C_i
        std::vector<std::vector<Vec>> cands(k);
        for (std::size_t i = 0; i < k; ++i) {
            Submodule D;
            bool first = true;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                D = first ? out.spaces[ids[j]] : submodule_intersection(D, out.spaces[ids[j]]);
                first = false;
            }
            if (first) D = full_submodule(R, n);
            for (auto code : D.elems) {
                if (out.spaces[ids[i]].contains(code)) continue;
                Vec v = vec_from_code(R, n, code);
                if (is_unimodular(v)) cands[i].push_back(std::move(v));
            }
            if (cands[i].empty()) return false;
        }
        // choose one per position so that {w_1..w_k} ∪ basis(T) is a basis
        std::vector<Vec> trows;
        for (std::size_t r = 0; r < T.witness.rows; ++r) trows.push_back(T.witness.row(r));
        std::vector<const Vec*> sel;
        auto dfs = [&](auto&& self, std::size_t i) -> bool {
            if (i == k) {
                std::vector<const Vec*> all = sel;
                for (auto& t : trows) all.push_back(&t);
                return stacked_right_invertible(R, n, {}, all, nullptr);
            }
            for (const auto& w : cands[i]) {
                sel.push_back(&w);
                if (++work > work_guard) throw guard_error("coframe search guard exceeded");
                if (self(self, i + 1)) {
                    sel.pop_back();
                    return true;
                }
                sel.pop_back();
            }
            return false;
        };
        return dfs(dfs, 0);
    };

    // keep only the summands that pass their own singleton test, then assign ids
    {
        std::vector<Submodule> keep;
        for (std::uint32_t v = 0; v < out.spaces.size(); ++v)
            if (coframe ? coframe_test({v}) : frame_test({v})) keep.push_back(out.spaces[v]);
        out.spaces = std::move(keep);
        if (!coframe) {
            line_pool.clear();
            for (const auto& s : out.spaces)
                for (Elem u : R->units()) line_pool.push_back(vec_scale(u, s.witness.row(0)));
        }
    }
    for (std::size_t i = 0; i < out.spaces.size(); ++i) X.add_vertex(i);

    std::vector<std::uint32_t> prev;
    for (std::uint32_t v = 0; v < out.spaces.size(); ++v) prev.push_back(v);
    for (int d = 1; d < n; ++d) {
        std::vector<std::uint32_t> curr;
        const std::size_t w = d;
        for (std::size_t s = 0; s * w < prev.size(); ++s) {
            const std::uint32_t* verts = &prev[s * w];
            for (std::uint32_t cand = verts[w - 1] + 1; cand < out.spaces.size(); ++cand) {
                std::vector<std::uint32_t> ids(verts, verts + w);
                ids.push_back(cand);
                if (coframe ? coframe_test(ids) : frame_test(ids)) {
                    curr.insert(curr.end(), ids.begin(), ids.end());
                    X.add_simplex(ids);
                }
            }
        }
        prev = std::move(curr);
        if (prev.empty()) break;
    }
    X.freeze();
    X.validate_closed();
    return out;
}

}  // namespace sv

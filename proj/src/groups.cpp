#include "stabverify/groups.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace sv {

std::string FiniteMatrixGroup::key_of(const Mat& m) {
    std::string k;
    k.reserve(m.a.size() * 2 + 4);
    for (auto e : m.a) {
        k += char(e & 0xff);
        k += char(e >> 8);
    }
    return k;
}

void FiniteMatrixGroup::finish() {
    const Mat id = identity_mat(ring, degree);
    for (std::size_t i = 0; i < elems.size(); ++i)
        if (elems[i] == id) {
            std::swap(elems[0], elems[i]);
            break;
        }
    if (elems.empty() || !(elems[0] == id))
        throw std::logic_error("group does not contain the identity");
    index_.clear();
    for (std::size_t i = 0; i < elems.size(); ++i) index_.emplace(key_of(elems[i]), i);
    if (index_.size() != elems.size()) throw std::logic_error("duplicate group elements");
    inv_.assign(elems.size(), UINT32_MAX);
}

std::uint32_t FiniteMatrixGroup::index_of(const Mat& m) const {
    auto it = index_.find(key_of(m));
    if (it == index_.end()) throw std::invalid_argument("matrix not in group");
    return it->second;
}

bool FiniteMatrixGroup::contains(const Mat& m) const { return index_.count(key_of(m)) > 0; }

std::uint32_t FiniteMatrixGroup::mul(std::uint32_t a, std::uint32_t b) const {
    return index_of(mat_mul(elems[a], elems[b]));
}

std::uint32_t FiniteMatrixGroup::inverse(std::uint32_t a) const {
    if (inv_[a] != UINT32_MAX) return inv_[a];
    for (std::uint32_t h = 0; h < elems.size(); ++h)
        if (mul(a, h) == 0) {
            inv_[a] = h;
            return h;
        }
    throw std::logic_error("element without inverse in group");
}

FiniteMatrixGroup enumerate_gl(const Ring* R, std::size_t n, std::size_t scan_guard,
                               std::size_t order_guard) {
    FiniteMatrixGroup g;
    g.ring = R;
    g.degree = n;

    double scan = 1;
    for (std::size_t i = 0; i < n * n; ++i) scan *= double(R->size());

    if (scan <= double(scan_guard)) {
        const std::uint64_t total = (std::uint64_t)scan;
        for (std::uint64_t code = 0; code < total; ++code) {
            Mat m(R, n, n);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < n * n; ++i) {
                m.a[i] = Elem(c % R->size());
                c /= R->size();
            }
            if (has_right_inverse(m)) {
                g.elems.push_back(std::move(m));
                if (g.elems.size() > order_guard) throw guard_error("group order guard exceeded");
            }
        }
        g.provenance = "exhaustive";
        g.finish();
        return g;
    }

    // generator closure: elementary matrices and diagonal units
    std::vector<Mat> gens;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t r = 1; r < R->size(); ++r) {
                Mat e = identity_mat(R, n);
                e.at(i, j) = Elem(r);
                gens.push_back(e);
            }
        }
    for (std::size_t i = 0; i < n; ++i)
        for (Elem u : R->units()) {
            if (u == R->one()) continue;
            Mat d = identity_mat(R, n);
            d.at(i, i) = u;
            gens.push_back(d);
        }

    std::unordered_map<std::string, std::uint32_t> seen;
    std::vector<Mat> queue{identity_mat(R, n)};
    seen.emplace(FiniteMatrixGroup::key_of(queue[0]), 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& gen : gens) {
            Mat next = mat_mul(queue[head], gen);
            const std::string k = FiniteMatrixGroup::key_of(next);
            if (seen.emplace(k, std::uint32_t(queue.size())).second) {
                queue.push_back(std::move(next));
                if (queue.size() > order_guard)
                    throw guard_error("generator closure exceeds group order guard");
            }
        }
    }
    g.elems = std::move(queue);
    g.provenance = "generator-closure,unverified-against-full-scan";
    g.finish();
    return g;
}

FiniteMatrixGroup stabilizer_subgroup(const FiniteMatrixGroup& g, const std::vector<Vec>& fix,
                                      const std::vector<Submodule>& preserve) {
    FiniteMatrixGroup out;
    out.ring = g.ring;
    out.degree = g.degree;
    out.provenance = g.provenance + ";stabilizer";
    for (const auto& m : g.elems) {
        bool ok = true;
        for (const auto& v : fix)
            if (!(vec_mat(v, m) == v)) {
                ok = false;
                break;
            }
        for (const auto& s : preserve) {
            if (!ok) break;
            for (std::size_t r = 0; r < s.gens.rows && ok; ++r) {
                Vec img = vec_mat(s.gens.row(r), m);
                if (!s.contains(vec_code(img))) ok = false;
            }
        }
        if (ok) out.elems.push_back(m);
    }
    out.finish();
    return out;
}

HomologyResult abelianization(const FiniteMatrixGroup& g) {
    const std::size_t n = g.order();
    SparseIntMatrix rel(n, n * n);
    std::uint32_t c = 0;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b, ++c) {
            const std::uint32_t ab = g.mul(a, b);
            rel.add_entry(a, c, 1);
            rel.add_entry(b, c, 1);
            rel.add_entry(ab, c, -1);
        }
    auto s = smith_normal_form(rel);
    HomologyResult h;
    h.rank = (long long)n - (long long)s.rank();
    h.torsion = s.torsion();
    return h;
}

DMat chain_map_matrix(const SimplicialComplex& x, int degree, const Mat& g,
                      const VertexAction& act) {
    const std::size_t w = degree + 1;
    const auto& flat = x.simplices[degree];
    const std::size_t count = flat.size() / w;

    // map vertices, locate image simplices, record sign of the sort
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    index.reserve(count * 2);
    auto pack = [&](const std::uint32_t* v) { return pack_simplex_key(v, w); };
    for (std::size_t s = 0; s < count; ++s) index.emplace(pack(flat.data() + s * w), s);

    std::vector<std::uint32_t> vmap(x.payloads.size());
    for (std::uint32_t v = 0; v < x.payloads.size(); ++v) vmap[v] = act(v, g);

    DMat T(count, count);
    std::vector<std::uint32_t> img(w);
    for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t i = 0; i < w; ++i) img[i] = vmap[flat[s * w + i]];
        // insertion sort, tracking parity
        long long sign = 1;
        for (std::size_t i = 1; i < w; ++i)
            for (std::size_t j = i; j > 0 && img[j - 1] > img[j]; --j) {
                std::swap(img[j - 1], img[j]);
                sign = -sign;
            }
        for (std::size_t i = 0; i + 1 < w; ++i)
            if (img[i] == img[i + 1]) throw std::logic_error("action collapses a simplex");
        auto it = index.find(pack(img.data()));
        if (it == index.end()) throw std::logic_error("action is not simplicial");
        T.at(it->second, s) = sign;
    }
    return T;
}

std::vector<std::uint32_t> find_small_generating_set(const FiniteMatrixGroup& g) {
    const Ring* R = g.ring;
    const std::size_t n = g.degree;

    // heuristic candidates, kept only when they lie in the group
    std::vector<std::uint32_t> candidates;
    auto push = [&](const Mat& m) {
        if (g.contains(m)) candidates.push_back(g.index_of(m));
    };
    if (n >= 2) {
        Mat cyc(R, n, n);  // permutation n-cycle
        for (std::size_t i = 0; i < n; ++i) cyc.at(i, (i + 1) % n) = R->one();
        push(cyc);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                for (std::size_t r = 1; r < R->size(); ++r) {
                    Mat e = identity_mat(R, n);
                    e.at(i, j) = Elem(r);
                    push(e);
                }
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (Elem u : R->units()) {
            if (u == R->one()) continue;
            Mat d = identity_mat(R, n);
            d.at(i, i) = u;
            push(d);
        }

    std::vector<char> closed;
    auto closure = [&](const std::vector<std::uint32_t>& gens) {
        closed.assign(g.order(), 0);
        std::vector<std::uint32_t> queue{0};
        closed[0] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (auto gen : gens) {
                const std::uint32_t nx = g.mul(queue[head], gen);
                if (!closed[nx]) {
                    closed[nx] = 1;
                    queue.push_back(nx);
                }
            }
        return queue.size();
    };

    if (g.order() == 1) return {};
    std::vector<std::uint32_t> gens;
    std::size_t have = closure(gens);
    // greedy: skip candidates that the current set already generates
    for (auto c : candidates) {
        if (closed[c]) continue;
        gens.push_back(c);
        have = closure(gens);
        if (have == g.order()) return gens;
    }
    for (std::uint32_t i = 1; i < g.order(); ++i) {
        if (closed[i]) continue;
        gens.push_back(i);
        have = closure(gens);
        if (have == g.order()) return gens;
    }
    throw std::logic_error("generating set search failed");
}

const DMat& GModule::action_of(std::uint32_t gid) const {
    for (std::size_t i = 0; i < gen_ids.size(); ++i)
        if (gen_ids[i] == gid) return action[i];
    throw std::invalid_argument("no stored action for this group element");
}

GModule action_on_homology(const FiniteMatrixGroup& g, const SimplicialComplex& x, int degree,
                           const VertexAction& act, const std::vector<std::uint32_t>& generator_ids) {
    ChainComplex cc = chain_complex_of(x, true);
    const SparseIntMatrix* bd = cc.boundary_at(degree);
    if (!bd) throw std::invalid_argument("degree outside chain complex");
    auto snf = smith_normal_form(*bd, true);

    GModule m;
    m.group = &g;
    m.chain_dim = cc.dim_at(degree);
    m.snf_rank = snf.rank();
    m.rank = m.chain_dim - m.snf_rank;

    // kernel basis: columns of V past the rank; coordinates: matching rows of Vinv
    const DMat& V = *snf.V;
    const DMat& Vinv = *snf.Vinv;
    m.kernel_basis = DMat(m.chain_dim, m.rank);
    for (std::size_t r = 0; r < m.chain_dim; ++r)
        for (std::size_t c = 0; c < m.rank; ++c) m.kernel_basis.at(r, c) = V.at(r, m.snf_rank + c);
    m.coord_from_chain = DMat(m.rank, m.chain_dim);
    for (std::size_t r = 0; r < m.rank; ++r)
        for (std::size_t c = 0; c < m.chain_dim; ++c)
            m.coord_from_chain.at(r, c) = Vinv.at(m.snf_rank + r, c);

    // relations: boundaries from one degree up, in kernel coordinates
    const SparseIntMatrix* up = cc.boundary_at(degree + 1);
    const std::size_t nrel = up ? up->cols : 0;
    m.relations = DMat(m.rank, nrel);
    if (up) {
        for (std::size_t c = 0; c < nrel; ++c) {
            std::vector<long long> chain(m.chain_dim, 0);
            for (const auto& [r, v] : up->col[c]) chain[r] = v;
            auto coords = m.coords_of(chain);
            for (std::size_t r = 0; r < m.rank; ++r) m.relations.at(r, c) = coords[r];
        }
    }

    // action matrices for the chosen generators
    m.gen_ids = generator_ids;
    if (m.gen_ids.empty())
        for (std::uint32_t i = 0; i < g.order(); ++i) m.gen_ids.push_back(i);
    m.action.reserve(m.gen_ids.size());
    for (auto gid : m.gen_ids) {
        DMat T = chain_map_matrix(x, degree, g.elems[gid], act);
        DMat rho = dmat_mul(m.coord_from_chain, dmat_mul(T, m.kernel_basis));
        m.action.push_back(std::move(rho));
    }
    return m;
}

std::vector<long long> GModule::coords_of(const std::vector<long long>& chain) const {
    std::vector<long long> out(rank, 0);
    for (std::size_t r = 0; r < rank; ++r) {
        long long acc = 0;
        for (std::size_t c = 0; c < chain_dim; ++c)
            if (chain[c] != 0) acc += coord_from_chain.at(r, c) * chain[c];
        out[r] = acc;
    }
    return out;
}

HomologyResult GModule::group_shape() const {
    auto snf = dense_snf(relations, false);
    HomologyResult h;
    h.rank = (long long)rank - (long long)snf.rank();
    h.torsion = snf.torsion();
    return h;
}

HomologyResult coinvariants(const GModule& m) {
    const std::size_t cols = m.relations.cols + m.action.size() * m.rank;
    DMat big(m.rank, cols);
    for (std::size_t r = 0; r < m.rank; ++r)
        for (std::size_t c = 0; c < m.relations.cols; ++c) big.at(r, c) = m.relations.at(r, c);
    std::size_t base = m.relations.cols;
    for (const DMat& rho : m.action) {
        for (std::size_t r = 0; r < m.rank; ++r)
            for (std::size_t c = 0; c < m.rank; ++c)
                big.at(r, base + c) = rho.at(r, c) - (r == c ? 1 : 0);
        base += m.rank;
    }
    auto snf = dense_snf(big, false);
    HomologyResult h;
    h.rank = (long long)m.rank - (long long)snf.rank();
    h.torsion = snf.torsion();
    return h;
}

bool invert_two_vanishes(const HomologyResult& h) {
    if (h.rank != 0) return false;
    for (auto t : h.torsion) {
        long long v = t;
        while (v % 2 == 0) v /= 2;
        if (v != 1) return false;
    }
    return true;
}

}  // namespace sv

#include "stabverify/complexes.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sv {

std::uint64_t pack_simplex_key(const std::uint32_t* v, std::size_t len) {
    if (len > 8) throw guard_error("simplex dimension beyond supported packing");
    const unsigned bits = len <= 4 ? 16 : (len <= 6 ? 10 : 8);
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < len; ++i) {
        if (v[i] >= (1u << bits)) throw guard_error("vertex id exceeds packing range");
        key = (key << bits) | v[i];
    }
    return key;
}

std::uint64_t SimplicialComplex::pack(const std::uint32_t* v, std::size_t len) {
    return pack_simplex_key(v, len);
}

std::uint32_t SimplicialComplex::add_vertex(std::uint64_t payload) {
    auto it = payload_index.find(payload);
    if (it != payload_index.end()) return it->second;
    const std::uint32_t id = std::uint32_t(payloads.size());
    payloads.push_back(payload);
    payload_index.emplace(payload, id);
    if (simplices.empty()) {
        simplices.emplace_back();
        keys_.emplace_back();
    }
    simplices[0].push_back(id);
    keys_[0].insert(pack(&id, 1));
    return id;
}

std::optional<std::uint32_t> SimplicialComplex::vertex_of(std::uint64_t payload) const {
    auto it = payload_index.find(payload);
    if (it == payload_index.end()) return std::nullopt;
    return it->second;
}

bool SimplicialComplex::add_simplex(std::vector<std::uint32_t> verts) {
    if (verts.empty()) throw std::invalid_argument("empty simplex");
    if (verts.size() > 8) throw guard_error("simplex dimension beyond supported packing");
    std::sort(verts.begin(), verts.end());
    for (std::size_t i = 0; i + 1 < verts.size(); ++i)
        if (verts[i] == verts[i + 1]) throw std::invalid_argument("repeated vertex in simplex");
    for (auto v : verts)
        if (v >= payloads.size()) throw std::invalid_argument("unregistered vertex in simplex");
    const std::size_t d = verts.size() - 1;
    while (simplices.size() <= d) {
        simplices.emplace_back();
        keys_.emplace_back();
    }
    const std::uint64_t key = pack(verts.data(), verts.size());
    if (!keys_[d].insert(key).second) return false;
    if (d > 0) simplices[d].insert(simplices[d].end(), verts.begin(), verts.end());
    return true;
}

bool SimplicialComplex::has_simplex(const std::uint32_t* verts, std::size_t len) const {
    const std::size_t d = len - 1;
    if (d >= keys_.size()) return false;
    return keys_[d].count(pack(verts, len)) > 0;
}

bool SimplicialComplex::has_simplex(const std::vector<std::uint32_t>& verts) const {
    std::vector<std::uint32_t> s = verts;
    std::sort(s.begin(), s.end());
    return has_simplex(s.data(), s.size());
}

void SimplicialComplex::freeze() {
    for (std::size_t d = 1; d < simplices.size(); ++d) {
        auto& flat = simplices[d];
        const std::size_t w = d + 1;
        std::vector<std::size_t> idx(flat.size() / w);
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(flat.begin() + a * w, flat.begin() + (a + 1) * w,
                                                flat.begin() + b * w, flat.begin() + (b + 1) * w);
        });
        std::vector<std::uint32_t> sorted(flat.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            std::copy(flat.begin() + idx[i] * w, flat.begin() + (idx[i] + 1) * w,
                      sorted.begin() + i * w);
        flat = std::move(sorted);
    }
    while (!simplices.empty() && simplices.back().empty()) {
        simplices.pop_back();
        keys_.pop_back();
    }
}

std::size_t SimplicialComplex::count(int d) const {
    if (d < 0 || std::size_t(d) >= simplices.size()) return 0;
    return simplices[d].size() / (d + 1);
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
    std::vector<std::size_t> f;
    for (int d = 0; d <= dim(); ++d) f.push_back(count(d));
    return f;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0, sign = 1;
    for (int d = 0; d <= dim(); ++d, sign = -sign) chi += sign * (long long)count(d);
    return chi;
}

void SimplicialComplex::validate_closed() const {
    for (std::size_t d = 1; d < simplices.size(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = simplices[d];
        std::vector<std::uint32_t> face(d);
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            const std::uint32_t* verts = flat.data() + s * w;
            for (std::size_t skip = 0; skip < w; ++skip) {
                std::size_t j = 0;
                for (std::size_t i = 0; i < w; ++i)
                    if (i != skip) face[j++] = verts[i];
                if (!has_simplex(face.data(), d))
                    throw std::logic_error("complex not downward closed");
            }
            for (std::size_t i = 0; i + 1 < w; ++i)
                if (verts[i] >= verts[i + 1]) throw std::logic_error("simplex tuple not sorted");
        }
    }
}

bool SimplicialComplex::is_pure() const {
    const int top = dim();
    if (top <= 0) return true;
    for (int d = 0; d < top; ++d) {
        const std::size_t w = d + 1;
        std::unordered_set<std::uint64_t> covered;
        if (std::size_t(d + 1) < simplices.size()) {
            const auto& flat = simplices[d + 1];
            const std::size_t wu = d + 2;
            std::vector<std::uint32_t> face(w);
            for (std::size_t s = 0; s * wu < flat.size(); ++s) {
                const std::uint32_t* verts = flat.data() + s * wu;
                for (std::size_t skip = 0; skip < wu; ++skip) {
                    std::size_t j = 0;
                    for (std::size_t i = 0; i < wu; ++i)
                        if (i != skip) face[j++] = verts[i];
                    covered.insert(pack(face.data(), w));
                }
            }
        }
        const auto& flat = simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s)
            if (!covered.count(pack(flat.data() + s * w, w))) return false;
    }
    return true;
}

namespace {

// rebuild with vertex ids assigned in ascending payload order, so complexes
// produced by different construction orders compare equal
SimplicialComplex canonicalized(const SimplicialComplex& x) {
    std::vector<std::uint64_t> payloads = x.payloads;
    std::sort(payloads.begin(), payloads.end());
    bool sorted = true;
    for (std::size_t i = 0; i + 1 < x.payloads.size(); ++i)
        if (x.payloads[i] >= x.payloads[i + 1]) sorted = false;
    if (sorted) return x;

    SimplicialComplex out;
    for (auto p : payloads) out.add_vertex(p);
    for (std::size_t d = 1; d < x.simplices.size(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = x.simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            std::vector<std::uint32_t> verts;
            for (std::size_t i = 0; i < w; ++i)
                verts.push_back(*out.vertex_of(x.payloads[flat[s * w + i]]));
            out.add_simplex(verts);
        }
    }
    out.freeze();
    return out;
}

}  // namespace

SimplicialComplex link_of(const SimplicialComplex& x, const std::vector<std::uint32_t>& simplex) {
    std::vector<std::uint32_t> sigma = simplex;
    std::sort(sigma.begin(), sigma.end());
    if (!x.has_simplex(sigma.data(), sigma.size()))
        throw std::invalid_argument("link of a non-simplex");

    SimplicialComplex out;
    const std::size_t k = sigma.size();
    for (std::size_t d = k; d < x.simplices.size(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = x.simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            const std::uint32_t* verts = flat.data() + s * w;
            // sigma must be a subset of verts
            std::size_t i = 0, j = 0;
            std::vector<std::uint32_t> rest;
            rest.reserve(w - k);
            bool contains = true;
            while (i < w) {
                if (j < k && verts[i] == sigma[j]) {
                    ++i;
                    ++j;
                } else if (j < k && verts[i] > sigma[j]) {
                    contains = false;
                    break;
                } else {
                    rest.push_back(verts[i]);
                    ++i;
                }
            }
            if (!contains || j < k) continue;
            std::vector<std::uint32_t> mapped;
            mapped.reserve(rest.size());
            for (auto v : rest) mapped.push_back(out.add_vertex(x.payloads[v]));
            if (!mapped.empty()) out.add_simplex(mapped);
        }
    }
    out.freeze();
    return canonicalized(out);
}

SimplicialComplex join_complexes(const SimplicialComplex& x, const SimplicialComplex& y) {
    SimplicialComplex out;
    for (auto p : x.payloads)
        if (y.payload_index.count(p)) throw std::invalid_argument("join: vertex registries collide");

    std::vector<std::uint32_t> xmap(x.payloads.size()), ymap(y.payloads.size());
    for (std::size_t v = 0; v < x.payloads.size(); ++v) xmap[v] = out.add_vertex(x.payloads[v]);
    for (std::size_t v = 0; v < y.payloads.size(); ++v) ymap[v] = out.add_vertex(y.payloads[v]);

    auto each_simplex = [](const SimplicialComplex& c, auto&& fn) {
        for (std::size_t d = 0; d < c.simplices.size(); ++d) {
            const std::size_t w = d + 1;
            const auto& flat = c.simplices[d];
            for (std::size_t s = 0; s * w < flat.size(); ++s)
                fn(flat.data() + s * w, w);
        }
    };
    // simplices of x, of y, and of every disjoint union
    each_simplex(x, [&](const std::uint32_t* v, std::size_t w) {
        std::vector<std::uint32_t> s;
        for (std::size_t i = 0; i < w; ++i) s.push_back(xmap[v[i]]);
        out.add_simplex(s);
    });
    each_simplex(y, [&](const std::uint32_t* v, std::size_t w) {
        std::vector<std::uint32_t> s;
        for (std::size_t i = 0; i < w; ++i) s.push_back(ymap[v[i]]);
        out.add_simplex(s);
    });
    each_simplex(x, [&](const std::uint32_t* xv, std::size_t xw) {
        each_simplex(y, [&](const std::uint32_t* yv, std::size_t yw) {
            std::vector<std::uint32_t> s;
            for (std::size_t i = 0; i < xw; ++i) s.push_back(xmap[xv[i]]);
            for (std::size_t i = 0; i < yw; ++i) s.push_back(ymap[yv[i]]);
            out.add_simplex(s);
        });
    });
    out.freeze();
    return canonicalized(out);
}

bool SimplicialMap::is_simplicial() const {
    for (std::size_t d = 1; d < src->simplices.size(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = src->simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            std::vector<std::uint32_t> img;
            for (std::size_t i = 0; i < w; ++i) img.push_back(image[flat[s * w + i]]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (!dst->has_simplex(img.data(), img.size())) return false;
        }
    }
    return true;
}

bool SimplicialMap::injective_on_simplices() const {
    for (std::size_t d = 1; d < src->simplices.size(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = src->simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            std::vector<std::uint32_t> img;
            for (std::size_t i = 0; i < w; ++i) img.push_back(image[flat[s * w + i]]);
            std::sort(img.begin(), img.end());
            for (std::size_t i = 0; i + 1 < img.size(); ++i)
                if (img[i] == img[i + 1]) return false;
        }
    }
    return true;
}

bool complete_join_check(const SimplicialMap& pi, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!pi.is_simplicial()) return fail("map is not simplicial");
    if (!pi.injective_on_simplices()) return fail("map not injective on a simplex");

    // vertex fibers
    std::vector<std::vector<std::uint32_t>> fiber(pi.dst->payloads.size());
    for (std::uint32_t v = 0; v < pi.image.size(); ++v) fiber[pi.image[v]].push_back(v);
    for (std::size_t x = 0; x < fiber.size(); ++x)
        if (fiber[x].empty()) return fail("map not surjective on vertices");

    // over each simplex of dst, every choice of fiber representatives must span a simplex
    for (std::size_t d = 0; d < pi.dst->simplices.size(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = pi.dst->simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            const std::uint32_t* verts = flat.data() + s * w;
            std::vector<std::size_t> pick(w, 0);
            while (true) {
                std::vector<std::uint32_t> lift;
                for (std::size_t i = 0; i < w; ++i) lift.push_back(fiber[verts[i]][pick[i]]);
                std::sort(lift.begin(), lift.end());
                if (!pi.src->has_simplex(lift.data(), lift.size()))
                    return fail("fiber join misses a simplex over a base simplex");
                std::size_t i = 0;
                while (i < w && ++pick[i] == fiber[verts[i]].size()) pick[i++] = 0;
                if (i == w) break;
            }
        }
    }
    return true;
}

Poset Poset::build(std::vector<std::string> keys,
                   const std::function<bool(std::size_t, std::size_t)>& less_orig,
                   std::vector<std::size_t>* order_out) {
    const std::size_t n = keys.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    Poset p;
    p.keys.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.keys[i] = keys[order[i]];
        if (i > 0 && p.keys[i] == p.keys[i - 1]) throw std::invalid_argument("duplicate poset key");
        p.index_.emplace(p.keys[i], i);
    }
    p.lt.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) p.lt[i][j] = less_orig(order[i], order[j]);
    p.validate();
    if (order_out) *order_out = order;
    return p;
}

std::optional<std::size_t> Poset::index_of(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void Poset::validate() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        if (lt[i][i]) throw std::logic_error("poset order not irreflexive");
        for (std::size_t j = 0; j < n; ++j) {
            if (lt[i][j] && lt[j][i]) throw std::logic_error("poset order not antisymmetric");
            if (!lt[i][j]) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (lt[j][k] && !lt[i][k]) throw std::logic_error("poset order not transitive");
        }
    }
}

int Poset::height() const {
    const std::size_t n = size();
    std::vector<int> h(n, -1);
    auto rec = [&](auto&& self, std::size_t i) -> int {
        if (h[i] >= 0) return h[i];
        int best = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (lt[i][j]) best = std::max(best, 1 + self(self, j));
        return h[i] = best;
    };
    int best = -1;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, rec(rec, i));
    return best;
}

bool Poset::is_antichain() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (lt[i][j]) return false;
    return true;
}

std::size_t Poset::relation_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (lt[i][j]) ++c;
    return c;
}

std::size_t Poset::covering_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) {
            if (!lt[i][j]) continue;
            bool cover = true;
            for (std::size_t k = 0; k < size() && cover; ++k)
                if (lt[i][k] && lt[k][j]) cover = false;
            if (cover) ++c;
        }
    return c;
}

SimplicialComplex order_complex(const Poset& p) {
    SimplicialComplex out;
    for (std::size_t i = 0; i < p.size(); ++i) out.add_vertex(i);

    // chains by DFS in increasing order
    std::vector<std::uint32_t> chain;
    auto dfs = [&](auto&& self, std::size_t last) -> void {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (!p.less(last, j)) continue;
            chain.push_back(std::uint32_t(j));
            out.add_simplex(chain);
            self(self, j);
            chain.pop_back();
        }
    };
    for (std::size_t i = 0; i < p.size(); ++i) {
        chain = {std::uint32_t(i)};
        dfs(dfs, i);
    }
    out.freeze();
    return out;
}

bool PosetMap::order_preserving(bool strict) const {
    for (std::size_t i = 0; i < src->size(); ++i)
        for (std::size_t j = 0; j < src->size(); ++j)
            if (src->less(i, j)) {
                if (strict && !dst->less(image[i], image[j])) return false;
                if (!strict && !(dst->less(image[i], image[j]) || image[i] == image[j]))
                    return false;
            }
    return true;
}

bool PosetMap::order_reversing(bool strict) const {
    for (std::size_t i = 0; i < src->size(); ++i)
        for (std::size_t j = 0; j < src->size(); ++j)
            if (src->less(i, j)) {
                if (strict && !dst->less(image[j], image[i])) return false;
                if (!strict && !(dst->less(image[j], image[i]) || image[i] == image[j]))
                    return false;
            }
    return true;
}

bool PosetMap::bijective() const {
    if (src->size() != dst->size()) return false;
    std::vector<char> hit(dst->size(), 0);
    for (auto v : image) {
        if (hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

bool PosetMap::surjective() const {
    std::vector<char> hit(dst->size(), 0);
    for (auto v : image) hit[v] = 1;
    for (auto h : hit)
        if (!h) return false;
    return true;
}

}  // namespace sv

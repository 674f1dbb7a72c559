#include "stabverify/homology.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace sv {

namespace {

// union-find for connectivity fast paths
struct DSU {
    std::vector<std::uint32_t> parent;
    explicit DSU(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

bool connected(const SimplicialComplex& x) {
    if (x.payloads.empty()) return false;
    DSU dsu(x.payloads.size());
    if (x.simplices.size() > 1) {
        const auto& flat = x.simplices[1];
        for (std::size_t s = 0; s * 2 < flat.size(); ++s) dsu.unite(flat[2 * s], flat[2 * s + 1]);
    }
    const std::uint32_t root = dsu.find(0);
    for (std::uint32_t v = 1; v < x.payloads.size(); ++v)
        if (dsu.find(v) != root) return false;
    return true;
}


}  // namespace

Coeff Coeff::parse(const std::string& flag) {
    if (flag == "Z") return Z();
    if (flag == "Q") return Q();
    if (flag == "half") return Half();
    if (flag.rfind("Fp:", 0) == 0) {
        const long long p = std::stoll(flag.substr(3));
        if (p < 2) throw std::invalid_argument("Fp:<p> needs a prime p");
        for (long long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("Fp:<p> needs a prime p");
        return Fp(p);
    }
    throw std::invalid_argument("unknown coefficient flag: " + flag);
}

std::string Coeff::name() const {
    switch (kind) {
        case CoeffKind::Integers: return "Z";
        case CoeffKind::Rationals: return "Q";
        case CoeffKind::PrimeField: return "Fp:" + std::to_string(p);
        case CoeffKind::IntegersWithTwoInverted: return "half";
    }
    return "?";
}

std::string HomologyResult::str() const {
    if (is_zero()) return "0";
    std::string s;
    if (rank > 0) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    for (auto t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
    return s;
}

std::string HomologyResult::json() const {
    std::ostringstream os;
    os << "{\"rank\":" << rank << ",\"torsion\":[";
    for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
    os << "]}";
    return os.str();
}

std::size_t ChainComplex::dim_at(int deg) const {
    if (deg < lowest || deg > top()) return 0;
    return dims[deg - lowest];
}

const SparseIntMatrix* ChainComplex::boundary_at(int deg) const {
    if (deg < lowest || deg > top()) return nullptr;
    return &bnd[deg - lowest];
}

void ChainComplex::verify_dd() const {
    for (int deg = lowest + 1; deg <= top(); ++deg) {
        const SparseIntMatrix& hi = *boundary_at(deg);
        const SparseIntMatrix& lo = *boundary_at(deg - 1);
        // compose column by column
        for (std::size_t c = 0; c < hi.cols; ++c) {
            std::unordered_map<std::uint32_t, long long> acc;
            for (const auto& [r, v] : hi.col[c])
                for (const auto& [r2, v2] : lo.col[r]) acc[r2] += v * v2;
            for (const auto& [r2, v] : acc)
                if (v != 0) throw std::logic_error("boundary squared nonzero");
        }
    }
}

ChainComplex chain_complex_of(const SimplicialComplex& x, bool reduced) {
    ChainComplex out;
    out.lowest = reduced ? -1 : 0;
    const int top = x.dim();

    if (reduced) out.dims.push_back(1);  // the empty simplex
    for (int d = 0; d <= top; ++d) out.dims.push_back(x.count(d));
    if (out.dims.empty()) out.dims.push_back(reduced ? 1 : 0);

    // face index per dimension
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> face_index(
        std::max(top + 1, 0));
    for (int d = 0; d <= top; ++d) {
        const std::size_t w = d + 1;
        const auto& flat = x.simplices[d];
        auto& idx = face_index[d];
        idx.reserve(flat.size() / w * 2);
        for (std::size_t s = 0; s * w < flat.size(); ++s)
            idx.emplace(pack_simplex_key(flat.data() + s * w, w), std::uint32_t(s));
    }

    out.bnd.emplace_back(0, out.dims[0]);  // lowest boundary maps to 0
    if (reduced && top >= 0) {
        SparseIntMatrix aug(1, x.count(0));
        for (std::size_t v = 0; v < x.count(0); ++v) aug.col[v].push_back({0, 1});
        out.bnd.push_back(std::move(aug));
    }
    for (int d = 1; d <= top; ++d) {
        const std::size_t w = d + 1;
        const auto& flat = x.simplices[d];
        SparseIntMatrix b(x.count(d - 1), x.count(d));
        std::vector<std::uint32_t> face(d);
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            const std::uint32_t* verts = flat.data() + s * w;
            long long sign = 1;
            for (std::size_t skip = 0; skip < w; ++skip, sign = -sign) {
                std::size_t j = 0;
                for (std::size_t i = 0; i < w; ++i)
                    if (i != skip) face[j++] = verts[i];
                const auto it = face_index[d - 1].find(pack_simplex_key(face.data(), d));
                assert(it != face_index[d - 1].end());
                b.col[s].push_back({it->second, sign});
            }
            std::sort(b.col[s].begin(), b.col[s].end());
        }
        out.bnd.push_back(std::move(b));
    }
    return out;
}

namespace {

std::map<int, HomologyResult> homology_impl(const ChainComplex& c, Coeff coeff, int up_to) {
    std::map<int, HomologyResult> out;
    const int hi = std::min(c.top(), up_to);

    if (coeff.kind == CoeffKind::PrimeField) {
        // direct mod-p ranks, independent of the integral path
        std::map<int, std::size_t> rk;
        for (int d = c.lowest; d <= hi + 1 && d <= c.top(); ++d)
            rk[d] = c.boundary_at(d) ? rank_mod_p(*c.boundary_at(d), coeff.p) : 0;
        for (int d = c.lowest; d <= hi; ++d) {
            const std::size_t up = (d + 1 <= c.top()) ? rk[d + 1] : 0;
            HomologyResult h;
            h.rank = (long long)c.dim_at(d) - (long long)rk[d] - (long long)up;
            out[d] = h;
        }
        return out;
    }

    // integral SNF per boundary (shared by Z, Q, half)
    std::map<int, SnfResult> snf;
    for (int d = c.lowest; d <= hi + 1 && d <= c.top(); ++d)
        snf[d] = smith_normal_form(*c.boundary_at(d));

    for (int d = c.lowest; d <= hi; ++d) {
        const std::size_t rk_d = snf[d].rank();
        const std::size_t rk_up = (d + 1 <= c.top()) ? snf[d + 1].rank() : 0;
        HomologyResult h;
        h.rank = (long long)c.dim_at(d) - (long long)rk_d - (long long)rk_up;
        if (d + 1 <= c.top()) {
            for (auto t : snf[d + 1].torsion()) h.torsion.push_back(t);
        }
        if (coeff.kind == CoeffKind::Rationals) h.torsion.clear();
        if (coeff.kind == CoeffKind::IntegersWithTwoInverted) {
            std::vector<long long> odd;
            for (auto t : h.torsion) {
                long long v = t;
                while (v % 2 == 0) v /= 2;
                if (v > 1) odd.push_back(v);
            }
            h.torsion = std::move(odd);
        }
        out[d] = h;
    }
    return out;
}

}  // namespace

std::map<int, HomologyResult> homology(const ChainComplex& c, Coeff coeff, int up_to) {
    return homology_impl(c, coeff, up_to);
}

std::map<int, HomologyResult> reduced_homology(const SimplicialComplex& x, Coeff coeff,
                                               int up_to) {
    return homology_impl(chain_complex_of(x, true), coeff, up_to);
}

ChainComplex relative_chain_complex(const SimplicialComplex& x, const SimplicialComplex& a) {
    // a must be a subcomplex of x (vertices matched by payload)
    std::vector<std::uint32_t> a_to_x(a.payloads.size());
    for (std::uint32_t v = 0; v < a.payloads.size(); ++v) {
        auto id = x.vertex_of(a.payloads[v]);
        if (!id) throw std::invalid_argument("relative pair: A has a vertex outside X");
        a_to_x[v] = *id;
    }
    const int top = x.dim();
    // mark simplices of x that lie in a
    std::vector<std::vector<char>> in_a(std::max(top + 1, 0));
    for (int d = 0; d <= top; ++d) in_a[d].assign(x.count(d), 0);
    for (int d = 0; d <= a.dim(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = a.simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            std::vector<std::uint32_t> mapped(w);
            for (std::size_t i = 0; i < w; ++i) mapped[i] = a_to_x[flat[s * w + i]];
            std::sort(mapped.begin(), mapped.end());
            if (!x.has_simplex(mapped.data(), w))
                throw std::invalid_argument("relative pair: A is not a subcomplex of X");
        }
    }
    // quotient bases: x-simplices not in a, indexed in x order
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> qidx(std::max(top + 1, 0));
    ChainComplex out;
    out.lowest = 0;
    std::vector<std::vector<std::uint32_t>> keep(std::max(top + 1, 0));
    for (int d = 0; d <= top; ++d) {
        const std::size_t w = d + 1;
        const auto& flat = x.simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            std::vector<std::uint32_t> verts(flat.begin() + s * w, flat.begin() + (s + 1) * w);
            std::vector<std::uint32_t> back(w);
            bool inside = true;
            for (std::size_t i = 0; i < w; ++i) {
                auto id = a.vertex_of(x.payloads[verts[i]]);
                if (!id) {
                    inside = false;
                    break;
                }
                back[i] = *id;
            }
            if (inside) {
                std::sort(back.begin(), back.end());
                inside = a.has_simplex(back.data(), w);
            }
            if (!inside) {
                qidx[d].emplace(pack_simplex_key(flat.data() + s * w, w), std::uint32_t(keep[d].size()));
                keep[d].push_back(std::uint32_t(s));
            }
        }
        out.dims.push_back(keep[d].size());
    }
    if (out.dims.empty()) out.dims.push_back(0);

    out.bnd.emplace_back(0, out.dims[0]);
    for (int d = 1; d <= top; ++d) {
        const std::size_t w = d + 1;
        const auto& flat = x.simplices[d];
        SparseIntMatrix b(out.dims[d - 1], out.dims[d]);
        std::vector<std::uint32_t> face(d);
        for (std::size_t qs = 0; qs < keep[d].size(); ++qs) {
            const std::uint32_t* verts = flat.data() + std::size_t(keep[d][qs]) * w;
            long long sign = 1;
            for (std::size_t skip = 0; skip < w; ++skip, sign = -sign) {
                std::size_t j = 0;
                for (std::size_t i = 0; i < w; ++i)
                    if (i != skip) face[j++] = verts[i];
                auto it = qidx[d - 1].find(pack_simplex_key(face.data(), d));
                if (it == qidx[d - 1].end()) continue;  // face lies in A
                b.col[qs].push_back({it->second, sign});
            }
            std::sort(b.col[qs].begin(), b.col[qs].end());
        }
        out.bnd.push_back(std::move(b));
    }
    return out;
}

std::map<int, HomologyResult> relative_homology(const SimplicialComplex& x,
                                                const SimplicialComplex& a, Coeff coeff) {
    return homology_impl(relative_chain_complex(x, a), coeff, 1 << 20);
}

SphericalReport verify_spherical(const SimplicialComplex& x, int d) {
    SphericalReport rep;
    rep.dimension = x.dim();
    if (x.dim() != d) {
        rep.detail = "dimension " + std::to_string(x.dim()) + " != " + std::to_string(d);
        return rep;
    }
    if (d == -1) {  // empty complex
        rep.pass = true;
        return rep;
    }
    // H~_0 fast path: always free, vanishes iff connected
    if (d >= 1 && !connected(x)) {
        rep.detail = "not connected";
        return rep;
    }
    if (d <= 1) {  // nothing below 0 left to check
        rep.pass = true;
        return rep;
    }
    auto h = reduced_homology(x, Coeff::Z(), d - 1);
    for (int i = 0; i < d; ++i) {
        auto it = h.find(i);
        if (it != h.end() && !it->second.is_zero()) {
            rep.detail = "H~_" + std::to_string(i) + " = " + it->second.str();
            return rep;
        }
    }
    rep.pass = true;
    return rep;
}

CmReport verify_cm(const SimplicialComplex& x, int d) {
    CmReport rep;
    auto whole = verify_spherical(x, d);
    if (!whole.pass) {
        rep.failure_witness = "complex itself: " + whole.detail;
        return rep;
    }
    const int top = x.dim();

    // p = d-1: every codimension-one simplex must sit in a facet (purity);
    // links of facets are empty, which is exactly (-1)-spherical.
    if (top >= 1) {
        const std::size_t w = top;  // (d-1)-simplices have w = d vertices
        std::unordered_set<std::uint64_t> covered;
        const auto& flat = x.simplices[top];
        std::vector<std::uint32_t> face(w);
        for (std::size_t s = 0; s * (w + 1) < flat.size(); ++s) {
            const std::uint32_t* verts = flat.data() + s * (w + 1);
            for (std::size_t skip = 0; skip <= w; ++skip) {
                std::size_t j = 0;
                for (std::size_t i = 0; i <= w; ++i)
                    if (i != skip) face[j++] = verts[i];
                covered.insert(pack_simplex_key(face.data(), w));
            }
        }
        const auto& sub = x.simplices[top - 1];
        for (std::size_t s = 0; s * w < sub.size(); ++s) {
            if (!covered.count(pack_simplex_key(sub.data() + s * w, w))) {
                rep.failure_witness = "codim-1 simplex with empty link";
                return rep;
            }
            ++rep.links_checked;
        }
    }

    // vertex links via a per-vertex pass (heaviest case: d = 2, link check is
    // a connectivity test)
    if (d >= 2) {
        // incidence lists: for each vertex, simplices (dim>=1) containing it
        std::vector<std::vector<std::pair<std::uint8_t, std::uint32_t>>> star(x.payloads.size());
        for (int dd = 1; dd <= top; ++dd) {
            const std::size_t w = dd + 1;
            const auto& flat = x.simplices[dd];
            for (std::size_t s = 0; s * w < flat.size(); ++s)
                for (std::size_t i = 0; i < w; ++i)
                    star[flat[s * w + i]].push_back({std::uint8_t(dd), std::uint32_t(s)});
        }
        for (std::uint32_t v = 0; v < x.payloads.size(); ++v) {
            SimplicialComplex link;
            for (const auto& [dd, s] : star[v]) {
                const std::size_t w = dd + 1;
                const std::uint32_t* verts = x.simplices[dd].data() + std::size_t(s) * w;
                std::vector<std::uint32_t> rest;
                for (std::size_t i = 0; i < w; ++i)
                    if (verts[i] != v) rest.push_back(link.add_vertex(verts[i]));
                if (!rest.empty()) link.add_simplex(rest);
            }
            link.freeze();
            auto lr = verify_spherical(link, d - 1);
            ++rep.links_checked;
            if (!lr.pass) {
                rep.failure_witness = "link of vertex " + std::to_string(v) + ": " + lr.detail;
                return rep;
            }
        }
    }

    // remaining p with 1 <= p <= d-2: build links simplex by simplex
    for (int p = 1; p <= d - 2; ++p) {
        const std::size_t w = p + 1;
        const auto& flat = x.simplices[p];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            std::vector<std::uint32_t> sigma(flat.begin() + s * w, flat.begin() + (s + 1) * w);
            auto link = link_of(x, sigma);
            auto lr = verify_spherical(link, d - p - 1);
            ++rep.links_checked;
            if (!lr.pass) {
                rep.failure_witness = "link of a " + std::to_string(p) + "-simplex: " + lr.detail;
                return rep;
            }
        }
    }
    rep.pass = true;
    return rep;
}

}  // namespace sv

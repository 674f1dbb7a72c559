// Verifications of the structural maps between the built objects: span maps,
// the annihilator duality of Tits posets and frame complexes, the cutting-down
// and dualizing isomorphisms of constrained splitting posets, and the
// upper/lower/interval fiber identifications.
#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "stabverify/builders.hpp"

namespace sv {

namespace {

std::string fv_string(const SimplicialComplex& x) {
    std::string s = "(";
    auto f = x.f_vector();
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    return s + ")";
}

}  // namespace

CheckReport span_map_check(const Ring* R, int n, int m) {
    CheckReport rep;
    const int skeleton_cap = (m == 0) ? n - 2 : n - 1;
    auto bc = build_basis_complex(R, n, m, skeleton_cap, false);
    auto tits = build_tits(R, n, m);

    // poset of simplices of the (capped) basis complex
    const auto& X = bc.complex;
    std::vector<std::vector<std::uint32_t>> simplex_list;
    std::vector<std::string> keys;
    for (int d = 0; d <= X.dim(); ++d) {
        const std::size_t w = d + 1;
        const auto& flat = X.simplices[d];
        for (std::size_t s = 0; s * w < flat.size(); ++s) {
            std::vector<std::uint32_t> verts(flat.begin() + s * w, flat.begin() + (s + 1) * w);
            std::string k = "x";
            for (auto v : verts) k += "." + std::to_string(v);
            keys.push_back(k);
            simplex_list.push_back(std::move(verts));
        }
    }
    std::vector<std::size_t> order;
    Poset dom = Poset::build(
        keys,
        [&](std::size_t a, std::size_t b) {
            const auto& sa = simplex_list[a];
            const auto& sb = simplex_list[b];
            return sa.size() < sb.size() &&
                   std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
        },
        &order);

    // span of each simplex, as an element of the Tits poset
    PosetMap span;
    span.src = &dom;
    span.dst = &tits.poset;
    span.image.resize(dom.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& verts = simplex_list[order[i]];
        std::vector<Vec> rows;
        for (auto v : verts) rows.push_back(bc.vertex_vector(v));
        Submodule s = span_submodule(R, n + m, rows);
        auto id = tits.poset.index_of(s.key());
        if (!id) {
            rep.pass = false;
            rep.detail = "span of a simplex is not a Tits poset element";
            return rep;
        }
        span.image[i] = std::uint32_t(*id);
    }
    ++rep.instances;
    if (!span.order_preserving(true)) {
        rep.pass = false;
        rep.detail = "span map does not send strict chains to strict chains";
        return rep;
    }
    if (!span.surjective()) {
        rep.pass = false;
        rep.detail = "span map is not surjective";
        return rep;
    }
    rep.detail = "domain " + std::to_string(dom.size()) + " simplices onto " +
                 std::to_string(tits.poset.size()) + " summands";
    return rep;
}

CheckReport dual_tits_check(const Ring* R, int n, std::size_t equivariance_samples) {
    CheckReport rep;
    const Ring* Rop = R->opposite().get();
    auto T = build_tits(R, n, 0);
    auto Top = build_tits(Rop, n, 0);

    PosetMap dual;
    dual.src = &T.poset;
    dual.dst = &Top.poset;
    dual.image.resize(T.poset.size());
    std::vector<Submodule> duals(T.poset.size());
    for (std::size_t i = 0; i < T.elements.size(); ++i) {
        duals[i] = annihilator_dual(T.elements[i]);
        auto id = Top.poset.index_of(duals[i].key());
        if (!id) {
            rep.pass = false;
            rep.detail = "annihilator of a summand is not a dual Tits element";
            return rep;
        }
        dual.image[i] = std::uint32_t(*id);
    }
    rep.instances = T.poset.size();
    if (!dual.bijective()) {
        rep.pass = false;
        rep.detail = "dual map is not bijective";
        return rep;
    }
    if (!dual.order_reversing(true)) {
        rep.pass = false;
        rep.detail = "dual map is not order-reversing";
        return rep;
    }
    // rank bookkeeping: rank V° = n - rank V
    for (std::size_t i = 0; i < T.elements.size(); ++i) {
        Submodule d = duals[i];
        auto r = free_summand_rank(d);
        if (!r || *r != n - *T.elements[i].free_rank) {
            rep.pass = false;
            rep.detail = "rank of annihilator is not complementary";
            return rep;
        }
    }
    // biduality through the canonical identification (R^op)^op = R
    for (std::size_t i = 0; i < T.elements.size(); ++i) {
        Submodule dd = annihilator_dual(duals[i]);
        if (!(dd.elems == T.elements[i].elems)) {
            rep.pass = false;
            rep.detail = "biduality fails";
            return rep;
        }
    }
    // equivariance (V·φ)° = (V°)·(φ^{-1})^T against sampled group elements
    auto samples = sample_gl(R, n, equivariance_samples, 0x5eedULL + n);
    for (const auto& phi : samples) {
        Mat it = inverse_transpose(phi);
        for (std::size_t i = 0; i < T.elements.size(); ++i) {
            Submodule lhs = annihilator_dual(submodule_apply(T.elements[i], phi));
            Submodule rhs = submodule_apply(duals[i], it);
            if (!(lhs.elems == rhs.elems)) {
                rep.pass = false;
                rep.detail = "equivariance against inverse-transpose fails";
                return rep;
            }
        }
    }
    rep.detail = std::to_string(T.poset.size()) + " summands, " +
                 std::to_string(samples.size()) + " sampled group elements";
    return rep;
}

CheckReport frame_coframe_check(const Ring* R, int n) {
    CheckReport rep;
    const Ring* Rop = R->opposite().get();
    auto F = build_frames(R, n, false);
    auto coF = build_frames(Rop, n, true);

    // vertex map L -> L°
    std::unordered_map<std::string, std::uint32_t> cof_index;
    for (std::uint32_t i = 0; i < coF.spaces.size(); ++i)
        cof_index.emplace(coF.spaces[i].key(), i);

    SimplicialMap pi;
    pi.src = &F.complex;
    pi.dst = &coF.complex;
    pi.image.resize(F.spaces.size());
    for (std::uint32_t i = 0; i < F.spaces.size(); ++i) {
        Submodule d = annihilator_dual(F.spaces[i]);
        auto it = cof_index.find(d.key());
        if (it == cof_index.end()) {
            rep.pass = false;
            rep.detail = "annihilator of a line is not a co-frame vertex";
            return rep;
        }
        pi.image[i] = it->second;
    }
    std::vector<char> hit(coF.spaces.size(), 0);
    for (auto v : pi.image) hit[v] = 1;
    if (F.spaces.size() != coF.spaces.size() ||
        !std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) {
        rep.pass = false;
        rep.detail = "vertex map is not a bijection";
        return rep;
    }
    if (!pi.is_simplicial() || !pi.injective_on_simplices()) {
        rep.pass = false;
        rep.detail = "dual map is not a simplicial embedding";
        return rep;
    }
    if (F.complex.f_vector() != coF.complex.f_vector()) {
        rep.pass = false;
        rep.detail = "f-vectors differ: " + fv_string(F.complex) + " vs " + fv_string(coF.complex);
        return rep;
    }
    rep.instances = F.complex.f_vector().size();
    rep.detail = "f-vector " + fv_string(F.complex);
    return rep;
}

CheckReport cutting_down_check(const Submodule& V, const Submodule& W, const Submodule& C) {
    CheckReport rep;
    const Ring* R = V.ring;
    const int n = int(V.ambient);
    const double full = [&] {
        double t = 1;
        for (int i = 0; i < n; ++i) t *= double(R->size());
        return t;
    }();

    Submodule inter = submodule_intersection(V, W);
    if (inter.elems.size() != 1) throw std::invalid_argument("cutting down: V ∩ W != 0");
    if (double(V.elems.size()) * double(W.elems.size()) >= full)
        throw std::invalid_argument("cutting down: V ⊕ W is not proper");
    if (!C.contains_sub(V)) throw std::invalid_argument("cutting down: C does not contain V");
    Submodule cw = submodule_intersection(C, W);
    if (cw.elems.size() != 1 || double(C.elems.size()) * double(W.elems.size()) != full)
        throw std::invalid_argument("cutting down: C is not a complement of W");

    SplittingConstraints cons1;
    cons1.p_below = V;
    cons1.q_above = W;
    auto S1 = build_splitting(R, n, cons1);

    SplittingConstraints cons2;
    cons2.p_below = V;
    cons2.ambient = C;
    auto S2 = build_splitting(R, n, cons2);

    if (S1.poset.size() != S2.poset.size()) {
        rep.pass = false;
        rep.detail = "poset sizes differ: " + std::to_string(S1.poset.size()) + " vs " +
                     std::to_string(S2.poset.size());
        return rep;
    }

    PosetMap fwd;
    fwd.src = &S1.poset;
    fwd.dst = &S2.poset;
    fwd.image.resize(S1.poset.size());
    for (std::size_t i = 0; i < S1.elements.size(); ++i) {
        const auto& [U, T] = S1.elements[i];
        Submodule TC = submodule_intersection(T, C);
        auto id = S2.id_of(U, TC);
        if (!id) {
            rep.pass = false;
            rep.detail = "(U, T∩C) misses the constrained splitting poset";
            return rep;
        }
        fwd.image[i] = std::uint32_t(*id);
    }
    PosetMap bwd;
    bwd.src = &S2.poset;
    bwd.dst = &S1.poset;
    bwd.image.resize(S2.poset.size());
    for (std::size_t i = 0; i < S2.elements.size(); ++i) {
        const auto& [U, T] = S2.elements[i];
        std::vector<Vec> gens;
        for (std::size_t r = 0; r < T.gens.rows; ++r) gens.push_back(T.gens.row(r));
        for (std::size_t r = 0; r < W.gens.rows; ++r) gens.push_back(W.gens.row(r));
        Submodule TW = span_submodule(R, n, gens);
        auto id = S1.id_of(U, TW);
        if (!id) {
            rep.pass = false;
            rep.detail = "(U', T'⊕W) misses the source splitting poset";
            return rep;
        }
        bwd.image[i] = std::uint32_t(*id);
    }
    for (std::size_t i = 0; i < S1.poset.size(); ++i)
        if (bwd.image[fwd.image[i]] != i) {
            rep.pass = false;
            rep.detail = "round trip is not the identity";
            return rep;
        }
    if (!fwd.order_preserving(true) || !bwd.order_preserving(true)) {
        rep.pass = false;
        rep.detail = "cutting down map is not an order isomorphism";
        return rep;
    }
    rep.instances = S1.poset.size();
    rep.detail = std::to_string(S1.poset.size()) + " splittings matched";
    return rep;
}

CheckReport dualizing_splitting_check(const Ring* R, int ambient_rank, const Submodule& V,
                                      std::size_t equivariance_samples) {
    CheckReport rep;
    const Ring* Rop = R->opposite().get();
    const int k = ambient_rank;

    Submodule Vd = annihilator_dual(V);

    SplittingConstraints c1;
    c1.p_below = V;
    auto S1 = build_splitting(R, k, c1);
    SplittingConstraints c2;
    c2.q_above = Vd;
    auto S2 = build_splitting(Rop, k, c2);

    if (S1.poset.size() != S2.poset.size()) {
        rep.pass = false;
        rep.detail = "poset sizes differ: " + std::to_string(S1.poset.size()) + " vs " +
                     std::to_string(S2.poset.size());
        return rep;
    }

    PosetMap dmap;
    dmap.src = &S1.poset;
    dmap.dst = &S2.poset;
    dmap.image.resize(S1.poset.size());
    for (std::size_t i = 0; i < S1.elements.size(); ++i) {
        const auto& [U, T] = S1.elements[i];
        Submodule Td = annihilator_dual(T);
        Submodule Ud = annihilator_dual(U);
        // rank bookkeeping: rank T° = rank U
        auto rt = free_summand_rank(Td);
        if (!rt || !U.free_rank || *rt != *U.free_rank) {
            rep.pass = false;
            rep.detail = "rank of T° does not match rank of U";
            return rep;
        }
        auto id = S2.id_of(Td, Ud);
        if (!id) {
            rep.pass = false;
            rep.detail = "(T°, U°) misses the dual splitting poset";
            return rep;
        }
        dmap.image[i] = std::uint32_t(*id);
    }
    if (!dmap.bijective() || !dmap.order_preserving(true)) {
        rep.pass = false;
        rep.detail = "dualizing map is not an order isomorphism";
        return rep;
    }
    // inverse is order-preserving as well
    PosetMap inv;
    inv.src = &S2.poset;
    inv.dst = &S1.poset;
    inv.image.resize(S2.poset.size());
    for (std::size_t i = 0; i < S1.poset.size(); ++i) inv.image[dmap.image[i]] = std::uint32_t(i);
    if (!inv.order_preserving(true)) {
        rep.pass = false;
        rep.detail = "inverse of dualizing map is not order-preserving";
        return rep;
    }

    // sampled equivariance on the subgroup preserving V and fixing C/V
    double scan = 1;
    for (int i = 0; i < k * k; ++i) scan *= double(R->size());
    std::vector<Mat> subgroup;
    if (scan <= double(1u << 22)) {
        const std::uint64_t total = (std::uint64_t)scan;
        for (std::uint64_t code = 0; code < total && subgroup.size() < equivariance_samples;
             ++code) {
            Mat m(R, k, k);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < std::size_t(k) * k; ++i) {
                m.a[i] = Elem(c % R->size());
                c /= R->size();
            }
            if (!has_right_inverse(m)) continue;
            bool pres = true;
            for (std::size_t r = 0; r < V.gens.rows && pres; ++r)
                if (!V.contains(vec_code(vec_mat(V.gens.row(r), m)))) pres = false;
            if (!pres) continue;
            bool fixes_quotient = true;
            for (int i = 0; i < k && fixes_quotient; ++i) {
                Vec e = unit_vector(R, k, i);
                Vec diff = vec_add(vec_mat(e, m), vec_scale(R->neg(R->one()), e));
                if (!V.contains(vec_code(diff))) fixes_quotient = false;
            }
            if (fixes_quotient) subgroup.push_back(std::move(m));
        }
    }
    for (const auto& phi : subgroup) {
        Mat it = inverse_transpose(phi);
        for (std::size_t i = 0; i < S1.elements.size(); ++i) {
            const auto& [U, T] = S1.elements[i];
            Submodule lhsT = annihilator_dual(submodule_apply(T, phi));
            Submodule rhsT = submodule_apply(annihilator_dual(T), it);
            Submodule lhsU = annihilator_dual(submodule_apply(U, phi));
            Submodule rhsU = submodule_apply(annihilator_dual(U), it);
            if (!(lhsT.elems == rhsT.elems) || !(lhsU.elems == rhsU.elems)) {
                rep.pass = false;
                rep.detail = "subgroup equivariance fails";
                return rep;
            }
        }
    }
    rep.instances = S1.poset.size();
    rep.detail = std::to_string(S1.poset.size()) + " splittings, " +
                 std::to_string(subgroup.size()) + " subgroup elements";
    return rep;
}

namespace {

// compare the subposet {ids} of `big` (with submodule images under `transform`)
// against the model Tits poset: bijective and order-preserving both ways
bool matches_model(const TitsPoset& big, const std::vector<std::size_t>& ids,
                   const std::function<Submodule(const Submodule&)>& transform,
                   const TitsPoset& model, std::string& why) {
    if (ids.size() != model.poset.size()) {
        why = "fiber size " + std::to_string(ids.size()) + " vs model " +
              std::to_string(model.poset.size());
        return false;
    }
    std::vector<std::size_t> img(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        Submodule t = transform(big.elements[ids[i]]);
        auto id = model.poset.index_of(t.key());
        if (!id) {
            why = "fiber image misses the model poset";
            return false;
        }
        img[i] = *id;
    }
    std::vector<char> hit(model.poset.size(), 0);
    for (auto v : img) hit[v] = 1;
    if (!std::all_of(hit.begin(), hit.end(), [](char c) { return c; })) {
        why = "fiber image not bijective";
        return false;
    }
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = 0; b < ids.size(); ++b) {
            const bool lhs = big.poset.less(ids[a], ids[b]);
            const bool rhs = model.poset.less(img[a], img[b]);
            if (lhs != rhs) {
                why = "fiber order mismatch";
                return false;
            }
        }
    return true;
}

// coordinates of elements of a free summand S (witness rows b_1..b_r) as a
// code -> code table into R^r
std::unordered_map<std::uint64_t, std::uint64_t> coordinate_table(const Submodule& s) {
    const Ring* R = s.ring;
    const std::size_t r = s.witness.rows;
    std::unordered_map<std::uint64_t, std::uint64_t> table;
    double total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= double(R->size());
    for (std::uint64_t t = 0; t < (std::uint64_t)total; ++t) {
        Vec coeff = vec_from_code(R, r, t);
        Vec acc;
        acc.ring = R;
        acc.c.assign(s.ambient, 0);
        for (std::size_t i = 0; i < r; ++i)
            acc = vec_add(acc, vec_scale(coeff[i], s.witness.row(i)));
        table.emplace(vec_code(acc), t);
    }
    if (table.size() != (std::uint64_t)total) throw std::logic_error("witness rows not free");
    return table;
}

Submodule recoordinatize(const Submodule& inner, const std::unordered_map<std::uint64_t, std::uint64_t>& table,
                         const Ring* R, std::size_t new_rank) {
    Submodule out;
    out.ring = R;
    out.ambient = new_rank;
    for (auto code : inner.elems) {
        auto it = table.find(code);
        if (it == table.end()) throw std::logic_error("element outside coordinate table");
        out.elems.push_back(it->second);
    }
    std::sort(out.elems.begin(), out.elems.end());
    // regenerate a small generating set
    std::vector<Vec> picked;
    Submodule sp = zero_submodule(R, new_rank);
    for (auto c : out.elems) {
        if (sp.contains(c)) continue;
        picked.push_back(vec_from_code(R, new_rank, c));
        sp = span_submodule(R, new_rank, picked);
        if (sp.elems.size() == out.elems.size()) break;
    }
    out.gens = picked.empty() ? Mat(R, 0, new_rank) : mat_from_rows(picked);
    return out;
}

}  // namespace

CheckReport fiber_isos_check(const Ring* R, int n, int m) {
    CheckReport rep;
    auto T = build_tits(R, n, m);
    const std::size_t N = std::size_t(n + m);

    std::vector<Vec> erows;
    for (int i = 0; i < m; ++i) erows.push_back(unit_vector(R, N, i));

    for (std::size_t vi = 0; vi < T.elements.size(); ++vi) {
        Submodule V = T.elements[vi];
        const int r = *V.free_rank;

        // ----- lower fiber: elements below V against the model T_r(R)
        if (r >= 2) {
            std::vector<std::size_t> below;
            for (std::size_t j = 0; j < T.poset.size(); ++j)
                if (T.poset.less(j, vi)) below.push_back(j);
            auto table = coordinate_table(V);
            auto model = build_tits(R, r, 0);
            std::string why;
            if (!matches_model(
                    T, below,
                    [&](const Submodule& W) { return recoordinatize(W, table, R, r); }, model,
                    why)) {
                rep.pass = false;
                rep.detail = "lower fiber of a rank-" + std::to_string(r) + " summand: " + why;
                return rep;
            }
            ++rep.instances;
        }

        // ----- upper fiber: elements above V against T_{n-r} / T^m_{n-r}
        if (n - r >= 1) {
            std::vector<std::size_t> above;
            for (std::size_t j = 0; j < T.poset.size(); ++j)
                if (T.poset.less(vi, j)) above.push_back(j);

            // complement of V containing the standard R^m (when relative)
            std::vector<Vec> vrows;
            for (std::size_t i = 0; i < V.witness.rows; ++i) vrows.push_back(V.witness.row(i));
            std::vector<Vec> start = erows;
            for (auto& v : vrows) start.push_back(v);
            auto fullbasis = extends_to_basis(start, N);
            if (!fullbasis) throw std::logic_error("fiber check: completion failed");
            std::vector<Vec> crows = erows;
            for (std::size_t i = start.size(); i < fullbasis->size(); ++i)
                crows.push_back((*fullbasis)[i]);
            Submodule C = span_submodule(R, N, crows);
            C.witness = mat_from_rows(crows);
            C.free_rank = int(crows.size());

            // projection along V onto C
            std::unordered_map<std::uint64_t, std::uint64_t> proj;
            for (auto vcode : V.elems)
                for (auto ccode : C.elems) {
                    Vec sum = vec_add(vec_from_code(R, N, vcode), vec_from_code(R, N, ccode));
                    proj.emplace(vec_code(sum), ccode);
                }
            auto ctable = coordinate_table(C);
            auto model = build_tits(R, n - r, m);
            std::string why;
            if (!matches_model(
                    T, above,
                    [&](const Submodule& U) {
                        Submodule pu;
                        pu.ring = R;
                        pu.ambient = N;
                        for (auto code : U.elems) pu.elems.push_back(proj.at(code));
                        std::sort(pu.elems.begin(), pu.elems.end());
                        pu.elems.erase(std::unique(pu.elems.begin(), pu.elems.end()),
                                       pu.elems.end());
                        return recoordinatize(pu, ctable, R, crows.size());
                    },
                    model, why)) {
                rep.pass = false;
                rep.detail = "upper fiber of a rank-" + std::to_string(r) + " summand: " + why;
                return rep;
            }
            ++rep.instances;
        }

        // ----- intervals (V, V') for absolute posets
        if (m == 0) {
            for (std::size_t wj = 0; wj < T.elements.size(); ++wj) {
                if (!T.poset.less(vi, wj)) continue;
                const Submodule& Vp = T.elements[wj];
                const int rp = *Vp.free_rank;
                std::vector<std::size_t> between;
                for (std::size_t j = 0; j < T.poset.size(); ++j)
                    if (T.poset.less(vi, j) && T.poset.less(j, wj)) between.push_back(j);
                if (rp - r == 1) {
                    if (!between.empty()) {
                        rep.pass = false;
                        rep.detail = "interval of consecutive ranks is nonempty";
                        return rep;
                    }
                    ++rep.instances;
                    continue;
                }
                // restrict to V' coordinates, then quotient by the image of V
                auto table = coordinate_table(Vp);
                Submodule Vin = recoordinatize(V, table, R, rp);
                auto r_in = free_summand_rank(Vin);
                if (!r_in || *r_in != r) throw std::logic_error("interval: rank drift");
                std::vector<Vec> vrows;
                for (std::size_t i = 0; i < Vin.witness.rows; ++i)
                    vrows.push_back(Vin.witness.row(i));
                auto fb = extends_to_basis(vrows, rp);
                if (!fb) throw std::logic_error("interval: completion failed");
                std::vector<Vec> crows(fb->begin() + r, fb->end());
                Submodule C = span_submodule(R, rp, crows);
                C.witness = mat_from_rows(crows);
                C.free_rank = int(crows.size());
                std::unordered_map<std::uint64_t, std::uint64_t> proj;
                for (auto vcode : Vin.elems)
                    for (auto ccode : C.elems) {
                        Vec sum =
                            vec_add(vec_from_code(R, rp, vcode), vec_from_code(R, rp, ccode));
                        proj.emplace(vec_code(sum), ccode);
                    }
                auto ctable = coordinate_table(C);
                auto model = build_tits(R, rp - r, 0);
                std::string why;
                if (!matches_model(
                        T, between,
                        [&](const Submodule& U) {
                            Submodule inVp = recoordinatize(U, table, R, rp);
                            Submodule pu;
                            pu.ring = R;
                            pu.ambient = rp;
                            for (auto code : inVp.elems) pu.elems.push_back(proj.at(code));
                            std::sort(pu.elems.begin(), pu.elems.end());
                            pu.elems.erase(std::unique(pu.elems.begin(), pu.elems.end()),
                                           pu.elems.end());
                            return recoordinatize(pu, ctable, R, crows.size());
                        },
                        model, why)) {
                    rep.pass = false;
                    rep.detail = "interval fiber: " + why;
                    return rep;
                }
                ++rep.instances;
            }
        }
    }
    rep.detail = std::to_string(rep.instances) + " fibers matched";
    return rep;
}

}  // namespace sv

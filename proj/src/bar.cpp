#include "stabverify/bar.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace sv {

namespace {

// tuples of non-identity elements; digits are element id - 1
std::size_t tuple_count(std::size_t m, int deg) {
    double t = 1;
    for (int i = 0; i < deg; ++i) t *= double(m);
    if (t > double(1u << 30)) throw guard_error("bar tuple space overflows the index type");
    return std::size_t(t);
}

void decode_tuple(std::size_t code, std::size_t m, int deg, std::vector<std::uint32_t>& out) {
    out.resize(deg);
    for (int i = 0; i < deg; ++i) {
        out[i] = std::uint32_t(code % m) + 1;  // skip identity id 0
        code /= m;
    }
}

std::size_t encode_tuple(const std::vector<std::uint32_t>& t, std::size_t m) {
    std::size_t code = 0;
    for (std::size_t i = t.size(); i-- > 0;) code = code * m + (t[i] - 1);
    return code;
}

}  // namespace

ChainComplex bar_chain_complex(const FiniteMatrixGroup& g, int top_degree,
                               const BarGuards& guards) {
    const std::size_t m = g.order() - 1;
    ChainComplex out;
    out.lowest = 0;
    for (int d = 0; d <= top_degree; ++d) {
        const std::size_t cnt = (m == 0 && d > 0) ? 0 : tuple_count(m, d);
        if (cnt > guards.column_guard)
            throw guard_error("bar chain degree " + std::to_string(d) + " needs " +
                              std::to_string(cnt) + " columns (guard " +
                              std::to_string(guards.column_guard) + ")");
        out.dims.push_back(cnt);
    }
    out.bnd.emplace_back(0, out.dims[0]);
    std::vector<std::uint32_t> tup, face;
    for (int d = 1; d <= top_degree; ++d) {
        SparseIntMatrix b(out.dims[d - 1], out.dims[d]);
        for (std::size_t c = 0; c < out.dims[d]; ++c) {
            decode_tuple(c, m, d, tup);
            // leading face
            face.assign(tup.begin() + 1, tup.end());
            b.add_entry(std::uint32_t(encode_tuple(face, m)), std::uint32_t(c), 1);
            // inner faces with multiplication; normalized: identity tuples drop
            long long sign = -1;
            for (int j = 0; j + 1 < d; ++j, sign = -sign) {
                const std::uint32_t prod = g.mul(tup[j], tup[j + 1]);
                if (prod != 0) {
                    face.assign(tup.begin(), tup.end());
                    face.erase(face.begin() + j);
                    face[j] = prod;
                    b.add_entry(std::uint32_t(encode_tuple(face, m)), std::uint32_t(c), sign);
                }
            }
            // trailing face
            face.assign(tup.begin(), tup.end() - 1);
            sign = (d % 2 == 0) ? 1 : -1;
            b.add_entry(std::uint32_t(encode_tuple(face, m)), std::uint32_t(c), sign);
        }
        out.bnd.push_back(std::move(b));
    }
    return out;
}

std::map<int, HomologyResult> bar_homology(const FiniteMatrixGroup& g, Coeff coeff, int max_degree,
                                           const BarGuards& guards) {
    const bool integral = coeff.kind == CoeffKind::Integers ||
                          coeff.kind == CoeffKind::IntegersWithTwoInverted;
    if (integral &&
        (g.order() > guards.integral_order_cap || max_degree > guards.integral_degree_cap))
        throw guard_error("integral bar homology restricted to |G| <= " +
                          std::to_string(guards.integral_order_cap) + ", degree <= " +
                          std::to_string(guards.integral_degree_cap));
    auto cc = bar_chain_complex(g, max_degree + 1, guards);
    auto h = homology(cc, coeff, max_degree);
    return h;
}

namespace {

// mapping cone of the inclusion-induced bar chain map C_*(H) -> C_*(G)
ChainComplex bar_cone(const FiniteMatrixGroup& g, const FiniteMatrixGroup& h, int top_degree,
                      const BarGuards& guards) {
    for (const auto& m : h.elems)
        if (!g.contains(m)) throw std::invalid_argument("h is not a subgroup of g");

    auto ccH = bar_chain_complex(h, std::max(top_degree - 1, 0), guards);
    auto ccG = bar_chain_complex(g, top_degree, guards);
    const std::size_t mH = h.order() - 1, mG = g.order() - 1;

    // element translation h-id -> g-id
    std::vector<std::uint32_t> into(h.order());
    for (std::uint32_t i = 0; i < h.order(); ++i) into[i] = g.index_of(h.elems[i]);

    ChainComplex out;
    out.lowest = 0;
    for (int d = 0; d <= top_degree; ++d) {
        const std::size_t hpart = (d >= 1) ? ccH.dim_at(d - 1) : 0;
        out.dims.push_back(hpart + ccG.dim_at(d));
    }
    out.bnd.emplace_back(0, out.dims[0]);
    std::vector<std::uint32_t> tup, mapped;
    for (int d = 1; d <= top_degree; ++d) {
        const std::size_t hpart_lo = (d - 1 >= 1) ? ccH.dim_at(d - 2) : 0;
        SparseIntMatrix b(out.dims[d - 1], out.dims[d]);
        // columns from C_{d-1}(H): d(a,0) = (-d_H a, phi(a))
        const std::size_t hcols = (d >= 1) ? ccH.dim_at(d - 1) : 0;
        for (std::size_t c = 0; c < hcols; ++c) {
            if (d - 1 >= 1) {
                const SparseIntMatrix* bh = ccH.boundary_at(d - 1);
                for (const auto& [r, v] : bh->col[c]) b.add_entry(r, std::uint32_t(c), -v);
            }
            // phi(a): tuple translated into G
            decode_tuple(c, mH, d - 1, tup);
            mapped.resize(tup.size());
            for (std::size_t i = 0; i < tup.size(); ++i) mapped[i] = into[tup[i]];
            const std::size_t gidx = encode_tuple(mapped, mG);
            b.add_entry(std::uint32_t(hpart_lo + gidx), std::uint32_t(c), 1);
        }
        // columns from C_d(G): d(0,b) = (0, d_G b)
        const SparseIntMatrix* bg = ccG.boundary_at(d);
        for (std::size_t c = 0; c < ccG.dim_at(d); ++c)
            for (const auto& [r, v] : bg->col[c])
                b.add_entry(std::uint32_t(hpart_lo + r), std::uint32_t(hcols + c), v);
        out.bnd.push_back(std::move(b));
    }
    return out;
}

}  // namespace

std::map<int, HomologyResult> relative_group_homology(const FiniteMatrixGroup& g,
                                                      const FiniteMatrixGroup& h, Coeff coeff,
                                                      int max_degree, const BarGuards& guards) {
    const bool integral = coeff.kind == CoeffKind::Integers ||
                          coeff.kind == CoeffKind::IntegersWithTwoInverted;
    if (integral &&
        (g.order() > guards.integral_order_cap || max_degree > guards.integral_degree_cap))
        throw guard_error("integral bar homology restricted to small groups and degrees");
    auto cone = bar_cone(g, h, max_degree + 1, guards);
    return homology(cone, coeff, max_degree);
}

FiniteMatrixGroup block_sum_subgroup(const FiniteMatrixGroup& gl_n) {
    const Ring* R = gl_n.ring;
    const std::size_t n = gl_n.degree;
    FiniteMatrixGroup out;
    out.ring = R;
    out.degree = n;
    out.provenance = gl_n.provenance + ";block-sum-image";
    for (const auto& m : gl_n.elems) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            if (m.at(n - 1, j) != (j == n - 1 ? R->one() : R->zero())) ok = false;
            if (j < n - 1 && m.at(j, n - 1) != R->zero()) ok = false;
        }
        if (ok) out.elems.push_back(m);
    }
    out.finish();
    return out;
}

std::string StabilityTable::csv() const {
    std::ostringstream os;
    os << "n,i,dim_prev,dim_cur,dim_rel_i,verdict\n";
    auto cell = [](const std::optional<HomologyResult>& h) {
        if (!h) return std::string("infeasible");
        if (h->torsion.empty()) return std::to_string(h->rank);
        return h->str();
    };
    for (const auto& c : cells)
        os << c.n << "," << c.i << "," << cell(c.dim_prev) << "," << cell(c.dim_cur) << ","
           << cell(c.rel_i) << "," << c.verdict << "\n";
    return os.str();
}

StabilityTable stability_table(const Ring* R, int n_max, int i_max, Coeff coeff,
                               const BarGuards& guards) {
    StabilityTable table;
    const bool two_invertible = (coeff.kind == CoeffKind::Rationals) ||
                                (coeff.kind == CoeffKind::IntegersWithTwoInverted) ||
                                (coeff.kind == CoeffKind::PrimeField && coeff.p != 2);

    for (int n = 1; n <= n_max; ++n) {
        auto cur = enumerate_gl(R, std::size_t(n));
        auto prev = block_sum_subgroup(cur);  // = GL_{n-1}(R), trivial when n = 1

        auto feasible = [&](std::size_t order, int degree) {
            if (order <= 1) return true;
            double t = 1;
            for (int i = 0; i < degree; ++i) t *= double(order - 1);
            return t <= double(guards.column_guard);
        };

        for (int i = 0; i <= i_max; ++i) {
            StabilityCell cell;
            cell.n = n;
            cell.i = i;
            try {
                if (feasible(prev.order(), i + 1))
                    cell.dim_prev = bar_homology(prev, coeff, i, guards).at(i);
            } catch (const guard_error&) {
            }
            try {
                if (feasible(cur.order(), i + 1))
                    cell.dim_cur = bar_homology(cur, coeff, i, guards).at(i);
            } catch (const guard_error&) {
            }
            try {
                if (feasible(cur.order(), i + 1) && feasible(prev.order(), i))
                    cell.rel_i = relative_group_homology(cur, prev, coeff, i, guards).at(i);
            } catch (const guard_error&) {
            }
            try {
                if (feasible(cur.order(), i + 2) && feasible(prev.order(), i + 1))
                    cell.rel_next = relative_group_homology(cur, prev, coeff, i + 1, guards).at(i + 1);
            } catch (const guard_error&) {
            }

            if (i > n - 1) {
                cell.verdict = "outside-range";
            } else if (!cell.rel_i) {
                cell.verdict = "infeasible";
            } else if (cell.rel_i->is_zero()) {
                cell.verdict = "consistent";
            } else if (!two_invertible) {
                cell.verdict = "nonzero-without-halving";
            } else {
                cell.verdict = "violation";
                table.any_violation = true;
            }
            table.cells.push_back(std::move(cell));
        }
    }
    return table;
}

}  // namespace sv

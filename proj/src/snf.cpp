#include "stabverify/snf.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <queue>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace sv {

namespace {

using boost::multiprecision::cpp_int;

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("snf add overflow");
    return r;
}
long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("snf mul overflow");
    return r;
}

template <typename I>
I t_add(I a, I b) {
    if constexpr (std::is_same_v<I, long long>) return checked_add(a, b);
    else return a + b;
}
template <typename I>
I t_mul(I a, I b) {
    if constexpr (std::is_same_v<I, long long>) return checked_mul(a, b);
    else return a * b;
}

template <typename I>
I t_abs(const I& a) {
    return a < 0 ? I(-a) : a;
}

// g = gcd(a,b) > 0 with p*a + q*b = g
template <typename I>
I t_exgcd(const I& a, const I& b, I& p, I& q) {
    if (b == 0) {
        p = (a < 0) ? I(-1) : I(1);
        q = 0;
        return t_abs(a);
    }
    I p1, q1;
    I g = t_exgcd<I>(b, I(a % b), p1, q1);
    p = q1;
    q = p1 - I(a / b) * q1;
    return g;
}

// ---------------------------------------------------------------------------
// dense SNF, templated so it can run in checked int64 or cpp_int

template <typename I>
struct DenseWork {
    std::size_t rows, cols;
    std::vector<I> a;
    std::vector<I> U, Uinv, V, Vinv;  // row transforms (rows x rows), col transforms (cols x cols)
    bool transforms;

    I& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
        if (transforms)
            for (std::size_t c = 0; c < rows; ++c) {
                std::swap(U[i * rows + c], U[j * rows + c]);
                std::swap(Uinv[c * rows + i], Uinv[c * rows + j]);
            }
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
        if (transforms)
            for (std::size_t r = 0; r < cols; ++r) {
                std::swap(V[r * cols + i], V[r * cols + j]);
                std::swap(Vinv[i * cols + r], Vinv[j * cols + r]);
            }
    }
    // row i += q * row j
    void add_row(std::size_t i, std::size_t j, const I& q) {
        for (std::size_t c = 0; c < cols; ++c) at(i, c) = t_add(at(i, c), t_mul(q, at(j, c)));
        if (transforms)
            for (std::size_t c = 0; c < rows; ++c) {
                U[i * rows + c] = t_add(U[i * rows + c], t_mul(q, U[j * rows + c]));
                Uinv[c * rows + j] = t_add(Uinv[c * rows + j], t_mul(I(-q), Uinv[c * rows + i]));
            }
    }
    // col i += q * col j
    void add_col(std::size_t i, std::size_t j, const I& q) {
        for (std::size_t r = 0; r < rows; ++r) at(r, i) = t_add(at(r, i), t_mul(q, at(r, j)));
        if (transforms)
            for (std::size_t r = 0; r < cols; ++r) {
                V[r * cols + i] = t_add(V[r * cols + i], t_mul(q, V[r * cols + j]));
                Vinv[j * cols + r] = t_add(Vinv[j * cols + r], t_mul(I(-q), Vinv[i * cols + r]));
            }
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < cols; ++c) at(i, c) = -at(i, c);
        if (transforms)
            for (std::size_t c = 0; c < rows; ++c) {
                U[i * rows + c] = -U[i * rows + c];
                Uinv[c * rows + i] = -Uinv[c * rows + i];
            }
    }
    // (row_i, row_j) <- (p row_i + q row_j, r2 row_i + s row_j), with ps - qr2 = 1
    void combine_rows(std::size_t i, std::size_t j, const I& p, const I& q, const I& r2,
                      const I& s) {
        for (std::size_t c = 0; c < cols; ++c) {
            const I a0 = at(i, c), b0 = at(j, c);
            at(i, c) = t_add(t_mul(p, a0), t_mul(q, b0));
            at(j, c) = t_add(t_mul(r2, a0), t_mul(s, b0));
        }
        if (transforms)
            for (std::size_t c = 0; c < rows; ++c) {
                const I a0 = U[i * rows + c], b0 = U[j * rows + c];
                U[i * rows + c] = t_add(t_mul(p, a0), t_mul(q, b0));
                U[j * rows + c] = t_add(t_mul(r2, a0), t_mul(s, b0));
                const I x0 = Uinv[c * rows + i], y0 = Uinv[c * rows + j];
                Uinv[c * rows + i] = t_add(t_mul(s, x0), t_mul(I(-r2), y0));
                Uinv[c * rows + j] = t_add(t_mul(I(-q), x0), t_mul(p, y0));
            }
    }
    // (col_i, col_j) <- (p col_i + q col_j, r2 col_i + s col_j), with ps - qr2 = 1
    void combine_cols(std::size_t i, std::size_t j, const I& p, const I& q, const I& r2,
                      const I& s) {
        for (std::size_t r = 0; r < rows; ++r) {
            const I a0 = at(r, i), b0 = at(r, j);
            at(r, i) = t_add(t_mul(p, a0), t_mul(q, b0));
            at(r, j) = t_add(t_mul(r2, a0), t_mul(s, b0));
        }
        if (transforms)
            for (std::size_t r = 0; r < cols; ++r) {
                const I a0 = V[r * cols + i], b0 = V[r * cols + j];
                V[r * cols + i] = t_add(t_mul(p, a0), t_mul(q, b0));
                V[r * cols + j] = t_add(t_mul(r2, a0), t_mul(s, b0));
                const I x0 = Vinv[i * cols + r], y0 = Vinv[j * cols + r];
                Vinv[i * cols + r] = t_add(t_mul(s, x0), t_mul(I(-r2), y0));
                Vinv[j * cols + r] = t_add(t_mul(I(-q), x0), t_mul(p, y0));
            }
    }

    std::vector<I> run() {
        const std::size_t nmin = std::min(rows, cols);
        std::size_t t = 0;
        while (t < nmin) {
            // locate minimal nonzero |entry| in the trailing block
            std::size_t pr = t, pc = t;
            bool found = false;
            I best{};
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c) {
                    const I v = t_abs(at(r, c));
                    if (v != 0 && (!found || v < best)) {
                        best = v;
                        pr = r;
                        pc = c;
                        found = true;
                    }
                }
            if (!found) break;
            swap_rows(t, pr);
            swap_cols(t, pc);

            // clear column t and row t with exact divisions where possible and
            // unimodular gcd combinations otherwise; each full round either
            // leaves both clean or strictly shrinks the pivot
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (std::size_t r = t + 1; r < rows; ++r) {
                    const I v = at(r, t);
                    if (v == 0) continue;
                    const I piv = at(t, t);
                    if (v % piv == 0) {
                        add_row(r, t, I(-(v / piv)));
                    } else {
                        I p, q;
                        const I g = t_exgcd<I>(piv, v, p, q);
                        combine_rows(t, r, p, q, I(-(v / g)), I(piv / g));
                        dirty = true;  // row t changed; row pass on columns may re-dirty
                    }
                }
                for (std::size_t c = t + 1; c < cols; ++c) {
                    const I v = at(t, c);
                    if (v == 0) continue;
                    const I piv = at(t, t);
                    if (v % piv == 0) {
                        add_col(c, t, I(-(v / piv)));
                    } else {
                        I p, q;
                        const I g = t_exgcd<I>(piv, v, p, q);
                        combine_cols(t, c, p, q, I(-(v / g)), I(piv / g));
                        dirty = true;  // column t may have new entries below the pivot
                    }
                }
            }
            // pivot must divide the rest of the block
            bool fixed = true;
            for (std::size_t r = t + 1; r < rows && fixed; ++r)
                for (std::size_t c = t + 1; c < cols && fixed; ++c)
                    if (at(r, c) % at(t, t) != 0) {
                        add_row(t, r, I(1));
                        fixed = false;
                    }
            if (!fixed) continue;  // redo position t
            if (at(t, t) < 0) negate_row(t);
            ++t;
        }

        std::vector<I> diag;
        for (std::size_t i = 0; i < t; ++i) diag.push_back(at(i, i));
        return diag;
    }
};

template <typename I>
SnfResult dense_snf_impl(const DMat& in, bool with_transforms) {
    DenseWork<I> w;
    w.rows = std::max<std::size_t>(in.rows, 1);
    w.cols = std::max<std::size_t>(in.cols, 1);
    w.transforms = with_transforms;
    w.a.assign(w.rows * w.cols, I(0));
    for (std::size_t r = 0; r < in.rows; ++r)
        for (std::size_t c = 0; c < in.cols; ++c) w.a[r * w.cols + c] = I(in.at(r, c));
    if (with_transforms) {
        w.U.assign(w.rows * w.rows, I(0));
        w.Uinv.assign(w.rows * w.rows, I(0));
        w.V.assign(w.cols * w.cols, I(0));
        w.Vinv.assign(w.cols * w.cols, I(0));
        for (std::size_t i = 0; i < w.rows; ++i) w.U[i * w.rows + i] = w.Uinv[i * w.rows + i] = 1;
        for (std::size_t i = 0; i < w.cols; ++i) w.V[i * w.cols + i] = w.Vinv[i * w.cols + i] = 1;
    }
    auto diag = w.run();

    SnfResult out;
    for (const auto& d : diag) {
        if constexpr (std::is_same_v<I, long long>) {
            out.divisors.push_back(d);
        } else {
            if (d > cpp_int(std::numeric_limits<long long>::max()))
                throw std::overflow_error("snf divisor exceeds 64 bits");
            out.divisors.push_back(d.template convert_to<long long>());
        }
    }
    if (with_transforms) {
        auto toD = [&](const std::vector<I>& src, std::size_t n) {
            DMat d(n, n);
            for (std::size_t i = 0; i < n * n; ++i) {
                if constexpr (std::is_same_v<I, long long>) {
                    d.a[i] = src[i];
                } else {
                    if (t_abs(src[i]) > cpp_int(std::numeric_limits<long long>::max()))
                        throw std::overflow_error("snf transform exceeds 64 bits");
                    d.a[i] = src[i].template convert_to<long long>();
                }
            }
            return d;
        };
        out.U = toD(w.U, w.rows);
        out.V = toD(w.V, w.cols);
        out.Uinv = toD(w.Uinv, w.rows);
        out.Vinv = toD(w.Vinv, w.cols);
    }
    return out;
}

}  // namespace

void SparseIntMatrix::add_entry(std::uint32_t r, std::uint32_t c, long long v) {
    if (v == 0) return;
    auto& cc = col[c];
    auto it = std::lower_bound(cc.begin(), cc.end(), r,
                               [](const auto& p, std::uint32_t rr) { return p.first < rr; });
    if (it != cc.end() && it->first == r) {
        it->second += v;
        if (it->second == 0) cc.erase(it);
    } else {
        cc.insert(it, {r, v});
    }
}

std::size_t SparseIntMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& c : col) n += c.size();
    return n;
}

SparseIntMatrix SparseIntMatrix::transposed() const {
    SparseIntMatrix t(cols, rows);
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, v] : col[c]) t.col[r].push_back({std::uint32_t(c), v});
    for (auto& c : t.col)
        std::sort(c.begin(), c.end());
    return t;
}

DMat DMat::identity(std::size_t n) {
    DMat d(n, n);
    for (std::size_t i = 0; i < n; ++i) d.at(i, i) = 1;
    return d;
}

DMat dmat_mul(const DMat& x, const DMat& y) {
    DMat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t l = 0; l < x.cols; ++l) {
            const long long v = x.at(i, l);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                out.at(i, j) = checked_add(out.at(i, j), checked_mul(v, y.at(l, j)));
        }
    return out;
}

SnfResult dense_snf(const DMat& a, bool with_transforms) {
    try {
        return dense_snf_impl<long long>(a, with_transforms);
    } catch (const std::overflow_error&) {
        return dense_snf_impl<cpp_int>(a, with_transforms);
    }
}

// ---------------------------------------------------------------------------
// sparse phase

namespace {

template <typename I>
struct SparseElim {
    std::size_t rows, cols;
    std::vector<std::vector<std::pair<std::uint32_t, I>>> col;  // sorted by row
    std::vector<std::uint32_t> row_nnz;
    std::vector<std::vector<std::uint32_t>> row_cols;  // may contain stale ids
    std::vector<char> col_alive, row_alive;
    long long p = 0;  // 0: integer mode (+-1 pivots only); else field mod p

    // lazy min-heap over (col_nnz, col)
    using QE = std::pair<std::uint32_t, std::uint32_t>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> heap;

    std::size_t pivots = 0;

    explicit SparseElim(const SparseIntMatrix& m, long long mod) : p(mod) {
        rows = m.rows;
        cols = m.cols;
        col.resize(cols);
        row_nnz.assign(rows, 0);
        row_cols.assign(rows, {});
        col_alive.assign(cols, 1);
        row_alive.assign(rows, 1);
        for (std::size_t c = 0; c < cols; ++c) {
            for (const auto& [r, v] : m.col[c]) {
                I vr = I(v);
                if (p) {
                    vr = I(((v % p) + p) % p);
                    if (vr == 0) continue;
                }
                col[c].push_back({r, vr});
                ++row_nnz[r];
                row_cols[r].push_back(std::uint32_t(c));
            }
            if (!col[c].empty()) heap.push({std::uint32_t(col[c].size()), std::uint32_t(c)});
        }
    }

    I norm(I v) const {
        if (!p) return v;
        I r = v % I(p);
        if (r < 0) r += I(p);
        return r;
    }

    // mod-p inverse via extended gcd (field mode only)
    I inv_mod(I v) const {
        long long a = (long long)v % p, m = p, x0 = 0, x1 = 1;
        while (a > 1) {
            const long long q = a / m;
            a -= q * m;
            std::swap(a, m);
            x1 -= q * x0;
            std::swap(x0, x1);
        }
        return I(((x1 % p) + p) % p);
    }

    // col[dst] += f * col[src]; maintains row bookkeeping and re-queues dst
    void axpy_col(std::uint32_t dst, std::uint32_t src, const I& f) {
        const auto& s = col[src];
        auto& d = col[dst];
        std::vector<std::pair<std::uint32_t, I>> merged;
        merged.reserve(d.size() + s.size());
        std::size_t i = 0, j = 0;
        while (i < d.size() || j < s.size()) {
            if (j == s.size() || (i < d.size() && d[i].first < s[j].first)) {
                merged.push_back(d[i++]);
            } else if (i == d.size() || s[j].first < d[i].first) {
                I v = norm(t_mul(f, s[j].second));
                if (v != 0) {
                    merged.push_back({s[j].first, v});
                    ++row_nnz[s[j].first];
                    row_cols[s[j].first].push_back(dst);
                }
                ++j;
            } else {
                I v = norm(t_add(d[i].second, t_mul(f, s[j].second)));
                if (v != 0) {
                    merged.push_back({d[i].first, v});
                } else {
                    --row_nnz[d[i].first];
                }
                ++i;
                ++j;
            }
        }
        d = std::move(merged);
        if (!d.empty()) heap.push({std::uint32_t(d.size()), dst});
    }

    // returns false when no admissible pivot remains
    bool step() {
        while (!heap.empty()) {
            auto [sz, c] = heap.top();
            heap.pop();
            if (!col_alive[c] || col[c].empty() || col[c].size() != sz) continue;

            // pick the admissible entry with the sparsest row
            std::size_t best = SIZE_MAX;
            std::uint32_t prow = 0;
            I pval{};
            for (const auto& [r, v] : col[c]) {
                if (!row_alive[r]) continue;
                if (!p && !(v == 1 || v == -1)) continue;
                if (row_nnz[r] < best) {
                    best = row_nnz[r];
                    prow = r;
                    pval = v;
                }
            }
            if (best == SIZE_MAX) continue;  // stays stashed until next touch

            // factor turning pval into the elimination multiplier
            // integer mode: pval = +-1 so w / pval = w * pval
            const I pinv = p ? inv_mod(pval) : pval;

            // clear row prow outside column c
            auto& rc = row_cols[prow];
            std::vector<std::uint32_t> cols_with;
            cols_with.reserve(rc.size());
            for (auto cc : rc) {
                if (cc == c || !col_alive[cc]) continue;
                auto it = std::lower_bound(
                    col[cc].begin(), col[cc].end(), prow,
                    [](const auto& e, std::uint32_t r) { return e.first < r; });
                if (it != col[cc].end() && it->first == prow) cols_with.push_back(cc);
            }
            std::sort(cols_with.begin(), cols_with.end());
            cols_with.erase(std::unique(cols_with.begin(), cols_with.end()), cols_with.end());
            for (auto cc : cols_with) {
                auto it = std::lower_bound(
                    col[cc].begin(), col[cc].end(), prow,
                    [](const auto& e, std::uint32_t r) { return e.first < r; });
                const I w = it->second;
                // dst += (-w / pivot) * src
                I mult = p ? norm(I(p) - norm(t_mul(w, pinv))) : I(-t_mul(w, pinv));
                if (p && mult == I(p)) mult = 0;
                axpy_col(cc, c, mult);
            }

            // column c now meets row prow alone in that row; retire both.
            for (const auto& [r, v] : col[c]) {
                if (r == prow) continue;
                --row_nnz[r];
            }
            row_nnz[prow] = 0;
            row_alive[prow] = 0;
            col_alive[c] = 0;
            col[c].clear();
            row_cols[prow].clear();
            ++pivots;
            return true;
        }
        return false;
    }

    void run() {
        while (step()) {
        }
    }

    // remaining alive entries as a dense matrix (integer mode fallback)
    DMat residue() const {
        std::vector<std::uint32_t> rmap(rows, UINT32_MAX), cmap(cols, UINT32_MAX);
        std::uint32_t nr = 0, nc = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (!col_alive[c] || col[c].empty()) continue;
            bool any = false;
            for (const auto& [r, v] : col[c])
                if (row_alive[r]) any = true;
            if (!any) continue;
            cmap[c] = nc++;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (cmap[c] == UINT32_MAX) continue;
            for (const auto& [r, v] : col[c])
                if (row_alive[r] && rmap[r] == UINT32_MAX) rmap[r] = nr++;
        }
        DMat d(nr, nc);
        for (std::size_t c = 0; c < cols; ++c) {
            if (cmap[c] == UINT32_MAX) continue;
            for (const auto& [r, v] : col[c])
                if (row_alive[r]) {
                    if constexpr (std::is_same_v<I, long long>) {
                        d.at(rmap[r], cmap[c]) = v;
                    } else {
                        if (t_abs(v) > I(std::numeric_limits<long long>::max()))
                            throw std::overflow_error("sparse residue exceeds 64 bits");
                        d.at(rmap[r], cmap[c]) = (long long)v;
                    }
                }
        }
        return d;
    }
};

template <typename I>
SnfResult snf_sparse_impl(const SparseIntMatrix& m) {
    SparseElim<I> elim(m, 0);
    elim.run();
    DMat rest = elim.residue();
    SnfResult tail = dense_snf(rest, false);

    SnfResult out;
    out.divisors.assign(elim.pivots, 1);
    for (auto d : tail.divisors) out.divisors.push_back(d);
    return out;
}

}  // namespace

SnfResult smith_normal_form(const SparseIntMatrix& m, bool with_transforms,
                            std::size_t dense_guard) {
    if (with_transforms) {
        if (m.rows > dense_guard || m.cols > dense_guard)
            throw guard_error("snf transform request beyond dense guard");
        DMat d(m.rows, m.cols);
        for (std::size_t c = 0; c < m.cols; ++c)
            for (const auto& [r, v] : m.col[c]) d.at(r, c) = v;
        return dense_snf(d, true);
    }
    try {
        return snf_sparse_impl<long long>(m);
    } catch (const std::overflow_error&) {
        return snf_sparse_impl<cpp_int>(m);
    }
}

std::size_t rank_mod_p(const SparseIntMatrix& m, long long p) {
    SparseElim<long long> elim(m, p);
    elim.run();
    // in field mode every nonzero column is eventually a pivot
    return elim.pivots;
}

}  // namespace sv

#include "stabverify/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace sv {

namespace {

long long gcd_ll(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

// g = gcd(a,b), p*a + q*b = g
long long exgcd(long long a, long long b, long long& p, long long& q) {
    if (b == 0) {
        p = (a < 0) ? -1 : 1;
        q = 0;
        return a < 0 ? -a : a;
    }
    long long p1, q1;
    long long g = exgcd(b, a % b, p1, q1);
    p = q1;
    q = p1 - (a / b) * q1;
    return g;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// In-place rank over a field given by ring ops (entries are ring element
// indices). Destroys data.
std::size_t field_rank(const Ring* R, Elem* a, std::size_t rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * cols + col] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
        const Elem d = R->inv(a[rank * cols + col]);
        for (std::size_t j = 0; j < cols; ++j) a[rank * cols + j] = R->mul(d, a[rank * cols + j]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const Elem f = a[i * cols + col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                a[i * cols + j] = R->sub(a[i * cols + j], R->mul(f, a[rank * cols + j]));
        }
        ++rank;
    }
    return rank;
}

// gcd of all k x k minors of an integer-lifted matrix together with N.
long long minor_gcd_with(const std::vector<long long>& a, std::size_t rows, std::size_t cols,
                         std::size_t k, long long N) {
    long long g = N;

    // determinant by cofactor expansion; k <= 6 so this is cheap
    std::vector<long long> sub(k * k);
    auto det = [&](auto&& self, const long long* m, std::size_t d) -> long long {
        if (d == 1) return m[0];
        if (d == 2) return m[0] * m[3] - m[1] * m[2];
        long long s = 0, sign = 1;
        std::vector<long long> minor((d - 1) * (d - 1));
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t i = 1; i < d; ++i) {
                std::size_t jj = 0;
                for (std::size_t j = 0; j < d; ++j) {
                    if (j == c) continue;
                    minor[(i - 1) * (d - 1) + jj++] = m[i * d + j];
                }
            }
            s += sign * m[c] * self(self, minor.data(), d - 1);
            sign = -sign;
        }
        return s;
    };

    // iterate over all k-subsets of rows and of columns
    auto next_comb = [](std::vector<std::size_t>& v, std::size_t n) {
        const std::size_t k2 = v.size();
        std::size_t i = k2;
        while (i-- > 0) {
            if (v[i] + (k2 - i) < n) {
                ++v[i];
                for (std::size_t j = i + 1; j < k2; ++j) v[j] = v[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    std::vector<std::size_t> rowsel(k);
    std::iota(rowsel.begin(), rowsel.end(), 0);
    do {
        std::vector<std::size_t> colsel(k);
        std::iota(colsel.begin(), colsel.end(), 0);
        do {
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    sub[i * k + j] = a[rowsel[i] * cols + colsel[j]];
            g = gcd_ll(g, det(det, sub.data(), k));
            if (g == 1) return 1;
        } while (next_comb(colsel, cols));
    } while (next_comb(rowsel, rows));
    return g;
}

// Closure of the right span {sum c_j r_j} of the columns of m inside column
// space R^rows, as element codes. Optionally records parents for witnesses.
struct SpanStep {
    std::uint64_t prev;
    std::uint32_t gen;
    Elem r;
};

std::unordered_map<std::uint64_t, SpanStep> right_column_span(const Mat& m, bool with_parents,
                                                              std::size_t guard = 1u << 22) {
    const Ring* R = m.ring;
    const std::size_t k = m.rows, n = m.cols, q = R->size();
    double est = 1;
    for (std::size_t i = 0; i < k; ++i) est *= double(q);
    if (est > double(guard)) throw guard_error("column-span search too large");

    auto code_of = [&](const std::vector<Elem>& col) {
        std::uint64_t c = 0;
        for (std::size_t i = k; i-- > 0;) c = c * q + col[i];
        return c;
    };
    auto decode = [&](std::uint64_t c) {
        std::vector<Elem> col(k);
        for (std::size_t i = 0; i < k; ++i) {
            col[i] = Elem(c % q);
            c /= q;
        }
        return col;
    };

    std::vector<std::vector<Elem>> gens(n, std::vector<Elem>(k));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < k; ++i) gens[j][i] = m.at(i, j);

    std::unordered_map<std::uint64_t, SpanStep> seen;
    seen.reserve(1024);
    seen[0] = SpanStep{0, 0, 0};
    std::vector<std::uint64_t> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto cur = decode(queue[head]);
        for (std::uint32_t j = 0; j < n; ++j)
            for (std::size_t rr = 1; rr < q; ++rr) {
                std::vector<Elem> nxt(k);
                for (std::size_t i = 0; i < k; ++i)
                    nxt[i] = R->add(cur[i], R->mul(gens[j][i], Elem(rr)));
                const std::uint64_t nc = code_of(nxt);
                if (seen.emplace(nc, SpanStep{queue[head], j, Elem(rr)}).second) {
                    queue.push_back(nc);
                    (void)with_parents;
                }
            }
    }
    return seen;
}

// Left span of the rows of m inside R^cols.
bool left_row_span_contains_units(const Mat& m) {
    const Ring* R = m.ring;
    const std::size_t k = m.rows, n = m.cols, q = R->size();
    double est = 1;
    for (std::size_t i = 0; i < n; ++i) est *= double(q);
    if (est > double(1u << 22)) throw guard_error("row-span search too large");

    auto code_of = [&](const std::vector<Elem>& v) {
        std::uint64_t c = 0;
        for (std::size_t i = n; i-- > 0;) c = c * q + v[i];
        return c;
    };
    std::unordered_set<std::uint64_t> seen{0};
    std::vector<std::vector<Elem>> queue{std::vector<Elem>(n, 0)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto cur = queue[head];
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t rr = 1; rr < q; ++rr) {
                std::vector<Elem> nxt(n);
                for (std::size_t i = 0; i < n; ++i)
                    nxt[i] = R->add(cur[i], R->mul(Elem(rr), m.at(j, i)));
                if (seen.insert(code_of(nxt)).second) queue.push_back(nxt);
            }
    }
    // need every standard column-unit e_j in the span
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Elem> e(n, 0);
        e[j] = R->one();
        if (!seen.count(code_of(e))) return false;
    }
    return true;
}

bool right_span_contains_units(const Mat& m) {
    auto seen = right_column_span(m, false);
    const Ring* R = m.ring;
    const std::size_t k = m.rows, q = R->size();
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t code = R->one();
        for (std::size_t t = 0; t < i; ++t) code *= q;
        if (!seen.count(code)) return false;
    }
    return true;
}

}  // namespace

Vec Mat::row(std::size_t r) const {
    Vec v;
    v.ring = ring;
    v.c.assign(a.begin() + r * cols, a.begin() + (r + 1) * cols);
    return v;
}

std::uint64_t vec_code(const Vec& v) {
    std::uint64_t c = 0;
    const std::size_t q = v.ring->size();
    for (std::size_t i = v.c.size(); i-- > 0;) c = c * q + v.c[i];
    return c;
}

Vec vec_from_code(const Ring* R, std::size_t n, std::uint64_t code) {
    Vec v;
    v.ring = R;
    v.c.resize(n);
    const std::size_t q = R->size();
    for (std::size_t i = 0; i < n; ++i) {
        v.c[i] = Elem(code % q);
        code /= q;
    }
    return v;
}

Mat identity_mat(const Ring* R, std::size_t n) {
    Mat m(R, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = R->one();
    return m;
}

Mat mat_from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat();
    Mat m(rows[0].ring, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

Vec vec_add(const Vec& x, const Vec& y) {
    Vec v = x;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.ring->add(x[i], y[i]);
    return v;
}

Vec vec_scale(Elem r, const Vec& x) {
    Vec v = x;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.ring->mul(r, x[i]);
    return v;
}

Vec vec_mat(const Vec& x, const Mat& m) {
    Vec v;
    v.ring = x.ring;
    v.c.assign(m.cols, 0);
    for (std::size_t j = 0; j < m.cols; ++j) {
        Elem acc = 0;
        for (std::size_t i = 0; i < m.rows; ++i)
            acc = x.ring->add(acc, x.ring->mul(x[i], m.at(i, j)));
        v[j] = acc;
    }
    return v;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    Mat out(x.ring, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < y.cols; ++j) {
            Elem acc = 0;
            for (std::size_t l = 0; l < x.cols; ++l)
                acc = x.ring->add(acc, x.ring->mul(x.at(i, l), y.at(l, j)));
            out.at(i, j) = acc;
        }
    return out;
}

Mat mat_transpose_over(const Mat& m, const Ring* target) {
    Mat t(target, m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

Mat parse_mat(const Ring* R, const std::string& text) {
    std::vector<std::vector<Elem>> rows;
    std::stringstream ss(text);
    std::string rowtext;
    while (std::getline(ss, rowtext, ';')) {
        std::vector<Elem> row;
        std::stringstream rs(rowtext);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            const long v = std::stol(cell);
            if (v < 0 || std::size_t(v) >= R->size())
                throw std::invalid_argument("element index out of range: " + cell);
            row.push_back(Elem(v));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix text");
    Mat m(R, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols) throw std::invalid_argument("ragged matrix text");
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::string format_mat(const Mat& m) {
    std::string s;
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (i) s += ";";
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) s += ",";
            s += std::to_string(m.at(i, j));
        }
    }
    return s;
}

bool is_unimodular(const Vec& v) {
    if (v.size() == 0) throw std::invalid_argument("is_unimodular: zero-length vector");
    Mat m = mat_from_rows({v});
    return has_right_inverse(m);
}

bool has_right_inverse(const Mat& m) {
    const Ring* R = m.ring;
    if (m.rows > m.cols) return false;
    if (m.rows == 0) return true;
    switch (R->kind()) {
        case RingKind::GaloisField: {
            std::vector<Elem> work(m.a);
            return field_rank(R, work.data(), m.rows, m.cols) == m.rows;
        }
        case RingKind::ZmodN: {
            const std::uint64_t N = R->zmod_n();
            if (is_prime(N)) {
                std::vector<Elem> work(m.a);
                return field_rank(R, work.data(), m.rows, m.cols) == m.rows;
            }
            if (m.rows <= 6) {
                std::vector<long long> lift(m.a.begin(), m.a.end());
                return minor_gcd_with(lift, m.rows, m.cols, m.rows, (long long)N) == 1;
            }
            return right_span_contains_units(m);
        }
        case RingKind::Product: {
            for (std::size_t ci = 0; ci < R->components().size(); ++ci) {
                Mat proj(R->components()[ci].get(), m.rows, m.cols);
                for (std::size_t i = 0; i < m.a.size(); ++i)
                    proj.a[i] = R->component_of(m.a[i], ci);
                if (!has_right_inverse(proj)) return false;
            }
            return true;
        }
        case RingKind::UpperTriangular: {
            // A matrix over an Artinian ring is right-invertible iff it is
            // right-invertible modulo the radical, i.e. on every diagonal.
            for (int d = 0; d < R->ut_size(); ++d) {
                Mat proj(R->ut_base().get(), m.rows, m.cols);
                for (std::size_t i = 0; i < m.a.size(); ++i) proj.a[i] = R->ut_diag(m.a[i], d);
                if (!has_right_inverse(proj)) return false;
            }
            return true;
        }
        case RingKind::Opposite:
            return has_left_inverse(mat_transpose_over(m, R->inner().get()));
    }
    return right_span_contains_units(m);
}

bool has_left_inverse(const Mat& m) {
    const Ring* R = m.ring;
    if (m.cols > m.rows) return false;
    if (m.cols == 0) return true;
    switch (R->kind()) {
        case RingKind::GaloisField: {
            std::vector<Elem> work(m.a);
            return field_rank(R, work.data(), m.rows, m.cols) == m.cols;
        }
        case RingKind::ZmodN: {
            const std::uint64_t N = R->zmod_n();
            if (is_prime(N)) {
                std::vector<Elem> work(m.a);
                return field_rank(R, work.data(), m.rows, m.cols) == m.cols;
            }
            if (m.cols <= 6) {
                std::vector<long long> lift(m.a.begin(), m.a.end());
                // same minor set as the transpose
                std::vector<long long> t(m.a.size());
                for (std::size_t i = 0; i < m.rows; ++i)
                    for (std::size_t j = 0; j < m.cols; ++j) t[j * m.rows + i] = lift[i * m.cols + j];
                return minor_gcd_with(t, m.cols, m.rows, m.cols, (long long)N) == 1;
            }
            return left_row_span_contains_units(mat_transpose_over(m, R));
        }
        case RingKind::Product: {
            for (std::size_t ci = 0; ci < R->components().size(); ++ci) {
                Mat proj(R->components()[ci].get(), m.rows, m.cols);
                for (std::size_t i = 0; i < m.a.size(); ++i)
                    proj.a[i] = R->component_of(m.a[i], ci);
                if (!has_left_inverse(proj)) return false;
            }
            return true;
        }
        case RingKind::UpperTriangular: {
            for (int d = 0; d < R->ut_size(); ++d) {
                Mat proj(R->ut_base().get(), m.rows, m.cols);
                for (std::size_t i = 0; i < m.a.size(); ++i) proj.a[i] = R->ut_diag(m.a[i], d);
                if (!has_left_inverse(proj)) return false;
            }
            return true;
        }
        case RingKind::Opposite:
            return has_right_inverse(mat_transpose_over(m, R->inner().get()));
    }
    // generic: the left row span of the rows of m must contain every unit row
    return left_row_span_contains_units(m);
}

std::optional<Mat> right_inverse(const Mat& m) {
    const Ring* R = m.ring;
    if (m.rows > m.cols) return std::nullopt;
    auto seen = right_column_span(m, true);
    const std::size_t k = m.rows, q = R->size();

    Mat A(R, m.cols, m.rows);
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t target = R->one();
        for (std::size_t t = 0; t < i; ++t) target *= q;
        auto it = seen.find(target);
        if (it == seen.end()) return std::nullopt;
        // walk the parent chain, accumulating per-column coefficients
        std::uint64_t cur = target;
        while (cur != 0) {
            const SpanStep& st = seen.at(cur);
            A.at(st.gen, i) = R->add(A.at(st.gen, i), st.r);
            cur = st.prev;
        }
    }
    assert(mat_mul(m, A) == identity_mat(R, k));
    return A;
}

std::optional<Mat> mat_inverse(const Mat& m) {
    if (m.rows != m.cols) return std::nullopt;
    auto A = right_inverse(m);
    if (!A) return std::nullopt;
    // finite rings are Dedekind-finite, so a right inverse is two-sided
    assert(mat_mul(*A, m) == identity_mat(m.ring, m.rows));
    return A;
}

bool is_partial_basis(const std::vector<Vec>& vs, std::size_t n) {
    if (vs.size() > n) return false;
    if (vs.empty()) return true;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].size() != n) throw std::invalid_argument("ambient rank mismatch");
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j]) return false;
    }
    return has_right_inverse(mat_from_rows(vs));
}

std::optional<std::vector<Vec>> extends_to_basis(const std::vector<Vec>& vs, std::size_t n,
                                                 std::size_t work_guard) {
    if (!is_partial_basis(vs, n)) return std::nullopt;
    const Ring* R = vs.empty() ? nullptr : vs[0].ring;
    if (vs.size() == n) return vs;
    if (!R) throw std::invalid_argument("extends_to_basis: empty input needs a ring context");

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= R->size();

    std::size_t work = 0;
    std::vector<Vec> cur = vs;
    auto dfs = [&](auto&& self) -> bool {
        if (cur.size() == n) return true;
        for (std::uint64_t code = 0; code < total; ++code) {
            Vec w = vec_from_code(R, n, code);
            bool dup = false;
            for (const auto& v : cur)
                if (v == w) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            if (++work > work_guard) throw guard_error("basis completion guard exceeded");
            cur.push_back(w);
            if (has_right_inverse(mat_from_rows(cur))) {
                if (self(self)) return true;
            }
            cur.pop_back();
        }
        return false;
    };
    if (!dfs(dfs)) return std::nullopt;
    return cur;
}

Mat howell_form(const Mat& m) {
    const Ring* R = m.ring;
    if (R->kind() != RingKind::ZmodN &&
        !(R->kind() == RingKind::GaloisField && R->gf_k() == 1))
        throw std::invalid_argument("howell_form requires Z/N");
    const long long N = (long long)R->size();
    const std::size_t cols = m.cols;

    std::vector<std::vector<long long>> rows;
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::vector<long long> r(cols);
        for (std::size_t j = 0; j < cols; ++j) r[j] = m.at(i, j);
        rows.push_back(std::move(r));
    }

    auto normalize = [&](std::vector<long long>& r) {
        for (auto& x : r) x = ((x % N) + N) % N;
    };
    auto row_comb = [&](std::vector<long long>& x, std::vector<long long>& y, long long a,
                        long long b, long long c, long long d) {
        // (x, y) <- (a x + b y, c x + d y)
        for (std::size_t j = 0; j < cols; ++j) {
            const long long nx = a * x[j] + b * y[j];
            const long long ny = c * x[j] + d * y[j];
            x[j] = ((nx % N) + N) % N;
            y[j] = ((ny % N) + N) % N;
        }
    };

    auto echelonize = [&]() {
        for (auto& r : rows) normalize(r);
        std::size_t top = 0;
        for (std::size_t col = 0; col < cols && top < rows.size(); ++col) {
            std::size_t piv = top;
            while (piv < rows.size() && rows[piv][col] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[top], rows[piv]);
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                long long p, q;
                const long long a = rows[top][col], b = rows[i][col];
                const long long g = exgcd(a, b, p, q);
                row_comb(rows[top], rows[i], p, q, -(b / g), a / g);
            }
            ++top;
        }
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const std::vector<long long>& r) {
                                      return std::all_of(r.begin(), r.end(),
                                                         [](long long x) { return x == 0; });
                                  }),
                   rows.end());
    };

    echelonize();
    // Howell property: for each pivot d, the annihilator multiple (N/gcd(d,N))*row
    // must already lie in the row span; add such rows and re-echelonize.
    for (int pass = 0; pass < int(cols) + 2; ++pass) {
        std::vector<std::vector<long long>> extra;
        for (const auto& r : rows) {
            std::size_t j = 0;
            while (j < cols && r[j] == 0) ++j;
            if (j == cols) continue;
            const long long u = N / gcd_ll(r[j], N);
            if (u % N == 0) continue;
            std::vector<long long> t(cols);
            bool nonzero = false;
            for (std::size_t x = 0; x < cols; ++x) {
                t[x] = (u * r[x]) % N;
                nonzero |= (t[x] != 0);
            }
            if (nonzero) extra.push_back(std::move(t));
        }
        if (extra.empty()) break;
        const std::size_t before = rows.size();
        auto snapshot = rows;
        for (auto& t : extra) rows.push_back(std::move(t));
        echelonize();
        if (rows.size() == before && rows == snapshot) break;
    }

    // normalize pivots to gcd(d, N) via a unit, reduce entries above pivots
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t j = 0;
        while (j < cols && rows[i][j] == 0) ++j;
        if (j == cols) continue;
        const long long d = rows[i][j], g = gcd_ll(d, N);
        for (Elem u : R->units()) {
            if ((d * u) % N == g) {
                for (std::size_t x = 0; x < cols; ++x) rows[i][x] = (rows[i][x] * u) % N;
                break;
            }
        }
        for (std::size_t ii = 0; ii < i; ++ii) {
            const long long v = rows[ii][j];
            const long long f = v / rows[i][j];
            if (f == 0) continue;
            for (std::size_t x = 0; x < cols; ++x)
                rows[ii][x] = ((rows[ii][x] - f * rows[i][x]) % N + N) % N;
        }
    }

    Mat out(R, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = Elem(rows[i][j]);
    return out;
}

Mat rref(const Mat& m) {
    const Ring* R = m.ring;
    std::vector<Elem> work(m.a);
    std::size_t rank = 0;
    const std::size_t rows = m.rows, cols = m.cols;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && work[piv * cols + col] == 0) ++piv;
        if (piv == rows) continue;
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(work[piv * cols + j], work[rank * cols + j]);
        const Elem d = R->inv(work[rank * cols + col]);
        for (std::size_t j = 0; j < cols; ++j) work[rank * cols + j] = R->mul(d, work[rank * cols + j]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const Elem f = work[i * cols + col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                work[i * cols + j] = R->sub(work[i * cols + j], R->mul(f, work[rank * cols + j]));
        }
        ++rank;
    }
    Mat out(R, rank, cols);
    std::copy(work.begin(), work.begin() + rank * cols, out.a.begin());
    return out;
}

bool Submodule::contains(std::uint64_t code) const {
    return std::binary_search(elems.begin(), elems.end(), code);
}

bool Submodule::contains_sub(const Submodule& other) const {
    return std::includes(elems.begin(), elems.end(), other.elems.begin(), other.elems.end());
}

std::string Submodule::key() const {
    std::string s = "S" + std::to_string(ambient) + ":";
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(elems[i]);
    }
    return s;
}

Submodule span_submodule(const Ring* R, std::size_t n, const std::vector<Vec>& gens,
                         std::size_t guard) {
    for (const auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("span_submodule: ambient mismatch");

    std::unordered_set<std::uint64_t> seen{0};
    std::vector<Vec> queue;
    {
        Vec z;
        z.ring = R;
        z.c.assign(n, 0);
        queue.push_back(z);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vec cur = queue[head];
        for (const auto& g : gens)
            for (std::size_t r = 1; r < R->size(); ++r) {
                Vec nxt = vec_add(cur, vec_scale(Elem(r), g));
                if (seen.insert(vec_code(nxt)).second) {
                    if (seen.size() > guard) throw guard_error("submodule element guard exceeded");
                    queue.push_back(std::move(nxt));
                }
            }
    }
    Submodule s;
    s.ring = R;
    s.ambient = n;
    s.elems.assign(seen.begin(), seen.end());
    std::sort(s.elems.begin(), s.elems.end());
    if (!gens.empty()) {
        Mat g = mat_from_rows(gens);
        if (R->kind() == RingKind::ZmodN) g = howell_form(g);
        else if (R->kind() == RingKind::GaloisField) g = rref(g);
        s.gens = g;
    } else {
        s.gens = Mat(R, 0, n);
    }
    return s;
}

Submodule zero_submodule(const Ring* R, std::size_t n) {
    return span_submodule(R, n, {});
}

Submodule full_submodule(const Ring* R, std::size_t n) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e;
        e.ring = R;
        e.c.assign(n, 0);
        e[i] = R->one();
        gens.push_back(e);
    }
    return span_submodule(R, n, gens);
}

std::optional<int> free_summand_rank(Submodule& s, std::size_t work_guard) {
    if (s.free_rank) return s.free_rank;
    const Ring* R = s.ring;
    const std::size_t q = R->size();
    if (s.elems.size() == 1) {
        s.free_rank = 0;
        s.witness = Mat(R, 0, s.ambient);
        return 0;
    }
    // |S| must be a power of |R|
    int r = 0;
    {
        std::uint64_t sz = 1;
        while (sz < s.elems.size()) {
            sz *= q;
            ++r;
        }
        if (sz != s.elems.size()) return std::nullopt;
    }
    if (std::size_t(r) > s.ambient) return std::nullopt;

    // search an r-subset of elements forming a partial basis of the ambient
    std::vector<Vec> stack;
    std::size_t work = 0;
    auto dfs = [&](auto&& self, std::size_t start) -> bool {
        if (stack.size() == std::size_t(r)) return true;
        for (std::size_t i = start; i < s.elems.size(); ++i) {
            if (s.elems[i] == 0) continue;
            if (++work > work_guard) throw guard_error("free-summand search guard exceeded");
            stack.push_back(vec_from_code(R, s.ambient, s.elems[i]));
            if (is_partial_basis(stack, s.ambient) && self(self, i + 1)) return true;
            stack.pop_back();
        }
        return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;
    s.free_rank = r;
    s.witness = mat_from_rows(stack);
    return r;
}

Submodule complement_of(const Submodule& s) {
    Submodule copy = s;
    auto r = free_summand_rank(copy);
    if (!r) throw std::invalid_argument("complement_of: not a free summand");
    if (*r == 0) {
        Submodule c = full_submodule(s.ring, s.ambient);
        c.free_rank = int(s.ambient);
        c.witness = identity_mat(s.ring, s.ambient);
        return c;
    }
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < copy.witness.rows; ++i) rows.push_back(copy.witness.row(i));
    auto full = extends_to_basis(rows, s.ambient);
    if (!full) throw std::logic_error("complement_of: witness does not extend to a basis");
    std::vector<Vec> crows(full->begin() + *r, full->end());
    Submodule c = span_submodule(s.ring, s.ambient, crows);
    c.free_rank = int(s.ambient) - *r;
    c.witness = mat_from_rows(crows);
    if (crows.empty()) c.witness = Mat(s.ring, 0, s.ambient);

    // direct-sum sanity: trivial intersection and full cardinality
    Submodule inter = submodule_intersection(copy, c);
    assert(inter.elems.size() == 1);
    double total = double(copy.elems.size()) * double(c.elems.size());
    double want = 1;
    for (std::size_t i = 0; i < s.ambient; ++i) want *= double(s.ring->size());
    assert(total == want);
    (void)inter;
    (void)total;
    (void)want;
    return c;
}

std::vector<Vec> submodule_vectors(const Submodule& s) {
    std::vector<Vec> out;
    out.reserve(s.elems.size());
    for (auto c : s.elems) out.push_back(vec_from_code(s.ring, s.ambient, c));
    return out;
}

Submodule annihilator_dual(const Submodule& s) {
    const Ring* R = s.ring;
    const Ring* Rop = R->opposite().get();
    const std::size_t n = s.ambient, q = R->size();
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= double(q);
    if (total > double(kSubmoduleGuard)) throw guard_error("annihilator scan too large");

    // generating rows of s (witness preferred, else stored generators)
    std::vector<Vec> gens;
    const Mat& gm = (s.free_rank && s.witness.rows > 0) ? s.witness : s.gens;
    for (std::size_t i = 0; i < gm.rows; ++i) {
        Vec g = gm.row(i);
        g.ring = R;
        gens.push_back(g);
    }

    std::vector<std::uint64_t> codes;
    const std::uint64_t tot = (std::uint64_t)total;
    for (std::uint64_t code = 0; code < tot; ++code) {
        Vec f = vec_from_code(R, n, code);
        bool ok = true;
        for (const auto& g : gens) {
            Elem acc = 0;
            for (std::size_t i = 0; i < n; ++i) acc = R->add(acc, R->mul(g[i], f[i]));
            if (acc != 0) {
                ok = false;
                break;
            }
        }
        if (ok) codes.push_back(code);
    }
    Submodule out;
    out.ring = Rop;
    out.ambient = n;
    out.elems = std::move(codes);  // ascending scan, already sorted

    // recover a small generating set over R^op greedily
    std::vector<Vec> picked;
    Submodule sp = zero_submodule(Rop, n);
    for (auto c : out.elems) {
        if (sp.contains(c)) continue;
        picked.push_back(vec_from_code(Rop, n, c));
        sp = span_submodule(Rop, n, picked);
        if (sp.elems.size() == out.elems.size()) break;
    }
    out.gens = picked.empty() ? Mat(Rop, 0, n) : mat_from_rows(picked);
    return out;
}

Elem dual_pairing(const Vec& x, const Vec& f) {
    const Ring* R = x.ring->kind() == RingKind::Opposite ? x.ring->inner().get() : x.ring;
    Elem acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc = R->add(acc, R->mul(x[i], f[i]));
    return acc;
}

Mat inverse_transpose(const Mat& m) {
    auto inv = mat_inverse(m);
    if (!inv) throw std::invalid_argument("inverse_transpose: matrix not invertible");
    return mat_transpose_over(*inv, m.ring->opposite().get());
}

Submodule submodule_intersection(const Submodule& a, const Submodule& b) {
    Submodule out;
    out.ring = a.ring;
    out.ambient = a.ambient;
    std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                          std::back_inserter(out.elems));
    // greedy generators
    std::vector<Vec> picked;
    Submodule sp = zero_submodule(a.ring, a.ambient);
    for (auto c : out.elems) {
        if (sp.contains(c)) continue;
        picked.push_back(vec_from_code(a.ring, a.ambient, c));
        sp = span_submodule(a.ring, a.ambient, picked);
        if (sp.elems.size() == out.elems.size()) break;
    }
    out.gens = picked.empty() ? Mat(a.ring, 0, a.ambient) : mat_from_rows(picked);
    return out;
}

}  // namespace sv

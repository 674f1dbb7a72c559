#include "stabverify/ring.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>

namespace sv {

namespace {

// Fixed monic moduli for F_{p^k}, coefficients ascending (c0 + c1 x + ... + x^k).
// Shipping a fixed table keeps every run bit-for-bit reproducible.
const std::vector<int>* gf_modulus(long p, int k) {
    static const struct {
        long p;
        int k;
        std::vector<int> coeffs;
    } table[] = {
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 1, 1, 0, 1}},
        {3, 2, {2, 2, 1}},
        {3, 3, {1, 2, 0, 1}},
        {5, 2, {2, 4, 1}},
        {7, 2, {3, 6, 1}},
    };
    for (const auto& row : table)
        if (row.p == p && row.k == k) return &row.coeffs;
    return nullptr;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Split a comma-separated list at paren depth 0.
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!strip(cur).empty()) out.push_back(strip(cur));
    return out;
}

}  // namespace

RingPtr Ring::parse(const std::string& raw, std::size_t guard) {
    const std::string spec = strip(raw);
    if (spec.empty()) throw std::invalid_argument("empty ring spec");

    if (spec.rfind("Z/", 0) == 0) {
        const std::string num = spec.substr(2);
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            }))
            throw std::invalid_argument("malformed ring spec: " + spec);
        const std::uint64_t n = std::stoull(num);
        if (n < 2) throw std::invalid_argument("Z/N requires N >= 2");
        return make_zmod(n, guard);
    }
    if (spec.rfind("F_", 0) == 0) {
        const std::string num = spec.substr(2);
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            }))
            throw std::invalid_argument("malformed ring spec: " + spec);
        long q = std::stol(num);
        if (q < 2) throw std::invalid_argument("F_q requires q >= 2");
        long p = 0;
        for (long d = 2; d * d <= q; ++d)
            if (q % d == 0) {
                p = d;
                break;
            }
        if (p == 0) p = q;
        int k = 0;
        long m = q;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (m != 1) throw std::invalid_argument("F_q: q = " + num + " is not a prime power");
        return make_gf(p, k, guard);
    }
    if (spec.rfind("prod(", 0) == 0 && spec.back() == ')') {
        auto args = split_args(spec.substr(5, spec.size() - 6));
        if (args.empty()) throw std::invalid_argument("prod() needs at least one ring");
        std::vector<RingPtr> comps;
        for (const auto& a : args) comps.push_back(parse(a, guard));
        return make_product(std::move(comps), guard);
    }
    if (spec.rfind("UT", 0) == 0) {
        std::size_t i = 2;
        while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) ++i;
        if (i == 2 || i >= spec.size() || spec[i] != '(' || spec.back() != ')')
            throw std::invalid_argument("malformed ring spec: " + spec);
        const int s = std::stoi(spec.substr(2, i - 2));
        if (s < 1) throw std::invalid_argument("UT size must be >= 1");
        return make_ut(s, parse(spec.substr(i + 1, spec.size() - i - 2), guard), guard);
    }
    if (spec.rfind("op(", 0) == 0 && spec.back() == ')')
        return make_opposite(parse(spec.substr(3, spec.size() - 4), guard));
    throw std::invalid_argument("malformed ring spec: " + spec);
}

RingPtr Ring::make_zmod(std::uint64_t n, std::size_t guard) {
    if (n > guard)
        throw guard_error("ring element guard exceeded: Z/" + std::to_string(n));
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::ZmodN;
    r->name_ = "Z/" + std::to_string(n);
    r->size_ = static_cast<std::size_t>(n);
    r->one_ = 1;
    r->commutative_ = true;
    r->table_backed_ = false;
    r->finish_tables();
    return r;
}

RingPtr Ring::make_gf(long p, int k, std::size_t guard) {
    const long long q = ipow(p, k);
    if (static_cast<std::size_t>(q) > guard)
        throw guard_error("ring element guard exceeded: F_" + std::to_string(q));
    if (k == 1) {
        auto r = std::const_pointer_cast<Ring>(
            std::static_pointer_cast<const Ring>(make_zmod(p, guard)));
        r->kind_ = RingKind::GaloisField;
        r->name_ = "F_" + std::to_string(p);
        r->gf_p_ = p;
        r->gf_k_ = 1;
        return r;
    }
    const auto* mod = gf_modulus(p, k);
    if (!mod)
        throw std::invalid_argument("no modulus shipped for F_" + std::to_string(q) +
                                    " (p=" + std::to_string(p) + ", k=" + std::to_string(k) + ")");

    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::GaloisField;
    r->name_ = "F_" + std::to_string(q);
    r->size_ = static_cast<std::size_t>(q);
    r->gf_p_ = p;
    r->gf_k_ = k;
    r->commutative_ = true;
    r->table_backed_ = true;

    auto digits = [&](long e) {
        std::vector<int> d(k);
        for (int i = 0; i < k; ++i) {
            d[i] = int(e % p);
            e /= p;
        }
        return d;
    };
    auto undigits = [&](const std::vector<int>& d) {
        long e = 0;
        for (int i = k - 1; i >= 0; --i) e = e * p + d[i];
        return e;
    };

    r->add_tab_.resize(q * q);
    r->mul_tab_.resize(q * q);
    for (long a = 0; a < q; ++a) {
        auto da = digits(a);
        for (long b = 0; b < q; ++b) {
            auto db = digits(b);
            std::vector<int> sum(k);
            for (int i = 0; i < k; ++i) sum[i] = (da[i] + db[i]) % p;
            r->add_tab_[a * q + b] = Elem(undigits(sum));
            // polynomial product reduced by the modulus
            std::vector<int> prod(2 * k - 1, 0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % int(p);
            for (int d = 2 * k - 2; d >= k; --d) {
                const int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < k; ++i)
                    prod[d - k + i] = ((prod[d - k + i] - c * (*mod)[i]) % int(p) + int(p)) % int(p);
            }
            prod.resize(k);
            r->mul_tab_[a * q + b] = Elem(undigits(prod));
        }
    }
    r->one_ = 1;
    r->finish_tables();
    return r;
}

RingPtr Ring::make_product(std::vector<RingPtr> comps, std::size_t guard) {
    std::size_t n = 1;
    for (const auto& c : comps) {
        if (c->size() != 0 && n > guard / c->size())
            throw guard_error("ring element guard exceeded in product");
        n *= c->size();
    }
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::Product;
    r->size_ = n;
    r->table_backed_ = true;
    r->components_ = std::move(comps);
    r->comp_stride_.resize(r->components_.size());
    {
        std::size_t stride = 1;
        for (std::size_t i = 0; i < r->components_.size(); ++i) {
            r->comp_stride_[i] = stride;
            stride *= r->components_[i]->size();
        }
    }
    std::string nm = "prod(";
    for (std::size_t i = 0; i < r->components_.size(); ++i) {
        if (i) nm += ",";
        nm += r->components_[i]->name();
        r->commutative_ = r->commutative_ && r->components_[i]->commutative();
    }
    r->name_ = nm + ")";

    const auto& cs = r->components_;
    auto combine = [&](Elem a, Elem b, bool mul) {
        std::size_t out = 0;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::size_t sz = cs[i]->size();
            const Elem ca = Elem((a / r->comp_stride_[i]) % sz);
            const Elem cb = Elem((b / r->comp_stride_[i]) % sz);
            out += std::size_t(mul ? cs[i]->mul(ca, cb) : cs[i]->add(ca, cb)) * r->comp_stride_[i];
        }
        return Elem(out);
    };
    r->add_tab_.resize(n * n);
    r->mul_tab_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            r->add_tab_[a * n + b] = combine(Elem(a), Elem(b), false);
            r->mul_tab_[a * n + b] = combine(Elem(a), Elem(b), true);
        }
    std::size_t one = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) one += std::size_t(cs[i]->one()) * r->comp_stride_[i];
    r->one_ = Elem(one);
    r->finish_tables();
    return r;
}

RingPtr Ring::make_ut(int s, RingPtr base, std::size_t guard) {
    const int cells = s * (s + 1) / 2;
    std::size_t n = 1;
    for (int i = 0; i < cells; ++i) {
        if (n > guard / base->size()) throw guard_error("ring element guard exceeded in UT ring");
        n *= base->size();
    }
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::UpperTriangular;
    r->name_ = "UT" + std::to_string(s) + "(" + base->name() + ")";
    r->size_ = n;
    r->table_backed_ = true;
    r->ut_size_ = s;
    r->ut_base_ = std::move(base);
    r->commutative_ = (s == 1) && r->ut_base_->commutative();
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) r->ut_cells_.emplace_back(i, j);

    const Ring& B = *r->ut_base_;
    const std::size_t bs = B.size();
    auto cell_index = [&](int i, int j) {
        for (std::size_t c = 0; c < r->ut_cells_.size(); ++c)
            if (r->ut_cells_[c] == std::make_pair(i, j)) return c;
        throw std::logic_error("bad UT cell");
    };
    auto get = [&](std::size_t e, int i, int j) -> Elem {
        std::size_t idx = cell_index(i, j);
        std::size_t div = 1;
        for (std::size_t c = 0; c < idx; ++c) div *= bs;
        return Elem((e / div) % bs);
    };
    auto build = [&](const std::vector<Elem>& vals) {
        std::size_t e = 0, stride = 1;
        for (std::size_t c = 0; c < r->ut_cells_.size(); ++c) {
            e += std::size_t(vals[c]) * stride;
            stride *= bs;
        }
        return Elem(e);
    };

    r->add_tab_.resize(n * n);
    r->mul_tab_.resize(n * n);
    std::vector<Elem> vals(r->ut_cells_.size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < r->ut_cells_.size(); ++c) {
                auto [i, j] = r->ut_cells_[c];
                vals[c] = B.add(get(a, i, j), get(b, i, j));
            }
            r->add_tab_[a * n + b] = build(vals);
            for (std::size_t c = 0; c < r->ut_cells_.size(); ++c) {
                auto [i, j] = r->ut_cells_[c];
                Elem acc = B.zero();
                for (int l = i; l <= j; ++l)
                    acc = B.add(acc, B.mul(get(a, i, l), get(b, l, j)));
                vals[c] = acc;
            }
            r->mul_tab_[a * n + b] = build(vals);
        }
    for (std::size_t c = 0; c < r->ut_cells_.size(); ++c) {
        auto [i, j] = r->ut_cells_[c];
        vals[c] = (i == j) ? B.one() : B.zero();
    }
    r->one_ = build(vals);
    r->finish_tables();
    return r;
}

RingPtr Ring::make_opposite(RingPtr inner) {
    if (inner->kind() == RingKind::Opposite) return inner->inner();
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::Opposite;
    r->name_ = "op(" + inner->name() + ")";
    r->size_ = inner->size();
    r->one_ = inner->one();
    r->commutative_ = inner->commutative();
    r->table_backed_ = true;
    r->inner_ = inner;
    const std::size_t n = r->size_;
    r->add_tab_.resize(n * n);
    r->mul_tab_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            r->add_tab_[a * n + b] = inner->add(Elem(a), Elem(b));
            r->mul_tab_[a * n + b] = inner->mul(Elem(b), Elem(a));
        }
    r->finish_tables();
    return r;
}

RingPtr Ring::opposite() const {
    if (kind_ == RingKind::Opposite) return inner_;
    if (!opposite_cache_) opposite_cache_ = make_opposite(shared_from_this());
    return opposite_cache_;
}

void Ring::finish_tables() {
    const std::size_t n = size_;
    if (n < 2) throw std::invalid_argument("ring must have 0 != 1");

    neg_tab_.assign(n, 0);
    if (table_backed_) {
        for (std::size_t a = 0; a < n; ++a) {
            bool found = false;
            for (std::size_t b = 0; b < n; ++b)
                if (add(Elem(a), Elem(b)) == 0) {
                    neg_tab_[a] = Elem(b);
                    found = true;
                    break;
                }
            if (!found) throw std::logic_error("no additive inverse in " + name_);
        }
    } else {
        for (std::size_t a = 0; a < n; ++a) neg_tab_[a] = Elem((n - a) % n);
    }

    // two-sided inverses by exhaustive scan
    inv_tab_.assign(n, kNoInverse);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (mul(Elem(a), Elem(b)) == one_ && mul(Elem(b), Elem(a)) == one_) {
                inv_tab_[a] = Elem(b);
                break;
            }
    units_.clear();
    for (std::size_t a = 0; a < n; ++a)
        if (inv_tab_[a] != kNoInverse) units_.push_back(Elem(a));

    validate_axioms();
}

void Ring::validate_axioms() const {
    const std::size_t n = size_;
    if (one_ == 0) throw std::logic_error("0 == 1 in " + name_);
    for (std::size_t a = 0; a < n; ++a) {
        if (add(Elem(a), 0) != a || add(0, Elem(a)) != a)
            throw std::logic_error("additive identity fails in " + name_);
        if (mul(Elem(a), one_) != a || mul(one_, Elem(a)) != a)
            throw std::logic_error("multiplicative identity fails in " + name_);
        for (std::size_t b = 0; b < n; ++b)
            if (add(Elem(a), Elem(b)) != add(Elem(b), Elem(a)))
                throw std::logic_error("addition not commutative in " + name_);
    }
    if (kind_ == RingKind::ZmodN) return;  // residue arithmetic is axiomatic

    // Exhaustive associativity/distributivity for small tables, sampled beyond.
    if (n <= 512) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    const Elem ea = Elem(a), eb = Elem(b), ec = Elem(c);
                    if (add(add(ea, eb), ec) != add(ea, add(eb, ec)))
                        throw std::logic_error("addition not associative in " + name_);
                    if (mul(mul(ea, eb), ec) != mul(ea, mul(eb, ec)))
                        throw std::logic_error("multiplication not associative in " + name_);
                    if (mul(ea, add(eb, ec)) != add(mul(ea, eb), mul(ea, ec)))
                        throw std::logic_error("left distributivity fails in " + name_);
                    if (mul(add(ea, eb), ec) != add(mul(ea, ec), mul(eb, ec)))
                        throw std::logic_error("right distributivity fails in " + name_);
                }
    } else {
        std::mt19937_64 rng(0x5eed);
        for (int t = 0; t < 200000; ++t) {
            const Elem a = Elem(rng() % n), b = Elem(rng() % n), c = Elem(rng() % n);
            if (mul(mul(a, b), c) != mul(a, mul(b, c)) ||
                mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) ||
                mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
                throw std::logic_error("sampled axiom failure in " + name_);
        }
    }
}

Elem Ring::inv(Elem a) const {
    if (inv_tab_[a] == kNoInverse)
        throw std::invalid_argument("not a unit: " + elem_name(a) + " in " + name_);
    return inv_tab_[a];
}

bool Ring::stable_rank_one(std::size_t work_guard) const {
    const std::size_t n = size_;
    if (n * n * n > work_guard)
        throw guard_error("stable-rank scan too large for " + name_);
    // membership masks for the left ideals R*b
    std::vector<std::vector<char>> in_Rb(n, std::vector<char>(n, 0));
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t x = 0; x < n; ++x) in_Rb[b][mul(Elem(x), Elem(b))] = 1;

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            bool unimodular_pair = false;
            for (std::size_t x = 0; x < n && !unimodular_pair; ++x) {
                const Elem need = sub(one_, mul(Elem(x), Elem(a)));
                if (in_Rb[b][need]) unimodular_pair = true;
            }
            if (!unimodular_pair) continue;
            bool ok = false;
            for (std::size_t c = 0; c < n && !ok; ++c)
                if (is_unit(add(Elem(a), mul(Elem(c), Elem(b))))) ok = true;
            if (!ok) return false;
        }
    return true;
}

Elem Ring::component_of(Elem a, std::size_t i) const {
    if (kind_ != RingKind::Product) throw std::logic_error("component_of on non-product ring");
    return Elem((a / comp_stride_[i]) % components_[i]->size());
}

Elem Ring::ut_diag(Elem a, int i) const {
    if (kind_ != RingKind::UpperTriangular) throw std::logic_error("ut_diag on non-UT ring");
    const std::size_t bs = ut_base_->size();
    std::size_t e = a, idx = 0;
    for (const auto& [r, c] : ut_cells_) {
        if (r == i && c == i) {
            std::size_t div = 1;
            for (std::size_t k = 0; k < idx; ++k) div *= bs;
            return Elem((e / div) % bs);
        }
        ++idx;
    }
    throw std::logic_error("bad UT diagonal index");
}

std::string Ring::elem_name(Elem a) const {
    switch (kind_) {
        case RingKind::ZmodN:
            return std::to_string(a);
        case RingKind::GaloisField: {
            if (gf_k_ == 1) return std::to_string(a);
            std::string s = "g" + std::to_string(a);
            return s;
        }
        case RingKind::Product: {
            std::string s = "(";
            for (std::size_t i = 0; i < components_.size(); ++i) {
                if (i) s += ",";
                s += components_[i]->elem_name(component_of(a, i));
            }
            return s + ")";
        }
        case RingKind::UpperTriangular: {
            std::string s = "[";
            const std::size_t bs = ut_base_->size();
            std::size_t e = a;
            for (std::size_t c = 0; c < ut_cells_.size(); ++c) {
                if (c) s += ";";
                s += ut_base_->elem_name(Elem(e % bs));
                e /= bs;
            }
            return s + "]";
        }
        case RingKind::Opposite:
            return inner_->elem_name(a);
    }
    return std::to_string(a);
}

std::string Ring::json() const {
    std::ostringstream os;
    const char* kind = "";
    switch (kind_) {
        case RingKind::ZmodN: kind = "ZmodN"; break;
        case RingKind::GaloisField: kind = "GaloisField"; break;
        case RingKind::Product: kind = "Product"; break;
        case RingKind::UpperTriangular: kind = "UpperTriangular"; break;
        case RingKind::Opposite: kind = "Opposite"; break;
    }
    os << "{\"kind\":\"" << kind << "\",\"spec\":\"" << name_ << "\",\"elements\":" << size_
       << ",\"commutative\":" << (commutative_ ? "true" : "false") << "}";
    return os.str();
}

}  // namespace sv

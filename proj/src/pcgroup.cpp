#include "qtl/pcgroup.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <fstream>
#include <future>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qtl::pc {

namespace {

constexpr int kP = 5;

int mod_inv5(int a) {
    // a^-1 mod 5 for a in 1..4
    static const int inv[5] = {0, 1, 3, 2, 4};
    return inv[a % 5];
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
}

// Canonical line ordering of F_5^2: direction vectors
// (1,0),(1,1),(1,2),(1,3),(1,4),(0,1).
constexpr int kLines[6][2] = {{1,0},{1,1},{1,2},{1,3},{1,4},{0,1}};

int line_of(int a, int b) {
    a = ((a % 5) + 5) % 5;
    b = ((b % 5) + 5) % 5;
    if (a != 0) {
        int t = (b * mod_inv5(a)) % 5;
        for (int i = 0; i < 5; ++i)
            if (kLines[i][1] == t) return i;
    }
    return 5;
}

bool on_line(int a, int b, int line) {
    for (int k = 0; k < 5; ++k)
        if ((k * kLines[line][0]) % 5 == a && (k * kLines[line][1]) % 5 == b) return true;
    return false;
}

}  // namespace

void PcPresentation::validate() const {
    if (prime != 5) throw std::invalid_argument("only prime 5 is supported");
    if (ngens < 1 || ngens > 6) throw std::invalid_argument("ngens out of range");
    if ((int)power.size() != ngens + 1 || (int)comm.size() != ngens + 1)
        throw std::invalid_argument("relation tables incomplete");
    auto check_word = [&](const Word& w, int min_index) {
        for (const auto& s : w) {
            if (s.gen <= min_index || s.gen > ngens)
                throw std::invalid_argument("relation mentions generator outside allowed range");
            if (s.exp < 1 || s.exp >= prime)
                throw std::invalid_argument("relation exponent outside [1,p)");
        }
    };
    for (int i = 1; i <= ngens; ++i) check_word(power[i], i);
    for (int j = 2; j <= ngens; ++j) {
        if ((int)comm[j].size() != j) throw std::invalid_argument("relation tables incomplete");
        for (int i = 1; i < j; ++i) check_word(comm[j][i], j);
    }
}

bool Element::is_identity() const {
    return std::all_of(e.begin(), e.end(), [](uint8_t x) { return x == 0; });
}

Element raw_collect(const PcPresentation& pres, std::vector<int> w) {
    // Letter-wise collection from the left; terminates for any presentation
    // whose right-hand sides only mention larger generator indices.
    const int n = pres.ngens;
    for (int g : w)
        if (g < 1 || g > n) throw std::out_of_range("generator index out of range");
    long long steps = 0;
    for (;;) {
        if (++steps > 2'000'000) throw std::runtime_error("collection step budget exceeded");
        int swap_at = -1, pow_at = -1;
        int run = 1;
        for (size_t k = 0; k < w.size(); ++k) {
            if (k + 1 < w.size() && w[k] > w[k + 1]) { swap_at = (int)k; break; }
            if (k > 0 && w[k] == w[k - 1]) {
                if (++run == kP) { pow_at = (int)k - (kP - 1); break; }
            } else run = 1;
        }
        if (swap_at >= 0) {
            int j = w[swap_at], i = w[swap_at + 1];
            std::vector<int> repl = {i, j};
            for (const auto& s : pres.comm_word(j, i))
                repl.insert(repl.end(), s.exp, s.gen);
            w.erase(w.begin() + swap_at, w.begin() + swap_at + 2);
            w.insert(w.begin() + swap_at, repl.begin(), repl.end());
        } else if (pow_at >= 0) {
            int i = w[pow_at];
            std::vector<int> repl;
            for (const auto& s : pres.power_word(i))
                repl.insert(repl.end(), s.exp, s.gen);
            w.erase(w.begin() + pow_at, w.begin() + pow_at + kP);
            w.insert(w.begin() + pow_at, repl.begin(), repl.end());
        } else break;
    }
    Element r;
    r.e.assign(n, 0);
    for (int g : w) r.e[g - 1] = uint8_t(r.e[g - 1] + 1);
    return r;
}

// ---------------------------------------------------------------- GroupTable

GroupTable::GroupTable(const PcPresentation& pres) : n_(pres.ngens) {
    pres.validate();
    size_ = (int32_t)ipow(kP, n_);
    gen_mul_.assign((size_t)size_ * n_, 0);
    std::vector<int> letters;
    for (int32_t id = 0; id < size_; ++id) {
        letters.clear();
        for (int g = 1; g <= n_; ++g)
            letters.insert(letters.end(), digit(id, g), g);
        for (int g = 1; g <= n_; ++g) {
            letters.push_back(g);
            Element r = raw_collect(pres, letters);
            gen_mul_[(size_t)id * n_ + (g - 1)] = encode(r);
            letters.pop_back();
        }
    }
    pw5_.resize(size_);
    for (int32_t id = 0; id < size_; ++id) {
        int32_t sq = mul(id, id);
        pw5_[id] = mul(mul(sq, sq), id);
    }
    inv_.resize(size_);
    // x^(5^n) = 1, so x^-1 = x^(5^n - 1)
    for (int32_t id = 0; id < size_; ++id) inv_[id] = pow(id, (long long)size_ - 1);
}

int GroupTable::digit(int32_t id, int g) const {
    return (int)((id / ipow(kP, n_ - g)) % kP);
}

int32_t GroupTable::mul(int32_t x, int32_t y) const {
    for (int g = 1; g <= n_; ++g) {
        int e = digit(y, g);
        while (e--) x = mul_gen(x, g);
    }
    return x;
}

int32_t GroupTable::pow(int32_t x, long long k) const {
    int32_t r = 0;
    while (k > 0) {
        if (k & 1) r = mul(r, x);
        x = mul(x, x);
        k >>= 1;
    }
    return r;
}

int32_t GroupTable::conj(int32_t x, int32_t t) const { return mul(mul(inverse(t), x), t); }

int32_t GroupTable::comm(int32_t x, int32_t y) const {
    return mul(mul(inverse(x), inverse(y)), mul(x, y));
}

int32_t GroupTable::encode(const Element& el) const {
    int32_t id = 0;
    for (int g = 1; g <= n_; ++g) id = id * kP + el.e[g - 1];
    return id;
}

Element GroupTable::decode(int32_t id) const {
    Element el;
    el.e.assign(n_, 0);
    for (int g = n_; g >= 1; --g) {
        el.e[g - 1] = uint8_t(id % kP);
        id /= kP;
    }
    return el;
}

// ------------------------------------------------------------------- PcGroup

PcGroup::PcGroup(PcPresentation pres) : pres_(std::move(pres)) { pres_.validate(); }

long long PcGroup::order() const { return ipow(kP, pres_.ngens); }

const GroupTable& PcGroup::table() const {
    if (!table_) table_ = std::make_shared<const GroupTable>(pres_);
    return *table_;
}

Element PcGroup::collect(const std::vector<int>& signed_word) const {
    const auto& t = table();
    int32_t acc = 0;
    for (int g : signed_word) {
        int a = g < 0 ? -g : g;
        if (a < 1 || a > pres_.ngens) throw std::out_of_range("generator index out of range");
        Element unit;
        unit.e.assign(pres_.ngens, 0);
        unit.e[a - 1] = 1;
        int32_t gid = t.encode(unit);
        acc = t.mul(acc, g < 0 ? t.inverse(gid) : gid);
    }
    return t.decode(acc);
}

Element PcGroup::mul(const Element& a, const Element& b) const {
    const auto& t = table();
    return t.decode(t.mul(t.encode(a), t.encode(b)));
}

Element PcGroup::power(const Element& a, long long k) const {
    const auto& t = table();
    int32_t x = t.encode(a);
    if (k < 0) { x = t.inverse(x); k = -k; }
    return t.decode(t.pow(x, k));
}

Element PcGroup::inverse(const Element& a) const {
    const auto& t = table();
    return t.decode(t.inverse(t.encode(a)));
}

bool PcGroup::consistency_check() const {
    if (consistent_) return *consistent_;
    const int n = pres_.ngens;
    auto letters_of = [&](const Element& el) {
        std::vector<int> ls;
        for (int g = 1; g <= n; ++g) ls.insert(ls.end(), el.e[g - 1], g);
        return ls;
    };
    auto collect_cat = [&](std::vector<int> a, const std::vector<int>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return raw_collect(pres_, a);
    };
    bool ok = true;
    // g_k (g_j g_i) vs (g_k g_j) g_i for k > j > i
    for (int k = 1; k <= n && ok; ++k)
        for (int j = 1; j < k && ok; ++j)
            for (int i = 1; i < j && ok; ++i) {
                Element lhs = collect_cat({k}, letters_of(raw_collect(pres_, {j, i})));
                Element rhs = collect_cat(letters_of(raw_collect(pres_, {k, j})), {i});
                ok = lhs == rhs;
            }
    // g_j^p g_i vs g_j^{p-1}(g_j g_i)  and  g_j g_i^p vs (g_j g_i) g_i^{p-1}
    for (int j = 1; j <= n && ok; ++j)
        for (int i = 1; i < j && ok; ++i) {
            Element a = collect_cat(letters_of(raw_collect(pres_, std::vector<int>(kP, j))), {i});
            Element b = collect_cat(std::vector<int>(kP - 1, j),
                                    letters_of(raw_collect(pres_, {j, i})));
            if (!(a == b)) { ok = false; break; }
            a = collect_cat({j}, letters_of(raw_collect(pres_, std::vector<int>(kP, i))));
            std::vector<int> ji = letters_of(raw_collect(pres_, {j, i}));
            ji.insert(ji.end(), kP - 1, i);
            b = raw_collect(pres_, ji);
            ok = a == b;
        }
    // g_i^p g_i vs g_i g_i^p
    for (int i = 1; i <= n && ok; ++i) {
        Element a = collect_cat(letters_of(raw_collect(pres_, std::vector<int>(kP, i))), {i});
        Element b = collect_cat({i}, letters_of(raw_collect(pres_, std::vector<int>(kP, i))));
        ok = a == b;
    }
    consistent_ = ok;
    return ok;
}

Subgroup PcGroup::close_subgroup(const std::vector<int32_t>& gens) const {
    const auto& t = table();
    std::vector<char> in(t.size(), 0);
    std::vector<int32_t> els = {0};
    in[0] = 1;
    for (size_t head = 0; head < els.size(); ++head)
        for (int32_t g : gens) {
            int32_t y = t.mul(els[head], g);
            if (!in[y]) { in[y] = 1; els.push_back(y); }
        }
    std::sort(els.begin(), els.end());

    Subgroup h;
    h.element_ids = std::move(els);
    h.order = (long long)h.element_ids.size();
    for (int32_t g : gens) h.generators.push_back(t.decode(g));

    // echelonized basis: sift every element, lowest leading index first
    std::vector<int32_t> slot(pres_.ngens + 1, -1);
    auto leading = [&](int32_t x) {
        for (int g = 1; g <= pres_.ngens; ++g)
            if (t.digit(x, g) != 0) return g;
        return 0;
    };
    for (int32_t x : h.element_ids) {
        while (x != 0) {
            int l = leading(x);
            if (slot[l] < 0) {
                slot[l] = t.pow(x, mod_inv5(t.digit(x, l)));
                break;
            }
            x = t.mul(t.pow(slot[l], kP - t.digit(x, l)), x);
        }
    }
    long long span = 1;
    for (int g = 1; g <= pres_.ngens; ++g)
        if (slot[g] >= 0) {
            h.canonical_basis.push_back(t.decode(slot[g]));
            span *= kP;
        }
    if (span != h.order) throw std::logic_error("subgroup basis does not span");
    return h;
}

Subgroup PcGroup::normal_closure(const std::vector<int32_t>& gens) const {
    const auto& t = table();
    std::vector<int32_t> cur = gens;
    for (;;) {
        Subgroup h = close_subgroup(cur);
        std::vector<char> in(t.size(), 0);
        for (int32_t x : h.element_ids) in[x] = 1;
        bool grew = false;
        for (int32_t x : h.element_ids) {
            for (int g = 1; g <= pres_.ngens && !grew; ++g) {
                Element unit;
                unit.e.assign(pres_.ngens, 0);
                unit.e[g - 1] = 1;
                int32_t c = t.conj(x, t.encode(unit));
                if (!in[c]) { cur.push_back(c); grew = true; }
            }
            if (grew) break;
        }
        if (!grew) return h;
    }
}

Subgroup PcGroup::whole_group() const {
    const auto& t = table();
    std::vector<int32_t> gens;
    for (int g = 1; g <= pres_.ngens; ++g) {
        Element unit;
        unit.e.assign(pres_.ngens, 0);
        unit.e[g - 1] = 1;
        gens.push_back(t.encode(unit));
    }
    return close_subgroup(gens);
}

Subgroup PcGroup::derived_subgroup() const {
    const auto& t = table();
    std::vector<int32_t> comms;
    for (int j = 2; j <= pres_.ngens; ++j)
        for (int i = 1; i < j; ++i) {
            Element uj, ui;
            uj.e.assign(pres_.ngens, 0); uj.e[j - 1] = 1;
            ui.e.assign(pres_.ngens, 0); ui.e[i - 1] = 1;
            comms.push_back(t.comm(t.encode(uj), t.encode(ui)));
        }
    return normal_closure(comms);
}

Subgroup PcGroup::derived_of(const Subgroup& h) const {
    const auto& t = table();
    std::vector<int32_t> basis;
    for (const auto& b : h.canonical_basis) basis.push_back(t.encode(b));
    std::vector<int32_t> cur;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j)
            cur.push_back(t.comm(basis[i], basis[j]));
    // normal closure within h
    for (;;) {
        Subgroup d = close_subgroup(cur);
        std::vector<char> in(t.size(), 0);
        for (int32_t x : d.element_ids) in[x] = 1;
        bool grew = false;
        for (int32_t x : d.element_ids) {
            for (int32_t b : basis) {
                int32_t c = t.conj(x, b);
                if (!in[c]) { cur.push_back(c); grew = true; break; }
            }
            if (grew) break;
        }
        if (!grew) return d;
    }
}

std::vector<Subgroup> PcGroup::lower_central_series() const {
    const auto& t = table();
    std::vector<Subgroup> series;
    series.push_back(whole_group());
    std::vector<int32_t> gens;
    for (int g = 1; g <= pres_.ngens; ++g) {
        Element unit;
        unit.e.assign(pres_.ngens, 0);
        unit.e[g - 1] = 1;
        gens.push_back(t.encode(unit));
    }
    for (;;) {
        const Subgroup& prev = series.back();
        if (prev.order == 1) break;
        std::vector<int32_t> comms;
        for (const auto& b : prev.canonical_basis)
            for (int32_t g : gens) comms.push_back(t.comm(t.encode(b), g));
        Subgroup next = normal_closure(comms);
        if (next.order == prev.order)
            throw std::logic_error("lower central series does not terminate");
        series.push_back(std::move(next));
        if (series.back().order == 1) break;
    }
    return series;
}

int PcGroup::nilpotency_class() const { return (int)lower_central_series().size() - 1; }

AbelianInvariants PcGroup::abelian_invariants(const Subgroup& h) const {
    const auto& t = table();
    Subgroup d = derived_of(h);
    std::vector<char> in_d(t.size(), 0);
    for (int32_t x : d.element_ids) in_d[x] = 1;
    AbelianInvariants inv;
    long long prev = d.order;
    std::vector<int32_t> cur = h.element_ids;
    for (int k = 1; prev < h.order; ++k) {
        for (int32_t& x : cur) x = t.pow5(x);
        long long nk = 0;  // #{x in H : x^(5^k) in H'}
        for (int32_t x : cur)
            if (in_d[x]) ++nk;
        // log_5(nk/prev) = number of invariant factors with exponent >= k
        long long ratio = nk / prev;
        int parts = 0;
        while (ratio > 1) { ratio /= kP; ++parts; }
        if (k == 1)
            inv.partition.assign(parts, 1);
        else
            for (int j = 0; j < parts; ++j) inv.partition[j] = k;
        prev = nk;
        if (k > 12) throw std::logic_error("abelian invariant extraction runaway");
    }
    std::sort(inv.partition.begin(), inv.partition.end(), std::greater<int>());
    return inv;
}

int PcGroup::minimal_generator_count() const {
    const auto& t = table();
    Subgroup d = derived_subgroup();
    std::vector<int32_t> gens;
    for (const auto& b : d.canonical_basis) gens.push_back(t.encode(b));
    for (int g = 1; g <= pres_.ngens; ++g) {
        Element unit;
        unit.e.assign(pres_.ngens, 0);
        unit.e[g - 1] = 1;
        gens.push_back(t.pow5(t.encode(unit)));
    }
    Subgroup frattini = close_subgroup(gens);
    long long idx = order() / frattini.order;
    int d1 = 0;
    while (idx > 1) { idx /= kP; ++d1; }
    return d1;
}

std::array<Subgroup, 6> PcGroup::maximal_subgroups() const {
    if (minimal_generator_count() != 2)
        throw std::invalid_argument("maximal subgroup ordering requires minimal generator count 2");
    const auto& t = table();
    Subgroup d = derived_subgroup();
    std::vector<int32_t> frat_gens;
    for (const auto& b : d.canonical_basis) frat_gens.push_back(t.encode(b));
    for (int g = 1; g <= pres_.ngens; ++g) {
        Element unit;
        unit.e.assign(pres_.ngens, 0);
        unit.e[g - 1] = 1;
        frat_gens.push_back(t.pow5(t.encode(unit)));
    }
    std::array<Subgroup, 6> out;
    for (int i = 0; i < 6; ++i) {
        Element u;
        u.e.assign(pres_.ngens, 0);
        u.e[0] = (uint8_t)kLines[i][0];
        u.e[1] = (uint8_t)kLines[i][1];
        std::vector<int32_t> gens = frat_gens;
        gens.push_back(t.encode(u));
        out[i] = close_subgroup(gens);
        if (out[i].order * kP != order()) throw std::logic_error("maximal subgroup has wrong index");
    }
    return out;
}

TransferMap PcGroup::artin_transfer(const Subgroup& h) const {
    if (h.order * kP != order()) throw std::invalid_argument("transfer requires an index-5 subgroup");
    const auto& t = table();
    std::vector<char> in_h(t.size(), 0);
    for (int32_t x : h.element_ids) in_h[x] = 1;
    // transversal generator: a group generator outside H
    int32_t tr = -1;
    for (int g = 1; g <= pres_.ngens && tr < 0; ++g) {
        Element unit;
        unit.e.assign(pres_.ngens, 0);
        unit.e[g - 1] = 1;
        int32_t gid = t.encode(unit);
        if (!in_h[gid]) tr = gid;
    }
    if (tr < 0) throw std::logic_error("no transversal generator found");
    auto transfer = [&](int32_t g) {
        if (!in_h[g]) {
            int32_t v = t.pow5(g);
            if (!in_h[v]) throw std::logic_error("fifth power left the subgroup");
            return v;
        }
        int32_t r = 0, tk = 0;
        for (int k = 0; k < kP; ++k) {
            r = t.mul(r, t.conj(g, tk));
            tk = t.mul(tk, tr);
        }
        if (!in_h[r]) throw std::logic_error("transfer value left the subgroup");
        return r;
    };
    Element u1, u2;
    u1.e.assign(pres_.ngens, 0); u1.e[0] = 1;
    u2.e.assign(pres_.ngens, 0); u2.e[1] = 1;
    TransferMap m;
    m.v1 = t.decode(transfer(t.encode(u1)));
    m.v2 = t.decode(transfer(t.encode(u2)));
    m.h = h;
    m.h_derived = derived_of(h);
    return m;
}

KappaClass kappa_class_of(const std::vector<int>& kappa) {
    KappaClass kc;
    kc.zeros = (int)std::count(kappa.begin(), kappa.end(), 0);
    for (int i = 1; i <= 6; ++i)
        if (kappa[i - 1] == i) ++kc.fixed;
    std::array<bool, 7> seen{};
    for (int start = 1; start <= 6; ++start) {
        if (seen[start] || kappa[start - 1] == 0) continue;
        std::map<int, int> pos;
        std::vector<int> path;
        int cur = start;
        while (cur != 0 && !seen[cur]) {
            if (pos.count(cur)) {
                kc.cycles.push_back((int)path.size() - pos[cur]);
                break;
            }
            pos[cur] = (int)path.size();
            path.push_back(cur);
            cur = kappa[cur - 1];
        }
        for (int v : path) seen[v] = true;
    }
    std::sort(kc.cycles.begin(), kc.cycles.end());
    return kc;
}

bool KappaClass::operator<(const KappaClass& o) const {
    return std::tie(cycles, zeros, fixed) < std::tie(o.cycles, o.zeros, o.fixed);
}

std::string KappaClass::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < cycles.size(); ++i) os << (i ? "," : "") << cycles[i];
    os << "];z" << zeros << ";f" << fixed;
    return os.str();
}

std::string KappaClass::pattern_name() const {
    if (zeros == 6) return "constant";
    if (zeros == 0 && fixed == 6) return "identity";
    if (cycles == std::vector<int>{1, 1, 4} && fixed == 2) return "4-cycle";
    if (cycles == std::vector<int>{1, 1, 2, 2} && fixed == 2) return "two 2-cycles";
    if (cycles == std::vector<int>{1, 5} && fixed == 1) return "5-cycle";
    if (cycles == std::vector<int>{2, 2, 2}) return "three 2-cycles";
    if (cycles == std::vector<int>{6}) return "6-cycle";
    if (cycles == std::vector<int>{3, 3}) return "two 3-cycles";
    if (zeros == 1 && fixed == 1 && cycles == std::vector<int>{1}) return "nrl. const. with fp.";
    if (zeros == 1 && fixed == 0 && cycles.empty()) return "nearly constant";
    if (zeros == 0 && fixed == 1 && cycles == std::vector<int>{1}) return "constant";
    if (zeros == 5 && fixed == 1) return "a.2, fixed point";
    return "unrecognized " + str();
}

std::string parse_kappa_string(const std::string& s, std::vector<int>& out) {
    out.clear();
    for (char c : s) {
        if (c >= '0' && c <= '6') out.push_back(c - '0');
        else if (c != '(' && c != ')' && c != ' ')
            return "unexpected character in kappa string";
    }
    if (out.size() != 6) return "kappa string must contain six digits";
    return "";
}

std::vector<AbelianInvariants> ArtinPattern::tau_sorted() const {
    auto v = tau;
    std::sort(v.begin(), v.end());
    return v;
}

std::string ArtinPattern::tau_str() const {
    auto v = tau_sorted();
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size();) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if (i) os << ",";
        os << v[i].str();
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    os << "]";
    return os.str();
}

ArtinPattern PcGroup::artin_pattern() const {
    if (!consistency_check()) throw std::invalid_argument("inconsistent presentation");
    const auto& t = table();
    auto maxes = maximal_subgroups();
    ArtinPattern ap;
    ap.kappa.resize(6);
    ap.tau.resize(6);
    for (int i = 0; i < 6; ++i) {
        TransferMap m = artin_transfer(maxes[i]);
        std::vector<char> in_d(t.size(), 0);
        for (int32_t x : m.h_derived.element_ids) in_d[x] = 1;
        int32_t w1 = t.encode(m.v1), w2 = t.encode(m.v2);
        std::vector<std::pair<int, int>> kernel;
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b)
                if (in_d[t.mul(t.pow(w1, a), t.pow(w2, b))]) kernel.emplace_back(a, b);
        if (kernel.size() == 25) {
            ap.kappa[i] = 0;
        } else if (kernel.size() == 5) {
            auto nz = std::find_if(kernel.begin(), kernel.end(),
                                   [](auto& p) { return p.first || p.second; });
            ap.kappa[i] = line_of(nz->first, nz->second) + 1;
        } else {
            throw std::logic_error("transfer kernel is not a subgroup of order 5 or 25");
        }
        ap.tau[i] = abelian_invariants(maxes[i]);
    }
    ap.kappa_class = kappa_class_of(ap.kappa);
    return ap;
}

PcGroup PcGroup::parent_quotient() const {
    auto series = lower_central_series();
    if (series.size() < 3) throw std::invalid_argument("abelian group has no parent quotient");
    const Subgroup& last = series[series.size() - 2];  // gamma_c, the last nontrivial member
    std::vector<bool> drop(pres_.ngens + 1, false);
    for (const auto& b : last.canonical_basis) {
        int lead = -1, weight = 0;
        for (int g = 1; g <= pres_.ngens; ++g) weight += b.e[g - 1];
        for (int g = 1; g <= pres_.ngens; ++g)
            if (b.e[g - 1]) { lead = g; break; }
        if (weight != 1)
            throw std::runtime_error("parent quotient requires gamma_c spanned by single generators");
        drop[lead] = true;
    }
    std::vector<int> remap(pres_.ngens + 1, 0);
    int next = 0;
    for (int g = 1; g <= pres_.ngens; ++g)
        if (!drop[g]) remap[g] = ++next;
    auto map_word = [&](const Word& w) {
        Word out;
        for (const auto& s : w)
            if (!drop[s.gen]) out.push_back({remap[s.gen], s.exp});
        return out;
    };
    PcPresentation q;
    q.prime = kP;
    q.ngens = next;
    q.name = "parent(" + pres_.name + ")";
    q.generator_count = pres_.generator_count;
    q.power.assign(next + 1, {});
    q.comm.assign(next + 1, {});
    for (int j = 1; j <= next; ++j) q.comm[j].assign(j, {});
    for (int i = 1; i <= pres_.ngens; ++i)
        if (!drop[i]) q.power[remap[i]] = map_word(pres_.power[i]);
    for (int j = 2; j <= pres_.ngens; ++j)
        for (int i = 1; i < j; ++i)
            if (!drop[j] && !drop[i]) q.comm[remap[j]][remap[i]] = map_word(pres_.comm[j][i]);
    return PcGroup(std::move(q));
}

// ------------------------------------------------------------- sigma search

namespace {

struct Mat2 {
    int a11, a12, a21, a22;
};

std::vector<Mat2> admissible_matrices(int degree) {
    // induced matrices A on G/G' with A^degree = I and I + A + ... + A^(d-1) = 0
    std::vector<Mat2> out;
    for (int a11 = 0; a11 < 5; ++a11)
        for (int a12 = 0; a12 < 5; ++a12)
            for (int a21 = 0; a21 < 5; ++a21)
                for (int a22 = 0; a22 < 5; ++a22) {
                    if ((a11 * a22 - a12 * a21) % 5 == 0) continue;
                    long long m[2][2] = {{a11, a12}, {a21, a22}};
                    long long p[2][2] = {{1, 0}, {0, 1}};
                    long long s[2][2] = {{0, 0}, {0, 0}};
                    for (int k = 0; k < degree; ++k) {
                        for (int r = 0; r < 2; ++r)
                            for (int c = 0; c < 2; ++c) s[r][c] = (s[r][c] + p[r][c]) % 5;
                        long long q[2][2];
                        for (int r = 0; r < 2; ++r)
                            for (int c = 0; c < 2; ++c)
                                q[r][c] = (p[r][0] * m[0][c] + p[r][1] * m[1][c]) % 5;
                        std::copy(&q[0][0], &q[0][0] + 4, &p[0][0]);
                    }
                    if (p[0][0] == 1 && p[0][1] == 0 && p[1][0] == 0 && p[1][1] == 1 &&
                        !s[0][0] && !s[0][1] && !s[1][0] && !s[1][1])
                        out.push_back({a11, a12, a21, a22});
                }
    return out;
}

}  // namespace

bool PcGroup::sigma_degree_test(int degree) const {
    if (degree != 2 && degree != 4) throw std::invalid_argument("degree must be 2 or 4");
    if (order() > 3125) throw std::runtime_error("sigma search not attempted: order exceeds 5^5");
    if (minimal_generator_count() != 2)
        throw std::invalid_argument("sigma search requires minimal generator count 2");
    if (!consistency_check()) throw std::invalid_argument("inconsistent presentation");
    const auto& t = table();
    const int n = pres_.ngens;

    // generator definitions: g_k = [g_j, g_i] for k >= 3
    std::vector<std::pair<int, int>> defs(n + 1, {0, 0});
    for (int k = 3; k <= n; ++k) {
        bool found = false;
        for (int j = 2; j < k && !found; ++j)
            for (int i = 1; i < j && !found; ++i) {
                const Word& w = pres_.comm[j][i];
                if (w.size() == 1 && w[0].gen == k && w[0].exp == 1) {
                    defs[k] = {j, i};
                    found = true;
                }
            }
        if (!found)
            throw std::runtime_error("sigma search requires commutator definitions for higher generators");
    }

    Subgroup der = derived_subgroup();
    std::vector<int32_t> dprime = der.element_ids;

    auto eval_word = [&](const Word& w, const std::vector<int32_t>& img) {
        int32_t r = 0;
        for (const auto& s : w) r = t.mul(r, t.pow(img[s.gen], s.exp));
        return r;
    };
    int32_t g1id, g2id;
    {
        Element u1, u2;
        u1.e.assign(n, 0); u1.e[0] = 1;
        u2.e.assign(n, 0); u2.e[1] = 1;
        g1id = t.encode(u1);
        g2id = t.encode(u2);
    }
    auto apply_endo = [&](const std::vector<int32_t>& img, int32_t x) {
        int32_t r = 0;
        for (int g = 1; g <= n; ++g) {
            int e = t.digit(x, g);
            if (e) r = t.mul(r, t.pow(img[g], e));
        }
        return r;
    };

    auto mats = admissible_matrices(degree);
    std::atomic<bool> found{false};
    auto try_matrix = [&](const Mat2& A) {
        Element r1e, r2e;
        r1e.e.assign(n, 0);
        r1e.e[0] = (uint8_t)A.a11;
        r1e.e[1] = (uint8_t)A.a21;
        r2e.e.assign(n, 0);
        r2e.e[0] = (uint8_t)A.a12;
        r2e.e[1] = (uint8_t)A.a22;
        int32_t r1 = t.encode(r1e), r2 = t.encode(r2e);
        std::vector<int32_t> img(n + 1, 0);
        for (int32_t h1 : dprime) {
            if (found.load(std::memory_order_relaxed)) return;
            img[1] = t.mul(r1, h1);
            for (int32_t h2 : dprime) {
                img[2] = t.mul(r2, h2);
                for (int k = 3; k <= n; ++k)
                    img[k] = t.comm(img[defs[k].first], img[defs[k].second]);
                bool ok = true;
                for (int i = 1; i <= n && ok; ++i)
                    ok = t.pow5(img[i]) == eval_word(pres_.power[i], img);
                for (int j = 2; j <= n && ok; ++j)
                    for (int i = 1; i < j && ok; ++i)
                        ok = t.comm(img[j], img[i]) == eval_word(pres_.comm[j][i], img);
                if (!ok) continue;
                // exact order check
                int32_t x1 = g1id, x2 = g2id;
                bool order_ok = true;
                for (int k = 1; k <= degree; ++k) {
                    x1 = apply_endo(img, x1);
                    x2 = apply_endo(img, x2);
                    if (k < degree && x1 == g1id && x2 == g2id) { order_ok = false; break; }
                }
                if (order_ok && x1 == g1id && x2 == g2id) {
                    found.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        }
    };

    unsigned nthreads = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
    if (nthreads <= 1 || mats.size() <= 1) {
        for (const auto& A : mats) {
            if (found.load()) break;
            try_matrix(A);
        }
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<size_t> next{0};
        for (unsigned w = 0; w < nthreads; ++w)
            futs.push_back(std::async(std::launch::async, [&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= mats.size() || found.load()) return;
                    try_matrix(mats[i]);
                }
            }));
        for (auto& f : futs) f.get();
    }
    return found.load();
}

SigmaFlags PcGroup::sigma_flags() const {
    SigmaFlags f;
    f.degree4 = sigma_degree_test(4);
    f.degree2 = sigma_degree_test(2);
    f.combined_flag = f.degree4 && f.degree2;
    return f;
}

// --------------------------------------------------------------- invariants

int AbelianInvariants::weight() const {
    return std::accumulate(partition.begin(), partition.end(), 0);
}

std::string AbelianInvariants::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < partition.size();) {
        size_t j = i;
        while (j < partition.size() && partition[j] == partition[i]) ++j;
        os << partition[i];
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    os << ")";
    return os.str();
}

AbelianInvariants parse_invariants(const std::string& s) {
    AbelianInvariants inv;
    size_t i = 0;
    auto skip = [&] { while (i < s.size() && (s[i] == '(' || s[i] == ')' || s[i] == ' ')) ++i; };
    skip();
    while (i < s.size()) {
        if (!isdigit((unsigned char)s[i])) throw std::invalid_argument("bad invariant string: " + s);
        int part = s[i++] - '0';
        int rep = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            rep = 0;
            while (i < s.size() && isdigit((unsigned char)s[i])) rep = rep * 10 + (s[i++] - '0');
        }
        for (int k = 0; k < rep; ++k) inv.partition.push_back(part);
        skip();
    }
    std::sort(inv.partition.begin(), inv.partition.end(), std::greater<int>());
    return inv;
}

// ------------------------------------------------------------------ parsing

namespace {

Word parse_word(const std::string& rhs, int max_allowed) {
    Word w;
    std::istringstream is(rhs);
    std::string tok;
    while (is >> tok) {
        if (tok == "1") continue;
        if (tok.size() < 2 || tok[0] != 'g') throw std::invalid_argument("bad word factor: " + tok);
        size_t caret = tok.find('^');
        int gen = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        int exp = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
        exp = ((exp % kP) + kP) % kP;
        if (gen < 1 || gen > max_allowed) throw std::invalid_argument("bad generator in word: " + tok);
        if (exp) w.push_back({gen, exp});
    }
    return w;
}

}  // namespace

std::vector<PcPresentation> parse_presentations(std::istream& in) {
    std::vector<PcPresentation> out;
    PcPresentation* cur = nullptr;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        // keep '#' inside group names (5^5#11); only strip comments that
        // start a token
        if (hash != std::string::npos && (hash == 0 || line[hash - 1] == ' '))
            line = line.substr(0, hash);
        std::istringstream is(line);
        std::string tok;
        if (!(is >> tok)) continue;
        try {
            if (tok == "group") {
                PcPresentation p;
                std::string rest;
                is >> p.name;
                while (is >> rest) {
                    auto eq = rest.find('=');
                    if (eq == std::string::npos) throw std::invalid_argument("bad header field " + rest);
                    std::string key = rest.substr(0, eq), val = rest.substr(eq + 1);
                    if (key == "order") {
                        if (val.rfind("5^", 0) != 0) throw std::invalid_argument("order must be 5^n");
                        p.ngens = std::stoi(val.substr(2));
                    } else if (key == "mingens") {
                        p.generator_count = std::stoi(val);
                    }
                }
                if (p.ngens < 1) throw std::invalid_argument("missing order");
                p.power.assign(p.ngens + 1, {});
                p.comm.assign(p.ngens + 1, {});
                for (int j = 1; j <= p.ngens; ++j) p.comm[j].assign(std::max(j, 1), {});
                out.push_back(std::move(p));
                cur = &out.back();
            } else if (tok[0] == 'g') {
                if (!cur) throw std::invalid_argument("relation before group header");
                // g<i>^5 = word
                size_t caret = tok.find('^');
                if (caret == std::string::npos || tok.substr(caret + 1) != "5")
                    throw std::invalid_argument("power relation must be g<i>^5");
                int i = std::stoi(tok.substr(1, caret - 1));
                std::string eq, rhs;
                is >> eq;
                std::getline(is, rhs);
                if (eq != "=") throw std::invalid_argument("expected '='");
                if (i < 1 || i > cur->ngens) throw std::invalid_argument("generator out of range");
                cur->power[i] = parse_word(rhs, cur->ngens);
            } else if (tok[0] == '[') {
                if (!cur) throw std::invalid_argument("relation before group header");
                // [g<j>,g<i>] = word
                auto comma = tok.find(',');
                auto close = tok.find(']');
                if (comma == std::string::npos || close == std::string::npos)
                    throw std::invalid_argument("bad commutator relation " + tok);
                int j = std::stoi(tok.substr(2, comma - 2));
                int i = std::stoi(tok.substr(comma + 2, close - comma - 2));
                std::string eq, rhs;
                is >> eq;
                std::getline(is, rhs);
                if (eq != "=") throw std::invalid_argument("expected '='");
                if (!(j > i && i >= 1 && j <= cur->ngens))
                    throw std::invalid_argument("commutator indices must satisfy j > i");
                cur->comm[j][i] = parse_word(rhs, cur->ngens);
            } else {
                throw std::invalid_argument("unrecognized line");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("presentation file line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    for (auto& p : out) p.validate();
    return out;
}

std::vector<PcPresentation> load_presentations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open presentation file " + path);
    return parse_presentations(in);
}

const PcPresentation& find_presentation(const std::vector<PcPresentation>& v, const std::string& name) {
    for (const auto& p : v)
        if (p.name == name) return p;
    throw std::invalid_argument("no presentation named " + name);
}

}  // namespace qtl::pc

#include "qtl/quadclass.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qtl::qf {

namespace {

using i128 = __int128;

long long isqrt_ll(long long n) {
    if (n < 0) return -1;
    long long r = (long long)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

long long gcd_ll(long long a, long long b) { return std::gcd(std::abs(a), std::abs(b)); }

// mod into [0, m) for m > 0
long long pos_mod(i128 x, long long m) {
    i128 r = x % m;
    if (r < 0) r += m;
    return (long long)r;
}

// extended gcd: returns g, sets x,y with a x + b y = g
long long xgcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) { x = a >= 0 ? 1 : -1; y = 0; return std::abs(a); }
    long long x1, y1;
    long long g = xgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

FundamentalDiscriminant fundamental_discriminant(long long m) {
    if (m == 0) throw std::invalid_argument("m must be nonzero");
    long long s = isqrt_ll(m);
    if (m > 0 && s * s == m) throw std::invalid_argument("m must not be a perfect square");
    long long core = m < 0 ? -1 : 1;
    long long n = std::abs(m);
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e & 1) core *= p;
    }
    core *= n;
    FundamentalDiscriminant d;
    d.squarefree_core = core;
    d.value = pos_mod(core, 4) == 1 ? core : 4 * core;
    return d;
}

std::pair<FundamentalDiscriminant, FundamentalDiscriminant> dual_pair(const FundamentalDiscriminant& D) {
    if (D.value % 5 == 0) throw std::invalid_argument("dual pair requires a discriminant prime to 5");
    return {D, fundamental_discriminant(5 * D.squarefree_core)};
}

long long discriminant_of(const QuadForm& f) {
    return (long long)((i128)f.b * f.b - (i128)4 * f.a * f.c);
}

QuadForm principal_form(long long D) {
    long long b = pos_mod(D, 2);
    return {1, b, (long long)(((i128)b * b - D) / 4)};
}

bool is_reduced(const QuadForm& f, long long D) {
    if (D < 0) {
        if (f.a <= 0) return false;
        if (!(std::abs(f.b) <= f.a && f.a <= f.c)) return false;
        if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
        return true;
    }
    // indefinite: reduced iff ac < 0 and b > |a + c|
    return f.a != 0 && f.c != 0 && (f.a > 0) != (f.c > 0) && f.b > std::abs(f.a + f.c);
}

namespace {

QuadForm reduce_definite(QuadForm f, long long D) {
    for (int guard = 0; guard < 10000; ++guard) {
        // normalize b into (-a, a]
        if (f.b > f.a || f.b <= -f.a) {
            long long b2 = pos_mod(f.b, 2 * f.a);
            if (b2 > f.a) b2 -= 2 * f.a;
            f.c = (long long)(((i128)b2 * b2 - D) / (4 * f.a));
            f.b = b2;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) f.b = -f.b;
        return f;
    }
    throw std::logic_error("definite reduction did not terminate");
}

}  // namespace

QuadForm rho(const QuadForm& f) {
    if (f.c == 0) throw std::invalid_argument("degenerate form (square discriminant)");
    long long D = discriminant_of(f);
    long long s = isqrt_ll(D);
    long long ac = std::abs(f.c);
    // b' = -b mod 2|c|, in (s - 2|c|, s]
    long long m2 = 2 * ac;
    long long b2 = pos_mod(-(i128)f.b, m2);
    long long lo = s - m2;   // want b' in (lo, lo + 2|c|]
    b2 = lo + pos_mod((i128)b2 - lo, m2);
    if (b2 <= lo) b2 += m2;
    long long c2 = (long long)(((i128)b2 * b2 - D) / (4 * f.c));
    return {f.c, b2, c2};
}

QuadForm reduce(QuadForm f) {
    long long D = discriminant_of(f);
    if (D < 0) {
        if (f.a < 0) throw std::invalid_argument("negative definite form");
        return reduce_definite(f, D);
    }
    for (int guard = 0; guard < 100000; ++guard) {
        if (is_reduced(f, D)) return f;
        f = rho(f);
    }
    throw std::logic_error("indefinite reduction did not terminate");
}

QuadForm form_inverse(const QuadForm& f) { return {f.a, -f.b, f.c}; }

QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
    long long D = discriminant_of(f1);
    if (discriminant_of(f2) != D) throw std::invalid_argument("discriminant mismatch");
    if (f1.a == 0 || f2.a == 0) throw std::invalid_argument("degenerate form");
    // replace f2 by an equivalent form with leading coefficient coprime to f1.a
    QuadForm g = f2;
    if (gcd_ll(f1.a, g.a) != 1) {
        bool done = false;
        for (long long r = 1; r <= 40 && !done; ++r)
            for (long long x = -r; x <= r && !done; ++x)
                for (long long y = -r; y <= r && !done; ++y) {
                    if (std::max(std::abs(x), std::abs(y)) != r) continue;
                    if (gcd_ll(x, y) != 1) continue;
                    i128 val = (i128)f2.a * x * x + (i128)f2.b * x * y + (i128)f2.c * y * y;
                    if (val == 0 || gcd_ll(f1.a, (long long)(val % f1.a)) != 1) continue;
                    // complete (x,y) to a unimodular matrix [[x,u],[y,v]]
                    long long u, v;
                    xgcd(x, y, v, u);
                    u = -u;
                    // x*v - u*y = gcd = 1 (x,y coprime)
                    if (x * v - u * y != 1) { u = -u; v = -v; }
                    if (x * v - u * y != 1) continue;
                    long long A = (long long)val;
                    i128 B = 2 * (i128)f2.a * x * u + (i128)f2.b * (x * v + u * y) +
                             2 * (i128)f2.c * y * v;
                    i128 C = (i128)f2.a * u * u + (i128)f2.b * u * v + (i128)f2.c * v * v;
                    g = {A, (long long)B, (long long)C};
                    done = true;
                }
        if (!done) throw std::logic_error("no coprime representative found");
    }
    // united forms: B = b1 (mod 2 a1), B = b2 (mod 2 a2) with gcd(a1,a2)=1,
    // via B = b1 + m1 t where m1 t = (b2 - b1) mod m2
    long long a1 = f1.a, a2 = g.a;
    long long m1 = 2 * std::abs(a1), m2 = 2 * std::abs(a2);
    i128 B;
    {
        long long rhs = pos_mod((i128)g.b - f1.b, m2);
        long long pp, qq;
        long long gg = xgcd(m1 % m2, m2, pp, qq);
        if (rhs % gg != 0) throw std::logic_error("united congruence unsolvable");
        long long t = pos_mod((i128)pp * (rhs / gg), m2 / gg);
        B = f1.b + (i128)m1 * t;
    }
    i128 A = (i128)a1 * a2;
    i128 C = ((i128)B * B - D) / (4 * A);
    if (((i128)B * B - D) % (4 * A) != 0) throw std::logic_error("composition alignment failed");
    QuadForm h{(long long)A, (long long)B, (long long)C};
    return reduce(h);
}

QuadForm canonical(const QuadForm& f) {
    long long D = discriminant_of(f);
    QuadForm r = reduce(f);
    if (D < 0) return r;
    QuadForm best = r, cur = r;
    for (int guard = 0; guard < 100000; ++guard) {
        cur = rho(cur);
        if (cur == r) return best;
        best = std::min(best, cur);
    }
    throw std::logic_error("rho cycle did not close");
}

namespace {

QuadForm canonical_pow(const QuadForm& f, long long k) {
    long long D = discriminant_of(f);
    QuadForm r = canonical(principal_form(D));
    QuadForm base = f;
    if (k < 0) { base = form_inverse(base); k = -k; }
    while (k) {
        if (k & 1) r = canonical(compose(r, base));
        base = canonical(compose(base, base));
        k >>= 1;
    }
    return r;
}

std::vector<QuadForm> enumerate_classes(long long D) {
    std::vector<QuadForm> classes;
    if (D < 0) {
        long long amax = isqrt_ll(-D / 3);
        for (long long a = 1; a <= amax; ++a)
            for (long long b = -a + 1; b <= a; ++b) {
                if (pos_mod(b, 2) != pos_mod(D, 2)) continue;
                i128 num = (i128)b * b - D;
                if (num % (4 * a) != 0) continue;
                long long c = (long long)(num / (4 * a));
                if (c < a) continue;
                if (gcd_ll(gcd_ll(a, b), c) != 1) continue;
                if ((std::abs(b) == a || a == c) && b < 0) continue;
                classes.push_back({a, b, c});
            }
        return classes;
    }
    // indefinite: all reduced forms, then one representative per rho-cycle
    std::set<QuadForm> reduced;
    long long s = isqrt_ll(D);
    for (long long b = 1; b <= s; ++b) {
        if (pos_mod(b, 2) != pos_mod(D, 2)) continue;
        long long M = (D - b * b) / 4;  // a * (-c) = M
        for (long long d = 1; d * d <= M; ++d) {
            if (M % d != 0) continue;
            for (long long a : {d, M / d}) {
                long long c = -(M / a);
                for (int sign = 0; sign < 2; ++sign) {
                    QuadForm f{sign ? -a : a, b, sign ? -c : c};
                    if (!is_reduced(f, D)) continue;
                    if (gcd_ll(gcd_ll(f.a, f.b), f.c) != 1) continue;
                    reduced.insert(f);
                }
                if (d == M / a) break;
            }
        }
    }
    std::set<QuadForm> seen;
    for (const auto& f : reduced) {
        if (seen.count(f)) continue;
        QuadForm best = f, cur = f;
        for (;;) {
            seen.insert(cur);
            cur = rho(cur);
            if (cur == f) break;
            best = std::min(best, cur);
        }
        classes.push_back(best);
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

}  // namespace

int FormClassGroup::class_index(const QuadForm& f) const {
    QuadForm c = canonical(f);
    auto it = std::lower_bound(classes.begin(), classes.end(), c);
    if (it == classes.end() || !(*it == c)) throw std::logic_error("class not in enumeration");
    return (int)(it - classes.begin());
}

FormClassGroup class_group(const FundamentalDiscriminant& D, long long bound) {
    if (std::abs(D.value) > bound) throw std::invalid_argument("discriminant exceeds configured bound");
    FormClassGroup G;
    G.discriminant = D.value;
    G.classes = enumerate_classes(D.value);
    G.h = (long long)G.classes.size();
    QuadForm id = canonical(principal_form(D.value));
    // group structure per prime: the type from torsion counting, generators by
    // greedy independent extension
    long long h = G.h;
    std::map<long long, std::vector<std::pair<QuadForm, int>>> prime_basis;  // p -> [(gen, exponent)]
    for (long long p = 2; p * p <= h || h > 1; ++p) {
        if (p * p > h) p = h;
        if (h % p != 0) continue;
        long long hp = 1;
        while (h % p == 0) { h /= p; hp *= p; }
        long long cof = G.h / hp;
        // Sylow p-subgroup via projection x -> x^cof
        std::set<QuadForm> syl;
        for (const auto& f : G.classes) syl.insert(canonical_pow(f, cof));
        std::vector<QuadForm> sylv(syl.begin(), syl.end());
        auto ordexp = [&](const QuadForm& f) {
            int k = 0;
            QuadForm x = f;
            while (!(x == id)) { x = canonical_pow(x, p); ++k; }
            return k;
        };
        // type: number of parts >= k equals log_p of the p^k/p^(k-1) torsion ratio
        std::vector<int> parts;
        long long prev = 1;
        for (int k = 1; prev < (long long)sylv.size(); ++k) {
            long long nk = 0;
            long long pk = 1;
            for (int t = 0; t < k; ++t) pk *= p;
            for (const auto& f : sylv)
                if (canonical_pow(f, pk) == id) ++nk;
            long long ratio = nk / prev;
            int cnt = 0;
            while (ratio > 1) { ratio /= p; ++cnt; }
            if (k == 1)
                parts.assign(cnt, 1);
            else
                for (int j = 0; j < cnt; ++j) parts[j] = k;
            prev = nk;
        }
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        // greedy basis realizing the type, verified by span sizes
        std::vector<std::pair<QuadForm, int>> basis;
        std::set<QuadForm> span = {id};
        for (int lam : parts) {
            long long target = 1;
            for (int t = 0; t < lam; ++t) target *= p;
            bool found = false;
            for (const auto& x : sylv) {
                if (ordexp(x) != lam) continue;
                std::set<QuadForm> bigger;
                QuadForm xp = id;
                bool distinct = true;
                for (long long j = 0; j < target && distinct; ++j) {
                    for (const auto& s : span)
                        if (!bigger.insert(canonical(compose(s, xp))).second) distinct = false;
                    xp = canonical(compose(xp, x));
                }
                if (!distinct || (long long)bigger.size() != (long long)span.size() * target)
                    continue;
                basis.push_back({x, lam});
                span = std::move(bigger);
                found = true;
                break;
            }
            if (!found) throw std::logic_error("no independent generator of the required order");
        }
        if ((long long)span.size() != (long long)sylv.size())
            throw std::logic_error("sylow basis does not span");
        prime_basis[p] = basis;
        if (h == 1) break;
    }
    // merge per-prime parts, largest with largest; divisors each dividing the next
    size_t maxlen = 0;
    for (auto& [p, b] : prime_basis) maxlen = std::max(maxlen, b.size());
    std::vector<long long> divisors(maxlen, 1);
    std::vector<QuadForm> gens(maxlen, id);
    for (auto& [p, b] : prime_basis)
        for (size_t i = 0; i < b.size(); ++i) {
            long long pk = 1;
            for (int t = 0; t < b[i].second; ++t) pk *= p;
            divisors[i] *= pk;
            gens[i] = canonical(compose(gens[i], b[i].first));
        }
    std::reverse(divisors.begin(), divisors.end());  // ascending, each divides the next
    std::reverse(gens.begin(), gens.end());
    G.invariants_list = divisors;
    G.generators = gens;
    long long prod = 1;
    for (long long d : divisors) prod *= d;
    if (prod != G.h) throw std::logic_error("elementary divisors do not multiply to h");
    return G;
}

int rank_p(const FormClassGroup& G, int p) {
    int r = 0;
    for (long long d : G.invariants_list)
        if (d % p == 0) ++r;
    return r;
}

int rank_p_from_torsion(const FormClassGroup& G, int p) {
    long long count = 0;
    for (const auto& f : G.classes)
        if (canonical_pow(f, p) == canonical(principal_form(G.discriminant))) ++count;
    int r = 0;
    while (count > 1) { count /= p; ++r; }
    return r;
}

std::pair<bigint, bigint> pell4(long long N) {
    if (N <= 0) throw std::invalid_argument("N must be positive");
    long long s = isqrt_ll(N);
    if (s * s == N) throw std::invalid_argument("N must not be a square");
    // N = 0,1 mod 4 is itself a discriminant (odd y possible); otherwise both
    // x and y are forced even and the problem descends to x'^2 - N y'^2 = 1
    long long m4 = pos_mod(N, 4);
    long long Delta = (m4 == 0 || m4 == 1) ? N : 4 * N;
    QuadForm f0 = reduce(principal_form(Delta));
    // traverse the principal cycle once, accumulating the automorph
    bigint m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    QuadForm f = f0;
    for (int guard = 0;; ++guard) {
        if (guard > 2000000) throw std::logic_error("principal cycle did not close");
        QuadForm g = rho(f);
        bigint step = ((bigint)f.b + g.b) / (2 * f.c);  // rho is f o [[0,-1],[1,m]]
        // M <- M * [[0,-1],[1,m]]
        bigint n11 = m12;
        bigint n12 = -m11 + m12 * step;
        bigint n21 = m22;
        bigint n22 = -m21 + m22 * step;
        m11 = n11; m12 = n12; m21 = n21; m22 = n22;
        f = g;
        if (f == f0) break;
    }
    bigint t = m11 + m22;
    if (m21 % f0.a != 0) throw std::logic_error("automorph not aligned with principal form");
    bigint u = m21 / f0.a;
    if (t < 0) t = -t;
    if (u < 0) u = -u;
    if (t * t - Delta * u * u != 4) throw std::logic_error("automorph is not a (+4)-unit");
    bigint x = t, y = u;
    if (Delta != N) y *= 2;  // unit (t + u*sqrt(4N))/2 = (t + 2u*sqrt(N))/2
    if (x * x - N * y * y != 4) throw std::logic_error("pell4 identity check failed");
    return {x, y};
}

// ------------------------------------------------------------------- cache

ClassGroupCache::ClassGroupCache(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string dstr, hstr, divs;
        if (!std::getline(is, dstr, ';') || !std::getline(is, hstr, ';')) continue;
        std::getline(is, divs);
        std::vector<long long> dv;
        std::istringstream ds(divs);
        std::string tok;
        while (std::getline(ds, tok, ','))
            if (!tok.empty()) dv.push_back(std::stoll(tok));
        entries_[std::stoll(dstr)] = {std::stoll(hstr), dv};
    }
}

std::optional<std::pair<long long, std::vector<long long>>> ClassGroupCache::lookup(long long D) const {
    auto it = entries_.find(D);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ClassGroupCache::store(long long D, long long h, const std::vector<long long>& divisors) {
    if (entries_.count(D)) return;
    entries_[D] = {h, divisors};
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    out << D << ";" << h << ";";
    for (size_t i = 0; i < divisors.size(); ++i) out << (i ? "," : "") << divisors[i];
    out << "\n";
}

int rank5_cached(const FundamentalDiscriminant& D, ClassGroupCache* cache, long long bound) {
    if (cache) {
        if (auto hit = cache->lookup(D.value)) {
            int r = 0;
            for (long long d : hit->second)
                if (d % 5 == 0) ++r;
            return r;
        }
    }
    FormClassGroup G = class_group(D, bound);
    if (cache) cache->store(D.value, G.h, G.invariants_list);
    return rank_p(G, 5);
}

}  // namespace qtl::qf

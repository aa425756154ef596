#include "qtl/galois.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtl::galois {

namespace {

using Poly = std::vector<long long>;  // ascending coefficients mod p

long long pos_mod(long long x, long long p) {
    long long r = x % p;
    return r < 0 ? r + p : r;
}

long long mulmod(long long a, long long b, long long p) {
    return (long long)((__int128)a * b % p);
}

long long powmod(long long a, long long e, long long p) {
    long long r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

long long invmod(long long a, long long p) { return powmod(pos_mod(a, p), p - 2, p); }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly f, const Poly& g, long long p) {
    // remainder of f by monic g
    while (f.size() >= g.size() && !f.empty()) {
        long long q = f.back();
        size_t shift = f.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i)
            f[shift + i] = pos_mod(f[shift + i] - mulmod(q, g[i], p), p);
        trim(f);
    }
    return f;
}

Poly poly_mul(const Poly& a, const Poly& b, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = pos_mod(r[i + j] + mulmod(a[i], b[j], p), p);
    return r;
}

Poly poly_make_monic(Poly f, long long p) {
    trim(f);
    if (f.empty()) return f;
    long long inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    return f;
}

Poly poly_gcd(Poly a, Poly b, long long p) {
    a = poly_make_monic(std::move(a), p);
    b = poly_make_monic(std::move(b), p);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = poly_make_monic(std::move(r), p);
    }
    return a;
}

Poly poly_div_exact(const Poly& f, const Poly& g, long long p) {
    Poly rem = f, q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, 0);
    while (rem.size() >= g.size() && !rem.empty()) {
        long long lead = mulmod(rem.back(), invmod(g.back(), p), p);
        size_t shift = rem.size() - g.size();
        q[shift] = lead;
        for (size_t i = 0; i < g.size(); ++i)
            rem[shift + i] = pos_mod(rem[shift + i] - mulmod(lead, g[i], p), p);
        trim(rem);
    }
    if (!rem.empty()) throw std::logic_error("inexact polynomial division");
    trim(q);
    return q;
}

Poly derivative(const Poly& f, long long p) {
    Poly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(mulmod((long long)(i % p), f[i], p));
    trim(d);
    return d;
}

Poly frobenius_power(const Poly& x, long long p, const Poly& mod) {
    // x(X)^p mod `mod`
    Poly r = {1};
    Poly base = x;
    long long e = p;
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), mod, p);
        base = poly_mod(poly_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

const std::vector<std::vector<int>> kF20Patterns = {
    {1, 1, 1, 1, 1}, {5}, {1, 4}, {1, 2, 2}};

}  // namespace

IntPolynomial make_poly(std::vector<bigint> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.empty()) throw std::invalid_argument("zero polynomial");
    return {std::move(coeffs)};
}

std::optional<std::vector<int>> factor_degree_pattern(const IntPolynomial& f, long long p) {
    if (f.degree() < 1) throw std::invalid_argument("constant polynomial");
    Poly fp;
    for (const auto& c : f.coeffs) fp.push_back(((c % p) + p).convert_to<long long>() % p);
    if (fp.back() == 0) return std::nullopt;  // p divides the leading coefficient
    fp = poly_make_monic(std::move(fp), p);
    if (poly_gcd(fp, derivative(fp, p), p).size() > 1) return std::nullopt;  // p | disc
    std::vector<int> pattern;
    Poly g = fp;
    Poly h = {0, 1};  // X
    for (int k = 1; (int)g.size() - 1 > 0; ++k) {
        h = frobenius_power(h, p, g);
        Poly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = pos_mod(hx[1] - 1, p);  // h - X
        trim(hx);
        Poly d = poly_gcd(g, hx, p);
        if (d.size() > 1) {
            int deg = (int)d.size() - 1;
            for (int i = 0; i < deg / k; ++i) pattern.push_back(k);
            g = poly_div_exact(g, d, p);
            h = poly_mod(h, g, p);
        }
        if (2 * (k + 1) > (int)g.size() - 1 && g.size() > 1) {
            pattern.push_back((int)g.size() - 1);  // remainder is irreducible
            break;
        }
    }
    std::sort(pattern.begin(), pattern.end());
    int total = 0;
    for (int d : pattern) total += d;
    if (total != f.degree()) throw std::logic_error("degree pattern does not sum to the degree");
    return pattern;
}

std::string to_string(FrobeniusStatus s) {
    switch (s) {
        case FrobeniusStatus::reducible: return "reducible";
        case FrobeniusStatus::excluded: return "excluded";
        case FrobeniusStatus::f20_compatible: return "F20_compatible";
        case FrobeniusStatus::f20_certified: return "F20_certified";
    }
    return "?";
}

FrobeniusVerdict frobenius_classify(const IntPolynomial& f, long long prime_budget) {
    if (f.degree() != 5) throw std::invalid_argument("frobenius classification needs degree 5");
    FrobeniusVerdict v;
    // small rational-root screen (integer roots of monic-after-clearing inputs)
    auto eval = [&](const bigint& x) {
        bigint r = 0;
        for (int i = f.degree(); i >= 0; --i) r = r * x + f.coeffs[i];
        return r;
    };
    for (long long r = -10000; r <= 10000; ++r) {
        if (f.coeffs[0] != 0 && r != 0 && f.coeffs[0] % r != 0) continue;
        if (eval(r) == 0) {
            v.status = FrobeniusStatus::reducible;
            return v;
        }
    }
    bool excluded = false;
    for (long long p = 2; v.primes_used < prime_budget; ++p) {
        if (!is_prime_ll(p)) continue;
        auto pat = factor_degree_pattern(f, p);
        if (!pat) continue;  // bad prime, skipped
        ++v.primes_used;
        ++v.patterns_seen[*pat];
        if (*pat == std::vector<int>{1, 4} && !v.witness_prime) v.witness_prime = p;
        if (std::find(kF20Patterns.begin(), kF20Patterns.end(), *pat) == kF20Patterns.end())
            excluded = true;
    }
    if (excluded) {
        v.status = FrobeniusStatus::excluded;
    } else if (v.witness_prime) {
        v.status = FrobeniusStatus::f20_certified;
    } else {
        v.status = FrobeniusStatus::f20_compatible;
    }
    return v;
}

TypeLabel label_type(SourceField s) {
    return s == SourceField::k1 ? TypeLabel::type_I : TypeLabel::type_II;
}

std::string to_string(TypeLabel t) {
    return t == TypeLabel::type_I ? "Type I (F_{5,2})" : "Type II (F_{5,3})";
}

}  // namespace qtl::galois

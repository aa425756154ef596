#include "qtl/quartic.hpp"

#include <cmath>
#include <stdexcept>

namespace qtl::quartic {

namespace {

long long squarefree_core(long long m) {
    long long core = m < 0 ? -1 : 1;
    long long n = std::llabs(m);
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e & 1) core *= p;
    }
    return core * n;
}

bool is_square_big(const bigint& x) {
    if (x < 0) return false;
    bigint r = boost::multiprecision::sqrt(x);
    return r * r == x;
}

}  // namespace

QuarticField build_quartic(long long m) {
    if (m == 0) throw std::invalid_argument("m must be nonzero");
    long long d = squarefree_core(m);
    if (d == 1) throw std::invalid_argument("square-free core must differ from 1");
    if (d % 5 == 0) throw std::invalid_argument("square-free core must be prime to 5");
    QuarticField M;
    M.d = d;
    M.min_poly = {bigint(5) * d * d, 0, bigint(5) * d, 0, 1};
    long long dm4 = ((d % 4) + 4) % 4;
    if (dm4 == 1) {
        M.conductor = 5 * std::llabs(d);
        M.field_disc = bigint(125) * d * d;
    } else {
        M.conductor = 20 * std::llabs(d);
        M.field_disc = bigint(2000) * d * d;
    }
    M.imaginary = d > 0;
    M.unit_rank = M.imaginary ? 1 : 3;  // r1 + r2 - 1 for signatures (0,2) / (4,0)
    return M;
}

bool eisenstein_irreducible(long long d) {
    if (d == 0 || d == 1 || squarefree_core(d) != d)
        throw std::invalid_argument("d must be square-free and different from 0, 1");
    if (d % 5 == 0) throw std::invalid_argument("d must be prime to 5");
    bigint c2 = bigint(5) * d, c0 = bigint(5) * d * d;
    return c2 % 5 == 0 && c0 % 5 == 0 && c0 % 25 != 0;
}

CyclicCheck verify_cyclic_conditions(const rational& n, const rational& e, const rational& f) {
    if (f == rational(0)) throw std::invalid_argument("f must be nonzero");
    auto is_square_rat = [](const rational& q) {
        if (q < rational(0)) return false;
        return is_square_big(q.numerator()) && is_square_big(q.denominator());
    };
    CyclicCheck out;
    out.n_is_square = is_square_rat(n);
    rational norm = e * e - f * f * n;
    out.norm_condition = is_square_rat(n * norm);
    out.poly_disc = rational(256) * f * f * f * f * n * n * norm;
    out.is_cyclic = !out.n_is_square && out.norm_condition;
    return out;
}

}  // namespace qtl::quartic

// Construction and invariants of the cyclic quartic fields
// M = Q((zeta_5 - zeta_5^-1) sqrt(d)).
#ifndef QTL_QUARTIC_HPP
#define QTL_QUARTIC_HPP

#include <array>
#include <cstdint>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace qtl::quartic {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::rational<bigint>;

struct QuarticField {
    long long d = 0;                 // square-free, prime to 5
    std::array<bigint, 5> min_poly;  // X^4 + 5d X^2 + 5d^2, coefficient of X^k at [k]
    long long conductor = 0;
    bigint field_disc = 0;
    bool imaginary = false;          // d > 0: signature (0,2); d < 0: (4,0)
    int unit_rank = 0;               // 1 or 3
};

// Builds M from any m whose square-free core d is != 1 and prime to 5
// (table rows hand in fundamental discriminants).
QuarticField build_quartic(long long m);

// Eisenstein criterion at 5 for X^4 + 5d X^2 + 5d^2; true for every valid d.
bool eisenstein_irreducible(long long d);

struct CyclicCheck {
    bool is_cyclic = false;
    bool n_is_square = false;
    bool norm_condition = false;  // n (e^2 - f^2 n) is a square
    rational poly_disc;           // 2^8 f^4 n^2 (e^2 - f^2 n)
};

// Lemma-style criterion for X^4 - 2e X^2 + (e^2 - f^2 n) to generate a cyclic
// quartic extension; f must be nonzero.
CyclicCheck verify_cyclic_conditions(const rational& n, const rational& e, const rational& f);

}  // namespace qtl::quartic

#endif

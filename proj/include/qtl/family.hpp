// The Pellian family: solutions of alpha^2 - 125 beta^2 = 4 with
// alpha + beta = 0 mod 25, their units and the attached quintic polynomials.
#ifndef QTL_FAMILY_HPP
#define QTL_FAMILY_HPP

#include <array>
#include <boost/multiprecision/cpp_int.hpp>

namespace qtl::family {

using bigint = boost::multiprecision::cpp_int;

// (a + b sqrt(125)) / 2 with a = b mod 2; norm (a^2 - 125 b^2)/4.
struct PellUnit {
    bigint a, b;
    bigint norm() const { return (a * a - 125 * b * b) / 4; }
};

PellUnit eta();                      // (123 + 11 sqrt(125))/2, the fundamental solution
PellUnit mul(const PellUnit&, const PellUnit&);
PellUnit eta_power(long long n);     // n >= 1

// The quintic X^5 - 5N X^3 + 5N^2 X - N^2 T attached to an element of a
// quadratic field via its norm and trace; its splitting field realizes the
// order-20 Frobenius extensions.  Coefficient of X^k at index k.
std::array<bigint, 6> f20_quintic(const bigint& norm, const bigint& trace);

// Nagell's criterion at p = 5: (u + v sqrt(delta))/2 is certified not to be a
// fifth power in Q(sqrt(delta)) when 0 < |v| < delta^2 / 16.
bool fifth_power_excluded(const bigint& u, const bigint& v, const bigint& delta);

struct FamilyMember {
    long long k = 0;                 // member index, exponent n = 7 + 25 k
    long long n = 0;
    bigint alpha, beta;              // alpha^2 - 125 beta^2 = 4, alpha + beta = 0 mod 25
    bigint d;                        // (alpha + beta)^2 - 4
    bigint trace1;                   // Tr(eps_1^2) = d + 2
    bigint trace2;                   // Tr(eps_2) = alpha + 125 beta
    std::array<bigint, 6> poly1, poly2;
};

// Builds the member from the exponent n; refuses (std::invalid_argument) when
// alpha + beta != 0 mod 25.  Every structural identity is verified eagerly and
// a violation raises std::logic_error.
FamilyMember family_member_from_exponent(long long n);
FamilyMember family_member(long long k);   // n = 7 + 25 k

}  // namespace qtl::family

#endif

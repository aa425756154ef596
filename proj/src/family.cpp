#include "qtl/family.hpp"

#include <stdexcept>

namespace qtl::family {

PellUnit eta() { return {123, 11}; }

PellUnit mul(const PellUnit& x, const PellUnit& y) {
    bigint a = x.a * y.a + 125 * x.b * y.b;
    bigint b = x.a * y.b + x.b * y.a;
    if (a % 2 != 0 || b % 2 != 0) throw std::logic_error("pell unit parity violated");
    return {a / 2, b / 2};
}

PellUnit eta_power(long long n) {
    if (n < 1) throw std::invalid_argument("exponent must be positive");
    PellUnit r{2, 0};  // identity (2 + 0 sqrt(125))/2 = 1
    PellUnit base = eta();
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

std::array<bigint, 6> f20_quintic(const bigint& norm, const bigint& trace) {
    return {-norm * norm * trace, 5 * norm * norm, 0, -5 * norm, 0, 1};
}

bool fifth_power_excluded(const bigint& u, const bigint& v, const bigint& delta) {
    (void)u;  // the element is (u + v sqrt(delta))/2; the criterion reads only v and delta
    if (delta <= 0) throw std::invalid_argument("delta must be positive");
    if (v == 0) return false;
    bigint av = v < 0 ? -v : v;
    return 16 * av < delta * delta;
}

FamilyMember family_member_from_exponent(long long n) {
    PellUnit p = eta_power(n);
    FamilyMember m;
    m.n = n;
    m.k = (n - 7) / 25;
    m.alpha = p.a;
    m.beta = p.b;
    if (p.norm() != 1) throw std::logic_error("eta power lost norm 1");
    if ((m.alpha + m.beta) % 25 != 0)
        throw std::invalid_argument("alpha + beta is not divisible by 25 for n = " + std::to_string(n));
    bigint u = m.alpha + m.beta;
    m.d = u * u - 4;
    m.trace1 = m.d + 2;
    m.trace2 = m.alpha + 125 * m.beta;
    auto pm2_mod = [](const bigint& t, int mod) {
        bigint r = t % mod;
        if (r < 0) r += mod;
        return r == 2 || r == mod - 2;
    };
    if (!pm2_mod(m.trace1, 125) || !pm2_mod(m.trace2, 125))
        throw std::logic_error("unit trace congruence mod 125 violated");
    // positivity of phi(u) = u^4 - 8u^2 - 16u + 16 certifies alpha+beta < d^2/16
    bigint phi = u * u * u * u - 8 * u * u - 16 * u + 16;
    if (phi <= 0) throw std::logic_error("auxiliary inequality phi(u) > 0 violated");
    if (!fifth_power_excluded(m.trace1, u, m.d))
        throw std::logic_error("Nagell certificate for eps_1^2 failed");
    if (!fifth_power_excluded(m.trace2, 5, 5 * m.d))
        throw std::logic_error("Nagell certificate for eps_2 failed");
    m.poly1 = f20_quintic(1, m.trace1);
    m.poly2 = f20_quintic(1, m.trace2);
    return m;
}

FamilyMember family_member(long long k) {
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    return family_member_from_exponent(7 + 25 * k);
}

}  // namespace qtl::family

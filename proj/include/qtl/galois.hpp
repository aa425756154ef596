// Galois-type classification of quintic polynomials via factorization degree
// patterns modulo primes (element cycle types of the order-20 Frobenius group).
#ifndef QTL_GALOIS_HPP
#define QTL_GALOIS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtl::galois {

using bigint = boost::multiprecision::cpp_int;

struct IntPolynomial {
    std::vector<bigint> coeffs;  // coeffs[k] multiplies X^k, leading nonzero
    int degree() const { return (int)coeffs.size() - 1; }
};

IntPolynomial make_poly(std::vector<bigint> coeffs);  // trims, throws if zero

// Degrees of the irreducible factors of f mod p by distinct-degree splitting;
// nullopt when p is bad (divides the leading coefficient or f mod p is not
// squarefree).
std::optional<std::vector<int>> factor_degree_pattern(const IntPolynomial& f, long long p);

enum class FrobeniusStatus { reducible, excluded, f20_compatible, f20_certified };
std::string to_string(FrobeniusStatus);

struct FrobeniusVerdict {
    FrobeniusStatus status = FrobeniusStatus::excluded;
    std::optional<long long> witness_prime;          // first prime with pattern [1,4]
    std::map<std::vector<int>, long long> patterns_seen;
    long long primes_used = 0;
};

// Monte-Carlo classification over the first `prime_budget` good primes.
// "compatible" is one-sided; "certified" means a [1,4] witness was seen inside
// a solvable-only pattern sample {[1,1,1,1,1],[5],[1,4],[1,2,2]}.
FrobeniusVerdict frobenius_classify(const IntPolynomial& f, long long prime_budget);

enum class SourceField { k1, k2 };
enum class TypeLabel { type_I, type_II };  // F_{5,2} resp. F_{5,3}
TypeLabel label_type(SourceField);
std::string to_string(TypeLabel);

}  // namespace qtl::galois

#endif

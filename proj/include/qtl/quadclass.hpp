// Quadratic-field arithmetic: fundamental discriminants, form class groups
// (narrow for positive discriminants), p-ranks and Pell-type unit solving.
#ifndef QTL_QUADCLASS_HPP
#define QTL_QUADCLASS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtl::qf {

using bigint = boost::multiprecision::cpp_int;

struct FundamentalDiscriminant {
    long long value = 0;
    long long squarefree_core = 0;
};

// Fundamental discriminant of Q(sqrt(m)); throws for m = 0 or m a square.
FundamentalDiscriminant fundamental_discriminant(long long m);

// (D, fundamental discriminant of Q(sqrt(5 * core))); requires gcd(D,5)=1.
std::pair<FundamentalDiscriminant, FundamentalDiscriminant> dual_pair(const FundamentalDiscriminant&);

struct QuadForm {
    long long a = 0, b = 0, c = 0;
    auto operator<=>(const QuadForm&) const = default;
};

long long discriminant_of(const QuadForm&);
QuadForm principal_form(long long D);
bool is_reduced(const QuadForm&, long long D);
QuadForm reduce(QuadForm f);          // D<0: reduced form; D>0: some reduced form in the class
QuadForm rho(const QuadForm& f);      // one reduction step, D>0
QuadForm compose(const QuadForm&, const QuadForm&);
QuadForm form_inverse(const QuadForm&);

// Unique class representative: the reduced form (D<0, with sign convention),
// or the lexicographically least form of the rho-cycle (D>0, narrow classes).
QuadForm canonical(const QuadForm&);

struct FormClassGroup {
    long long discriminant = 0;
    long long h = 0;
    std::vector<long long> invariants_list;  // elementary divisors, each dividing the next
    std::vector<QuadForm> generators;        // generators[i] has order invariants_list[i]
    std::vector<QuadForm> classes;           // canonical representatives, classes[0] = identity

    int class_index(const QuadForm&) const;  // index into classes
};

// Enumerates all reduced forms / rho-cycles and extracts the group structure.
// Throws when |D| exceeds the bound.
FormClassGroup class_group(const FundamentalDiscriminant& D, long long bound = 10'000'000);

int rank_p(const FormClassGroup&, int p);                // from elementary divisors
int rank_p_from_torsion(const FormClassGroup&, int p);   // independent cross-check

// Minimal positive solution of x^2 - N y^2 = 4 (N > 0 nonsquare), computed by
// traversing the principal cycle of reduced indefinite forms (the
// continued-fraction expansion of sqrt(N), resp. (1+sqrt(N))/2 for N = 1 mod 4)
// while accumulating the fundamental automorph.
std::pair<bigint, bigint> pell4(long long N);

// Append-only result cache, one line per discriminant: "D;h;divisors_csv".
class ClassGroupCache {
  public:
    explicit ClassGroupCache(std::string path);  // empty path = disabled
    std::optional<std::pair<long long, std::vector<long long>>> lookup(long long D) const;
    void store(long long D, long long h, const std::vector<long long>& divisors);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::map<long long, std::pair<long long, std::vector<long long>>> entries_;
};

// rank_5 of the class group of D, consulting the cache when one is given.
int rank5_cached(const FundamentalDiscriminant& D, ClassGroupCache* cache,
                 long long bound = 10'000'000);

}  // namespace qtl::qf

#endif

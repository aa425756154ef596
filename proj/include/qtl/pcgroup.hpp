// Finite 5-group engine over consistent polycyclic presentations: collection,
// characteristic subgroups, Artin transfers and sigma-automorphism searches.
#ifndef QTL_PCGROUP_HPP
#define QTL_PCGROUP_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qtl::pc {

struct Syllable {
    int gen = 0;  // 1-based generator index
    int exp = 0;  // in [1, p)
};
using Word = std::vector<Syllable>;

// A polycyclic presentation with all relative orders equal to prime (5).
// power[i] is the word equal to g_i^p, comm[j][i] (j > i) the word equal to
// [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i; trivial words are empty.  Right-hand
// sides may only mention generators of strictly larger index.
struct PcPresentation {
    int prime = 5;
    int ngens = 0;
    std::string name;
    int generator_count = 2;  // minimal generator count d1
    std::vector<Word> power;                // index 1..ngens (0 unused)
    std::vector<std::vector<Word>> comm;    // comm[j][i], j > i >= 1

    const Word& power_word(int i) const { return power[i]; }
    const Word& comm_word(int j, int i) const { return comm[j][i]; }
    void validate() const;  // grammar-level checks, throws std::invalid_argument
};

// Normal form g1^e1 ... gn^en with exponents reduced into [0, p).
struct Element {
    std::vector<uint8_t> e;
    bool is_identity() const;
    bool operator==(const Element&) const = default;
};

// Weakly decreasing prime-power exponents of an abelian 5-group, in the
// shorthand of the tables: (5,5,5) = [1,1,1] prints as "(1^3)", (25,5) = [2,1]
// prints as "(21)".
struct AbelianInvariants {
    std::vector<int> partition;
    std::string str() const;
    int weight() const;  // sum of exponents (log_5 of the group order)
    bool operator==(const AbelianInvariants&) const = default;
    // display order: larger quotients first, as in the tables
    bool operator<(const AbelianInvariants& o) const {
        if (weight() != o.weight()) return weight() > o.weight();
        return partition < o.partition;
    }
};

// Parses one shorthand component like "(1^3)", "(21)", "1^3" or "(1)".
AbelianInvariants parse_invariants(const std::string& s);

struct Subgroup {
    std::vector<Element> generators;
    std::vector<Element> canonical_basis;  // echelonized induced pc sequence
    long long order = 1;
    std::vector<int32_t> element_ids;      // sorted, internal acceleration
};

// Relabeling-invariant of a transfer kernel type: multiset of cycle lengths
// of the permutation part, number of total kernels, number of fixed points.
struct KappaClass {
    std::vector<int> cycles;  // sorted ascending
    int zeros = 0;
    int fixed = 0;
    bool operator==(const KappaClass&) const = default;
    bool operator<(const KappaClass& o) const;
    std::string str() const;          // e.g. "[1,1,4];z0;f2"
    std::string pattern_name() const;  // e.g. "4-cycle", "nearly constant"
};

KappaClass kappa_class_of(const std::vector<int>& kappa);
std::string parse_kappa_string(const std::string& s, std::vector<int>& out);  // "(123456)" etc.

struct ArtinPattern {
    std::vector<int> kappa;                // 6 codes in 0..6
    std::vector<AbelianInvariants> tau;    // 6 entries, subgroup order
    KappaClass kappa_class;
    std::vector<AbelianInvariants> tau_sorted() const;
    std::string tau_str() const;           // e.g. "[(1^3)^2,(21)^4]"
};

struct SigmaFlags {
    bool degree4 = false;
    bool degree2 = false;
    bool combined_flag = false;  // Table 1 column f: degree4 && degree2
};

// The transfer map G/G' -> H/H' given by its values on the two generators.
struct TransferMap {
    Element v1, v2;          // V(g1), V(g2) as subgroup elements
    Subgroup h;
    Subgroup h_derived;
};

// Dense multiplication structure for one consistent presentation
// (|G| = 5^n <= 5^6 supported).  Elements are ids in [0, 5^n), digit g1 most
// significant.
class GroupTable {
  public:
    explicit GroupTable(const PcPresentation& pres);
    int ngens() const { return n_; }
    int32_t size() const { return size_; }
    int32_t mul(int32_t x, int32_t y) const;
    int32_t mul_gen(int32_t x, int g) const { return gen_mul_[size_t(x) * n_ + (g - 1)]; }
    int32_t inverse(int32_t x) const { return inv_[x]; }
    int32_t pow(int32_t x, long long k) const;
    int32_t pow5(int32_t x) const { return pw5_[x]; }
    int32_t conj(int32_t x, int32_t t) const;      // t^-1 x t
    int32_t comm(int32_t x, int32_t y) const;      // x^-1 y^-1 x y
    int32_t encode(const Element&) const;
    Element decode(int32_t id) const;
    int digit(int32_t id, int g) const;            // exponent of g_g in id

  private:
    int n_;
    int32_t size_;
    std::vector<int32_t> gen_mul_;
    std::vector<int32_t> inv_;
    std::vector<int32_t> pw5_;
};

// Wraps a presentation with its (lazily built) table and the module operations.
class PcGroup {
  public:
    explicit PcGroup(PcPresentation pres);

    const PcPresentation& presentation() const { return pres_; }
    const std::string& name() const { return pres_.name; }
    long long order() const;
    const GroupTable& table() const;

    // collect: words as sequences of signed generator indices (-i = g_i^-1)
    Element collect(const std::vector<int>& signed_word) const;
    Element mul(const Element&, const Element&) const;
    Element power(const Element&, long long) const;
    Element inverse(const Element&) const;

    bool consistency_check() const;

    Subgroup whole_group() const;
    Subgroup derived_subgroup() const;
    std::vector<Subgroup> lower_central_series() const;
    int nilpotency_class() const;
    AbelianInvariants abelian_invariants(const Subgroup&) const;
    int minimal_generator_count() const;

    std::array<Subgroup, 6> maximal_subgroups() const;
    TransferMap artin_transfer(const Subgroup& h) const;
    ArtinPattern artin_pattern() const;
    PcGroup parent_quotient() const;

    bool sigma_degree_test(int degree) const;
    SigmaFlags sigma_flags() const;

  private:
    Subgroup close_subgroup(const std::vector<int32_t>& gens) const;
    Subgroup normal_closure(const std::vector<int32_t>& gens) const;
    Subgroup derived_of(const Subgroup&) const;

    PcPresentation pres_;
    mutable std::shared_ptr<const GroupTable> table_;
    mutable std::optional<bool> consistent_;
};

// Raw collection used by consistency_check and table construction: letters
// are positive generator indices only.
Element raw_collect(const PcPresentation& pres, std::vector<int> letters);

// Presentation data file in the grammar documented in data/groups5.pc.
std::vector<PcPresentation> parse_presentations(std::istream& in);
std::vector<PcPresentation> load_presentations(const std::string& path);
const PcPresentation& find_presentation(const std::vector<PcPresentation>&, const std::string& name);

}  // namespace qtl::pc

#endif

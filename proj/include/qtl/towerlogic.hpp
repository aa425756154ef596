// Deduction layer: reflection-case classification, candidate catalog,
// Shafarevich admissibility, group identification and tower-length verdicts.
#ifndef QTL_TOWERLOGIC_HPP
#define QTL_TOWERLOGIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "qtl/pcgroup.hpp"

namespace qtl::tower {

enum class Signature { imaginary, real };  // M imaginary for d > 0, real for d < 0
std::string to_string(Signature);

struct TauMultiset {
    std::vector<pc::AbelianInvariants> parts;
    bool partial = false;  // only the polarized component is recorded
    std::string str() const;
};
TauMultiset parse_tau(const std::string&);  // "[(1^3)^2,(21)^4]" or "partial:(21^3)"

struct FieldObservation {
    long long d = 0;
    int r1 = 0, delta1 = 0, r2 = 0, delta2 = 0;
    std::optional<std::vector<int>> kappa;
    std::optional<TauMultiset> tau;
    std::optional<bool> abelian;  // remark-derived hint where the tables give one
    Signature signature() const { return d > 0 ? Signature::imaginary : Signature::real; }
};

// Quintic reflection identity specialized by signature:
//   d > 0 (both duals real):      r1 + r2 = delta1 + delta2
//   d < 0 (both duals imaginary): r1 + r2 - delta1 - delta2 = 2
bool reflection_consistency(const FieldObservation&);

enum class ExtensionStructure { all_f52, all_f53, mixed };
std::string to_string(ExtensionStructure);

struct CaseInfo {
    char letter = '?';
    ExtensionStructure structure = ExtensionStructure::mixed;
};
// Table-driven case letter (a..h for d>0, a..e for d<0); throws
// std::invalid_argument when the tuple matches no table row.
CaseInfo classify_case(const FieldObservation&);

struct CandidateRecord {
    std::string name;
    int order_exp = 0;   // |G| = 5^order_exp
    int coclass = 0;
    bool abelian = false;
    bool candidate = false;  // eligible as G_5^(2) in the identification rules
    pc::KappaClass kappa_class;
    TauMultiset tau;
    int sigma4 = -1, sigma2 = -1, combined = -1;  // -1 = not recorded
    int schur_sigma = -1, strong_sigma = -1;
    int d2 = -1;
    std::string tree_parent;
    std::string ell5_rule;   // abelian | schur | trivial-cover | blackburn | shafarevich
    bool is_marker = false;
};

using Catalog = std::vector<CandidateRecord>;
Catalog load_catalog(const std::string& path);
const CandidateRecord& find_record(const Catalog&, const std::string& name);

// Shafarevich bound: admissible iff d2 <= d1 + r = 2 + r with torsion-free
// unit rank r = 1 (imaginary) or 3 (real).
bool shafarevich_admissible(const CandidateRecord&, Signature);

// "1" (abelian), "2" (admissible with a two-stage rule), or
// ">=3 (conjectured 3)" (inadmissible).
std::string tower_length(const CandidateRecord&, Signature);

struct TowerVerdict {
    bool matched = false;
    std::string group;  // e.g. "5^5#11" or "5^7#891|894|897" or "desc(5^5#3)"
    std::string ell5;
    std::vector<std::string> reasoning;
};

TowerVerdict identify_group(const pc::KappaClass& kc, const std::optional<TauMultiset>& tau,
                            Signature sig, const Catalog& catalog,
                            std::optional<bool> abelian_hint = std::nullopt);

struct ClassNumberRelation {
    int multiplier = 0;            // h5(E_i) = multiplier * h5(L_i)^2
    bool impossible_in_scope = false;  // multiplier 25 never occurs here
};
// capitulation_order in {5,25}, unit_index in {1,5}.
ClassNumberRelation class_number_relation(int capitulation_order, int unit_index);

// Real-signature rule: h5(E_i) = 5 h5(L_i)^2 iff b_i = u_i (else the factor is 1).
int real_h5_multiplier(int b_i, int u_i);

}  // namespace qtl::tower

#endif

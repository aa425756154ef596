#include "qtl/towerlogic.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qtl::tower {

std::string to_string(Signature s) { return s == Signature::imaginary ? "imaginary" : "real"; }

std::string to_string(ExtensionStructure e) {
    switch (e) {
        case ExtensionStructure::all_f52: return "all six E_i Galois with group F_{5,2}";
        case ExtensionStructure::all_f53: return "all six E_i Galois with group F_{5,3}";
        case ExtensionStructure::mixed:
            return "E_1: F_{5,2}, E_2: F_{5,3}, E_3~E_4 and E_5~E_6 non-Galois conjugate pairs";
    }
    return "?";
}

std::string TauMultiset::str() const {
    if (partial) return "partial:" + (parts.empty() ? std::string("?") : parts[0].str());
    std::ostringstream os;
    os << "[";
    auto sorted = parts;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size();) {
        size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if (i) os << ",";
        os << sorted[i].str();
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    os << "]";
    return os.str();
}

TauMultiset parse_tau(const std::string& s) {
    TauMultiset t;
    if (s == "?" || s.empty()) throw std::invalid_argument("unknown tau string");
    if (s.rfind("partial:", 0) == 0) {
        t.partial = true;
        t.parts.push_back(pc::parse_invariants(s.substr(8)));
        return t;
    }
    // [(comp)^mult,comp,...]
    std::string body = s;
    if (body.front() == '[') body = body.substr(1, body.size() - 2);
    size_t i = 0;
    while (i < body.size()) {
        if (body[i] == ',') { ++i; continue; }
        size_t close;
        std::string comp;
        if (body[i] == '(') {
            close = body.find(')', i);
            if (close == std::string::npos) throw std::invalid_argument("bad tau string " + s);
            comp = body.substr(i, close - i + 1);
            i = close + 1;
        } else {
            close = body.find_first_of(",^", i);
            if (close == std::string::npos) close = body.size();
            comp = body.substr(i, close - i);
            i = close;
        }
        long long mult = 1;
        if (i < body.size() && body[i] == '^') {
            size_t j = ++i;
            while (j < body.size() && isdigit((unsigned char)body[j])) ++j;
            mult = std::stoll(body.substr(i, j - i));
            i = j;
        }
        auto inv = pc::parse_invariants(comp);
        for (long long k = 0; k < mult; ++k) t.parts.push_back(inv);
    }
    std::sort(t.parts.begin(), t.parts.end());
    return t;
}

bool reflection_consistency(const FieldObservation& o) {
    if (o.r1 < 0 || o.r2 < 0 || o.delta1 < 0 || o.delta1 > 1 || o.delta2 < 0 || o.delta2 > 1)
        throw std::invalid_argument("observation fields out of range");
    if (o.signature() == Signature::imaginary)
        return o.r1 + o.r2 == o.delta1 + o.delta2;
    return o.r1 + o.r2 - o.delta1 - o.delta2 == 2;
}

namespace {

struct CaseRow {
    char letter;
    int r1, d1, r2, d2;
    ExtensionStructure structure;
};

const CaseRow kImaginaryCases[] = {
    {'a', 1, 0, 0, 1, ExtensionStructure::all_f52},
    {'b', 0, 1, 1, 0, ExtensionStructure::all_f53},
    {'c', 1, 1, 1, 1, ExtensionStructure::mixed},
    {'d', 0, 0, 0, 0, ExtensionStructure::mixed},
    {'e', 1, 1, 0, 0, ExtensionStructure::mixed},
    {'f', 0, 0, 1, 1, ExtensionStructure::mixed},
    {'g', 2, 1, 0, 1, ExtensionStructure::all_f52},
    {'h', 0, 1, 2, 1, ExtensionStructure::all_f53},
};

const CaseRow kRealCases[] = {
    {'a', 2, 0, 0, 0, ExtensionStructure::all_f52},
    {'b', 0, 0, 2, 0, ExtensionStructure::all_f53},
    {'c', 1, 0, 1, 0, ExtensionStructure::mixed},
    {'d', 2, 1, 1, 0, ExtensionStructure::mixed},
    {'e', 1, 0, 2, 1, ExtensionStructure::mixed},
};

}  // namespace

CaseInfo classify_case(const FieldObservation& o) {
    if (!reflection_consistency(o))
        throw std::invalid_argument("observation fails the reflection identity");
    const bool imag = o.signature() == Signature::imaginary;
    const CaseRow* rows = imag ? kImaginaryCases : kRealCases;
    size_t n = imag ? std::size(kImaginaryCases) : std::size(kRealCases);
    for (size_t i = 0; i < n; ++i)
        if (rows[i].r1 == o.r1 && rows[i].d1 == o.delta1 && rows[i].r2 == o.r2 &&
            rows[i].d2 == o.delta2)
            return {rows[i].letter, rows[i].structure};
    throw std::invalid_argument("observation matches no case table row");
}

// ------------------------------------------------------------------ catalog

namespace {

pc::KappaClass parse_kappa_class(const std::string& s) {
    // "1+1+4/0/2" with "-" for an empty cycle list
    pc::KappaClass kc;
    std::istringstream is(s);
    std::string cyc, z, f;
    if (!std::getline(is, cyc, '/') || !std::getline(is, z, '/') || !std::getline(is, f, '/'))
        throw std::invalid_argument("bad kappa class " + s);
    if (cyc != "-") {
        std::istringstream cs(cyc);
        std::string tok;
        while (std::getline(cs, tok, '+')) kc.cycles.push_back(std::stoi(tok));
    }
    std::sort(kc.cycles.begin(), kc.cycles.end());
    kc.zeros = std::stoi(z);
    kc.fixed = std::stoi(f);
    return kc;
}

int parse_flag(const std::string& s) { return s == "-" ? -1 : std::stoi(s); }

}  // namespace

Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog file " + path);
    Catalog cat;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::vector<std::string> f;
        std::string tok;
        while (std::getline(is, tok, ';')) f.push_back(tok);
        if (f.size() != 16)
            throw std::invalid_argument("catalog line " + std::to_string(lineno) +
                                        ": expected 16 fields, got " + std::to_string(f.size()));
        CandidateRecord r;
        r.name = f[0];
        r.order_exp = std::stoi(f[1]);
        r.coclass = std::stoi(f[2]);
        r.abelian = f[3] == "1";
        r.candidate = f[4] == "1";
        r.kappa_class = parse_kappa_class(f[5]);
        if (f[6] != "?") r.tau = parse_tau(f[6]);
        r.sigma4 = parse_flag(f[7]);
        r.sigma2 = parse_flag(f[8]);
        r.combined = parse_flag(f[9]);
        r.schur_sigma = parse_flag(f[10]);
        r.strong_sigma = parse_flag(f[11]);
        r.d2 = parse_flag(f[12]);
        r.tree_parent = f[13];
        r.ell5_rule = f[14];
        r.is_marker = f[15] == "1";
        cat.push_back(std::move(r));
    }
    return cat;
}

const CandidateRecord& find_record(const Catalog& cat, const std::string& name) {
    for (const auto& r : cat)
        if (r.name == name) return r;
    throw std::invalid_argument("no catalog record named " + name);
}

bool shafarevich_admissible(const CandidateRecord& r, Signature sig) {
    if (r.d2 < 0) throw std::invalid_argument("record " + r.name + " has no relation rank");
    int unit_rank = sig == Signature::imaginary ? 1 : 3;
    return r.d2 <= 2 + unit_rank;
}

std::string tower_length(const CandidateRecord& r, Signature sig) {
    if (r.abelian) return "1";
    if (!shafarevich_admissible(r, sig)) return ">=3 (conjectured 3)";
    if (r.ell5_rule == "schur" || r.ell5_rule == "trivial-cover" || r.ell5_rule == "blackburn")
        return "2";
    return "unknown";
}

namespace {

bool tau_compatible(const TauMultiset& a, const TauMultiset& b) {
    if (!a.partial && !b.partial) {
        auto x = a.parts, y = b.parts;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    }
    // one side records only the polarized component: multiset containment
    const TauMultiset& part = a.partial ? a : b;
    const TauMultiset& full = a.partial ? b : a;
    if (full.partial) {
        auto x = part.parts, y = full.parts;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    }
    for (const auto& p : part.parts)
        if (std::count(full.parts.begin(), full.parts.end(), p) <
            std::count(part.parts.begin(), part.parts.end(), p))
            return false;
    return true;
}

}  // namespace

TowerVerdict identify_group(const pc::KappaClass& kc, const std::optional<TauMultiset>& tau,
                            Signature sig, const Catalog& catalog,
                            std::optional<bool> abelian_hint) {
    TowerVerdict v;
    std::vector<const CandidateRecord*> pool;
    for (const auto& r : catalog)
        if (r.candidate && r.kappa_class == kc) pool.push_back(&r);

    if (sig == Signature::imaginary) {
        auto before = pool.size();
        pool.erase(std::remove_if(pool.begin(), pool.end(),
                                  [](const CandidateRecord* r) {
                                      return r->coclass == 1 && !r->abelian;
                                  }),
                   pool.end());
        if (pool.size() != before)
            v.reasoning.push_back(
                "imaginary signature: coclass-1 nonabelian candidates excluded "
                "(odd 5-valuation of h5(E_i))");
    }
    if (tau) {
        pool.erase(std::remove_if(pool.begin(), pool.end(),
                                  [&](const CandidateRecord* r) {
                                      return !r->tau.parts.empty() && !tau_compatible(*tau, r->tau);
                                  }),
                   pool.end());
    }
    if (abelian_hint) {
        pool.erase(std::remove_if(pool.begin(), pool.end(),
                                  [&](const CandidateRecord* r) {
                                      return r->abelian != *abelian_hint;
                                  }),
                   pool.end());
    }
    if (pool.empty()) {
        v.matched = false;
        v.reasoning.push_back("no catalog record matches kappa class " + kc.str());
        return v;
    }
    if (pool.size() > 1) {
        // prefer non-marker exact matches; report unresolved ambiguity otherwise
        std::vector<const CandidateRecord*> exact;
        for (auto* r : pool)
            if (!r->is_marker) exact.push_back(r);
        if (exact.size() == 1)
            pool = exact;
        else {
            v.matched = false;
            std::string names;
            for (auto* r : pool) names += (names.empty() ? "" : " | ") + r->name;
            v.reasoning.push_back("ambiguous catalog match: " + names);
            return v;
        }
    }
    const CandidateRecord& r = *pool.front();
    v.matched = true;
    v.group = r.name;
    v.reasoning.push_back("kappa class " + kc.str() + " (" + kc.pattern_name() + ") matches " +
                          r.name);
    if (tau) v.reasoning.push_back("tau " + tau->str() + " consistent with catalog");
    if (r.abelian) {
        v.reasoning.push_back("abelian tower group: length 1");
    } else if (!shafarevich_admissible(r, sig)) {
        v.reasoning.push_back("relation rank d2=" + std::to_string(r.d2) + " exceeds 2+r for " +
                              to_string(sig) + " signature: tower length >= 3");
    } else if (r.ell5_rule == "schur") {
        v.reasoning.push_back("Schur sigma-group with balanced presentation d2=d1=2: length 2");
    } else if (r.ell5_rule == "trivial-cover") {
        v.reasoning.push_back("metabelian sigma-group with trivial cover: length 2");
    } else if (r.ell5_rule == "blackburn") {
        v.reasoning.push_back("sigma-group with at most two-generated derived subgroup: length 2");
    }
    v.ell5 = tower_length(r, sig);
    return v;
}

ClassNumberRelation class_number_relation(int capitulation_order, int unit_index) {
    if (capitulation_order != 5 && capitulation_order != 25)
        throw std::invalid_argument("capitulation order must be 5 or 25");
    if (unit_index != 1 && unit_index != 5)
        throw std::invalid_argument("unit index must be 1 or 5");
    ClassNumberRelation r;
    if (capitulation_order == 25)
        r.multiplier = unit_index == 1 ? 1 : 5;
    else
        r.multiplier = unit_index == 1 ? 5 : 25;
    r.impossible_in_scope = r.multiplier == 25;
    return r;
}

int real_h5_multiplier(int b_i, int u_i) {
    if ((b_i != 1 && b_i != 5) || (u_i != 1 && u_i != 5))
        throw std::invalid_argument("unit norm indices must be 1 or 5");
    return b_i == u_i ? 5 : 1;
}

}  // namespace qtl::tower

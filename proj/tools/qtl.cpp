// qtl: command-line surface for the 5-class tower toolkit.
#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "qtl/family.hpp"
#include "qtl/fixtures.hpp"
#include "qtl/galois.hpp"
#include "qtl/pcgroup.hpp"
#include "qtl/quadclass.hpp"
#include "qtl/quartic.hpp"
#include "qtl/towerlogic.hpp"
#include "qtl/util.hpp"

using json = nlohmann::json;
namespace pc = qtl::pc;
namespace qf = qtl::qf;
namespace tower = qtl::tower;
namespace fx = qtl::fixtures;

namespace {

std::string poly_str(const std::array<qtl::family::bigint, 6>& p) {
    std::ostringstream os;
    bool first = true;
    for (int k = 5; k >= 0; --k) {
        const auto& c = p[k];
        if (c == 0) continue;
        qtl::family::bigint a = c < 0 ? -c : c;
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (a != 1 || k == 0) os << a;
        if (k > 0) os << "X";
        if (k > 1) os << "^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string pattern_key(const std::vector<int>& pat) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < pat.size(); ++i) os << (i ? "," : "") << pat[i];
    os << "]";
    return os.str();
}

struct Paths {
    std::string data;
    std::string presentations() const { return data + "/groups5.pc"; }
    std::string catalog() const { return data + "/catalog.txt"; }
    std::string fixtures() const { return data + "/fixtures/tables.csv"; }
};

int cmd_table1(const Paths& paths, const std::string& only_group, bool as_json) {
    auto presentations = pc::load_presentations(paths.presentations());
    auto catalog = tower::load_catalog(paths.catalog());
    json out = json::array();
    int mismatches = 0, rows = 0;
    for (int i = 3; i <= 14; ++i) {
        std::string name = "5^5#" + std::to_string(i);
        if (!only_group.empty() && name != only_group) continue;
        ++rows;
        pc::PcGroup g(pc::find_presentation(presentations, name));
        auto ap = g.artin_pattern();
        auto flags = g.sigma_flags();
        const auto& rec = tower::find_record(catalog, name);
        bool ok = ap.kappa_class == rec.kappa_class && (int)flags.combined_flag == rec.combined &&
                  (int)flags.degree4 == rec.sigma4;
        mismatches += !ok;
        json row = {{"group", name},
                    {"pattern", ap.kappa_class.pattern_name()},
                    {"expected_pattern", rec.kappa_class.pattern_name()},
                    {"tau", ap.tau_str()},
                    {"sigma4", flags.degree4},
                    {"sigma2", flags.degree2},
                    {"f", flags.combined_flag},
                    {"expected_f", rec.combined == 1},
                    {"match", ok}};
        out.push_back(row);
        if (!as_json)
            std::cout << std::left << std::setw(8) << name << std::setw(22)
                      << ap.kappa_class.pattern_name() << " tau=" << std::setw(20) << ap.tau_str()
                      << " f=" << flags.combined_flag << " expected f=" << rec.combined
                      << (ok ? "  ok" : "  MISMATCH") << "\n";
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    if (rows == 0) {
        std::cerr << (only_group.empty() ? "no stem groups found"
                                         : "unknown stem group " + only_group)
                  << "\n";
        return 2;
    }
    if (only_group.empty() && rows != 12) {
        std::cerr << "expected 12 stem groups\n";
        return 1;
    }
    if (!as_json) std::cout << (rows - mismatches) << "/" << rows << " rows match\n";
    return mismatches == 0 ? 0 : 1;
}

int cmd_scan(const Paths& paths, long long lo, long long hi, const std::string& fixtures_path,
             const std::string& cache_path, bool as_json) {
    auto rows = fx::load_fixtures(fixtures_path.empty() ? paths.fixtures() : fixtures_path);
    qf::ClassGroupCache cache(cache_path);
    json out = json::array();
    long long n = 0, rank_matches = 0, case_matches = 0;
    for (const auto& r : rows) {
        if (!(lo < r.d && r.d < hi)) continue;
        ++n;
        try {
            auto pair = qf::dual_pair(qf::fundamental_discriminant(r.d));
            int r1 = qf::rank5_cached(pair.first, &cache);
            int r2 = qf::rank5_cached(pair.second, &cache);
            bool rank_ok = r1 == r.r1 && r2 == r.r2;
            rank_matches += rank_ok;
            tower::FieldObservation obs;
            obs.d = r.d;
            obs.r1 = r.r1;
            obs.delta1 = r.delta1;
            obs.r2 = r.r2;
            obs.delta2 = r.delta2;
            bool refl = tower::reflection_consistency(obs);
            char letter = '?';
            if (refl) letter = tower::classify_case(obs).letter;
            bool case_ok = refl && letter == r.case_letter;
            case_matches += case_ok;
            json row = {{"d", r.d},          {"r1", r1},
                        {"r2", r2},          {"r1_table", r.r1},
                        {"r2_table", r.r2},  {"rank_match", rank_ok},
                        {"reflection", refl}, {"case", std::string(1, letter)},
                        {"case_table", std::string(1, r.case_letter)}};
            out.push_back(row);
            if (!as_json && !(rank_ok && case_ok))
                std::cout << "d=" << r.d << " recomputed (" << r1 << "," << r2 << ") table ("
                          << r.r1 << "," << r.r2 << ") case " << letter << "/" << r.case_letter
                          << "\n";
        } catch (const std::exception& e) {
            out.push_back({{"d", r.d}, {"error", e.what()}});
            if (!as_json) std::cout << "d=" << r.d << " error: " << e.what() << "\n";
        }
    }
    if (as_json) {
        json summary = {{"rows", n},
                        {"rank_matches", rank_matches},
                        {"case_matches", case_matches},
                        {"results", out}};
        std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << "rows in range: " << n << ", rank matches: " << rank_matches
                  << ", case matches: " << case_matches << "\n";
    }
    return (rank_matches == n && case_matches == n) ? 0 : 1;
}

int cmd_identify(const Paths& paths, const std::string& fixtures_path, bool as_json) {
    auto rows = fx::load_fixtures(fixtures_path.empty() ? paths.fixtures() : fixtures_path);
    auto catalog = tower::load_catalog(paths.catalog());
    json out = json::array();
    long long n = 0, matches = 0;
    for (const auto& r : rows) {
        ++n;
        try {
            auto obs = fx::to_observation(r, catalog);
            auto kc = pc::kappa_class_of(*obs.kappa);
            auto verdict =
                tower::identify_group(kc, obs.tau, obs.signature(), catalog, obs.abelian);
            char letter = tower::classify_case(obs).letter;
            bool ok = verdict.matched && verdict.group == r.group_string &&
                      fx::ell5_matches(r.ell5, verdict.ell5) && letter == r.case_letter;
            matches += ok;
            json row = {{"d", r.d},
                        {"case", std::string(1, letter)},
                        {"group", verdict.matched ? verdict.group : "(no match)"},
                        {"group_table", r.group_string},
                        {"ell5", verdict.ell5},
                        {"ell5_table", r.ell5},
                        {"rules", verdict.reasoning},
                        {"match", ok}};
            out.push_back(row);
            if (!as_json && !ok)
                std::cout << "d=" << r.d << ": identified "
                          << (verdict.matched ? verdict.group : "(no match)")
                          << " ell5=" << verdict.ell5 << " but table says " << r.group_string
                          << " ell5=" << r.ell5 << "\n";
        } catch (const std::exception& e) {
            out.push_back({{"d", r.d}, {"error", e.what()}});
            if (!as_json) std::cout << "d=" << r.d << " error: " << e.what() << "\n";
        }
    }
    if (as_json) {
        json summary = {{"rows", n}, {"matches", matches}, {"results", out}};
        std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << matches << "/" << n << " rows identified as in the tables\n";
    }
    return matches == n ? 0 : 1;
}

int cmd_family(long long count, bool as_json) {
    json out = json::array();
    for (long long k = 0; k < count; ++k) {
        auto m = qtl::family::family_member(k);
        if (as_json) {
            out.push_back({{"k", m.k},
                           {"n", m.n},
                           {"alpha", m.alpha.str()},
                           {"beta", m.beta.str()},
                           {"d", m.d.str()},
                           {"trace1", m.trace1.str()},
                           {"trace2", m.trace2.str()},
                           {"poly1", poly_str(m.poly1)},
                           {"poly2", poly_str(m.poly2)}});
        } else {
            std::cout << m.k << ";" << m.n << ";" << m.alpha << ";" << m.beta << ";" << m.d << ";"
                      << m.trace1 << ";" << m.trace2 << ";" << poly_str(m.poly1) << ";"
                      << poly_str(m.poly2) << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_frobenius(const std::string& coeffs, long long primes, bool as_json) {
    auto parts = qtl::util::split(coeffs, ',');
    std::vector<qtl::galois::bigint> cs;  // input order c5,...,c0
    for (auto& p : parts) cs.emplace_back(qtl::util::trim(p));
    std::reverse(cs.begin(), cs.end());
    auto f = qtl::galois::make_poly(cs);
    auto v = qtl::galois::frobenius_classify(f, primes);
    json pats = json::object();
    for (const auto& [pat, cnt] : v.patterns_seen) pats[pattern_key(pat)] = cnt;
    json out = {{"status", qtl::galois::to_string(v.status)},
                {"primes_used", v.primes_used},
                {"patterns", pats}};
    if (v.witness_prime) out["witness_prime"] = *v.witness_prime;
    std::cout << out.dump(as_json ? 2 : -1) << "\n";
    return 0;
}

int cmd_classify(int r1, int d1, int r2, int d2, const std::string& sign, bool as_json) {
    tower::FieldObservation obs;
    obs.d = sign == "pos" ? 1 : -1;
    obs.r1 = r1;
    obs.delta1 = d1;
    obs.r2 = r2;
    obs.delta2 = d2;
    bool refl = tower::reflection_consistency(obs);
    json out = {{"sign", sign}, {"reflection_consistent", refl}};
    int rc = 0;
    if (refl) {
        try {
            auto info = tower::classify_case(obs);
            out["case"] = std::string(1, info.letter);
            out["structure"] = tower::to_string(info.structure);
        } catch (const std::exception& e) {
            out["error"] = e.what();
            rc = 1;
        }
    } else {
        out["error"] = "observation fails the reflection identity";
        rc = 1;
    }
    std::cout << out.dump(as_json ? 2 : -1) << "\n";
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"5-class towers of cyclic quartic fields: reproduction toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    std::string data_override;
    bool as_json = false;
    app.add_option("--data", data_override, "data directory (default: built-in, or $QTL_DATA)");
    app.add_flag("--json", as_json, "machine-readable output");

    auto* t1 = app.add_subcommand("table1", "recompute the twelve stem-group Artin patterns");
    std::string only_group;
    t1->add_option("--group", only_group, "single group id, e.g. 5^5#11");

    auto* sc = app.add_subcommand("scan", "recompute 5-class ranks over a fixture range");
    long long lo = 0, hi = 10000;
    std::string fixtures_path, cache_path;
    sc->add_option("--min", lo, "lower bound (exclusive)")->required();
    sc->add_option("--max", hi, "upper bound (exclusive)")->required();
    sc->add_option("--fixtures", fixtures_path, "fixture csv path");
    sc->add_option("--cache", cache_path, "class-group cache path (or $QTL_CACHE)");

    auto* id = app.add_subcommand("identify", "identify tower groups for all fixture rows");
    std::string fixtures_path2;
    id->add_option("--fixtures", fixtures_path2, "fixture csv path");

    auto* fam = app.add_subcommand("family", "emit members of the Pellian family");
    long long count = 1;
    fam->add_option("--count", count, "number of members")->required();

    auto* fr = app.add_subcommand("frobenius", "classify a quintic by degree patterns mod p");
    std::string coeffs;
    long long primes = 200;
    fr->add_option("--poly", coeffs, "coefficients c5,c4,c3,c2,c1,c0")->required();
    fr->add_option("--primes", primes, "number of good primes to sample");

    auto* cl = app.add_subcommand("classify", "reflection case from (r1,delta1,r2,delta2)");
    int r1 = 0, d1 = 0, r2 = 0, d2 = 0;
    std::string sign = "pos";
    cl->add_option("--r1", r1)->required();
    cl->add_option("--d1", d1)->required();
    cl->add_option("--r2", r2)->required();
    cl->add_option("--d2", d2)->required();
    cl->add_option("--sign", sign, "pos (d > 0) or neg (d < 0)")->required();

    CLI11_PARSE(app, argc, argv);

    Paths paths;
    paths.data = qtl::util::data_dir(data_override);
    if (cache_path.empty())
        if (const char* env = std::getenv("QTL_CACHE"); env && *env) cache_path = env;

    try {
        if (t1->parsed()) return cmd_table1(paths, only_group, as_json);
        if (sc->parsed()) return cmd_scan(paths, lo, hi, fixtures_path, cache_path, as_json);
        if (id->parsed()) return cmd_identify(paths, fixtures_path2, as_json);
        if (fam->parsed()) return cmd_family(count, as_json);
        if (fr->parsed()) return cmd_frobenius(coeffs, primes, as_json);
        if (cl->parsed()) return cmd_classify(r1, d1, r2, d2, sign, as_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

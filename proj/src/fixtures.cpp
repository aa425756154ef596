#include "qtl/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qtl/util.hpp"

namespace qtl::fixtures {

std::vector<FixtureRow> parse_fixtures(const std::string& text) {
    std::vector<FixtureRow> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = util::trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto f = util::split(line, ';');
        if (f.size() != 12)
            throw std::invalid_argument("fixture line " + std::to_string(lineno) +
                                        ": expected 12 fields");
        FixtureRow r;
        r.index = std::stoi(f[0]);
        r.d = std::stoll(f[1]);
        r.factor_string = f[2];
        r.kappa_string = f[3];
        r.remark = f[4];
        r.group_string = f[5];
        r.ell5 = f[6];
        r.r1 = std::stoi(f[7]);
        r.delta1 = std::stoi(f[8]);
        r.r2 = std::stoi(f[9]);
        r.delta2 = std::stoi(f[10]);
        if (f[11].size() != 1) throw std::invalid_argument("bad case letter " + f[11]);
        r.case_letter = f[11][0];
        if (r.d == 0 || r.d % 5 == 0)
            throw std::invalid_argument("fixture discriminant must be nonzero and prime to 5");
        if (r.case_letter < 'a' || r.case_letter > 'h')
            throw std::invalid_argument("case letter out of range");
        if (r.ell5 != "1" && r.ell5 != "2" && r.ell5 != ">=3")
            throw std::invalid_argument("bad ell5 value " + r.ell5);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string serialize_fixtures(const std::vector<FixtureRow>& rows) {
    std::ostringstream os;
    for (const auto& r : rows)
        os << r.index << ";" << r.d << ";" << r.factor_string << ";" << r.kappa_string << ";"
           << r.remark << ";" << r.group_string << ";" << r.ell5 << ";" << r.r1 << ";" << r.delta1
           << ";" << r.r2 << ";" << r.delta2 << ";" << r.case_letter << "\n";
    return os.str();
}

std::vector<FixtureRow> load_fixtures(const std::string& path, bool verify_checksum) {
    std::string text = util::read_file(path);
    if (verify_checksum) {
        std::ifstream side(path + ".fnv");
        std::string expected;
        if (side >> expected) {
            std::string actual = util::fnv1a64_hex(text);
            if (actual != expected)
                throw std::runtime_error("fixture checksum mismatch for " + path + ": " + actual +
                                         " != " + expected);
        }
    }
    return parse_fixtures(text);
}

tower::FieldObservation to_observation(const FixtureRow& r, const tower::Catalog& catalog) {
    tower::FieldObservation o;
    o.d = r.d;
    o.r1 = r.r1;
    o.delta1 = r.delta1;
    o.r2 = r.r2;
    o.delta2 = r.delta2;
    std::vector<int> kappa;
    std::string err = pc::parse_kappa_string(r.kappa_string, kappa);
    if (!err.empty()) throw std::invalid_argument(err + " in " + r.kappa_string);
    o.kappa = kappa;
    if (r.remark == "abelian") {
        o.abelian = true;
        o.tau = tower::parse_tau("[(1)^6]");
    } else if (r.remark == "a.1") {
        o.abelian = false;
        o.tau = tower::parse_tau("[(1^2)^6]");
    } else if (r.remark == "a.1 up") {
        o.abelian = false;
        o.tau = tower::parse_tau("[(1^3),(1^2)^5]");
    } else if (r.remark == "a.2, fixed point") {
        o.abelian = false;
        o.tau = tower::parse_tau("[(1^3),(1^2)^5]");
    } else if (r.remark == "constant") {
        // polarized target type comes from the assigned group record
        o.abelian = false;
        const auto& rec = tower::find_record(catalog, r.group_string);
        o.tau = rec.tau;
    } else if (r.remark == "tot., non-ab." || r.remark == "coclass 4") {
        o.abelian = false;  // tau unknown beyond the catalog
    }
    return o;
}

bool ell5_matches(const std::string& fixture_ell5, const std::string& verdict_ell5) {
    if (fixture_ell5 == ">=3") return verdict_ell5.rfind(">=3", 0) == 0;
    return fixture_ell5 == verdict_ell5;
}

}  // namespace qtl::fixtures

// Fixture rows transcribed from the numerical tables, plus the glue that
// turns a row into a towerlogic observation.
#ifndef QTL_FIXTURES_HPP
#define QTL_FIXTURES_HPP

#include <string>
#include <vector>

#include "qtl/towerlogic.hpp"

namespace qtl::fixtures {

struct FixtureRow {
    int index = 0;           // table row number (restarts for the negative range)
    long long d = 0;
    std::string factor_string;
    std::string kappa_string;
    std::string remark;
    std::string group_string;
    std::string ell5;        // "1", "2" or ">=3"
    int r1 = 0, delta1 = 0, r2 = 0, delta2 = 0;
    char case_letter = '?';
};

std::vector<FixtureRow> parse_fixtures(const std::string& text);
std::string serialize_fixtures(const std::vector<FixtureRow>&);

// Loads rows and verifies the sidecar checksum <path>.fnv when present.
std::vector<FixtureRow> load_fixtures(const std::string& path, bool verify_checksum = true);

// Observation with kappa parsed and tau/abelian hints derived from the remark
// and group columns ("tau derived from group where needed").
tower::FieldObservation to_observation(const FixtureRow&, const tower::Catalog&);

// The ell5 string identify is expected to reproduce ( ">=3" matches the
// verdict ">=3 (conjectured 3)").
bool ell5_matches(const std::string& fixture_ell5, const std::string& verdict_ell5);

}  // namespace qtl::fixtures

#endif

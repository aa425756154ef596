// Python bindings exposing the main operations of the toolkit.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qtl/family.hpp"
#include "qtl/fixtures.hpp"
#include "qtl/galois.hpp"
#include "qtl/pcgroup.hpp"
#include "qtl/quadclass.hpp"
#include "qtl/quartic.hpp"
#include "qtl/towerlogic.hpp"
#include "qtl/util.hpp"

namespace py = pybind11;
using namespace qtl;

namespace {

py::int_ big_to_py(const boost::multiprecision::cpp_int& x) {
    // arbitrary-precision transfer through the decimal string
    PyObject* obj = PyLong_FromString(x.str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

const std::vector<pc::PcPresentation>& presentations() {
    static auto p = pc::load_presentations(util::data_dir() + "/groups5.pc");
    return p;
}

const tower::Catalog& catalog() {
    static auto c = tower::load_catalog(util::data_dir() + "/catalog.txt");
    return c;
}

pc::PcGroup make_group(const std::string& name) {
    return pc::PcGroup(pc::find_presentation(presentations(), name));
}

py::dict artin_pattern_py(const std::string& name) {
    auto ap = make_group(name).artin_pattern();
    py::dict d;
    d["kappa"] = ap.kappa;
    d["pattern"] = ap.kappa_class.pattern_name();
    d["kappa_class"] = ap.kappa_class.str();
    d["tau"] = ap.tau_str();
    return d;
}

py::dict sigma_flags_py(const std::string& name) {
    auto f = make_group(name).sigma_flags();
    py::dict d;
    d["degree4"] = f.degree4;
    d["degree2"] = f.degree2;
    d["f"] = f.combined_flag;
    return d;
}

py::dict class_group_py(long long m) {
    auto G = qf::class_group(qf::fundamental_discriminant(m));
    py::dict d;
    d["discriminant"] = G.discriminant;
    d["h"] = G.h;
    d["divisors"] = G.invariants_list;
    d["rank5"] = qf::rank_p(G, 5);
    return d;
}

py::tuple pell4_py(long long n) {
    auto [x, y] = qf::pell4(n);
    return py::make_tuple(big_to_py(x), big_to_py(y));
}

py::dict quartic_py(long long m) {
    auto M = quartic::build_quartic(m);
    py::dict d;
    d["d"] = M.d;
    d["conductor"] = M.conductor;
    d["field_disc"] = big_to_py(M.field_disc);
    d["imaginary"] = M.imaginary;
    d["unit_rank"] = M.unit_rank;
    return d;
}

py::dict family_member_py(long long k) {
    auto m = family::family_member(k);
    py::dict d;
    d["k"] = m.k;
    d["n"] = m.n;
    d["alpha"] = big_to_py(m.alpha);
    d["beta"] = big_to_py(m.beta);
    d["d"] = big_to_py(m.d);
    d["trace1"] = big_to_py(m.trace1);
    d["trace2"] = big_to_py(m.trace2);
    return d;
}

py::dict frobenius_py(const std::vector<std::string>& coeffs_desc, long long primes) {
    std::vector<galois::bigint> cs;
    for (auto it = coeffs_desc.rbegin(); it != coeffs_desc.rend(); ++it) cs.emplace_back(*it);
    auto v = galois::frobenius_classify(galois::make_poly(cs), primes);
    py::dict d;
    d["status"] = galois::to_string(v.status);
    d["primes_used"] = v.primes_used;
    if (v.witness_prime) d["witness_prime"] = *v.witness_prime;
    py::dict pats;
    for (const auto& [pat, cnt] : v.patterns_seen) {
        std::ostringstream os;
        for (size_t i = 0; i < pat.size(); ++i) os << (i ? "," : "") << pat[i];
        pats[py::str(os.str())] = cnt;
    }
    d["patterns"] = pats;
    return d;
}

py::dict classify_py(int r1, int d1, int r2, int d2, const std::string& sign) {
    tower::FieldObservation o;
    o.d = sign == "pos" ? 1 : -1;
    o.r1 = r1;
    o.delta1 = d1;
    o.r2 = r2;
    o.delta2 = d2;
    py::dict d;
    d["reflection_consistent"] = tower::reflection_consistency(o);
    if (tower::reflection_consistency(o)) {
        auto info = tower::classify_case(o);
        d["case"] = std::string(1, info.letter);
        d["structure"] = tower::to_string(info.structure);
    }
    return d;
}

py::dict identify_py(const std::string& kappa, const std::optional<std::string>& tau,
                     const std::string& sign, std::optional<bool> abelian) {
    std::vector<int> kv;
    auto err = pc::parse_kappa_string(kappa, kv);
    if (!err.empty()) throw std::invalid_argument(err);
    std::optional<tower::TauMultiset> t;
    if (tau) t = tower::parse_tau(*tau);
    auto v = tower::identify_group(pc::kappa_class_of(kv), t,
                                   sign == "pos" ? tower::Signature::imaginary
                                                 : tower::Signature::real,
                                   catalog(), abelian);
    py::dict d;
    d["matched"] = v.matched;
    if (v.matched) {
        d["group"] = v.group;
        d["ell5"] = v.ell5;
    }
    d["rules"] = v.reasoning;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qtl, m) {
    m.doc() = "5-class towers of cyclic quartic fields: computational toolkit";
    m.def("group_names", [] {
        std::vector<std::string> names;
        for (const auto& p : presentations()) names.push_back(p.name);
        return names;
    });
    m.def("artin_pattern", &artin_pattern_py, py::arg("name"));
    m.def("sigma_flags", &sigma_flags_py, py::arg("name"));
    m.def("consistency_check", [](const std::string& name) {
        return make_group(name).consistency_check();
    });
    m.def("class_group", &class_group_py, py::arg("m"));
    m.def("rank5", [](long long m) {
        return qf::rank_p(qf::class_group(qf::fundamental_discriminant(m)), 5);
    });
    m.def("pell4", &pell4_py, py::arg("n"));
    m.def("build_quartic", &quartic_py, py::arg("m"));
    m.def("family_member", &family_member_py, py::arg("k"));
    m.def("frobenius_classify", &frobenius_py, py::arg("coeffs"), py::arg("primes") = 200);
    m.def("classify_case", &classify_py, py::arg("r1"), py::arg("d1"), py::arg("r2"), py::arg("d2"),
          py::arg("sign"));
    m.def("identify", &identify_py, py::arg("kappa"), py::arg("tau") = std::nullopt,
          py::arg("sign") = "pos", py::arg("abelian") = std::nullopt);
    m.def("data_dir", [] { return util::data_dir(); });
}

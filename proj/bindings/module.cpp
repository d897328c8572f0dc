#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rhmap/dsl.hpp"
#include "rhmap/error.hpp"
#include "rhmap/report.hpp"
#include "rhmap/verify.hpp"

namespace py = pybind11;
using rhmap::report::json;

namespace {

std::string model_report_json(const std::string& alg_text, const std::string& sul_text,
                              bool check_transfer, int max_arity) {
    auto alg = rhmap::dsl::parse_algebra(alg_text);
    auto sul = rhmap::dsl::parse_sullivan(sul_text);
    auto m = rhmap::mapping_space_model(alg.algebra, sul.algebra);
    return rhmap::report::dump(rhmap::report::build_model_report(m, check_transfer, max_arity));
}

std::string mc_report_json(const std::string& alg_text, const std::string& sul_text) {
    auto alg = rhmap::dsl::parse_algebra(alg_text);
    auto sul = rhmap::dsl::parse_sullivan(sul_text);
    auto m = rhmap::mapping_space_model(alg.algebra, sul.algebra);
    json out;
    out["mc"] = rhmap::report::mc_section(m, rhmap::solve_mc(m));
    return rhmap::report::dump(out);
}

std::string component_report_json(const std::string& alg_text, const std::string& sul_text,
                                  const std::string& mc_text, int max_arity, bool grouplike) {
    auto alg = rhmap::dsl::parse_algebra(alg_text);
    auto sul = rhmap::dsl::parse_sullivan(sul_text);
    auto m = rhmap::mapping_space_model(alg.algebra, sul.algebra);
    auto mc = rhmap::make_mc(m, rhmap::dsl::parse_mc_element(mc_text, m));
    if (!mc.certified) throw rhmap::InputError("element is not Maurer-Cartan");
    auto c = rhmap::twist(m, mc);
    auto minimal = rhmap::component_minimal_model(c, max_arity);
    json comp = rhmap::report::component_section(m, c, minimal, rhmap::component_homotopy_ranks(c));
    if (grouplike)
        comp["grouplike"] = rhmap::report::grouplike_section(rhmap::is_grouplike(c, max_arity));
    json out;
    out["components"] = json::array({comp});
    out["checks"] = json::array({rhmap::report::euler_check(c)});
    return rhmap::report::dump(out);
}

std::string check_file_json(const std::string& text, const std::string& kind) {
    json out;
    if (kind == "sullivan") {
        auto parsed = rhmap::dsl::parse_sullivan(text);
        out["checks"] = json::array({rhmap::report::check_entry("sullivan_valid", true, "")});
        out["warnings"] = parsed.warnings;
    } else {
        auto parsed = rhmap::dsl::parse_algebra(text);
        out["checks"] = json::array({rhmap::report::check_entry("algebra_valid", true, "")});
        out["warnings"] = parsed.warnings;
    }
    return rhmap::report::dump(out);
}

std::vector<std::pair<std::size_t, std::string>> rref_strings(
    const std::vector<std::vector<std::string>>& rows) {
    rhmap::RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = rhmap::rational_from_string(rows[i][j]);
    auto r = rhmap::rref(m);
    std::vector<std::pair<std::size_t, std::string>> out;
    for (std::size_t i = 0; i < r.reduced.rows(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < r.reduced.cols(); ++j)
            row += (j ? " " : "") + rhmap::to_string(r.reduced.at(i, j));
        out.emplace_back(i < r.pivot_cols.size() ? r.pivot_cols[i] : static_cast<std::size_t>(-1), row);
    }
    out.emplace_back(r.rank, "rank");
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "rational homotopy models of mapping spaces";

    py::register_exception<rhmap::InputError>(m, "InputError");
    py::register_exception<rhmap::InvariantError>(m, "InvariantError");

    m.def("model_report_json", &model_report_json, py::arg("algebra_text"), py::arg("sullivan_text"),
          py::arg("check_transfer") = false, py::arg("max_arity") = 4,
          "Build the mapping space model report (JSON string).");
    m.def("mc_report_json", &mc_report_json, py::arg("algebra_text"), py::arg("sullivan_text"),
          "Maurer-Cartan system and solved families (JSON string).");
    m.def("component_report_json", &component_report_json, py::arg("algebra_text"),
          py::arg("sullivan_text"), py::arg("mc"), py::arg("max_arity") = 4,
          py::arg("grouplike") = false, "Component ranks and Sullivan model (JSON string).");
    m.def("check_file_json", &check_file_json, py::arg("text"), py::arg("kind"),
          "Invariant audit of one .alg or .sul source (JSON string).");

    m.def("koszul_sign", [](const std::vector<int>& perm, const std::vector<int>& degrees) {
        return rhmap::koszul_sign(perm, degrees);
    });
    m.def("shuffles", &rhmap::shuffles);
    m.def("tree_census", [](int leaves, int max_arity) {
        std::vector<std::pair<std::string, long>> out;
        for (auto& [tree, aut] : rhmap::enumerate_trees(leaves, max_arity))
            out.emplace_back(tree.render(), static_cast<long>(aut));
        return out;
    });
    m.def("rref", &rref_strings, "Row reduce a matrix of rational strings.");

    m.attr("__version__") = "0.1.0";
}

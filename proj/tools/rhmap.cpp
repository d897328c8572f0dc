#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rhmap/dsl.hpp"
#include "rhmap/error.hpp"
#include "rhmap/report.hpp"
#include "rhmap/verify.hpp"

namespace {

using rhmap::report::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rhmap::InputError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const json& j, const std::string& out_path) {
    std::string text = rhmap::report::dump(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw rhmap::InputError("cannot write file: " + out_path);
        out << text;
    }
}

json load_report(const std::string& path) {
    try {
        return json::parse(read_file(path), nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw rhmap::InputError("malformed report " + path + ": " + e.what());
    }
}

std::map<int, int> parse_rank_list(const std::string& text) {
    // "1:2,3:2,5:3,7:1"
    std::map<int, int> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw rhmap::InputError("bad rank list entry: " + item);
        out[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
    }
    return out;
}

void warn(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational homotopy models of mapping spaces"};
    app.require_subcommand(1);

    std::string source, target, out_path, model_path, mc_text, file_path, expect_ranks, expect_source;
    bool check_transfer = false;
    int max_arity = 4;

    auto* cmd_model = app.add_subcommand("model", "build the mapping space model from .alg/.sul files");
    cmd_model->add_option("--source", source, ".alg file for the source cohomology")->required();
    cmd_model->add_option("--target", target, ".sul file for the target Sullivan model")->required();
    cmd_model->add_flag("--check-transfer", check_transfer,
                        "verify the tree-sum transfer against the closed formula");
    cmd_model->add_option("--max-arity", max_arity, "arity ceiling for checks (default 4)");
    cmd_model->add_option("--out", out_path, "write the report here instead of stdout");

    auto* cmd_mc = app.add_subcommand("mc", "emit the Maurer-Cartan system and solved families");
    cmd_mc->add_option("--model", model_path, "report produced by 'model'")->required();
    cmd_mc->add_option("--out", out_path, "write the report here instead of stdout");

    auto* cmd_component = app.add_subcommand("component", "twist, truncate and model one component");
    cmd_component->add_option("--model", model_path, "report produced by 'model'")->required();
    cmd_component->add_option("--mc", mc_text, "Maurer-Cartan element, e.g. \"1*e5@y\" or \"0\"")->required();
    cmd_component->add_option("--max-arity", max_arity, "transfer arity ceiling (default 4)");
    cmd_component->add_option("--expect-ranks", expect_ranks,
                              "comparison ranks as \"1:2,3:2,...\"; mismatches are recorded");
    cmd_component->add_option("--expect-source", expect_source, "where the expected ranks come from");
    cmd_component->add_option("--out", out_path, "write the report here instead of stdout");

    auto* cmd_hspace = app.add_subcommand("hspace", "group-likeness report for one component");
    cmd_hspace->add_option("--model", model_path, "report produced by 'model'")->required();
    cmd_hspace->add_option("--mc", mc_text, "Maurer-Cartan element")->required();
    cmd_hspace->add_option("--max-arity", max_arity, "transferred bracket arity ceiling (default 4)");
    cmd_hspace->add_option("--out", out_path, "write the report here instead of stdout");

    auto* cmd_check = app.add_subcommand("check", "invariant audit of one .alg or .sul file");
    cmd_check->add_option("--file", file_path, "file to audit")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_model->parsed()) {
            auto alg = rhmap::dsl::parse_algebra(read_file(source));
            warn(alg.warnings);
            auto sul = rhmap::dsl::parse_sullivan(read_file(target));
            warn(sul.warnings);
            auto m = rhmap::mapping_space_model(alg.algebra, sul.algebra);
            emit(rhmap::report::build_model_report(m, check_transfer, max_arity), out_path);
        } else if (cmd_mc->parsed()) {
            json base = load_report(model_path);
            auto m = rhmap::report::model_from_report(base);
            auto sys = rhmap::solve_mc(m);
            json out;
            out["model"] = base["model"];
            out["mc"] = rhmap::report::mc_section(m, sys);
            out["components"] = json::array();
            out["checks"] = json::array();
            emit(out, out_path);
        } else if (cmd_component->parsed() || cmd_hspace->parsed()) {
            json base = load_report(model_path);
            auto m = rhmap::report::model_from_report(base);
            auto z = rhmap::dsl::parse_mc_element(mc_text, m);
            auto mc = rhmap::make_mc(m, std::move(z));
            if (!mc.certified)
                throw rhmap::InputError("element is not Maurer-Cartan: residual " +
                                        mc.residual.describe(m.space()));
            auto component = rhmap::twist(m, mc);
            auto ranks = rhmap::component_homotopy_ranks(component);

            json out;
            out["model"] = base["model"];
            out["mc"] = json::object();
            json checks = json::array();
            checks.push_back(rhmap::report::check_entry("mc_certified", true,
                                                        "residual vanishes exactly"));
            checks.push_back(rhmap::report::euler_check(component));

            if (cmd_component->parsed()) {
                auto minimal = rhmap::component_minimal_model(component, max_arity);
                json comp = rhmap::report::component_section(m, component, minimal, ranks);
                if (!expect_ranks.empty())
                    checks.push_back(rhmap::report::expected_ranks_check(
                        ranks, parse_rank_list(expect_ranks),
                        expect_source.empty() ? "caller-supplied expectation" : expect_source));
                out["components"] = json::array({comp});
            } else {
                auto minimal = rhmap::component_minimal_model(component, max_arity);
                json comp = rhmap::report::component_section(m, component, minimal, ranks);
                comp["grouplike"] = rhmap::report::grouplike_section(
                    rhmap::is_grouplike(component, max_arity));
                out["components"] = json::array({comp});
            }
            out["checks"] = checks;
            emit(out, out_path);
        } else if (cmd_check->parsed()) {
            std::string text = read_file(file_path);
            json out;
            if (file_path.size() >= 4 && file_path.substr(file_path.size() - 4) == ".sul") {
                auto sul = rhmap::dsl::parse_sullivan(text);
                warn(sul.warnings);
                out["checks"] = json::array(
                    {rhmap::report::check_entry("sullivan_valid", true,
                                                "degrees positive, d homogeneous of degree +1, d^2 = 0")});
            } else {
                auto alg = rhmap::dsl::parse_algebra(text);
                warn(alg.warnings);
                out["checks"] = json::array(
                    {rhmap::report::check_entry("algebra_valid", true,
                                                "commutativity, associativity, unit and degree laws hold")});
            }
            emit(out, out_path);
        }
    } catch (const rhmap::ParseError& e) {
        emit(json{{"error", {{"kind", "parse"}, {"message", e.what()}, {"line", e.line()}, {"col", e.col()}}}},
             "");
        return 1;
    } catch (const rhmap::InputError& e) {
        emit(json{{"error", {{"kind", "input"}, {"message", e.what()}}}}, "");
        return 1;
    } catch (const rhmap::InvariantError& e) {
        emit(json{{"error", {{"kind", "invariant"}, {"message", e.what()}}}}, "");
        return 2;
    } catch (const std::exception& e) {
        emit(json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}, "");
        return 3;
    }
    return 0;
}

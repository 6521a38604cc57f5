#include "gmmp/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInternal = 4;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local formal moduli of graded modules via matric Massey products"};
    app.require_subcommand(1);

    std::string file;
    std::string json_out;
    std::string fixture;
    std::string order_name;
    std::vector<std::size_t> restrict_idx;
    unsigned order = 0;
    bool order_set = false;
    std::size_t length = 3;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", file, "problem file")->required();
        sub->add_option("--json", json_out, "write the JSON report to this path");
        sub->add_option("--monomial-order", order_name, "degrevlex | lex");
        sub->add_option("--length", length, "resolution truncation length (default 3)");
        sub->add_option("--fixture-basis", fixture, "fixture file with pinned basis/choices");
        sub->add_option("--restrict", restrict_idx, "tangent directions to keep (1-based)")
            ->delimiter(',');
        sub->add_option("--order", order, "target order for hull/versal")
            ->each([&](const std::string&) { order_set = true; });
    };

    for (const char* name : {"resolve", "ext", "cup-table", "hull", "versal"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    gmmp::RunOptions opt;
    opt.command = app.get_subcommands().front()->get_name();
    opt.resolution_length = length;
    if (order_set) opt.order = order;
    if (!restrict_idx.empty()) opt.restrict_override = restrict_idx;
    if (!fixture.empty()) opt.fixture_override = fixture;

    try {
        if (!order_name.empty()) opt.monomial_order = gmmp::monomial_order_from_string(order_name);
        gmmp::ProblemFile pf = gmmp::ProblemFile::load(file);
        gmmp::RunResult result = gmmp::run_pipeline(pf, opt);
        std::cout << result.text;
        if (!json_out.empty()) {
            std::ofstream out(json_out);
            if (!out.good()) {
                std::cerr << "error: cannot write " << json_out << "\n";
                return kExitValidation;
            }
            out << result.report.dump(2) << "\n";
        }
        return 0;
    } catch (const gmmp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const gmmp::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const gmmp::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

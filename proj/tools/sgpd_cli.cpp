// Command-line workbench over .sgpd files.
//
//   sgpd <command> <file> [names...] [--json] [--max-violations N]
//                                    [--cap-bisections N] [--cap-graphings N]
//
// Exit codes: 0 = all checks pass, 1 = violation found, 2 = input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include <sgpd/cli.hpp>

namespace {

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"validate", "check every block of the file"},
    {"analyze", "predicates, idempotents and order data per semigroupoid"},
    {"graphings", "enumerate compatible graph structures"},
    {"wagner-preston", "the representation by partial bijections"},
    {"semidirect", "build a semidirect product from an action"},
    {"quotient", "quotient by a named congruence"},
    {"germ", "initial groupoid, or germ quotient of a named order"},
    {"underlying", "restricted product groupoid"},
    {"spectrum", "ultrafilters of the idempotent semilattice"},
    {"kb", "bisections with the inclusion order"},
    {"p", "reconstruction from bisections (or from a named order)"},
    {"roundtrip", "verify both duality isomorphisms"},
    {"iso", "backtracking isomorphism test between two tables"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite inverse semigroupoid workbench"};
    app.require_subcommand(1);

    sgpd::CliOptions opt;
    std::string file;
    std::vector<std::string> names;

    for (const auto& [name, desc] : kCommands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("file", file, ".sgpd input file")->required();
        sub->add_option("names", names, "block names the command applies to");
        sub->add_flag("--json", opt.json, "machine-readable report");
        sub->add_option("--max-violations", opt.max_violations, "violations kept per report");
        sub->add_option("--cap-bisections", opt.cap_bisections, "bisection enumeration cap");
        sub->add_option("--cap-graphings", opt.cap_graphings, "dummy-symbol cap for graphings");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? sgpd::cli::kExitInputError : sgpd::cli::kExitOk;
    }

    std::ifstream in(file);
    if (!in) {
        std::cerr << "cannot open " << file << "\n";
        return sgpd::cli::kExitInputError;
    }
    std::ostringstream text;
    text << in.rdbuf();

    auto parsed = sgpd::parse(text.str());
    if (auto* e = std::get_if<sgpd::ParseError>(&parsed)) {
        std::cerr << sgpd::describe(*e) << "\n";
        return sgpd::cli::kExitInputError;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return sgpd::run_command(cmd, names, std::get<sgpd::Document>(parsed), opt, std::cout,
                                 std::cerr);
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << "\n";
        return sgpd::cli::kExitInputError;
    }
}

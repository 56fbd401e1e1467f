// sogkit: batch front end over the workbench JSON schema.
//
//   sogkit <verb> --in workspace.json [names...] [--oracle] [--budget N] [--out cert.json]
//
// Exit codes: 0 = checked properties pass, 1 = a checked property fails
// (the certificate carries the witness), 2 = input errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sogkit/errors.hpp"
#include "sogkit/json_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"sogkit: exact-arithmetic workbench for semilattices of groups"};
    app.set_help_all_flag("--help-all");

    std::string verb;
    std::vector<std::string> inputs;
    std::vector<std::string> names;
    std::string out_path;
    bool oracle = false;
    std::size_t budget = 200000;

    app.add_option("verb", verb,
                   "one of: check-hom, check-purity, distr-envelope, pure-approx, pure-witness, "
                   "monoid-check, monoid-decompose, cover, retract, blueprint, oracle-check")
        ->required();
    app.add_option("--in", inputs, "workspace JSON file(s); repeat the flag for several")
        ->required()
        ->expected(1)
        ->allow_extra_args(false)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("names", names, "object names (and the oracle-check operation)");
    app.add_option("--out", out_path, "also write the certificate to this file");
    app.add_flag("--oracle", oracle, "cross-check with the brute-force oracles");
    app.add_option("--budget", budget, "oracle element budget");

    CLI11_PARSE(app, argc, argv);

    nlohmann::json cert;
    int code = 2;
    try {
        sogkit::Workspace ws = sogkit::parse_workspace_files(inputs);
        sogkit::CommandOptions opts;
        opts.oracle = oracle;
        opts.budget.element_bound = budget;
        code = sogkit::run_command(ws, verb, names, opts, cert);
    } catch (const sogkit::Error& e) {
        cert = nlohmann::json{{"schema", "sogkit/1"},
                              {"verb", verb},
                              {"status", "invalid"},
                              {"error", {{"code", e.code()}, {"message", e.what()}}}};
        code = 2;
    }

    std::string text = cert.dump(2);
    std::cout << text << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << text << "\n";
    }
    return code;
}

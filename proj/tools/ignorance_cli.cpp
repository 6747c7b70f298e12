// ignorance: evaluate acts, check operator laws and compare frameworks.
//
//   ignorance evaluate  --problem p.json
//   ignorance check     --problem p.json --suite gamma-laws [--grid-denominator 16]
//   ignorance consensus --problem p.json [--mode limit --epsilon-list 1,1/2,1/4]
//
// Reports go to stdout as JSON (or a table with --format table). Exit status
// is 0 on pass, 1 when violations were found and 2 on any error.

#include "ignorance/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace ignorance;
using namespace ignorance::cli;

std::vector<Rational> split_epsilons(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(parse_rational(item));
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, std::string("--epsilon-list: ") + e.what());
        }
    }
    if (out.empty()) throw Error(ErrorCode::ParseError, "--epsilon-list: empty");
    return out;
}

void print(const json& report, const std::string& format) {
    if (format == "table")
        std::cout << render_table(report);
    else
        std::cout << report.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certainty equivalents and sequential consistency under ignorance"};
    app.set_version_flag("--version", std::string(kEngineVersion));
    app.require_subcommand(1);

    std::string problem_path;
    std::string format = "machine";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"machine", "table"}));

    auto* evaluate = app.add_subcommand("evaluate", "Certainty equivalent of an act, folded along any partitions given");
    evaluate->add_option("--problem", problem_path, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--format", format, "Output format")->check(CLI::IsMember({"machine", "table"}));

    CheckOptions check_opts;
    unsigned grid_denominator = 0;
    std::size_t max_states = 0;
    auto* check = app.add_subcommand("check", "Run a law suite against the problem's operator");
    check->add_option("--problem", problem_path, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    check->add_option("--suite", check_opts.suite, "gamma-laws | ev-properties | set-order | sequential | all");
    check->add_option("--grid-denominator", grid_denominator, "Utility grid {k/d}")->check(CLI::PositiveNumber);
    check->add_option("--max-states", max_states, "Largest state-space size swept")->check(CLI::PositiveNumber);
    check->add_flag("--stop-at-first", check_opts.stop_at_first, "Stop at the first sequential failure");
    check->add_option("--workers", check_opts.workers, "Worker threads for the sweep (0 = hardware)");
    check->add_option("--format", format, "Output format")->check(CLI::IsMember({"machine", "table"}));

    ConsensusOptions consensus_opts;
    std::string mode;
    std::string epsilon_list;
    std::size_t certain_state = 0;
    auto* consensus = app.add_subcommand("consensus", "Compare credal, belief and possibility evaluations");
    consensus->add_option("--problem", problem_path, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    consensus->add_option("--mode", mode, "vacuous | certainty | limit")->check(CLI::IsMember({"vacuous", "certainty", "limit"}));
    auto* eps_opt = consensus->add_option("--epsilon-list", epsilon_list, "Comma-separated contamination weights, e.g. 1,1/2,1/4");
    auto* state_opt = consensus->add_option("--certain-state", certain_state, "State that certainty mode concentrates on");
    consensus->add_option("--format", format, "Output format")->check(CLI::IsMember({"machine", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Error);
    }

    try {
        const auto problem = load_problem(problem_path);
        CommandResult result;
        if (*evaluate) {
            result = cmd_evaluate(problem);
        } else if (*check) {
            if (grid_denominator > 0) check_opts.grid_denominator = grid_denominator;
            if (max_states > 0) check_opts.max_states = max_states;
            result = cmd_check(problem, check_opts);
        } else {
            if (!mode.empty()) consensus_opts.mode = mode;
            if (*eps_opt) consensus_opts.epsilons = split_epsilons(epsilon_list);
            if (*state_opt) consensus_opts.certain_state = certain_state;
            result = cmd_consensus(problem, consensus_opts);
        }
        print(result.report, format);
        return static_cast<int>(result.exit);
    } catch (const Error& e) {
        print(error_report(e), format);
        return static_cast<int>(ExitCode::Error);
    } catch (const std::exception& e) {
        print(error_report(Error(ErrorCode::ValidationError, e.what())), format);
        return static_cast<int>(ExitCode::Error);
    }
}

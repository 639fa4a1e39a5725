#include "esapi_model/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    namespace cli = esapi_model::cli;

    CLI::App app{"Executable model of the ESAPI resource list: lemma checking, scenario replay, fuzzing"};
    app.require_subcommand(1);

    cli::LemmaOptions lemma_opt;
    auto* lemmas = app.add_subcommand("lemmas", "exhaustively check the list lemmas on small heaps");
    lemmas->add_option("--max-nodes", lemma_opt.max_nodes, "largest heap size (1..6)")
        ->check(CLI::Range(1, 6));
    lemmas->add_flag("--mutants", lemma_opt.mutants, "run the falsified variants; pass iff all are caught");
    lemmas->add_option("--threads", lemma_opt.threads, "worker threads (0: hardware concurrency)");
    lemmas->add_option("--json", lemma_opt.json_path, "also write a JSON summary to this file");

    std::string scenario_path;
    std::size_t scenario_bank = esapi_model::kDefaultBankCapacity;
    auto* scenario = app.add_subcommand("scenario", "replay a JSON-lines scenario against a fresh store");
    scenario->add_option("path", scenario_path, "scenario file")->required();
    scenario->add_option("--bank", scenario_bank, "bank capacity")->check(CLI::PositiveNumber);

    cli::FuzzOptions fuzz_opt;
    auto* fuzz = app.add_subcommand("fuzz", "random get_node calls with postcondition checks");
    fuzz->add_option("--ops", fuzz_opt.ops, "number of calls")->check(CLI::PositiveNumber);
    fuzz->add_option("--seed", fuzz_opt.seed, "RNG seed");
    fuzz->add_option("--bank", fuzz_opt.bank, "bank capacity")->check(CLI::PositiveNumber);
    fuzz->add_option("--alphabet", fuzz_opt.alphabet, "number of distinct handles (default 2 x bank)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }

    if (*lemmas)
        return cli::run_lemmas(lemma_opt, std::cout, std::cerr);
    if (*scenario)
        return cli::run_scenario_file(scenario_path, scenario_bank, std::cout, std::cerr);
    return cli::run_fuzz(fuzz_opt, std::cout, std::cerr);
}

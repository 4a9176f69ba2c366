#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chemiq/cli.hpp"

using namespace chemiq;

int main(int argc, char** argv) {
  CLI::App app{"Procedural chemistry question suite: generate, run, grade, report"};
  app.require_subcommand(1);
  app.fallthrough();  // let --out / --seed / --config appear after the subcommand too

  std::string config_path;
  std::string corpus_override, out_override;
  uint64_t seed_override = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--corpus", corpus_override, "override the corpus file");
  app.add_option("--out", out_override, "override the output directory");
  app.add_option("--seed", seed_override, "override the generation seed")
      ->each([&](const std::string&) { seed_set = true; });

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Build the question set and manifest");
  gen->add_option("--category", gen_args.category,
                  "single category instead of the full suite");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Collect model responses into a transcript log");
  run->add_option("--provider", run_args.provider, "provider name from the config");
  run->add_option("--mock-fixture", run_args.mock_fixture,
                  "replay canned responses from a fixture file");
  run->add_option("--questions", run_args.questions, "question file to answer");

  GradeArgs grade_args;
  auto* grade = app.add_subcommand("grade", "Score recorded responses");
  grade->add_option("--questions", grade_args.questions, "question file");
  grade->add_option("--transcripts", grade_args.transcripts, "transcript log");
  grade->add_option("--model", grade_args.model, "label for the summary line");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Render success-rate tables");
  report->add_option("--grades", report_args.grades,
                     "NAME=PATH grade file, repeatable");
  report->add_option("--verdicts", report_args.verdicts,
                     "combined per-question verdict table");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Re-derive every answer independently");
  verify->add_option("--questions", verify_args.questions, "question file");
  verify->add_option("--coverage", verify_args.coverage_instances,
                     "Monte-Carlo instances for the interval audit (0 disables)");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::load(config_path);
    if (!corpus_override.empty()) cfg.corpus_path = corpus_override;
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_set) cfg.seed = seed_override;

    if (gen->parsed()) return cmd_generate(cfg, gen_args, std::cout);
    if (run->parsed()) return cmd_run(cfg, run_args, std::cout);
    if (grade->parsed()) return cmd_grade(cfg, grade_args, std::cout);
    if (report->parsed()) return cmd_report(cfg, report_args, std::cout);
    if (verify->parsed()) return cmd_verify(cfg, verify_args, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

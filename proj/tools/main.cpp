#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "freesub/cli.hpp"

namespace {

struct Args {
  freesub::Config cfg;
  std::string problem;
  std::string word;
  std::string command;
};

void add_problem_arg(CLI::App* sub, Args& args) {
  sub->add_option("problem", args.problem, "problem JSON file")->required();
}

void add_word_arg(CLI::App* sub, Args& args, const char* what) {
  sub->add_option("word", args.word, what)->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "subgroup structure of free groups and free products of finite groups "
      "via wreath-product constructions"};
  app.require_subcommand(1);

  Args args;
  app.add_option("--format", args.cfg.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--seed", args.cfg.seed, "PRNG seed")->capture_default_str();
  app.add_option("--samples", args.cfg.samples, "sample count for verify commands")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--alpha0", args.cfg.alpha0, "distinguished factor index")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--max-group-order", args.cfg.caps.max_group_order,
                 "cap on the image group order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-index", args.cfg.caps.max_index,
                 "cap on the subgroup index")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "validate a problem file");
  add_problem_arg(check, args);

  auto* ns = app.add_subcommand("ns", "free-group subgroup structure");
  ns->require_subcommand(1);
  auto* ns_basis = ns->add_subcommand("basis", "Schreier transversal and basis");
  add_problem_arg(ns_basis, args);
  auto* ns_rewrite =
      ns->add_subcommand("rewrite", "rewrite a subgroup word over the basis");
  add_problem_arg(ns_rewrite, args);
  add_word_arg(ns_rewrite, args, "free word in the subgroup");
  auto* ns_verify =
      ns->add_subcommand("verify", "universal-property verification");
  add_problem_arg(ns_verify, args);

  auto* kurosh = app.add_subcommand("kurosh", "free-product subgroup structure");
  kurosh->require_subcommand(1);
  auto* k_system = kurosh->add_subcommand("system", "transversals and axioms");
  add_problem_arg(k_system, args);
  auto* k_dec = kurosh->add_subcommand("decompose", "subgroup decomposition");
  add_problem_arg(k_dec, args);
  auto* k_rewrite = kurosh->add_subcommand(
      "rewrite", "rewrite a subgroup word over the decomposition");
  add_problem_arg(k_rewrite, args);
  add_word_arg(k_rewrite, args, "product word in the subgroup");
  auto* k_verify =
      kurosh->add_subcommand("verify", "universal-property verification");
  add_problem_arg(k_verify, args);

  auto* embed = app.add_subcommand("embed", "standard wreath embedding of a word");
  add_problem_arg(embed, args);
  add_word_arg(embed, args, "word to embed");

  for (CLI::App* sub : {check, ns, kurosh, embed}) sub->fallthrough();
  for (CLI::App* sub : {ns_basis, ns_rewrite, ns_verify, k_system, k_dec,
                        k_rewrite, k_verify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (check->parsed()) args.command = "check";
  if (ns_basis->parsed()) args.command = "ns-basis";
  if (ns_rewrite->parsed()) args.command = "ns-rewrite";
  if (ns_verify->parsed()) args.command = "ns-verify";
  if (k_system->parsed()) args.command = "kurosh-system";
  if (k_dec->parsed()) args.command = "kurosh-decompose";
  if (k_rewrite->parsed()) args.command = "kurosh-rewrite";
  if (k_verify->parsed()) args.command = "kurosh-verify";
  if (embed->parsed()) args.command = "embed";

  try {
    freesub::CommandResult res =
        freesub::dispatch(args.command, args.problem, args.word, args.cfg);
    std::fputs(res.output.c_str(), stdout);
    return res.exit_code;
  } catch (const freesub::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

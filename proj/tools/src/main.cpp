#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "gu22cli/run.hpp"

using namespace gu22::cli;

int main(int argc, char** argv) {
  CLI::App app{"Checks for the exceptional isomorphism, local model and stratifications"};
  app.require_subcommand(1);
  RunConfig cfg;
  double ceiling = 1e6;
  std::string uniformizer = "p", format = "json";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime")->capture_default_str();
    sub->add_option("--k-max", cfg.k_max, "largest extension degree for point counts")->capture_default_str();
    sub->add_option("--precision", cfg.precision, "p-adic precision")->capture_default_str();
    sub->add_option("--uniformizer", uniformizer, "p or up")->check(CLI::IsMember({"p", "up"}))->capture_default_str();
    sub->add_option("--ceiling", ceiling, "skip enumerations predicted to exceed this size")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_flag("--timings", cfg.timings, "include per-check runtimes");
    sub->add_option("--only", cfg.only, "run only these check ids or id prefixes")->delimiter(',');
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name);
    common(sub);
    if (name == "links" || name == "all") {
      sub->add_option("--case", cfg.link_case, "neutral or nonneutral")->capture_default_str();
      sub->add_option("--type", cfg.link_type, "vertex type whose link is tabulated");
    }
    if (name == "local-model" || name == "all")
      sub->add_option("--rings", cfg.rings, "fp, fp2 or both")->capture_default_str();
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string name;
  for (auto& [n, sub] : subs)
    if (sub->parsed()) name = n;
  cfg.ceiling = ceiling;
  cfg.uniformizer = uniformizer == "up" ? gu22::Uniformizer::UP : gu22::Uniformizer::P;
  cfg.format = format == "csv" ? Format::Csv : Format::Json;

  try {
    RunResult r = run(name, cfg);
    std::string text = render(r);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream o(cfg.out);
      if (!o) {
        std::cerr << "cannot write " << cfg.out << "\n";
        return 2;
      }
      o << text;
    }
    return r.exit_code();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

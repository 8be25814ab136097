#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hecke/error.hpp"

namespace {

std::optional<std::string> default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::string(xdg) + "/heckewb";
  if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/heckewb";
  return std::nullopt;
}

struct Args {
  std::string config_path;
  std::string example;
  long field_conductor = 0;
  int depth = -1;
  std::string out;
  std::string markdown;
  int jobs = 1;
  std::string cache_dir;
  bool no_cache = false;
};

int run(const std::string& command, const Args& a) {
  using namespace hecke;
  using namespace hecke::cli;
  Json source;
  Overrides ov;
  if (a.field_conductor > 0) ov.field_conductor = a.field_conductor;
  if (a.depth >= 0) ov.depth = a.depth;
  RunOptions opt;
  opt.jobs = std::max(1, a.jobs);
  if (!a.no_cache) opt.cache_dir = a.cache_dir.empty() ? default_cache_dir() : std::optional<std::string>(a.cache_dir);

  Report rep(command, Json::object());
  try {
    if (a.config_path.empty() == a.example.empty()) {
      throw ConfigError("arguments", "give exactly one of --config and --example");
    }
    source = a.example.empty() ? load_config_file(a.config_path) : builtin_config(a.example);
    rep = run_command(command, parse_config(source, ov), opt);
  } catch (const ConfigError& e) {
    rep = Report(command, source);
    rep.set_error(ErrorInfo{"ConfigError", e.what(), e.location(), std::nullopt});
  } catch (const Error& e) {
    rep = Report(command, source);
    rep.set_error(ErrorInfo{std::string(to_string(e.kind())), e.what(), std::nullopt, std::nullopt});
  } catch (const std::exception& e) {
    rep = Report(command, source);
    rep.set_error(ErrorInfo{"ConfigError", e.what(), std::nullopt, std::nullopt});
  }

  const std::string text = rep.to_json().dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(a.out) << text;
  }
  if (!a.markdown.empty()) std::ofstream(a.markdown) << rep.markdown();
  if (rep.error()) std::cerr << "error: " << rep.error()->message << "\n";
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification and K_0 computations for Hecke algebras of finite and covirtually-Z groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hecke::cli::kToolVersion));
  Args args;
  std::string chosen;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "run the invariant suite on an instance or tower"},
      {"levels", "level structure, semisimplicity and Wedderburn blocks"},
      {"k0", "K_0 of the levels, induced maps and the tower colimit"},
      {"wang", "K_0 of the covirtually-Z group through the Wang sequence"},
      {"oracle", "brute-force cross-checks at desk scale"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    auto* src = sub->add_option_group("source");
    src->add_option("--config", args.config_path, "JSON config file")->check(CLI::ExistingFile);
    src->add_option("--example", args.example, "built-in example name");
    src->require_option(1);
    sub->add_option("--field-conductor", args.field_conductor, "coefficients in Q(zeta_m)")->check(CLI::PositiveNumber);
    sub->add_option("--depth", args.depth, "tower depth")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", args.out, "write the JSON report here instead of stdout");
    sub->add_option("--markdown", args.markdown, "also write a markdown summary");
    sub->add_option("--jobs", args.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cache-dir", args.cache_dir, "level cache directory");
    sub->add_flag("--no-cache", args.no_cache, "disable the level cache");
    sub->callback([&chosen, name = name] { chosen = name; });
  }
  app.add_subcommand("examples", "list the built-in examples")->callback([] {
    for (const auto& n : hecke::cli::builtin_names()) std::cout << n << "\n";
  });
  CLI11_PARSE(app, argc, argv);
  if (chosen.empty()) return 0;
  return run(chosen, args);
}

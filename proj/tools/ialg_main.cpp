#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ialg/corpus.hpp"
#include "ialg/errors.hpp"
#include "ialg/session.hpp"
#include "ialg/text.hpp"

namespace {

struct Input {
  std::string name;
  std::string text;
};

std::optional<Input> load_input(const std::string& corpus_name, std::vector<std::string>& args) {
  if (!corpus_name.empty()) {
    for (const auto& e : ialg::corpus()) {
      if (e.name == corpus_name) return Input{e.name, e.text};
    }
    std::cerr << "ialg: no corpus entry named '" << corpus_name << "'\n";
    return std::nullopt;
  }
  if (args.empty()) {
    std::cerr << "ialg: missing input file (use '-' for stdin or --corpus NAME)\n";
    return std::nullopt;
  }
  const std::string path = args.front();
  args.erase(args.begin());
  if (path == "-") {
    return Input{"stdin", std::string(std::istreambuf_iterator<char>(std::cin), {})};
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "ialg: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return Input{path, ss.str()};
}

/// "lo..hi" or "lo hi" in the poset of the given spec text.
std::optional<ialg::WindowDecl> parse_window_flag(const std::string& flag, const std::string& text) {
  const auto spec = ialg::parse_session(text);
  const auto poset = ialg::build_poset(spec.poset);
  std::vector<std::string> parts;
  if (const auto dots = flag.find(".."); dots != std::string::npos) {
    parts = {flag.substr(0, dots), flag.substr(dots + 2)};
  } else {
    parts = ialg::split_args(flag);
  }
  if (parts.size() != 2) throw ialg::Error("--window expects 'lo..hi' or 'lo hi'");
  return ialg::WindowDecl{ialg::parse_index(*poset, parts[0]), ialg::parse_index(*poset, parts[1])};
}

std::optional<ialg::FieldDecl> parse_field_flag(const std::string& flag) {
  if (flag == "Q") return ialg::FieldDecl{};
  if (flag.rfind("Fp", 0) == 0) {
    std::string p = flag.substr(2);
    while (!p.empty() && (p.front() == ' ' || p.front() == ':' || p.front() == '=')) p.erase(p.begin());
    return ialg::FieldDecl{static_cast<std::uint32_t>(std::stoul(p))};
  }
  throw ialg::Error("--field expects 'Q' or 'Fp <p>'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with positively indexed algebras over directed posets"};
  app.set_version_flag("--version", std::string("ialg ") + ialg::engine_version());
  app.require_subcommand(1);
  app.fallthrough();

  std::string corpus_name;
  std::string window_flag;
  std::string field_flag;
  bool json = false;
  std::size_t chain_len = 3;
  std::size_t probe_len = 4;
  std::size_t limit_window = ialg::kDefaultWindowLimit;
  std::size_t limit_dim = 10'000;
  std::size_t limit_paths = 1'000'000;

  app.add_option("--corpus", corpus_name, "Use a built-in corpus entry as input");
  app.add_option("--window", window_flag, "Override the window: 'lo..hi'");
  app.add_option("--field", field_flag, "Override the field: 'Q' or 'Fp<p>'");
  app.add_flag("--json", json, "Write the JSON report instead of text");
  app.add_option("--chain-len", chain_len, "Length of window chains used by checks")->check(CLI::PositiveNumber);
  app.add_option("--probe-len", probe_len, "Length of diagonal chains used by probes")->check(CLI::Range(2, 64));
  app.add_option("--limit-window", limit_window, "Maximum number of window elements");
  app.add_option("--limit-dim", limit_dim, "Maximum dimension of an algebra component");
  app.add_option("--limit-paths", limit_paths, "Maximum number of paths enumerated per component");

  std::vector<std::string> args;
  std::string sub_verb;
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"dims", "Component or module dimensions over a window"},
      {"tail", "Minimal generators of a tail module"},
      {"gens", "Minimal generators of a module over a window"},
      {"torsion", "Torsion elements of a module"},
      {"hom", "Hom spaces between presented modules"},
      {"tau", "Torsion functor as a colimit along a diagonal chain"},
      {"qgrhom", "Hom in the quotient category as a colimit"},
      {"saturate", "Saturation component of a module"},
      {"chi1", "Finite generation probe for the first saturation defect"},
      {"aofseq", "Algebra of a sequence of objects"},
      {"check", "Structural checks: star, cocompact, strong, criterion, coherence, sequence"},
      {"run", "Run the commands listed in the input"}};
  for (const auto& [name, desc] : verbs) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("args", args, "Input file ('-' for stdin) followed by command arguments");
    sub->callback([&sub_verb, n = name] { sub_verb = n; });
  }
  auto* corpus_cmd = app.add_subcommand("corpus", "List corpus entries or print one");
  std::string corpus_show;
  corpus_cmd->add_option("name", corpus_show, "Entry to print");
  corpus_cmd->callback([&sub_verb] { sub_verb = "corpus"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (sub_verb == "corpus") {
    if (corpus_show.empty()) {
      for (const auto& e : ialg::corpus()) std::cout << e.name << "\n";
      return 0;
    }
    for (const auto& e : ialg::corpus()) {
      if (e.name == corpus_show) {
        std::cout << e.text;
        return 0;
      }
    }
    std::cerr << "ialg: no corpus entry named '" << corpus_show << "'\n";
    return 1;
  }

  auto input = load_input(corpus_name, args);
  if (!input) return 1;

  ialg::RunOptions options;
  options.name = input->name;
  options.policy.length = chain_len;
  options.probe_length = probe_len;
  options.window_limit = limit_window;
  options.limits.max_component_dim = limit_dim;
  options.limits.max_paths = limit_paths;
  try {
    if (!field_flag.empty()) options.field = parse_field_flag(field_flag);
    if (!window_flag.empty()) options.window = parse_window_flag(window_flag, input->text);
  } catch (const ialg::ParseError& e) {
    std::cerr << input->name << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ialg: " << e.what() << "\n";
    return 1;
  }

  std::optional<std::vector<std::string>> command;
  if (sub_verb != "run") {
    std::vector<std::string> cmd{sub_verb};
    cmd.insert(cmd.end(), args.begin(), args.end());
    command = std::move(cmd);
  } else if (!args.empty()) {
    std::cerr << "ialg: 'run' takes no command arguments\n";
    return 1;
  }

  const auto report = ialg::run_text(input->text, options, command);
  if (json) {
    std::cout << report.json.dump(2) << "\n";
  } else {
    std::cout << report.text;
  }
  if (report.json.contains("error")) {
    std::cerr << "ialg: " << report.json["error"].value("message", std::string("error")) << "\n";
  }
  return report.exit_code();
}

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ialg/algebra.hpp"
#include "ialg/checks.hpp"
#include "ialg/gradedmod.hpp"
#include "ialg/text.hpp"

namespace ialg {

const char* engine_version();

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

struct RunOptions {
  std::string name = "session";
  /// Replaces the window in effect for every command.
  std::optional<WindowDecl> window;
  std::optional<FieldDecl> field;
  ChainPolicy policy;
  std::size_t probe_length = 4;
  AlgebraLimits limits;
  std::size_t window_limit = kDefaultWindowLimit;
  bool replay = true;
};

enum class Status { Computed, Verified, Refuted, Inconclusive, ResourceLimit, Error };

std::string to_string(Status s);
int exit_code(Status s);
/// Usage errors dominate, then resource limits, then Refuted, then Inconclusive.
Status worst(Status a, Status b);

struct CommandResult {
  Status status = Status::Computed;
  nlohmann::json json;
};

/// Algebra and modules built from a spec, shared by every command.
class Session {
 public:
  /// Throws Error subclasses when a declaration cannot be built.
  Session(const SessionSpec& spec, RunOptions options);

  std::shared_ptr<const PresentedAlgebra> algebra() const { return algebra_; }
  const RunOptions& options() const { return options_; }
  ModulePtr module(const std::string& name) const;
  std::vector<std::string> module_names() const { return names_; }

  ModulePtr resolve(const ModuleRef& ref) const;
  PresentationPtr resolve_presentation(const ModuleRef& ref) const;

  /// Never throws: failures become Error or ResourceLimit results.
  CommandResult run(const std::vector<std::string>& args, const std::optional<WindowDecl>& current) const;

 private:
  CommandResult execute(const Command& cmd, const Window& w) const;
  CommandResult outcome_result(const CheckOutcome& o) const;
  PresentationPtr simple_at(const Index& i) const;
  std::vector<ModuleElement> diagonal_tail_generators(const Index& i) const;

  RunOptions options_;
  std::shared_ptr<const PresentedAlgebra> algebra_;
  std::map<std::string, ModulePtr> modules_;
  std::vector<std::string> names_;
};

std::shared_ptr<const PresentedAlgebra> build_algebra(const SessionSpec& spec, const std::string& name,
                                                      const AlgebraLimits& limits = {});

struct Report {
  nlohmann::json json;
  Status status = Status::Computed;
  std::string text;
  int exit_code() const { return ialg::exit_code(status); }
};

/// Parses and runs a session. With `command`, the file's run lines are
/// skipped and only that command runs (after the file's windows).
Report run_text(const std::string& text, const RunOptions& options,
                const std::optional<std::vector<std::string>>& command = std::nullopt);

}  // namespace ialg

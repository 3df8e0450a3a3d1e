#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ialg {

enum class Verdict { Verified, VerifiedByCriterion, Refuted, Inconclusive };

std::string to_string(Verdict v);

struct ReplayResult {
  bool ok = false;
  std::string detail;
};

/// Evidence attached to a verdict. replay() re-derives the claim from the
/// stored data using only elementary operations (closures, ranks, single
/// linear solves), never by re-running the checker that produced it.
class Certificate {
 public:
  virtual ~Certificate() = default;
  virtual std::string kind() const = 0;
  virtual nlohmann::json to_json() const = 0;
  virtual ReplayResult replay() const = 0;
};

using CertificatePtr = std::shared_ptr<const Certificate>;

struct CheckOutcome {
  Verdict verdict = Verdict::Inconclusive;
  std::string subject;
  /// Criterion name for VerifiedByCriterion, reason for Inconclusive.
  std::string note;
  std::string window;
  std::vector<CertificatePtr> certificates;
  std::vector<CheckOutcome> parts;
  nlohmann::json detail = nlohmann::json::object();

  bool verified() const {
    return verdict == Verdict::Verified || verdict == Verdict::VerifiedByCriterion;
  }
  nlohmann::json to_json() const;
};

/// Refuted beats Inconclusive beats Verified. VerifiedByCriterion survives
/// only if every part carries it.
Verdict combine(const std::vector<CheckOutcome>& parts);

CheckOutcome aggregate(std::string subject, std::vector<CheckOutcome> parts);

/// Every certificate in the outcome tree, depth first.
std::vector<CertificatePtr> collect_certificates(const CheckOutcome& outcome);

}  // namespace ialg

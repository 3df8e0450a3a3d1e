#include "ialg/outcome.hpp"

namespace ialg {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "Verified";
    case Verdict::VerifiedByCriterion: return "VerifiedByCriterion";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

nlohmann::json CheckOutcome::to_json() const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  j["subject"] = subject;
  if (!note.empty()) j["note"] = note;
  if (!window.empty()) j["window"] = window;
  if (!detail.empty()) j["detail"] = detail;
  if (!certificates.empty()) {
    auto& certs = j["certificates"] = nlohmann::json::array();
    for (const auto& c : certificates) {
      nlohmann::json cj = c->to_json();
      cj["kind"] = c->kind();
      certs.push_back(std::move(cj));
    }
  }
  if (!parts.empty()) {
    auto& ps = j["parts"] = nlohmann::json::array();
    for (const auto& p : parts) ps.push_back(p.to_json());
  }
  return j;
}

Verdict combine(const std::vector<CheckOutcome>& parts) {
  bool refuted = false, inconclusive = false, all_criterion = !parts.empty();
  for (const auto& p : parts) {
    refuted |= p.verdict == Verdict::Refuted;
    inconclusive |= p.verdict == Verdict::Inconclusive;
    all_criterion &= p.verdict == Verdict::VerifiedByCriterion;
  }
  if (refuted) return Verdict::Refuted;
  if (inconclusive) return Verdict::Inconclusive;
  return all_criterion ? Verdict::VerifiedByCriterion : Verdict::Verified;
}

CheckOutcome aggregate(std::string subject, std::vector<CheckOutcome> parts) {
  CheckOutcome out;
  out.subject = std::move(subject);
  out.verdict = combine(parts);
  out.parts = std::move(parts);
  return out;
}

namespace {
void collect(const CheckOutcome& o, std::vector<CertificatePtr>& out) {
  out.insert(out.end(), o.certificates.begin(), o.certificates.end());
  for (const auto& p : o.parts) collect(p, out);
}
}  // namespace

std::vector<CertificatePtr> collect_certificates(const CheckOutcome& outcome) {
  std::vector<CertificatePtr> out;
  collect(outcome, out);
  return out;
}

}  // namespace ialg

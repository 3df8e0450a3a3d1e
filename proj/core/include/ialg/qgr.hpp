#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ialg/algebra.hpp"
#include "ialg/gradedmod.hpp"
#include "ialg/outcome.hpp"

namespace ialg {

/// Values of a directed system sampled along an increasing chain of cuts.
struct ColimitProbe {
  std::string subject;
  std::string window;
  std::vector<Index> chain;
  std::vector<std::size_t> dims;
  /// transitions[k] maps the value at step k to the value at step k+1;
  /// rows index the target basis.
  std::vector<std::vector<Vec>> transitions;
  std::vector<bool> isomorphisms;
  bool stabilized = false;
  std::string note;

  std::size_t terminal_dim() const { return dims.empty() ? 0 : dims.back(); }
  nlohmann::json to_json(const Poset& poset) const;
  /// Verified when stabilized, Inconclusive otherwise.
  CheckOutcome outcome() const;
};

/// Chain lo, lo+1, lo+2, ... along the lattice coordinates of w. One more
/// step past the last cut must still lie in w, so the strict tail above
/// every cut meets the window. Throws DegreeError otherwise.
std::vector<Index> diagonal_chain(const Window& w, std::size_t length = 4);

/// Stabilized when the last two transitions are isomorphisms on a chain of
/// at least four steps.
bool stabilization_rule(const std::vector<bool>& isomorphisms);

struct TauColimit {
  ColimitProbe probe;
  /// Per step: elements of M_i killed by every A_{ij} with j > d in w.
  std::vector<Subfamily> values;
};

/// Throws DegreeError for a chain that is not increasing or leaves w.
TauColimit tau_colimit(ModulePtr m, const std::vector<Index>& chain, const Window& w);

/// N / tau_w N as a module on the window.
std::shared_ptr<const WindowQuotientModule> torsion_free_part(ModulePtr n, const Window& w);

/// Hom from in-window presentations of the tails of M into N / tau_w N,
/// restricted along the chain. Relations outside w are not seen.
ColimitProbe qgr_hom(ModulePtr m, ModulePtr n, const std::vector<Index>& chain, const Window& w);

struct SaturationProbe {
  ColimitProbe probe;
  /// Per step: whether m -> (p -> m p) is injective on M_i / tau_w M_i.
  std::vector<bool> natural_injective;
  /// Per step: rank of M_i -> step value.
  std::vector<std::size_t> natural_rank;
};

SaturationProbe saturation_component(ModulePtr m, const Index& i, const std::vector<Index>& chain,
                                     const Window& w);

/// Saturation components above d assembled on w (values computed on an
/// enlarged window), then swept for finite generation. Never Refuted.
CheckOutcome chi1_probe(ModulePtr m, const Index& d, const Window& w, std::size_t chain_length = 4);

struct SequenceAlgebra {
  std::shared_ptr<const StructureConstantAlgebra> algebra;
  CheckOutcome connectedness;
};

/// Hom algebra of a family of modules placed at the given indices. Aborts
/// with Refuted connectedness (and no algebra) when some End is not the field.
SequenceAlgebra a_of_sequence(const std::vector<PresentationPtr>& family, const std::vector<Index>& indices);

/// Every End(E_k) is spanned by the identity.
class ConnectednessCertificate : public Certificate {
 public:
  ConnectednessCertificate(std::vector<PresentationPtr> family, std::vector<std::string> names);
  std::string kind() const override { return "connectedness"; }
  nlohmann::json to_json() const override;
  ReplayResult replay() const override;

 private:
  std::vector<PresentationPtr> family_;
  std::vector<std::string> names_;
};

/// Identity of M as an element of a Hom(M, M) generator-image vector.
Vec identity_map(const ModulePresentation& m);

}  // namespace ialg

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ialg/algebra.hpp"
#include "ialg/gradedmod.hpp"
#include "ialg/outcome.hpp"

namespace ialg {

/// Number of nested windows used by generation tests. A family counts as
/// finitely generated when its generator list agrees on the last two.
struct ChainPolicy {
  std::size_t length = 3;
};

/// d moved k steps up every lattice coordinate; finite coordinates go to
/// the top of their factor.
Index grow(const Poset& poset, const Index& d, std::int64_t k);

/// Boxes [anchor, grow(d, k)] for k = 1..length.
WindowChain anchored_chain(const PosetPtr& poset, const Index& anchor, const Index& d,
                           const ChainPolicy& policy = {});
/// Boxes [w.lo, w.hi - s] shrinking towards w.lo, ending with w itself.
WindowChain inner_chain(const Window& w, const ChainPolicy& policy = {});

/// Produces the family under test on a given window.
using FamilyProducer = std::function<Subfamily(const Window&)>;

FamilyProducer tail_producer(ModulePtr m, Index cut, bool strict);

struct GenerationTest {
  CheckOutcome outcome;
  GrowthProfile profile;
  /// Generators on the largest window, flagged verified when stable.
  GeneratorReport generators() const;
};

/// Verified when the (degree, count) lists on the last two windows agree
/// (chains shorter than three are Inconclusive); otherwise Inconclusive with
/// the growth profile attached.
GenerationTest test_finite_generation(const FamilyProducer& family, const WindowChain& chain,
                                      std::string subject);

/// Diagonal tails P_{i,>i} for every i in w.
CheckOutcome check_star(AlgebraPtr a, const Window& w, const ChainPolicy& policy = {});
GenerationTest star_generators(AlgebraPtr a, const Index& i, const ChainPolicy& policy = {});

/// Tails P_{i,>d} for the given pairs (all i <= d in w when empty).
CheckOutcome check_tails_cocompact(AlgebraPtr a, const Window& w,
                                   std::vector<std::pair<Index, Index>> pairs = {},
                                   const ChainPolicy& policy = {});
/// One pair over an explicit chain.
GenerationTest tail_generation(AlgebraPtr a, const Index& i, const Index& d, const WindowChain& chain);

/// A_{iu} = A_{id} A_{du} for every i < d < u in w.
CheckOutcome check_strongly_indexed(AlgebraPtr a, const Window& w);

/// Tails-cocompactness from (*) together with strong indexing.
CheckOutcome strong_indexing_route(AlgebraPtr a, const Window& w, const ChainPolicy& policy = {});

/// Kernels of maps of free modules, tested for finite generation in w.
CheckOutcome check_coherence_probe(AlgebraPtr a, const Window& w, const std::vector<ModuleMap>& trial_maps,
                                   const ChainPolicy& policy = {});
/// Degreewise kernel of a map of free modules on a window, as a subfamily of the source.
Subfamily kernel_family(AlgebraPtr a, const ModuleMap& f, const Window& w);

struct SequenceReport {
  CheckOutcome projectivity;
  CheckOutcome coherence;
  CheckOutcome ampleness;
  CheckOutcome combined() const;
};

/// (A) tails of each sample above every d in w are finitely generated in
/// degrees above d; (C) records the same verdicts per (sample, d); (P)
/// checks sampled surjections onto the samples and their tails.
SequenceReport check_sequence_conditions(AlgebraPtr a, const Window& w, const std::vector<ModulePtr>& samples,
                                         const ChainPolicy& policy = {});

// ---------------------------------------------------------------- certificates

/// Generators whose closure reproduces a family on a window.
class GenerationCertificate : public Certificate {
 public:
  GenerationCertificate(FamilyProducer family, Window window, ModulePtr module,
                        std::vector<ModuleElement> generators);
  std::string kind() const override { return "generation"; }
  nlohmann::json to_json() const override;
  ReplayResult replay() const override;

 private:
  FamilyProducer family_;
  Window window_;
  ModulePtr module_;
  std::vector<ModuleElement> generators_;
};

/// Generator totals over nested windows.
class GrowthCertificate : public Certificate {
 public:
  GrowthCertificate(FamilyProducer family, WindowChain chain, GrowthProfile profile);
  std::string kind() const override { return "growth"; }
  nlohmann::json to_json() const override;
  ReplayResult replay() const override;

 private:
  FamilyProducer family_;
  WindowChain chain_;
  GrowthProfile profile_;
};

/// A basis vector of A_{iu} outside the span of A_{id} A_{du}.
class StrongIndexingRefutation : public Certificate {
 public:
  StrongIndexingRefutation(AlgebraPtr a, Index i, Index d, Index u, std::uint32_t witness);
  std::string kind() const override { return "strong-indexing-refutation"; }
  nlohmann::json to_json() const override;
  ReplayResult replay() const override;
  std::string witness_label() const;
  const Index& source() const { return i_; }
  const Index& middle() const { return d_; }
  const Index& target() const { return u_; }

 private:
  AlgebraPtr a_;
  Index i_, d_, u_;
  std::uint32_t witness_;
};

/// A cover by generators whose image fills the target family at every
/// window degree at or above a bound.
class SurjectivityCertificate : public Certificate {
 public:
  SurjectivityCertificate(FamilyProducer target, Window window, ModulePtr module,
                          std::vector<ModuleElement> generators, Index bound);
  std::string kind() const override { return "surjectivity"; }
  nlohmann::json to_json() const override;
  ReplayResult replay() const override;

 private:
  FamilyProducer target_;
  Window window_;
  ModulePtr module_;
  std::vector<ModuleElement> generators_;
  Index bound_;
};

}  // namespace ialg

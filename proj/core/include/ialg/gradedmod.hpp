#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "ialg/algebra.hpp"
#include "ialg/linalg.hpp"
#include "ialg/poset.hpp"

namespace ialg {

/// Graded right module over an indexed algebra, given degreewise.
class GradedModule {
 public:
  virtual ~GradedModule() = default;

  virtual const std::string& name() const = 0;
  virtual AlgebraPtr algebra_ptr() const = 0;
  const IndexedAlgebra& algebra() const { return *algebra_ptr(); }
  const Poset& poset() const { return algebra().poset(); }
  const Field& field() const { return algebra().field(); }

  virtual std::size_t dim(const Index& d) const = 0;
  /// v in M_d acted on by a in A_{d,e}, giving an element of M_e.
  virtual Vec act(const Index& d, const Vec& v, const Index& e, const Vec& a) const = 0;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

struct ModuleElement {
  Index degree;
  Vec coords;
};

/// Direct sum of P_j over the listed degrees (repeats allowed).
struct FreeModule {
  std::vector<Index> degrees;
};

/// Map F' -> F of free modules; entries[l][t] lies in A_{target[l], source[t]}.
struct ModuleMap {
  FreeModule source;
  FreeModule target;
  std::vector<std::vector<Vec>> entries;
};

/// Cokernel of a map of finite free modules. M_d is the direct sum of
/// A_{j_l,d} over the target generators modulo the images of the columns.
class ModulePresentation : public GradedModule {
 public:
  /// Throws DegreeError when an entry does not fit its degree pair.
  ModulePresentation(std::string name, AlgebraPtr algebra, ModuleMap map);

  static std::shared_ptr<const ModulePresentation> free(std::string name, AlgebraPtr algebra,
                                                        std::vector<Index> degrees);
  static std::shared_ptr<const ModulePresentation> zero(std::string name, AlgebraPtr algebra);
  /// P_i modulo the given elements of P_i (the relation columns).
  static std::shared_ptr<const ModulePresentation> cyclic_quotient(
      std::string name, AlgebraPtr algebra, const Index& i, const std::vector<ModuleElement>& elements);
  static std::shared_ptr<const ModulePresentation> direct_sum(std::string name,
                                                              const ModulePresentation& a,
                                                              const ModulePresentation& b);

  const std::string& name() const override { return name_; }
  AlgebraPtr algebra_ptr() const override { return algebra_; }
  const ModuleMap& map() const { return map_; }
  const std::vector<Index>& generator_degrees() const { return map_.target.degrees; }
  std::size_t generator_count() const { return map_.target.degrees.size(); }
  std::size_t relation_count() const { return map_.source.degrees.size(); }

  std::size_t dim(const Index& d) const override;
  Vec act(const Index& d, const Vec& v, const Index& e, const Vec& a) const override;

  /// Offsets of the blocks A_{j_l,d} inside the ambient space at d (one
  /// entry per generator plus the total).
  std::vector<std::size_t> block_offsets(const Index& d) const;
  Vec project(const Index& d, const Vec& ambient) const;
  Vec lift(const Index& d, const Vec& coords) const;
  /// Image of the l-th generator in M_{j_l}.
  ModuleElement generator(std::size_t l) const;
  /// Image in the ambient space at d of the column t times b in A_{source[t],d}.
  Vec column_image(std::size_t t, const Index& d, const Vec& b) const;

 private:
  struct Component {
    std::vector<std::size_t> offsets;
    std::unique_ptr<Quotient> quotient;
  };
  const Component& component(const Index& d) const;

  std::string name_;
  AlgebraPtr algebra_;
  ModuleMap map_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Index, std::shared_ptr<const Component>, IndexHash> cache_;
};

using PresentationPtr = std::shared_ptr<const ModulePresentation>;

/// M / M_{>cut}: M_j when j is not above the cut, zero otherwise.
class TailQuotientModule : public GradedModule {
 public:
  TailQuotientModule(std::string name, ModulePtr base, Index cut);
  const std::string& name() const override { return name_; }
  AlgebraPtr algebra_ptr() const override { return base_->algebra_ptr(); }
  const Index& cut() const { return cut_; }
  std::size_t dim(const Index& d) const override;
  Vec act(const Index& d, const Vec& v, const Index& e, const Vec& a) const override;

 private:
  std::string name_;
  ModulePtr base_;
  Index cut_;
};

class DirectSumModule : public GradedModule {
 public:
  DirectSumModule(std::string name, ModulePtr left, ModulePtr right);
  const std::string& name() const override { return name_; }
  AlgebraPtr algebra_ptr() const override { return left_->algebra_ptr(); }
  std::size_t dim(const Index& d) const override;
  Vec act(const Index& d, const Vec& v, const Index& e, const Vec& a) const override;

 private:
  std::string name_;
  ModulePtr left_, right_;
};

/// SubmoduleInWindow: one subspace of M_d per window degree d.
class Subfamily {
 public:
  Subfamily(ModulePtr module, Window window);

  const GradedModule& module() const { return *module_; }
  ModulePtr module_ptr() const { return module_; }
  const Window& window() const { return window_; }

  /// Throws DegreeError outside the window.
  const Echelon& at(const Index& d) const;
  Echelon& at(const Index& d);
  std::size_t dim(const Index& d) const { return at(d).rank(); }
  std::size_t total_dim() const;
  /// Dimensions aligned with window().elements().
  std::vector<std::size_t> dims() const;
  bool operator==(const Subfamily& other) const;

 private:
  ModulePtr module_;
  Window window_;
  std::vector<Echelon> spaces_;
};

/// Window-restricted quotient of M by a subfamily (for instance N / tau_w N).
class WindowQuotientModule : public GradedModule {
 public:
  explicit WindowQuotientModule(std::string name, Subfamily sub);
  const std::string& name() const override { return name_; }
  AlgebraPtr algebra_ptr() const override { return sub_.module().algebra_ptr(); }
  const Window& window() const { return sub_.window(); }
  /// Throws DegreeError outside the window.
  std::size_t dim(const Index& d) const override;
  Vec act(const Index& d, const Vec& v, const Index& e, const Vec& a) const override;
  Vec project(const Index& d, const Vec& base_coords) const;

 private:
  std::string name_;
  Subfamily sub_;
  std::vector<Quotient> quotients_;
};

/// Strict (j > d) or weak (j >= d) tail of M restricted to w.
Subfamily tail(ModulePtr m, const Index& d, bool strict, const Window& w);
Subfamily full_restriction(ModulePtr m, const Window& w);

/// (M / M_{>cut})_j.
std::size_t quotient_component(const GradedModule& m, const Index& cut, const Index& j);

/// Span of x * A_{s,e} over every s < e in the window, taken from sub at s.
/// Generators of A (arrows into e) suffice because the window is order-convex.
Echelon action_image(const Subfamily& sub, const Index& e);

/// Throws DegreeError for seeds outside the window.
Subfamily generation_closure(ModulePtr m, const std::vector<ModuleElement>& seeds, const Window& w);

struct GeneratorReport {
  std::string window;
  /// In sweep order; each representative is independent of the action
  /// image from earlier degrees.
  std::vector<ModuleElement> generators;
  /// Set when the report comes from a stabilized finite-generation test.
  bool verified = false;

  /// (degree, count) for every degree carrying new generators, sweep order.
  std::vector<std::pair<Index, std::size_t>> counts() const;
  std::size_t total() const { return generators.size(); }
  nlohmann::json to_json(const Poset& poset) const;
};

GeneratorReport min_generators(const Subfamily& sub);

/// Generator reports over a chain of nested windows.
struct GrowthProfile {
  std::vector<GeneratorReport> reports;
  std::vector<std::size_t> totals() const;
  bool strictly_increasing() const;
  /// Same (degree, count) list on the last two windows.
  bool stable() const;
  nlohmann::json to_json(const Poset& poset) const;
};

/// m * A_{i,j} = 0 for every j in w with j > d, as a basis of the subspace of M_i.
std::vector<Vec> annihilated_beyond(const GradedModule& m, const Index& i, const Index& d,
                                    const Window& w);

struct TorsionEntry {
  Index degree;
  std::vector<Vec> basis;
  /// Least cut (in the linear extension) witnessing each basis vector.
  std::vector<Index> bounds;
};

struct TorsionReport {
  Window window;
  /// Aligned with window.elements().
  std::vector<TorsionEntry> entries;
  const TorsionEntry& at(const Index& d) const;
  std::size_t total_dim() const;
  Subfamily as_subfamily(ModulePtr m) const;
  nlohmann::json to_json(const Poset& poset) const;
};

/// Candidate cuts are the window elements with a nonempty strict upper set.
TorsionReport torsion_elements(ModulePtr m, const Window& w);

/// Degree-preserving maps M -> N, each determined by the images of the
/// generators of M.
struct HomSpace {
  std::vector<Index> generator_degrees;
  std::vector<std::size_t> offsets;
  std::vector<Vec> basis;
  std::size_t dim() const { return basis.size(); }
  /// Image of generator l under phi, in N_{j_l}.
  Vec generator_image(const Vec& phi, std::size_t l) const;
  /// Coordinates of phi over the basis; nullopt when phi is not a map.
  std::optional<Vec> coordinates(const Field& f, const Vec& phi) const;
};

HomSpace hom_space(const ModulePresentation& m, const GradedModule& n);
/// phi(x) for x in M_d.
Vec apply_hom(const ModulePresentation& m, const GradedModule& n, const HomSpace& h, const Vec& phi,
              const Index& d, const Vec& x);

/// coker of the star generators P_{e_k} -> P_i; requires a verified report
/// whose generators live in P_i.
PresentationPtr simple_presentation(AlgebraPtr a, const Index& i, const GeneratorReport& star);

/// Free cover of a subfamily by its minimal generators, with the window
/// syzygies as relations.
struct WindowPresentation {
  Window window;
  ModulePtr module;
  std::vector<ModuleElement> generators;
  PresentationPtr presentation;
  /// Coordinates over the generators (ambient coordinates of the cover at
  /// d) of an element of the subfamily; nullopt when x is not generated.
  std::optional<Vec> express(const Index& d, const Vec& x) const;
  /// Image of a cover element (ambient coordinates at d) in M_d.
  Vec evaluate(const Index& d, const Vec& ambient) const;
};

WindowPresentation present_in_window(const Subfamily& sub);

}  // namespace ialg

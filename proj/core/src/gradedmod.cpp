#include "ialg/gradedmod.hpp"

#include <map>

#include "ialg/errors.hpp"

namespace ialg {

namespace {

/// Splits an ambient vector into its blocks, re-indexed from zero.
std::vector<Vec> split_blocks(const Vec& v, const std::vector<std::size_t>& offsets) {
  std::vector<Vec> out(offsets.size() - 1);
  std::size_t block = 0;
  for (const auto& [col, x] : v) {
    while (block + 1 < offsets.size() && col >= offsets[block + 1]) ++block;
    out[block].emplace_back(static_cast<std::uint32_t>(col - offsets[block]), x);
  }
  return out;
}

nlohmann::json vec_json(const Vec& v) {
  auto out = nlohmann::json::array();
  for (const auto& [c, x] : v) out.push_back({c, Field::format(x)});
  return out;
}

}  // namespace

// ---------------------------------------------------------------- ModulePresentation

ModulePresentation::ModulePresentation(std::string name, AlgebraPtr algebra, ModuleMap map)
    : name_(std::move(name)), algebra_(std::move(algebra)), map_(std::move(map)) {
  const auto& rows = map_.target.degrees;
  const auto& cols = map_.source.degrees;
  const Poset& poset = algebra_->poset();
  if (map_.entries.empty() && !rows.empty()) map_.entries.assign(rows.size(), std::vector<Vec>(cols.size()));
  if (map_.entries.size() != rows.size()) throw DegreeError(name_ + ": matrix has the wrong number of rows");
  for (const auto& d : rows) {
    if (!poset.contains(d)) throw PosetError(name_ + ": generator degree outside the poset");
  }
  for (const auto& d : cols) {
    if (!poset.contains(d)) throw PosetError(name_ + ": relation degree outside the poset");
  }
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (map_.entries[l].size() != cols.size()) {
      throw DegreeError(name_ + ": matrix has the wrong number of columns");
    }
    for (std::size_t t = 0; t < cols.size(); ++t) {
      const Vec& a = map_.entries[l][t];
      if (a.empty()) continue;
      const std::size_t n = algebra_->dim(rows[l], cols[t]);
      if (a.back().first >= n) {
        throw DegreeError(name_ + ": entry (" + std::to_string(l) + "," + std::to_string(t) +
                          ") does not lie in A_{" + poset.format(rows[l]) + "," +
                          poset.format(cols[t]) + "}");
      }
    }
  }
}

std::shared_ptr<const ModulePresentation> ModulePresentation::free(std::string name, AlgebraPtr algebra,
                                                                   std::vector<Index> degrees) {
  ModuleMap m;
  m.target.degrees = std::move(degrees);
  m.entries.assign(m.target.degrees.size(), {});
  return std::make_shared<const ModulePresentation>(std::move(name), std::move(algebra), std::move(m));
}

std::shared_ptr<const ModulePresentation> ModulePresentation::zero(std::string name, AlgebraPtr algebra) {
  return free(std::move(name), std::move(algebra), {});
}

std::shared_ptr<const ModulePresentation> ModulePresentation::cyclic_quotient(
    std::string name, AlgebraPtr algebra, const Index& i, const std::vector<ModuleElement>& elements) {
  ModuleMap m;
  m.target.degrees = {i};
  m.entries.assign(1, {});
  for (const auto& e : elements) {
    m.source.degrees.push_back(e.degree);
    m.entries[0].push_back(e.coords);
  }
  return std::make_shared<const ModulePresentation>(std::move(name), std::move(algebra), std::move(m));
}

std::shared_ptr<const ModulePresentation> ModulePresentation::direct_sum(std::string name,
                                                                         const ModulePresentation& a,
                                                                         const ModulePresentation& b) {
  if (a.algebra_ != b.algebra_) throw DegreeError("direct sum of modules over different algebras");
  ModuleMap m;
  m.target.degrees = a.map_.target.degrees;
  m.target.degrees.insert(m.target.degrees.end(), b.map_.target.degrees.begin(),
                          b.map_.target.degrees.end());
  m.source.degrees = a.map_.source.degrees;
  m.source.degrees.insert(m.source.degrees.end(), b.map_.source.degrees.begin(),
                          b.map_.source.degrees.end());
  const std::size_t ra = a.generator_count(), ca = a.relation_count();
  m.entries.assign(m.target.degrees.size(), std::vector<Vec>(m.source.degrees.size()));
  for (std::size_t l = 0; l < ra; ++l) {
    for (std::size_t t = 0; t < ca; ++t) m.entries[l][t] = a.map_.entries[l][t];
  }
  for (std::size_t l = 0; l < b.generator_count(); ++l) {
    for (std::size_t t = 0; t < b.relation_count(); ++t) m.entries[ra + l][ca + t] = b.map_.entries[l][t];
  }
  return std::make_shared<const ModulePresentation>(std::move(name), a.algebra_, std::move(m));
}

std::vector<std::size_t> ModulePresentation::block_offsets(const Index& d) const {
  std::vector<std::size_t> out{0};
  for (const auto& j : map_.target.degrees) out.push_back(out.back() + algebra_->dim(j, d));
  return out;
}

Vec ModulePresentation::column_image(std::size_t t, const Index& d, const Vec& b) const {
  const auto offsets = block_offsets(d);
  const Index& s = map_.source.degrees[t];
  Vec out;
  for (std::size_t l = 0; l < map_.target.degrees.size(); ++l) {
    const Vec& a = map_.entries[l][t];
    if (a.empty()) continue;
    const Vec prod = algebra_->multiply(map_.target.degrees[l], s, d, a, b);
    axpy(field(), out, field().one(), shifted(prod, static_cast<std::uint32_t>(offsets[l])));
  }
  return out;
}

const ModulePresentation::Component& ModulePresentation::component(const Index& d) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return *it->second;
  }
  auto comp = std::make_shared<Component>();
  comp->offsets = block_offsets(d);
  Echelon rel(field(), comp->offsets.back());
  for (std::size_t t = 0; t < map_.source.degrees.size(); ++t) {
    const Index& s = map_.source.degrees[t];
    if (!poset().leq(s, d)) continue;
    const std::size_t n = algebra_->dim(s, d);
    for (std::size_t b = 0; b < n; ++b) {
      rel.insert(column_image(t, d, unit_vec(static_cast<std::uint32_t>(b))));
    }
  }
  comp->quotient = std::make_unique<Quotient>(std::move(rel));
  std::lock_guard<std::mutex> lock(mutex_);
  return *cache_.emplace(d, std::move(comp)).first->second;
}

std::size_t ModulePresentation::dim(const Index& d) const { return component(d).quotient->dim(); }

Vec ModulePresentation::project(const Index& d, const Vec& ambient) const {
  return component(d).quotient->project(ambient);
}

Vec ModulePresentation::lift(const Index& d, const Vec& coords) const {
  return component(d).quotient->lift(coords);
}

ModuleElement ModulePresentation::generator(std::size_t l) const {
  const Index& j = map_.target.degrees.at(l);
  const auto offsets = block_offsets(j);
  return {j, project(j, unit_vec(static_cast<std::uint32_t>(offsets[l])))};
}

Vec ModulePresentation::act(const Index& d, const Vec& v, const Index& e, const Vec& a) const {
  if (v.empty() || a.empty()) return {};
  const auto& cd = component(d);
  const auto& ce = component(e);
  const auto blocks = split_blocks(cd.quotient->lift(v), cd.offsets);
  Vec out;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    if (blocks[l].empty()) continue;
    const Vec prod = algebra_->multiply(map_.target.degrees[l], d, e, blocks[l], a);
    axpy(field(), out, field().one(), shifted(prod, static_cast<std::uint32_t>(ce.offsets[l])));
  }
  return ce.quotient->project(out);
}

// ---------------------------------------------------------------- derived modules

TailQuotientModule::TailQuotientModule(std::string name, ModulePtr base, Index cut)
    : name_(std::move(name)), base_(std::move(base)), cut_(std::move(cut)) {
  if (!base_->poset().contains(cut_)) throw PosetError("cut outside the poset");
}

std::size_t TailQuotientModule::dim(const Index& d) const {
  return poset().less(cut_, d) ? 0 : base_->dim(d);
}

Vec TailQuotientModule::act(const Index& d, const Vec& v, const Index& e, const Vec& a) const {
  if (poset().less(cut_, e)) return {};
  return base_->act(d, v, e, a);
}

DirectSumModule::DirectSumModule(std::string name, ModulePtr left, ModulePtr right)
    : name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {
  if (left_->algebra_ptr() != right_->algebra_ptr()) {
    throw DegreeError("direct sum of modules over different algebras");
  }
}

std::size_t DirectSumModule::dim(const Index& d) const { return left_->dim(d) + right_->dim(d); }

Vec DirectSumModule::act(const Index& d, const Vec& v, const Index& e, const Vec& a) const {
  const auto ld = static_cast<std::uint32_t>(left_->dim(d));
  Vec lv, rv;
  for (const auto& [c, x] : v) {
    if (c < ld) lv.emplace_back(c, x);
    else rv.emplace_back(c - ld, x);
  }
  Vec out = lv.empty() ? Vec{} : left_->act(d, lv, e, a);
  if (!rv.empty()) {
    const Vec r = shifted(right_->act(d, rv, e, a), static_cast<std::uint32_t>(left_->dim(e)));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

// ---------------------------------------------------------------- Subfamily

Subfamily::Subfamily(ModulePtr module, Window window)
    : module_(std::move(module)), window_(std::move(window)) {
  spaces_.reserve(window_.size());
  for (const auto& d : window_.elements()) spaces_.emplace_back(module_->field(), module_->dim(d));
}

const Echelon& Subfamily::at(const Index& d) const {
  auto pos = window_.position(d);
  if (!pos) throw DegreeError("degree " + format_coords(d) + " outside the window");
  return spaces_[*pos];
}

Echelon& Subfamily::at(const Index& d) {
  auto pos = window_.position(d);
  if (!pos) throw DegreeError("degree " + format_coords(d) + " outside the window");
  return spaces_[*pos];
}

std::size_t Subfamily::total_dim() const {
  std::size_t n = 0;
  for (const auto& s : spaces_) n += s.rank();
  return n;
}

std::vector<std::size_t> Subfamily::dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : spaces_) out.push_back(s.rank());
  return out;
}

bool Subfamily::operator==(const Subfamily& other) const {
  if (window_.elements() != other.window_.elements()) return false;
  for (std::size_t k = 0; k < spaces_.size(); ++k) {
    if (spaces_[k].rank() != other.spaces_[k].rank()) return false;
    for (const auto& row : spaces_[k].basis()) {
      if (!other.spaces_[k].contains(row)) return false;
    }
  }
  return true;
}

WindowQuotientModule::WindowQuotientModule(std::string name, Subfamily sub)
    : name_(std::move(name)), sub_(std::move(sub)) {
  for (const auto& d : sub_.window().elements()) quotients_.emplace_back(sub_.at(d));
}

std::size_t WindowQuotientModule::dim(const Index& d) const {
  auto pos = sub_.window().position(d);
  if (!pos) throw DegreeError("degree " + format_coords(d) + " outside the window of " + name_);
  return quotients_[*pos].dim();
}

Vec WindowQuotientModule::project(const Index& d, const Vec& base_coords) const {
  auto pos = sub_.window().position(d);
  if (!pos) throw DegreeError("degree " + format_coords(d) + " outside the window of " + name_);
  return quotients_[*pos].project(base_coords);
}

Vec WindowQuotientModule::act(const Index& d, const Vec& v, const Index& e, const Vec& a) const {
  auto pd = sub_.window().position(d);
  if (!pd) throw DegreeError("degree " + format_coords(d) + " outside the window of " + name_);
  const Vec lifted = quotients_[*pd].lift(v);
  return project(e, sub_.module().act(d, lifted, e, a));
}

// ---------------------------------------------------------------- tails and closures

Subfamily tail(ModulePtr m, const Index& d, bool strict, const Window& w) {
  Subfamily out(m, w);
  const Poset& poset = w.poset();
  for (const auto& j : w.elements()) {
    if (!(strict ? poset.less(d, j) : poset.leq(d, j))) continue;
    Echelon& e = out.at(j);
    for (std::size_t k = 0; k < e.ambient_dim(); ++k) e.insert(unit_vec(static_cast<std::uint32_t>(k)));
  }
  return out;
}

Subfamily full_restriction(ModulePtr m, const Window& w) {
  Subfamily out(m, w);
  for (const auto& j : w.elements()) {
    Echelon& e = out.at(j);
    for (std::size_t k = 0; k < e.ambient_dim(); ++k) e.insert(unit_vec(static_cast<std::uint32_t>(k)));
  }
  return out;
}

std::size_t quotient_component(const GradedModule& m, const Index& cut, const Index& j) {
  return m.poset().less(cut, j) ? 0 : m.dim(j);
}

Echelon action_image(const Subfamily& sub, const Index& e) {
  const GradedModule& m = sub.module();
  Echelon img(m.field(), m.dim(e));
  for (const auto& arrow : m.algebra().arrows_into(e)) {
    if (!sub.window().contains(arrow.source)) continue;
    for (const auto& row : sub.at(arrow.source).basis()) {
      img.insert(m.act(arrow.source, row, e, arrow.element));
    }
  }
  return img;
}

Subfamily generation_closure(ModulePtr m, const std::vector<ModuleElement>& seeds, const Window& w) {
  std::map<std::size_t, std::vector<Vec>> by_position;
  for (const auto& s : seeds) {
    auto pos = w.position(s.degree);
    if (!pos) throw DegreeError("seed degree " + w.poset().format(s.degree) + " outside the window");
    by_position[*pos].push_back(s.coords);
  }
  Subfamily out(m, w);
  const auto& elems = w.elements();
  for (std::size_t k = 0; k < elems.size(); ++k) {
    Echelon img = action_image(out, elems[k]);
    Echelon& cur = out.at(elems[k]);
    for (const auto& row : img.basis()) cur.insert(row);
    auto it = by_position.find(k);
    if (it != by_position.end()) {
      for (const auto& v : it->second) cur.insert(v);
    }
  }
  return out;
}

std::vector<std::pair<Index, std::size_t>> GeneratorReport::counts() const {
  std::vector<std::pair<Index, std::size_t>> out;
  for (const auto& g : generators) {
    if (!out.empty() && out.back().first == g.degree) ++out.back().second;
    else out.emplace_back(g.degree, 1);
  }
  return out;
}

nlohmann::json GeneratorReport::to_json(const Poset& poset) const {
  nlohmann::json j;
  j["window"] = window;
  j["total"] = total();
  auto& counts_json = j["counts"] = nlohmann::json::array();
  for (const auto& [d, n] : counts()) counts_json.push_back({{"degree", poset.format(d)}, {"count", n}});
  auto& gens = j["generators"] = nlohmann::json::array();
  for (const auto& g : generators) gens.push_back({{"degree", poset.format(g.degree)}, {"coords", vec_json(g.coords)}});
  return j;
}

GeneratorReport min_generators(const Subfamily& sub) {
  GeneratorReport out;
  out.window = sub.window().describe();
  for (const auto& e : sub.window().elements()) {
    const Echelon& here = sub.at(e);
    if (here.rank() == 0) continue;
    Echelon img = action_image(sub, e);
    for (const auto& row : here.basis()) {
      if (img.insert(row)) out.generators.push_back({e, row});
    }
  }
  return out;
}

std::vector<std::size_t> GrowthProfile::totals() const {
  std::vector<std::size_t> out;
  for (const auto& r : reports) out.push_back(r.total());
  return out;
}

bool GrowthProfile::strictly_increasing() const {
  if (reports.size() < 2) return false;
  for (std::size_t k = 1; k < reports.size(); ++k) {
    if (reports[k].total() <= reports[k - 1].total()) return false;
  }
  return true;
}

bool GrowthProfile::stable() const {
  if (reports.size() < 2) return false;
  return reports[reports.size() - 1].counts() == reports[reports.size() - 2].counts();
}

nlohmann::json GrowthProfile::to_json(const Poset& poset) const {
  nlohmann::json j;
  auto& ws = j["windows"] = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json wj;
    wj["window"] = r.window;
    wj["total"] = r.total();
    auto& cs = wj["counts"] = nlohmann::json::array();
    for (const auto& [d, n] : r.counts()) cs.push_back({{"degree", poset.format(d)}, {"count", n}});
    ws.push_back(std::move(wj));
  }
  j["totals"] = totals();
  j["strictly_increasing"] = strictly_increasing();
  j["stable"] = stable();
  return j;
}

// ---------------------------------------------------------------- torsion

namespace {

/// Images of the basis of M_i under every basis element of A_{i,j}, per window degree j >= i.
struct ForwardImages {
  std::vector<Index> targets;
  std::vector<std::size_t> widths;
  /// blocks[t][k]: image of basis vector k of M_i in the t-th target block.
  std::vector<std::vector<Vec>> blocks;
};

ForwardImages forward_images(const GradedModule& m, const Index& i, const Window& w) {
  ForwardImages out;
  const Poset& poset = w.poset();
  const IndexedAlgebra& a = m.algebra();
  const std::size_t n = m.dim(i);
  for (const auto& j : w.elements()) {
    if (!poset.leq(i, j)) continue;
    const std::size_t na = a.dim(i, j), nm = m.dim(j);
    std::vector<Vec> block(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t b = 0; b < na; ++b) {
        const Vec img = m.act(i, unit_vec(static_cast<std::uint32_t>(k)), j,
                              unit_vec(static_cast<std::uint32_t>(b)));
        const Vec s = shifted(img, static_cast<std::uint32_t>(b * nm));
        block[k].insert(block[k].end(), s.begin(), s.end());
      }
    }
    out.targets.push_back(j);
    out.widths.push_back(na * nm);
    out.blocks.push_back(std::move(block));
  }
  return out;
}

std::vector<Vec> kernel_beyond(const GradedModule& m, const ForwardImages& f, std::size_t n,
                               const Index& d) {
  const Poset& poset = m.poset();
  std::vector<Vec> images(n);
  std::size_t offset = 0;
  for (std::size_t t = 0; t < f.targets.size(); ++t) {
    if (!poset.less(d, f.targets[t])) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const Vec s = shifted(f.blocks[t][k], static_cast<std::uint32_t>(offset));
      images[k].insert(images[k].end(), s.begin(), s.end());
    }
    offset += f.widths[t];
  }
  return kernel_basis(m.field(), images, offset);
}

}  // namespace

std::vector<Vec> annihilated_beyond(const GradedModule& m, const Index& i, const Index& d,
                                    const Window& w) {
  const std::size_t n = m.dim(i);
  if (n == 0) return {};
  return kernel_beyond(m, forward_images(m, i, w), n, d);
}

const TorsionEntry& TorsionReport::at(const Index& d) const {
  auto pos = window.position(d);
  if (!pos) throw DegreeError("degree " + format_coords(d) + " outside the window");
  return entries[*pos];
}

std::size_t TorsionReport::total_dim() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.basis.size();
  return n;
}

Subfamily TorsionReport::as_subfamily(ModulePtr m) const {
  Subfamily out(std::move(m), window);
  for (const auto& e : entries) {
    for (const auto& v : e.basis) out.at(e.degree).insert(v);
  }
  return out;
}

nlohmann::json TorsionReport::to_json(const Poset& poset) const {
  nlohmann::json j;
  j["window"] = window.describe();
  j["total_dim"] = total_dim();
  auto& es = j["degrees"] = nlohmann::json::array();
  for (const auto& e : entries) {
    if (e.basis.empty()) continue;
    nlohmann::json ej;
    ej["degree"] = poset.format(e.degree);
    ej["dim"] = e.basis.size();
    auto& bs = ej["bounds"] = nlohmann::json::array();
    for (const auto& b : e.bounds) bs.push_back(poset.format(b));
    es.push_back(std::move(ej));
  }
  return j;
}

TorsionReport torsion_elements(ModulePtr m, const Window& w) {
  TorsionReport out{w, {}};
  std::vector<Index> cuts;
  for (const auto& d : w.elements()) {
    if (!w.strict_upper_set(d).empty()) cuts.push_back(d);
  }
  for (const auto& i : w.elements()) {
    TorsionEntry entry{i, {}, {}};
    const std::size_t n = m->dim(i);
    if (n > 0) {
      const ForwardImages f = forward_images(*m, i, w);
      Echelon span(m->field(), n);
      for (const auto& d : cuts) {
        if (span.rank() == n) break;
        for (const auto& z : kernel_beyond(*m, f, n, d)) {
          if (span.insert(z)) {
            entry.basis.push_back(z);
            entry.bounds.push_back(d);
          }
        }
      }
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

// ---------------------------------------------------------------- Hom

Vec HomSpace::generator_image(const Vec& phi, std::size_t l) const {
  Vec out;
  for (const auto& [c, x] : phi) {
    if (c >= offsets[l] && c < offsets[l + 1]) {
      out.emplace_back(static_cast<std::uint32_t>(c - offsets[l]), x);
    }
  }
  return out;
}

std::optional<Vec> HomSpace::coordinates(const Field& f, const Vec& phi) const {
  Echelon e(f, offsets.back(), true);
  for (const auto& b : basis) e.insert(b);
  return e.express(phi);
}

HomSpace hom_space(const ModulePresentation& m, const GradedModule& n) {
  HomSpace h;
  h.generator_degrees = m.generator_degrees();
  h.offsets.push_back(0);
  for (const auto& j : h.generator_degrees) h.offsets.push_back(h.offsets.back() + n.dim(j));

  const auto& map = m.map();
  std::vector<std::size_t> constraint_offsets{0};
  for (const auto& s : map.source.degrees) constraint_offsets.push_back(constraint_offsets.back() + n.dim(s));

  std::vector<Vec> images(h.offsets.back());
  for (std::size_t l = 0; l < h.generator_degrees.size(); ++l) {
    const Index& j = h.generator_degrees[l];
    for (std::size_t k = 0; k < h.offsets[l + 1] - h.offsets[l]; ++k) {
      Vec& img = images[h.offsets[l] + k];
      for (std::size_t t = 0; t < map.source.degrees.size(); ++t) {
        const Vec& a = map.entries[l][t];
        if (a.empty()) continue;
        const Vec v = n.act(j, unit_vec(static_cast<std::uint32_t>(k)), map.source.degrees[t], a);
        axpy(n.field(), img, n.field().one(), shifted(v, static_cast<std::uint32_t>(constraint_offsets[t])));
      }
    }
  }
  h.basis = kernel_basis(n.field(), images, constraint_offsets.back());
  return h;
}

Vec apply_hom(const ModulePresentation& m, const GradedModule& n, const HomSpace& h, const Vec& phi,
              const Index& d, const Vec& x) {
  const auto blocks = split_blocks(m.lift(d, x), m.block_offsets(d));
  Vec out;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    if (blocks[l].empty()) continue;
    const Vec img = h.generator_image(phi, l);
    if (img.empty()) continue;
    axpy(n.field(), out, n.field().one(), n.act(h.generator_degrees[l], img, d, blocks[l]));
  }
  return out;
}

PresentationPtr simple_presentation(AlgebraPtr a, const Index& i, const GeneratorReport& star) {
  if (!star.verified) throw Error("simple module needs a verified generating set of the diagonal tail");
  const Poset& poset = a->poset();
  for (const auto& g : star.generators) {
    if (!poset.less(i, g.degree)) throw DegreeError("generating set element not above the index");
  }
  return ModulePresentation::cyclic_quotient("S" + poset.format(i), std::move(a), i, star.generators);
}

// ---------------------------------------------------------------- in-window presentations

std::optional<Vec> WindowPresentation::express(const Index& d, const Vec& x) const {
  if (!window.contains(d)) throw DegreeError("degree " + format_coords(d) + " outside the window");
  const Field& f = module->field();
  const auto offsets = presentation->block_offsets(d);
  Echelon ev(f, module->dim(d), true);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const std::size_t n = offsets[k + 1] - offsets[k];
    for (std::size_t b = 0; b < n; ++b) {
      ev.insert(module->act(generators[k].degree, generators[k].coords, d,
                            unit_vec(static_cast<std::uint32_t>(b))));
    }
  }
  return ev.express(x);
}

Vec WindowPresentation::evaluate(const Index& d, const Vec& ambient) const {
  const auto blocks = split_blocks(ambient, presentation->block_offsets(d));
  Vec out;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].empty()) continue;
    axpy(module->field(), out, module->field().one(),
         module->act(generators[k].degree, generators[k].coords, d, blocks[k]));
  }
  return out;
}

WindowPresentation present_in_window(const Subfamily& sub) {
  WindowPresentation out{sub.window(), sub.module_ptr(), min_generators(sub).generators, nullptr};
  std::vector<Index> degrees;
  for (const auto& g : out.generators) degrees.push_back(g.degree);
  auto cover = ModulePresentation::free(sub.module().name() + ".cover", sub.module().algebra_ptr(), degrees);

  Subfamily syzygies(cover, sub.window());
  for (const auto& d : sub.window().elements()) {
    const auto offsets = cover->block_offsets(d);
    std::vector<Vec> images;
    for (std::size_t k = 0; k < out.generators.size(); ++k) {
      for (std::size_t b = 0; b < offsets[k + 1] - offsets[k]; ++b) {
        images.push_back(sub.module().act(out.generators[k].degree, out.generators[k].coords, d,
                                          unit_vec(static_cast<std::uint32_t>(b))));
      }
    }
    Echelon& kd = syzygies.at(d);
    for (const auto& v : kernel_basis(sub.module().field(), images, sub.module().dim(d))) kd.insert(v);
  }

  ModuleMap map;
  map.target.degrees = degrees;
  map.entries.assign(degrees.size(), {});
  for (const auto& rel : min_generators(syzygies).generators) {
    map.source.degrees.push_back(rel.degree);
    const auto blocks = split_blocks(rel.coords, cover->block_offsets(rel.degree));
    for (std::size_t k = 0; k < degrees.size(); ++k) map.entries[k].push_back(blocks[k]);
  }
  out.presentation = std::make_shared<const ModulePresentation>(sub.module().name() + ".win",
                                                                sub.module().algebra_ptr(), std::move(map));
  return out;
}

}  // namespace ialg

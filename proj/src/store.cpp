#include "pground/store.hpp"

#include <algorithm>

namespace pground {

std::optional<std::uint32_t> Relation::find(std::span<const Symbol> values) const {
  auto it = index_.find(values);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::uint32_t>* Relation::postings(std::size_t column, Symbol value) const {
  const auto& col = columns_[column];
  auto it = col.find(value);
  return it == col.end() ? nullptr : &it->second;
}

bool Relation::insert(std::span<const Symbol> values) {
  auto position = static_cast<std::uint32_t>(count_);
  auto [it, inserted] = index_.try_emplace(Tuple(values.begin(), values.end()), position);
  if (!inserted) return false;
  data_.insert(data_.end(), values.begin(), values.end());
  for (std::size_t c = 0; c < arity_; ++c) columns_[c][values[c]].push_back(position);
  ++count_;
  return true;
}

void Relation::clear() {
  count_ = 0;
  data_.clear();
  index_.clear();
  for (auto& col : columns_) col.clear();
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    auto t = tuple(i);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

const char* to_string(Source source) {
  switch (source) {
    case Source::all: return "all";
    case Source::accumulated: return "S";
    case Source::delta: return "delta";
  }
  return "?";
}

bool PredicateExtension::add_accumulated(std::span<const Symbol> values) {
  if (delta_.contains(values) || fresh_.contains(values)) return false;
  return accumulated_.insert(values);
}

bool PredicateExtension::add_fresh(std::span<const Symbol> values) {
  if (accumulated_.contains(values) || delta_.contains(values)) return false;
  std::lock_guard lock(fresh_mutex_);
  return fresh_.insert(values);
}

namespace {

void move_sorted(Relation& from, Relation& to) {
  auto tuples = from.tuples();
  std::sort(tuples.begin(), tuples.end());
  for (const auto& t : tuples) to.insert(t);
  from.clear();
}

}  // namespace

void PredicateExtension::promote_fresh() {
  delta_.clear();
  move_sorted(fresh_, delta_);
}

void PredicateExtension::merge_delta() {
  for (std::size_t i = 0; i < delta_.size(); ++i) accumulated_.insert(delta_.tuple(i));
  delta_.clear();
}

void PredicateExtension::absorb_fresh() { move_sorted(fresh_, accumulated_); }

ExtensionStore::ExtensionStore(const PredicateTable& predicates) {
  extensions_.reserve(predicates.size());
  for (PredicateId p = 0; p < predicates.size(); ++p)
    extensions_.push_back(std::make_unique<PredicateExtension>(predicates.info(p).arity));
}

void ExtensionStore::load(std::span<const GroundAtom> facts) {
  for (const auto& f : facts) at(f.predicate).add_accumulated(f.args);
}

std::vector<Tuple> ExtensionStore::atoms(PredicateId p) const {
  const auto& ext = at(p);
  std::vector<Tuple> out = ext.accumulated().tuples();
  for (auto& t : ext.delta().tuples()) out.push_back(std::move(t));
  for (auto& t : ext.fresh().tuples()) out.push_back(std::move(t));
  std::sort(out.begin(), out.end());
  return out;
}

bool ExtensionStore::roles_disjoint() const {
  for (const auto& ext : extensions_) {
    const auto& s = ext->accumulated();
    const auto& d = ext->delta();
    const auto& n = ext->fresh();
    for (std::size_t i = 0; i < d.size(); ++i)
      if (s.contains(d.tuple(i))) return false;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (s.contains(n.tuple(i)) || d.contains(n.tuple(i))) return false;
  }
  return true;
}

}  // namespace pground

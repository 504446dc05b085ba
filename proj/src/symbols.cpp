#include "pground/symbols.hpp"

#include "pground/error.hpp"

namespace pground {

Symbol SymbolTable::intern(std::string_view name) {
  std::string key(name);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  auto id = static_cast<Symbol>(names_.size());
  names_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<Symbol> SymbolTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

PredicateId PredicateTable::intern(std::string_view name, std::size_t arity) {
  std::string key(name);
  if (auto it = ids_.find(key); it != ids_.end()) {
    const auto& info = predicates_[it->second];
    if (info.arity != arity) throw ArityMismatch(key, info.arity, arity);
    return it->second;
  }
  auto id = static_cast<PredicateId>(predicates_.size());
  predicates_.push_back({key, static_cast<std::uint32_t>(arity)});
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<PredicateId> PredicateTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

}  // namespace pground

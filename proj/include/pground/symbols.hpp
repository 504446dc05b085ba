#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pground {

using Symbol = std::uint32_t;
using PredicateId = std::uint32_t;

inline constexpr Symbol kUnbound = ~Symbol{0};

// Interned constant names. Ids are dense and assigned in first-seen order.
class SymbolTable {
 public:
  Symbol intern(std::string_view name);
  std::optional<Symbol> find(std::string_view name) const;
  const std::string& name(Symbol symbol) const { return names_.at(symbol); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> ids_;
};

struct PredicateInfo {
  std::string name;
  std::uint32_t arity = 0;
};

// Predicates are keyed by name; a name used with two arities is rejected.
class PredicateTable {
 public:
  PredicateId intern(std::string_view name, std::size_t arity);
  std::optional<PredicateId> find(std::string_view name) const;
  const PredicateInfo& info(PredicateId id) const { return predicates_.at(id); }
  std::size_t size() const { return predicates_.size(); }

 private:
  std::vector<PredicateInfo> predicates_;
  std::unordered_map<std::string, PredicateId> ids_;
};

struct Vocabulary {
  SymbolTable symbols;
  PredicateTable predicates;
};

using Tuple = std::vector<Symbol>;

// Transparent hashing so containers keyed by Tuple can be probed with spans.
struct TupleHash {
  using is_transparent = void;
  std::size_t operator()(std::span<const Symbol> values) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull ^ values.size();
    for (Symbol v : values) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
  std::size_t operator()(const Tuple& values) const noexcept {
    return (*this)(std::span<const Symbol>(values));
  }
};

struct TupleEqual {
  using is_transparent = void;
  bool operator()(std::span<const Symbol> a, std::span<const Symbol> b) const noexcept {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
  }
};

}  // namespace pground

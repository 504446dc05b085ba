#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "pground/model.hpp"

namespace pground {

// Append-only, insertion-ordered set of tuples with one hash index per column.
// Postings lists are ascending, so index ranges can be intersected by binary search.
class Relation {
 public:
  explicit Relation(std::size_t arity = 0) : arity_(arity), columns_(arity) {}

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  std::span<const Symbol> tuple(std::size_t index) const {
    return {data_.data() + index * arity_, arity_};
  }

  std::optional<std::uint32_t> find(std::span<const Symbol> values) const;
  bool contains(std::span<const Symbol> values) const { return find(values).has_value(); }

  // Tuple positions whose column holds value; nullptr when there are none.
  const std::vector<std::uint32_t>* postings(std::size_t column, Symbol value) const;
  std::size_t distinct(std::size_t column) const { return columns_[column].size(); }

  bool insert(std::span<const Symbol> values);
  void clear();

  std::vector<Tuple> tuples() const;

 private:
  std::size_t arity_;
  std::size_t count_ = 0;
  std::vector<Symbol> data_;
  std::unordered_map<Tuple, std::uint32_t, TupleHash, TupleEqual> index_;
  std::vector<std::unordered_map<Symbol, std::vector<std::uint32_t>>> columns_;
};

// Which part of a predicate's extension a body literal ranges over.
enum class Source : std::uint8_t { all, accumulated, delta };

const char* to_string(Source source);

// The S, ΔS and NS roles of one predicate. An atom is held by at most one role.
// S and ΔS change only between parallel phases; NS takes concurrent inserts.
class PredicateExtension {
 public:
  explicit PredicateExtension(std::size_t arity) : accumulated_(arity), delta_(arity), fresh_(arity) {}

  const Relation& accumulated() const { return accumulated_; }
  const Relation& delta() const { return delta_; }
  const Relation& fresh() const { return fresh_; }

  // Adds to S directly (EDB loading).
  bool add_accumulated(std::span<const Symbol> values);

  // Thread-safe NS insertion; false when the atom is already in S, ΔS or NS.
  bool add_fresh(std::span<const Symbol> values);

  // ΔS := NS (tuples sorted), NS := ∅. Requires ΔS empty.
  void promote_fresh();
  // S := S ∪ ΔS, ΔS := ∅.
  void merge_delta();
  // S := S ∪ NS (tuples sorted), NS := ∅.
  void absorb_fresh();

  std::size_t total_size() const { return accumulated_.size() + delta_.size() + fresh_.size(); }

 private:
  Relation accumulated_;
  Relation delta_;
  Relation fresh_;
  std::mutex fresh_mutex_;
};

class ExtensionStore {
 public:
  ExtensionStore() = default;
  explicit ExtensionStore(const PredicateTable& predicates);
  ExtensionStore(ExtensionStore&&) = default;
  ExtensionStore& operator=(ExtensionStore&&) = default;

  PredicateExtension& at(PredicateId p) { return *extensions_.at(p); }
  const PredicateExtension& at(PredicateId p) const { return *extensions_.at(p); }
  std::size_t predicate_count() const { return extensions_.size(); }

  void load(std::span<const GroundAtom> facts);

  // All atoms of p currently in S ∪ ΔS ∪ NS, sorted.
  std::vector<Tuple> atoms(PredicateId p) const;

  // Role-disjointness check: S ∩ ΔS = ∅ and (S ∪ ΔS) ∩ NS = ∅ for every predicate.
  bool roles_disjoint() const;

 private:
  std::vector<std::unique_ptr<PredicateExtension>> extensions_;
};

// Index range [begin, end) into one relation.
struct Segment {
  const Relation* relation = nullptr;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

}  // namespace pground

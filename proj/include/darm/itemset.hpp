#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace darm {

using Item = std::uint32_t;
using Count = std::uint64_t;

/// A strictly ascending, duplicate-free list of item ids.
///
/// Itemsets are totally ordered by length first, then lexicographically, which
/// is the order used for every serialized output.
class Itemset {
 public:
  using const_iterator = std::vector<Item>::const_iterator;

  Itemset() = default;
  Itemset(std::initializer_list<Item> items);
  explicit Itemset(std::vector<Item> items);

  /// Sorts and deduplicates.
  static Itemset from_unsorted(std::vector<Item> items);

  std::span<const Item> items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  Item operator[](std::size_t i) const { return items_[i]; }
  Item front() const { return items_.front(); }
  Item back() const { return items_.back(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }

  /// Copy with the element at `index` removed.
  Itemset without(std::size_t index) const;

  /// Copy with `item` appended; `item` must exceed back().
  Itemset extended(Item item) const;

  bool contains(const Itemset& other) const;

  friend bool operator==(const Itemset&, const Itemset&) = default;
  friend std::strong_ordering operator<=>(const Itemset& a, const Itemset& b);

 private:
  std::vector<Item> items_;
};

/// "{1,2,5}"
std::string to_string(const Itemset& x);

}  // namespace darm

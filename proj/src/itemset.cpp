#include "darm/itemset.hpp"

#include <algorithm>

#include "darm/errors.hpp"

namespace darm {
namespace {

void require_strictly_ascending(const std::vector<Item>& items) {
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i - 1] >= items[i]) {
      throw ArgumentError("itemset must be strictly ascending: " +
                          std::to_string(items[i - 1]) + " before " +
                          std::to_string(items[i]));
    }
  }
}

}  // namespace

Itemset::Itemset(std::initializer_list<Item> items) : items_(items) {
  require_strictly_ascending(items_);
}

Itemset::Itemset(std::vector<Item> items) : items_(std::move(items)) {
  require_strictly_ascending(items_);
}

Itemset Itemset::from_unsorted(std::vector<Item> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Itemset out;
  out.items_ = std::move(items);
  return out;
}

Itemset Itemset::without(std::size_t index) const {
  Itemset out;
  out.items_.reserve(items_.size() - 1);
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i != index) out.items_.push_back(items_[i]);
  }
  return out;
}

Itemset Itemset::extended(Item item) const {
  if (!items_.empty() && item <= items_.back()) {
    throw ArgumentError("extended: item " + std::to_string(item) +
                        " does not follow " + std::to_string(items_.back()));
  }
  Itemset out = *this;
  out.items_.push_back(item);
  return out;
}

bool Itemset::contains(const Itemset& other) const {
  return std::includes(items_.begin(), items_.end(), other.items_.begin(),
                       other.items_.end());
}

std::strong_ordering operator<=>(const Itemset& a, const Itemset& b) {
  if (auto c = a.items_.size() <=> b.items_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end());
}

std::string to_string(const Itemset& x) {
  std::string out = "{";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(x[i]);
  }
  out += '}';
  return out;
}

}  // namespace darm

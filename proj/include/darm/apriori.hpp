#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darm/dataset.hpp"
#include "darm/itemset.hpp"
#include "darm/lmatrix.hpp"
#include "darm/metrics.hpp"

namespace darm {

/// Minimum support as an exact fraction in (0, 1].
class Minsup {
 public:
  /// Throws ArgumentError unless 0 < numerator/denominator <= 1.
  Minsup(std::uint64_t numerator, std::uint64_t denominator);

  /// Accepts "a/b", a decimal such as "0.05", or "1". The original text is
  /// kept for serialization.
  static Minsup parse(std::string_view text);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }
  const std::string& text() const noexcept { return text_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Minsup& a, const Minsup& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  std::uint64_t num_ = 1;
  std::uint64_t den_ = 1;
  std::string text_;
};

/// ceil(s * size) in exact integer arithmetic. An itemset is frequent with
/// respect to (s, size) iff its count is >= the returned value.
Count threshold(const Minsup& s, Count size);

/// Join and prune: merges k-itemsets sharing their first k-1 items, then drops
/// any (k+1)-candidate with a k-subset missing from `prev_frequent`.
/// Output is sorted and duplicate-free. Mixed lengths throw ArgumentError.
std::vector<Itemset> apriori_gen(std::span<const Itemset> prev_frequent);

struct MiningResult {
  Minsup minsup{1, 1};
  Count db_size = 0;
  std::map<Itemset, Count> frequent;

  Count threshold() const { return darm::threshold(minsup, db_size); }

  /// Members of length k, in order.
  std::vector<Itemset> level(std::size_t k) const;

  friend bool operator==(const MiningResult&, const MiningResult&) = default;
};

/// Level-wise Apriori over an LMatrix. Appends one RoundMetrics per level to
/// `rounds` when given.
MiningResult sequential_apriori(const LMatrix& matrix, const Minsup& minsup,
                                std::vector<RoundMetrics>* rounds = nullptr);

/// Builds an LMatrix for `db` (one raw scan) and mines it.
MiningResult sequential_apriori(const TransactionDb& db, const Minsup& minsup,
                                std::vector<RoundMetrics>* rounds = nullptr);

}  // namespace darm

#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "darm/dataset.hpp"
#include "darm/itemset.hpp"

namespace darm {

/// Number of full passes made over raw transaction lists.
class ScanCounter {
 public:
  ScanCounter() = default;
  ScanCounter(const ScanCounter& other) : raw_scans_(other.raw_scans()) {}
  ScanCounter& operator=(const ScanCounter& other) {
    raw_scans_.store(other.raw_scans(), std::memory_order_relaxed);
    return *this;
  }

  void record_scan() noexcept { raw_scans_.fetch_add(1, std::memory_order_relaxed); }
  std::uint64_t raw_scans() const noexcept { return raw_scans_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> raw_scans_{0};
};

/// Column-major transaction x item bit matrix.
///
/// Column c holds one bit per transaction, set iff the transaction contains
/// item c. The support of an itemset is the popcount of the AND of its
/// columns, so once built the source database is never consulted again.
/// Bits past rows() in the last word of each column are always zero.
class LMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  LMatrix() = default;

  /// Single pass over `db`; increments `counter` by exactly one.
  static LMatrix build(const TransactionDb& db, ScanCounter& counter);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_column() const noexcept { return words_; }

  std::span<const Word> column(Item item) const;
  bool test(std::size_t row, Item item) const;

  /// Throws ArgumentError for an empty itemset or an item >= cols().
  Count support(const Itemset& x) const;

  /// Element-wise support(); errors name the offending index.
  std::vector<Count> support_batch(std::span<const Itemset> xs) const;

  /// Rows of '0'/'1', one line per transaction.
  void dump(std::ostream& out) const;

 private:
  void check(const Itemset& x) const;
  Count support_unchecked(const Itemset& x, std::vector<Word>& scratch) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;  // cols_ blocks of words_ words
};

}  // namespace darm

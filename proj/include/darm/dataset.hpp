#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "darm/itemset.hpp"

namespace darm {

/// A horizontal transaction database over the dense item universe [0, universe).
class TransactionDb {
 public:
  TransactionDb() = default;

  /// Throws ArgumentError if any item is >= universe.
  TransactionDb(std::vector<Itemset> transactions, std::size_t universe);

  /// Universe inferred as 1 + the largest item id (0 when there are no items).
  static TransactionDb from_transactions(std::vector<Itemset> transactions);

  const std::vector<Itemset>& transactions() const noexcept { return transactions_; }
  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return transactions_.size(); }
  bool empty() const noexcept { return transactions_.empty(); }
  const Itemset& operator[](std::size_t i) const { return transactions_[i]; }

  /// First `n` transactions, same universe.
  TransactionDb prefix(std::size_t n) const;

  friend bool operator==(const TransactionDb&, const TransactionDb&) = default;

 private:
  std::vector<Itemset> transactions_;
  std::size_t universe_ = 0;
};

/// Reads FIMI .dat text: one transaction per line, items separated by spaces
/// or tabs. Blank lines are skipped and duplicate items within a line are
/// collapsed. Throws ParseError naming the offending line.
TransactionDb load_fimi(std::istream& in);
TransactionDb load_fimi_file(const std::filesystem::path& path);

void write_fimi(std::ostream& out, const TransactionDb& db);

enum class PartitionStrategy { contiguous, round_robin, random };

struct PartitionSpec {
  std::size_t n_sites = 1;
  PartitionStrategy strategy = PartitionStrategy::contiguous;
  std::uint64_t seed = 0;
};

/// Splits `db` horizontally across `spec.n_sites` sites. Every partition keeps
/// the parent's universe and the parent's relative transaction order.
/// Throws PartitionError when db.size() < n_sites.
std::vector<TransactionDb> partition(const TransactionDb& db, const PartitionSpec& spec);

/// Concatenation of `parts` in site order; the universe is the widest one.
TransactionDb concatenate(const std::vector<TransactionDb>& parts);

struct SyntheticParams {
  std::size_t n_transactions = 0;
  std::size_t n_items = 1;
  std::size_t avg_len = 1;
  std::uint64_t seed = 0;
};

/// Seeded generator with rank-biased item popularity: item 0 is the most
/// popular, and popularity falls off roughly as 1/(rank+1). Transaction lengths
/// are uniform on avg_len +- avg_len/2, clamped to [1, n_items].
TransactionDb generate_synthetic(const SyntheticParams& params);

}  // namespace darm

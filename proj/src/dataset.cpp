#include "darm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "darm/errors.hpp"

namespace darm {
namespace {

// Unbiased draw from [0, bound) using rejection; the standard distributions
// are not portable across library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Uniform on (0, 1).
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

TransactionDb::TransactionDb(std::vector<Itemset> transactions, std::size_t universe)
    : transactions_(std::move(transactions)), universe_(universe) {
  for (std::size_t t = 0; t < transactions_.size(); ++t) {
    const Itemset& txn = transactions_[t];
    if (!txn.empty() && txn.back() >= universe_) {
      throw ArgumentError("transaction " + std::to_string(t) + " holds item " +
                          std::to_string(txn.back()) + " outside universe " +
                          std::to_string(universe_));
    }
  }
}

TransactionDb TransactionDb::from_transactions(std::vector<Itemset> transactions) {
  std::size_t universe = 0;
  for (const auto& txn : transactions) {
    if (!txn.empty()) universe = std::max<std::size_t>(universe, txn.back() + 1);
  }
  return TransactionDb(std::move(transactions), universe);
}

TransactionDb TransactionDb::prefix(std::size_t n) const {
  n = std::min(n, transactions_.size());
  return TransactionDb(
      std::vector<Itemset>(transactions_.begin(), transactions_.begin() + n), universe_);
}

TransactionDb load_fimi(std::istream& in) {
  std::vector<Itemset> transactions;
  std::string line;
  std::size_t line_no = 0;
  std::vector<Item> items;
  while (std::getline(in, line)) {
    ++line_no;
    items.clear();
    std::size_t pos = 0;
    const std::size_t n = line.size();
    while (pos < n) {
      const char c = line[pos];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos;
        continue;
      }
      const std::size_t start = pos;
      while (pos < n && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
      const std::string_view token(line.data() + start, pos - start);
      std::uint64_t value = 0;
      for (char d : token) {
        if (d < '0' || d > '9') {
          throw ParseError(line_no, "malformed item '" + std::string(token) + "'");
        }
        value = value * 10 + static_cast<std::uint64_t>(d - '0');
        if (value >= std::numeric_limits<Item>::max()) {
          throw ParseError(line_no, "item id out of range '" + std::string(token) + "'");
        }
      }
      items.push_back(static_cast<Item>(value));
    }
    // Empty transactions support nothing; dropping them keeps D meaningful.
    if (!items.empty()) transactions.push_back(Itemset::from_unsorted(items));
  }
  if (in.bad()) throw Error("read failure after line " + std::to_string(line_no));
  return TransactionDb::from_transactions(std::move(transactions));
}

TransactionDb load_fimi_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return load_fimi(in);
}

void write_fimi(std::ostream& out, const TransactionDb& db) {
  for (const auto& txn : db.transactions()) {
    for (std::size_t i = 0; i < txn.size(); ++i) {
      if (i) out << ' ';
      out << txn[i];
    }
    out << '\n';
  }
}

std::vector<TransactionDb> partition(const TransactionDb& db, const PartitionSpec& spec) {
  const std::size_t n = spec.n_sites;
  if (n == 0) throw PartitionError("n_sites must be at least 1");
  if (db.size() < n) {
    throw PartitionError("cannot split " + std::to_string(db.size()) +
                         " transactions across " + std::to_string(n) + " sites");
  }

  std::vector<std::vector<std::size_t>> assignment(n);
  const std::size_t size = db.size();

  auto assign_blocks = [&](const std::vector<std::size_t>& order) {
    const std::size_t base = size / n;
    const std::size_t extra = size % n;
    std::size_t next = 0;
    for (std::size_t site = 0; site < n; ++site) {
      const std::size_t len = base + (site < extra ? 1 : 0);
      assignment[site].assign(order.begin() + next, order.begin() + next + len);
      next += len;
    }
  };

  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  switch (spec.strategy) {
    case PartitionStrategy::contiguous:
      assign_blocks(order);
      break;
    case PartitionStrategy::round_robin:
      for (std::size_t t = 0; t < size; ++t) assignment[t % n].push_back(t);
      break;
    case PartitionStrategy::random: {
      std::mt19937_64 rng(spec.seed);
      for (std::size_t i = size; i > 1; --i) {
        std::swap(order[i - 1], order[uniform_below(rng, i)]);
      }
      assign_blocks(order);
      for (auto& block : assignment) std::sort(block.begin(), block.end());
      break;
    }
  }

  std::vector<TransactionDb> parts;
  parts.reserve(n);
  for (const auto& rows : assignment) {
    std::vector<Itemset> txns;
    txns.reserve(rows.size());
    for (std::size_t r : rows) txns.push_back(db[r]);
    parts.emplace_back(std::move(txns), db.universe());
  }
  return parts;
}

TransactionDb concatenate(const std::vector<TransactionDb>& parts) {
  std::vector<Itemset> txns;
  std::size_t universe = 0;
  for (const auto& p : parts) {
    txns.insert(txns.end(), p.transactions().begin(), p.transactions().end());
    universe = std::max(universe, p.universe());
  }
  return TransactionDb(std::move(txns), universe);
}

TransactionDb generate_synthetic(const SyntheticParams& params) {
  if (params.n_items < 1) throw ArgumentError("n_items must be at least 1");
  if (params.avg_len < 1 || params.avg_len > params.n_items) {
    throw ArgumentError("avg_len must lie in [1, n_items]");
  }
  if (params.n_items > std::numeric_limits<Item>::max()) {
    throw ArgumentError("n_items exceeds the item id range");
  }

  const std::size_t n_items = params.n_items;
  std::vector<double> inv_weight(n_items);
  for (std::size_t r = 0; r < n_items; ++r) inv_weight[r] = static_cast<double>(r + 1);

  std::mt19937_64 rng(params.seed);
  const std::size_t half_width = params.avg_len / 2;
  std::vector<std::pair<double, Item>> keys(n_items);
  std::vector<Itemset> transactions;
  transactions.reserve(params.n_transactions);
  std::vector<Item> items;

  for (std::size_t t = 0; t < params.n_transactions; ++t) {
    const auto offset = static_cast<std::int64_t>(uniform_below(rng, 2 * half_width + 1)) -
                        static_cast<std::int64_t>(half_width);
    const auto len = static_cast<std::size_t>(
        std::clamp<std::int64_t>(static_cast<std::int64_t>(params.avg_len) + offset, 1,
                                 static_cast<std::int64_t>(n_items)));

    // Weighted sampling without replacement (Efraimidis-Spirakis): keep the
    // len largest log(u)/w, i.e. the smallest -log(u)*inv_weight.
    for (std::size_t r = 0; r < n_items; ++r) {
      keys[r] = {-std::log(uniform_open(rng)) * inv_weight[r], static_cast<Item>(r)};
    }
    std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(len), keys.end());
    items.clear();
    for (std::size_t i = 0; i < len; ++i) items.push_back(keys[i].second);
    transactions.push_back(Itemset::from_unsorted(items));
  }
  return TransactionDb(std::move(transactions), n_items);
}

}  // namespace darm

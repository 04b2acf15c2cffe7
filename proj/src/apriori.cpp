#include "darm/apriori.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "darm/errors.hpp"

namespace darm {

Minsup::Minsup(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw ArgumentError("minsup denominator is zero");
  if (numerator == 0 || numerator > denominator) {
    throw ArgumentError("minsup must lie in (0, 1], got " + std::to_string(numerator) + "/" +
                        std::to_string(denominator));
  }
  const std::uint64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
  text_ = std::to_string(numerator) + "/" + std::to_string(denominator);
}

namespace {

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 18) {
    throw ArgumentError("malformed minsup '" + std::string(whole) + "'");
  }
  std::uint64_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw ArgumentError("malformed minsup '" + std::string(whole) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

Minsup Minsup::parse(std::string_view text) {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = parse_digits(text.substr(0, slash), text);
    den = parse_digits(text.substr(slash + 1), text);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 17) {
      throw ArgumentError("malformed minsup '" + std::string(text) + "'");
    }
    const std::uint64_t int_part = whole.empty() ? 0 : parse_digits(whole, text);
    if (int_part > 1) throw ArgumentError("minsup must lie in (0, 1], got " + std::string(text));
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    num = int_part * den + parse_digits(frac, text);
  } else {
    num = parse_digits(text, text);
  }
  Minsup out(num, den);
  out.text_ = std::string(text);
  return out;
}

Count threshold(const Minsup& s, Count size) {
  const auto scaled = static_cast<unsigned __int128>(s.numerator()) * size;
  return static_cast<Count>((scaled + s.denominator() - 1) / s.denominator());
}

std::vector<Itemset> apriori_gen(std::span<const Itemset> prev_frequent) {
  if (prev_frequent.empty()) return {};
  const std::size_t k = prev_frequent.front().size();
  if (k == 0) throw ArgumentError("apriori_gen: empty itemset in input");
  for (const auto& x : prev_frequent) {
    if (x.size() != k) {
      throw ArgumentError("apriori_gen: mixed itemset lengths " + std::to_string(k) + " and " +
                          std::to_string(x.size()));
    }
  }

  std::vector<Itemset> prev(prev_frequent.begin(), prev_frequent.end());
  std::sort(prev.begin(), prev.end());
  prev.erase(std::unique(prev.begin(), prev.end()), prev.end());

  auto same_prefix = [k](const Itemset& a, const Itemset& b) {
    return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k - 1), b.begin());
  };
  auto all_subsets_present = [&](const Itemset& candidate) {
    // The two subsets dropping one of the last two items are the join parents.
    for (std::size_t drop = 0; drop + 2 < candidate.size(); ++drop) {
      if (!std::binary_search(prev.begin(), prev.end(), candidate.without(drop))) return false;
    }
    return true;
  };

  std::vector<Itemset> out;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    for (std::size_t j = i + 1; j < prev.size() && same_prefix(prev[i], prev[j]); ++j) {
      Itemset candidate = prev[i].extended(prev[j].back());
      if (all_subsets_present(candidate)) out.push_back(std::move(candidate));
    }
  }
  // Sorted prev with a shared prefix yields candidates already in lex order.
  return out;
}

std::vector<Itemset> MiningResult::level(std::size_t k) const {
  std::vector<Itemset> out;
  for (const auto& [x, count] : frequent) {
    if (x.size() == k) out.push_back(x);
  }
  return out;
}

MiningResult sequential_apriori(const LMatrix& matrix, const Minsup& minsup,
                                std::vector<RoundMetrics>* rounds) {
  using Clock = std::chrono::steady_clock;
  MiningResult result{minsup, matrix.rows(), {}};
  const Count min_count = result.threshold();

  std::vector<Itemset> candidates;
  candidates.reserve(matrix.cols());
  for (std::size_t i = 0; i < matrix.cols(); ++i) candidates.push_back({static_cast<Item>(i)});

  for (std::size_t k = 1; !candidates.empty(); ++k) {
    const auto start = Clock::now();
    const std::vector<Count> counts = matrix.support_batch(candidates);
    std::vector<Itemset> level;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (counts[i] >= min_count) {
        result.frequent.emplace(candidates[i], counts[i]);
        level.push_back(candidates[i]);
      }
    }
    if (rounds) {
      RoundMetrics m;
      m.level = k;
      m.candidates_generated = candidates.size();
      m.candidates_after_local_prune = candidates.size();
      m.lk_size = level.size();
      m.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      rounds->push_back(m);
    }
    candidates = apriori_gen(level);
  }
  return result;
}

MiningResult sequential_apriori(const TransactionDb& db, const Minsup& minsup,
                                std::vector<RoundMetrics>* rounds) {
  ScanCounter scans;
  return sequential_apriori(LMatrix::build(db, scans), minsup, rounds);
}

}  // namespace darm

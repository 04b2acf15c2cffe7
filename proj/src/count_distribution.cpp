#include "darm/count_distribution.hpp"

#include <algorithm>
#include <chrono>

#include "darm/errors.hpp"
#include "darm/lmatrix.hpp"

namespace darm {
namespace {

struct CdSite {
  SiteId id;
  ScanCounter scans;
  LMatrix matrix;
  Count local_threshold;
  std::vector<Count> totals;      // summed counts for the current level
  std::vector<Itemset> frequent;  // L_{k-1}, derived locally

  CdSite(SiteId site_id, const TransactionDb& db, const Minsup& minsup)
      : id(site_id),
        matrix(LMatrix::build(db, scans)),
        local_threshold(threshold(minsup, db.size())) {}

  std::vector<Count> count(const std::vector<Itemset>& candidates) const {
    std::vector<Count> out(candidates.size(), 0);
    std::vector<Itemset> in_range;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates[i].back() < matrix.cols()) {
        in_range.push_back(candidates[i]);
        where.push_back(i);
      }
    }
    const auto counted = matrix.support_batch(in_range);
    for (std::size_t j = 0; j < counted.size(); ++j) out[where[j]] = counted[j];
    return out;
  }
};

}  // namespace

CdRun run_cd(std::span<const TransactionDb> partitions, const Minsup& minsup) {
  using Clock = std::chrono::steady_clock;
  if (partitions.empty()) throw ArgumentError("run_cd needs at least one partition");
  Count total = 0;
  std::size_t universe = 0;
  for (const auto& p : partitions) {
    total += p.size();
    universe = std::max(universe, p.universe());
  }
  if (total == 0) throw ArgumentError("run_cd needs a non-empty partition");

  const std::size_t n = partitions.size();
  std::vector<CdSite> sites;
  sites.reserve(n);
  for (SiteId i = 0; i < n; ++i) sites.emplace_back(i, partitions[i], minsup);
  const Count global_threshold = threshold(minsup, total);
  SimulatedNetwork net(n, true);

  CdRun run;
  run.result = MiningResult{minsup, total, {}};

  for (std::size_t k = 1;; ++k) {
    const auto start = Clock::now();
    std::vector<Itemset> candidates;
    if (k == 1) {
      for (std::size_t i = 0; i < universe; ++i) candidates.push_back({static_cast<Item>(i)});
    } else {
      candidates = apriori_gen(sites.front().frequent);
    }
    if (candidates.empty()) break;

    RoundMetrics metrics;
    metrics.level = k;
    metrics.candidates_generated = candidates.size();
    metrics.candidates_after_local_prune = candidates.size();

    for (auto& site : sites) {
      std::vector<Count> local = site.count(candidates);
      for (Count c : local) {
        if (c >= site.local_threshold) ++metrics.llk_total;
      }
      site.totals = local;
      for (auto& peer : sites) {
        if (peer.id == site.id) continue;
        net.send(Actor::site_actor(site.id), Actor::site_actor(peer.id),
                 CountVector{site.id, k, local});
      }
    }
    for (auto& site : sites) {
      for (auto& msg : net.drain(Actor::site_actor(site.id))) {
        const auto& vec = std::get<CountVector>(msg);
        if (vec.level != k || vec.counts.size() != candidates.size()) {
          throw ProtocolError("count vector from site " + std::to_string(vec.site_id) +
                              " does not match the level-" + std::to_string(k) + " candidates");
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) site.totals[i] += vec.counts[i];
      }
      site.frequent.clear();
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (site.totals[i] >= global_threshold) site.frequent.push_back(candidates[i]);
      }
    }
    for (const auto& site : sites) {
      if (site.frequent != sites.front().frequent) {
        throw InternalError("sites disagree on L_" + std::to_string(k));
      }
    }

    const CdSite& first = sites.front();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (first.totals[i] >= global_threshold) run.result.frequent.emplace(candidates[i], first.totals[i]);
    }
    metrics.lk_size = first.frequent.size();
    const auto tally = net.take_tally();
    metrics.messages_sent = tally.messages;
    metrics.payload_bytes = tally.bytes;
    metrics.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    run.rounds.push_back(metrics);
  }

  run.trace = net.trace();
  for (const auto& site : sites) run.site_raw_scans.push_back(site.scans.raw_scans());
  return run;
}

}  // namespace darm

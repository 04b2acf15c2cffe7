#include "darm/improved.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "darm/errors.hpp"

namespace darm {
namespace {

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<Itemset> local_prune(std::span<const Itemset> candidates,
                                 const std::map<Itemset, Count>& local_counts_prev,
                                 Count site_threshold) {
  std::vector<Itemset> kept;
  kept.reserve(candidates.size());
  for (const auto& x : candidates) {
    if (x.size() <= 1) {
      kept.push_back(x);
      continue;
    }
    Count bound = std::numeric_limits<Count>::max();
    for (std::size_t drop = 0; drop < x.size(); ++drop) {
      const auto it = local_counts_prev.find(x.without(drop));
      if (it == local_counts_prev.end()) {
        throw InternalError("local_prune: no local count for subset " +
                            to_string(x.without(drop)) + " of " + to_string(x));
      }
      bound = std::min(bound, it->second);
    }
    if (bound >= site_threshold) kept.push_back(x);
  }
  return kept;
}

// --- Site -------------------------------------------------------------------

Site::Site(SiteId id, const TransactionDb& partition, const Minsup& minsup)
    : id_(id),
      matrix_(LMatrix::build(partition, scans_)),
      local_threshold_(threshold(minsup, partition.size())) {}

std::vector<Itemset> Site::local_candidates(std::size_t k) const {
  if (k <= 1) {
    std::vector<Itemset> out;
    out.reserve(matrix_.cols());
    for (std::size_t i = 0; i < matrix_.cols(); ++i) out.push_back({static_cast<Item>(i)});
    return out;
  }
  return apriori_gen(heavy_);
}

std::vector<Count> Site::count(std::span<const Itemset> xs) const {
  std::vector<Count> out(xs.size(), 0);
  std::vector<Itemset> in_range;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].empty()) throw ProtocolError("empty itemset in count request");
    if (xs[i].back() < matrix_.cols()) {
      in_range.push_back(xs[i]);
      where.push_back(i);
    }
  }
  const std::vector<Count> counted = matrix_.support_batch(in_range);
  for (std::size_t j = 0; j < counted.size(); ++j) out[where[j]] = counted[j];
  return out;
}

LocalReport Site::local_report(std::size_t k, std::span<const Itemset> survivors) {
  level_ = k;
  counts_cur_.clear();
  const std::vector<Count> counts = count(survivors);

  LocalReport report{id_, k, {}};
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    counts_cur_[survivors[i]] = counts[i];
    if (counts[i] >= local_threshold_) report.entries.push_back({survivors[i], counts[i]});
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const auto& a, const auto& b) { return a.itemset < b.itemset; });
  return report;
}

CountResponse Site::handle_count_request(const CountRequest& req) {
  if (req.level != level_) {
    throw ProtocolError("site " + std::to_string(id_) + " at level " + std::to_string(level_) +
                        " got a request for level " + std::to_string(req.level));
  }
  const std::vector<Count> counts = count(req.itemsets);
  CountResponse resp{id_, req.level, {}};
  resp.counts.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    counts_cur_[req.itemsets[i]] = counts[i];
    resp.counts.push_back({req.itemsets[i], counts[i]});
  }
  return resp;
}

void Site::update_heavy(const GlobalResult& result) {
  if (result.level != level_) {
    throw ProtocolError("site " + std::to_string(id_) + " at level " + std::to_string(level_) +
                        " got the result of level " + std::to_string(result.level));
  }
  std::vector<Itemset> uncounted;
  for (const auto& e : result.frequent) {
    if (!counts_cur_.contains(e.itemset)) uncounted.push_back(e.itemset);
  }
  const std::vector<Count> recounted = count(uncounted);
  for (std::size_t i = 0; i < uncounted.size(); ++i) counts_cur_[uncounted[i]] = recounted[i];

  heavy_.clear();
  for (const auto& e : result.frequent) {
    if (counts_cur_.at(e.itemset) >= local_threshold_) heavy_.push_back(e.itemset);
  }
  counts_prev_ = std::move(counts_cur_);
  counts_cur_.clear();
  flag_ = result.continue_flag;
}

// --- Center -----------------------------------------------------------------

Center::Center(std::vector<Count> site_sizes, const Minsup& minsup)
    : site_sizes_(std::move(site_sizes)) {
  if (site_sizes_.empty()) throw ArgumentError("center needs at least one site");
  for (Count size : site_sizes_) site_thresholds_.push_back(threshold(minsup, size));
  total_size_ = std::accumulate(site_sizes_.begin(), site_sizes_.end(), Count{0});
  global_threshold_ = threshold(minsup, total_size_);
}

Count Center::max_count(Count reported_total, const std::vector<SiteId>& originating) const {
  Count bound = reported_total;
  std::size_t next = 0;
  for (SiteId site = 0; site < site_sizes_.size(); ++site) {
    if (next < originating.size() && originating[next] == site) {
      ++next;
      continue;
    }
    // A silent site's count is strictly below its local threshold.
    bound += std::max<Count>(site_thresholds_[site], 1) - 1;
  }
  return bound;
}

AggregateOutcome Center::aggregate(std::size_t k, std::span<const LocalReport> reports) {
  const std::size_t n = site_sizes_.size();
  std::vector<const LocalReport*> by_site(n, nullptr);
  for (const auto& r : reports) {
    if (r.level != k) {
      throw ProtocolError("report from site " + std::to_string(r.site_id) + " is for level " +
                          std::to_string(r.level) + ", expected " + std::to_string(k));
    }
    if (r.site_id >= n) throw ProtocolError("report from unknown site " + std::to_string(r.site_id));
    if (by_site[r.site_id]) {
      throw ProtocolError("duplicate report from site " + std::to_string(r.site_id));
    }
    by_site[r.site_id] = &r;
  }
  for (SiteId s = 0; s < n; ++s) {
    if (!by_site[s]) throw ProtocolError("missing report from site " + std::to_string(s));
  }

  level_ = k;
  pending_.clear();
  immediate_.clear();

  std::map<Itemset, Pending> merged;
  bool any = false;
  for (SiteId s = 0; s < n; ++s) {
    for (const auto& e : by_site[s]->entries) {
      if (e.count > site_sizes_[s]) {
        throw ProtocolError("site " + std::to_string(s) + " reported count " +
                            std::to_string(e.count) + " above its partition size");
      }
      auto& p = merged[e.itemset];
      if (!p.originating.empty() && p.originating.back() == s) {
        throw ProtocolError("site " + std::to_string(s) + " reported " + to_string(e.itemset) +
                            " twice");
      }
      p.originating.push_back(s);
      p.accumulated += e.count;
      any = true;
    }
  }
  if (!any) flag_ = false;

  AggregateOutcome out;
  for (auto& [x, p] : merged) {
    if (p.originating.size() == n) {
      if (p.accumulated >= global_threshold_) out.immediately_frequent.push_back({x, p.accumulated});
      continue;
    }
    if (max_count(p.accumulated, p.originating) < global_threshold_) {
      out.pruned.push_back(x);
      continue;
    }
    std::size_t next = 0;
    for (SiteId s = 0; s < n; ++s) {
      if (next < p.originating.size() && p.originating[next] == s) {
        ++next;
        continue;
      }
      p.awaiting.insert(s);
      auto& req = out.requests[s];
      req.level = k;
      req.itemsets.push_back(x);
    }
    pending_.emplace(x, std::move(p));
  }
  immediate_ = out.immediately_frequent;
  return out;
}

GlobalResult Center::finalize(std::span<const CountResponse> responses) {
  for (const auto& resp : responses) {
    if (resp.level != level_) {
      throw ProtocolError("response from site " + std::to_string(resp.site_id) +
                          " is for level " + std::to_string(resp.level));
    }
    for (const auto& e : resp.counts) {
      auto it = pending_.find(e.itemset);
      if (it == pending_.end() || it->second.awaiting.erase(resp.site_id) == 0) {
        throw ProtocolError("unrequested count for " + to_string(e.itemset) + " from site " +
                            std::to_string(resp.site_id));
      }
      if (e.count > site_sizes_[resp.site_id]) {
        throw ProtocolError("site " + std::to_string(resp.site_id) +
                            " answered a count above its partition size");
      }
      it->second.accumulated += e.count;
    }
  }

  std::vector<CountedItemset> lk = immediate_;
  for (const auto& [x, p] : pending_) {
    if (!p.awaiting.empty()) {
      throw ProtocolError("no response for " + to_string(x) + " from site " +
                          std::to_string(*p.awaiting.begin()));
    }
    if (p.accumulated >= global_threshold_) lk.push_back({x, p.accumulated});
  }
  std::sort(lk.begin(), lk.end(), [](const auto& a, const auto& b) { return a.itemset < b.itemset; });

  // L_{k+1} needs k+1 members of L_k as its k-subsets.
  if (lk.size() < level_ + 1) flag_ = false;

  pending_.clear();
  immediate_.clear();
  lk_prev_ = lk;
  return GlobalResult{level_, std::move(lk), flag_};
}

// --- Driver -----------------------------------------------------------------

ImprovedRun run_improved(std::span<const TransactionDb> partitions, const Minsup& minsup,
                         const ImprovedOptions& options) {
  using Clock = std::chrono::steady_clock;
  if (partitions.empty()) throw ArgumentError("run_improved needs at least one partition");
  Count total = 0;
  for (const auto& p : partitions) total += p.size();
  if (total == 0) throw ArgumentError("run_improved needs a non-empty partition");

  const std::size_t n = partitions.size();
  std::vector<Site> sites;
  sites.reserve(n);
  std::vector<Count> sizes;
  for (SiteId i = 0; i < n; ++i) {
    sites.emplace_back(i, partitions[i], minsup);
    sizes.push_back(partitions[i].size());
  }
  Center center(sizes, minsup);
  SimulatedNetwork net(n, options.count_colocated_messages);
  const Actor center_actor = Actor::center();

  ImprovedRun run;
  run.result = MiningResult{minsup, total, {}};

  for (std::size_t k = 1;; ++k) {
    const auto start = Clock::now();
    RoundMetrics metrics;
    metrics.level = k;
    RoundAudit audit;
    audit.level = k;
    audit.locally_pruned.resize(n);

    std::vector<Itemset> survivors_union;
    for (auto& site : sites) {
      const std::vector<Itemset> candidates = site.local_candidates(k);
      const std::vector<Itemset> survivors =
          local_prune(candidates, site.local_counts_prev(), site.local_threshold());
      metrics.candidates_pruned_local += candidates.size() - survivors.size();
      audit.generated.insert(audit.generated.end(), candidates.begin(), candidates.end());
      survivors_union.insert(survivors_union.end(), survivors.begin(), survivors.end());
      std::set_difference(candidates.begin(), candidates.end(), survivors.begin(),
                          survivors.end(), std::back_inserter(audit.locally_pruned[site.id()]));

      LocalReport report = site.local_report(k, survivors);
      metrics.llk_total += report.entries.size();
      for (const auto& e : report.entries) audit.reported.push_back(e.itemset);
      net.send(Actor::site_actor(site.id()), center_actor, std::move(report));
    }
    sort_unique(audit.generated);
    sort_unique(survivors_union);
    sort_unique(audit.reported);
    metrics.candidates_generated = audit.generated.size();
    metrics.candidates_after_local_prune = survivors_union.size();

    std::vector<LocalReport> reports;
    for (auto& msg : net.drain(center_actor)) reports.push_back(std::get<LocalReport>(std::move(msg)));
    AggregateOutcome outcome = center.aggregate(k, reports);
    metrics.candidates_pruned_center = outcome.pruned.size();
    audit.center_pruned = outcome.pruned;

    for (auto& [site_id, req] : outcome.requests) {
      audit.polled.insert(audit.polled.end(), req.itemsets.begin(), req.itemsets.end());
      net.send(center_actor, Actor::site_actor(site_id), std::move(req));
    }
    sort_unique(audit.polled);

    for (auto& site : sites) {
      for (auto& msg : net.drain(Actor::site_actor(site.id()))) {
        net.send(Actor::site_actor(site.id()), center_actor,
                 site.handle_count_request(std::get<CountRequest>(msg)));
      }
    }
    std::vector<CountResponse> responses;
    for (auto& msg : net.drain(center_actor)) {
      responses.push_back(std::get<CountResponse>(std::move(msg)));
    }
    const GlobalResult global = center.finalize(responses);

    for (auto& site : sites) net.send(center_actor, Actor::site_actor(site.id()), global);
    for (auto& site : sites) {
      for (auto& msg : net.drain(Actor::site_actor(site.id()))) {
        site.update_heavy(std::get<GlobalResult>(msg));
      }
    }

    for (const auto& e : global.frequent) {
      run.result.frequent.emplace(e.itemset, e.count);
      audit.frequent.push_back(e.itemset);
    }
    metrics.lk_size = global.frequent.size();
    const auto tally = net.take_tally();
    metrics.messages_sent = tally.messages;
    metrics.payload_bytes = tally.bytes;
    metrics.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    run.rounds.push_back(metrics);
    run.audit.push_back(std::move(audit));

    if (!global.continue_flag) break;
  }

  run.trace = net.trace();
  for (const auto& site : sites) run.site_raw_scans.push_back(site.scans().raw_scans());
  return run;
}

}  // namespace darm

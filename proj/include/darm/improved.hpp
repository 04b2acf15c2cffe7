#pragma once

#include <map>
#include <set>
#include <span>
#include <vector>

#include "darm/apriori.hpp"
#include "darm/dataset.hpp"
#include "darm/lmatrix.hpp"
#include "darm/messages.hpp"
#include "darm/metrics.hpp"

namespace darm {

/// Keeps candidate X iff the smallest local count among its (k-1)-subsets is
/// >= `site_threshold`. That minimum bounds X's own local count from above.
/// Single items pass unpruned. A missing subset count throws InternalError.
std::vector<Itemset> local_prune(std::span<const Itemset> candidates,
                                 const std::map<Itemset, Count>& local_counts_prev,
                                 Count site_threshold);

/// Local site of the improved protocol.
///
/// Owns the partition's LMatrix (built with the only raw scan the site ever
/// makes), its heavy itemsets from the previous level, and every local count
/// it has computed for the current and previous level.
class Site {
 public:
  Site(SiteId id, const TransactionDb& partition, const Minsup& minsup);

  SiteId id() const noexcept { return id_; }
  Count partition_size() const noexcept { return matrix_.rows(); }
  Count local_threshold() const noexcept { return local_threshold_; }
  const LMatrix& matrix() const noexcept { return matrix_; }
  const ScanCounter& scans() const noexcept { return scans_; }
  bool active() const noexcept { return flag_; }

  /// Level 1: every item of the site's universe. Level k >= 2: apriori_gen
  /// over the heavy (k-1)-itemsets.
  std::vector<Itemset> local_candidates(std::size_t k) const;

  /// Counts `survivors` on the LMatrix and reports those reaching the local
  /// threshold. Starts level k.
  LocalReport local_report(std::size_t k, std::span<const Itemset> survivors);

  /// Items beyond the site's universe have count 0.
  CountResponse handle_count_request(const CountRequest& req);

  /// heavy := members of L_k whose local count reaches the local threshold.
  void update_heavy(const GlobalResult& result);

  const std::vector<Itemset>& heavy() const noexcept { return heavy_; }
  const std::map<Itemset, Count>& local_counts_prev() const noexcept { return counts_prev_; }
  const std::map<Itemset, Count>& local_counts() const noexcept { return counts_cur_; }

 private:
  std::vector<Count> count(std::span<const Itemset> xs) const;

  SiteId id_;
  ScanCounter scans_;
  LMatrix matrix_;
  Count local_threshold_;
  std::size_t level_ = 0;
  bool flag_ = true;
  std::vector<Itemset> heavy_;
  std::map<Itemset, Count> counts_prev_;
  std::map<Itemset, Count> counts_cur_;
};

struct AggregateOutcome {
  // Reported by every site; the summed count is exact.
  std::vector<CountedItemset> immediately_frequent;
  // MaxCount below the global threshold.
  std::vector<Itemset> pruned;
  // At most one request per site.
  std::map<SiteId, CountRequest> requests;
};

/// Center role: merges LL_k reports, bounds unreported counts, polls silent
/// sites and decides L_k.
class Center {
 public:
  Center(std::vector<Count> site_sizes, const Minsup& minsup);

  /// Throws ProtocolError unless there is exactly one level-k report per site.
  AggregateOutcome aggregate(std::size_t k, std::span<const LocalReport> reports);

  /// Throws ProtocolError on a response for an itemset that was not requested
  /// from that site, or when an outstanding request is left unanswered.
  GlobalResult finalize(std::span<const CountResponse> responses);

  /// Sound upper bound on X's global count given the reporting sites'
  /// `reported_total`: each silent site contributes its local threshold - 1.
  Count max_count(Count reported_total, const std::vector<SiteId>& originating) const;

  std::size_t level() const noexcept { return level_; }
  bool flag() const noexcept { return flag_; }
  Count global_threshold() const noexcept { return global_threshold_; }
  std::size_t n_sites() const noexcept { return site_sizes_.size(); }
  const std::vector<CountedItemset>& global_frequent_prev() const noexcept { return lk_prev_; }

 private:
  struct Pending {
    std::vector<SiteId> originating;
    Count accumulated = 0;
    std::set<SiteId> awaiting;
  };

  std::vector<Count> site_sizes_;
  std::vector<Count> site_thresholds_;
  Count total_size_ = 0;
  Count global_threshold_ = 0;
  std::size_t level_ = 0;
  bool flag_ = true;
  std::map<Itemset, Pending> pending_;
  std::vector<CountedItemset> immediate_;
  std::vector<CountedItemset> lk_prev_;
};

struct ImprovedOptions {
  // Count traffic between site 0 and the co-located center.
  bool count_colocated_messages = true;
};

/// What happened to candidates in one level, for auditing pruning decisions.
struct RoundAudit {
  std::size_t level = 0;
  std::vector<Itemset> generated;
  std::vector<std::vector<Itemset>> locally_pruned;  // per site
  std::vector<Itemset> reported;
  std::vector<Itemset> center_pruned;
  std::vector<Itemset> polled;
  std::vector<Itemset> frequent;
};

struct ImprovedRun {
  MiningResult result;
  std::vector<RoundMetrics> rounds;
  std::vector<TraceRecord> trace;
  std::vector<std::uint64_t> site_raw_scans;
  std::vector<RoundAudit> audit;
};

/// Runs the site and center roles level by level over a simulated network
/// until the center clears the continue flag.
ImprovedRun run_improved(std::span<const TransactionDb> partitions, const Minsup& minsup,
                         const ImprovedOptions& options = {});

}  // namespace darm

#pragma once

#include <span>
#include <vector>

#include "darm/apriori.hpp"
#include "darm/dataset.hpp"
#include "darm/messages.hpp"
#include "darm/metrics.hpp"

namespace darm {

struct CdRun {
  MiningResult result;
  std::vector<RoundMetrics> rounds;
  std::vector<TraceRecord> trace;
  std::vector<std::uint64_t> site_raw_scans;
};

/// Count Distribution: each level every site generates the same candidates
/// from the global L_{k-1}, counts them on its own LMatrix and broadcasts the
/// count vector to every peer, n(n-1) messages per level. Each site then
/// sums the vectors and derives L_k independently.
CdRun run_cd(std::span<const TransactionDb> partitions, const Minsup& minsup);

}  // namespace darm

#pragma once

#include <cstdint>

namespace darm {

/// Per-level counters recorded by every miner.
struct RoundMetrics {
  std::size_t level = 0;
  // Distinct candidates generated at any site.
  std::uint64_t candidates_generated = 0;
  // Distinct candidates that survived local pruning and were counted.
  std::uint64_t candidates_after_local_prune = 0;
  // Sum over sites of candidates removed by local pruning.
  std::uint64_t candidates_pruned_local = 0;
  // Reported candidates the center discarded through the MaxCount bound.
  std::uint64_t candidates_pruned_center = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t payload_bytes = 0;
  // Sum over sites of |LL_k|.
  std::uint64_t llk_total = 0;
  // |L_k|
  std::uint64_t lk_size = 0;
  double wall_ms = 0.0;

  friend bool operator==(const RoundMetrics& a, const RoundMetrics& b) {
    return a.level == b.level && a.candidates_generated == b.candidates_generated &&
           a.candidates_after_local_prune == b.candidates_after_local_prune &&
           a.candidates_pruned_local == b.candidates_pruned_local &&
           a.candidates_pruned_center == b.candidates_pruned_center &&
           a.messages_sent == b.messages_sent && a.payload_bytes == b.payload_bytes &&
           a.llk_total == b.llk_total && a.lk_size == b.lk_size;
  }
};

}  // namespace darm

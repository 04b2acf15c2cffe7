#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <variant>
#include <vector>

#include "darm/itemset.hpp"

namespace darm {

using SiteId = std::size_t;

struct CountedItemset {
  Itemset itemset;
  Count count = 0;

  friend bool operator==(const CountedItemset&, const CountedItemset&) = default;
};

/// LL_k of one site: its locally frequent level-k candidates with local counts.
struct LocalReport {
  SiteId site_id = 0;
  std::size_t level = 0;
  std::vector<CountedItemset> entries;
};

/// Center asks a site for the local counts of itemsets it did not report.
struct CountRequest {
  std::size_t level = 0;
  std::vector<Itemset> itemsets;
};

struct CountResponse {
  SiteId site_id = 0;
  std::size_t level = 0;
  std::vector<CountedItemset> counts;
};

/// L_k with global counts, broadcast by the center at the end of a level.
struct GlobalResult {
  std::size_t level = 0;
  std::vector<CountedItemset> frequent;
  bool continue_flag = false;
};

/// Count Distribution broadcast: local counts aligned with the shared
/// candidate list of the level.
struct CountVector {
  SiteId site_id = 0;
  std::size_t level = 0;
  std::vector<Count> counts;
};

using ProtocolMessage =
    std::variant<LocalReport, CountRequest, CountResponse, GlobalResult, CountVector>;

const char* message_type(const ProtocolMessage& msg);
std::size_t level_of(const ProtocolMessage& msg);

/// Number of itemsets (or counts, for CountVector) carried.
std::size_t payload_items(const ProtocolMessage& msg);

/// Canonical size: 8 bytes per header field, 4 per item id, 8 per count.
std::uint64_t payload_bytes(const ProtocolMessage& msg);

/// A logical endpoint: "site:<i>" or "center".
struct Actor {
  enum class Kind { site, center };
  Kind kind = Kind::site;
  SiteId site = 0;

  static Actor site_actor(SiteId id) { return {Kind::site, id}; }
  static Actor center() { return {Kind::center, 0}; }

  std::string name() const;
  friend bool operator==(const Actor&, const Actor&) = default;
};

struct TraceRecord {
  std::uint64_t seq = 0;
  Actor from;
  Actor to;
  std::size_t level = 0;
  std::string type;
  std::size_t items = 0;
  std::uint64_t bytes = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// {"seq":..,"from":"..","to":"..","k":..,"type":"..","items":..,"bytes":..}
std::string to_json_line(const TraceRecord& rec);

/// Deterministic in-process network: FIFO mailboxes per actor, a full trace,
/// and per-round message/byte tallies. The center is co-located with site 0;
/// traffic between the two is left out of the tallies when
/// `count_colocated` is false but always appears in the trace.
class SimulatedNetwork {
 public:
  SimulatedNetwork(std::size_t n_sites, bool count_colocated);

  void send(Actor from, Actor to, ProtocolMessage msg);

  /// Removes and returns everything queued for `to`, in send order.
  std::vector<ProtocolMessage> drain(Actor to);

  struct Tally {
    std::uint64_t messages = 0;
    std::uint64_t bytes = 0;
  };
  /// Counters accumulated since the previous call.
  Tally take_tally();

  const std::vector<TraceRecord>& trace() const noexcept { return trace_; }

 private:
  std::deque<ProtocolMessage>& mailbox(Actor a);

  std::vector<std::deque<ProtocolMessage>> site_boxes_;
  std::deque<ProtocolMessage> center_box_;
  bool count_colocated_;
  Tally tally_;
  std::vector<TraceRecord> trace_;
};

}  // namespace darm

#include "darm/messages.hpp"

#include <sstream>

#include "darm/errors.hpp"

namespace darm {
namespace {

constexpr std::uint64_t kHeaderBytes = 8;
constexpr std::uint64_t kItemBytes = 4;
constexpr std::uint64_t kCountBytes = 8;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::uint64_t counted_bytes(const std::vector<CountedItemset>& entries) {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += kItemBytes * e.itemset.size() + kCountBytes;
  return total;
}

}  // namespace

const char* message_type(const ProtocolMessage& msg) {
  return std::visit(Overloaded{
                        [](const LocalReport&) { return "LocalReport"; },
                        [](const CountRequest&) { return "CountRequest"; },
                        [](const CountResponse&) { return "CountResponse"; },
                        [](const GlobalResult&) { return "GlobalResult"; },
                        [](const CountVector&) { return "CountVector"; },
                    },
                    msg);
}

std::size_t level_of(const ProtocolMessage& msg) {
  return std::visit([](const auto& m) { return m.level; }, msg);
}

std::size_t payload_items(const ProtocolMessage& msg) {
  return std::visit(Overloaded{
                        [](const LocalReport& m) { return m.entries.size(); },
                        [](const CountRequest& m) { return m.itemsets.size(); },
                        [](const CountResponse& m) { return m.counts.size(); },
                        [](const GlobalResult& m) { return m.frequent.size(); },
                        [](const CountVector& m) { return m.counts.size(); },
                    },
                    msg);
}

std::uint64_t payload_bytes(const ProtocolMessage& msg) {
  return std::visit(
      Overloaded{
          // site_id, level
          [](const LocalReport& m) { return 2 * kHeaderBytes + counted_bytes(m.entries); },
          // level
          [](const CountRequest& m) {
            std::uint64_t total = kHeaderBytes;
            for (const auto& x : m.itemsets) total += kItemBytes * x.size();
            return total;
          },
          // site_id, level
          [](const CountResponse& m) { return 2 * kHeaderBytes + counted_bytes(m.counts); },
          // level, continue_flag
          [](const GlobalResult& m) { return 2 * kHeaderBytes + counted_bytes(m.frequent); },
          // site_id, level
          [](const CountVector& m) {
            return 2 * kHeaderBytes + kCountBytes * m.counts.size();
          },
      },
      msg);
}

std::string Actor::name() const {
  return kind == Kind::center ? std::string("center") : "site:" + std::to_string(site);
}

std::string to_json_line(const TraceRecord& rec) {
  std::ostringstream out;
  out << "{\"seq\":" << rec.seq << ",\"from\":\"" << rec.from.name() << "\",\"to\":\""
      << rec.to.name() << "\",\"k\":" << rec.level << ",\"type\":\"" << rec.type
      << "\",\"items\":" << rec.items << ",\"bytes\":" << rec.bytes << '}';
  return out.str();
}

SimulatedNetwork::SimulatedNetwork(std::size_t n_sites, bool count_colocated)
    : site_boxes_(n_sites), count_colocated_(count_colocated) {}

std::deque<ProtocolMessage>& SimulatedNetwork::mailbox(Actor a) {
  if (a.kind == Actor::Kind::center) return center_box_;
  if (a.site >= site_boxes_.size()) {
    throw ProtocolError("no such actor " + a.name());
  }
  return site_boxes_[a.site];
}

void SimulatedNetwork::send(Actor from, Actor to, ProtocolMessage msg) {
  if (from == to) throw ProtocolError("actor " + from.name() + " sending to itself");
  TraceRecord rec{trace_.size(), from,
                  to,           level_of(msg),
                  message_type(msg), payload_items(msg),
                  payload_bytes(msg)};

  const auto colocated = [](Actor a, Actor b) {
    return a.kind == Actor::Kind::center && b.kind == Actor::Kind::site && b.site == 0;
  };
  if (count_colocated_ || !(colocated(from, to) || colocated(to, from))) {
    ++tally_.messages;
    tally_.bytes += rec.bytes;
  }
  trace_.push_back(std::move(rec));
  mailbox(to).push_back(std::move(msg));
}

std::vector<ProtocolMessage> SimulatedNetwork::drain(Actor to) {
  auto& box = mailbox(to);
  std::vector<ProtocolMessage> out(std::make_move_iterator(box.begin()),
                                   std::make_move_iterator(box.end()));
  box.clear();
  return out;
}

SimulatedNetwork::Tally SimulatedNetwork::take_tally() {
  Tally out = tally_;
  tally_ = {};
  return out;
}

}  // namespace darm

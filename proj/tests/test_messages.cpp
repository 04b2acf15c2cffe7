#include <doctest.h>

#include "darm/errors.hpp"
#include "darm/messages.hpp"

using namespace darm;

TEST_CASE("canonical payload sizes") {
  // 2 header fields + (1 item + count) + (2 items + count)
  const LocalReport report{0, 2, {{{1}, 3}, {{1, 2}, 2}}};
  CHECK(payload_bytes(report) == 16 + (4 + 8) + (8 + 8));
  CHECK(payload_items(report) == 2);
  CHECK(std::string(message_type(report)) == "LocalReport");

  const CountRequest request{2, {{1, 2}, {3, 4}}};
  CHECK(payload_bytes(request) == 8 + 8 + 8);
  CHECK(payload_items(request) == 2);

  const CountResponse response{1, 2, {{{1, 2}, 0}}};
  CHECK(payload_bytes(response) == 16 + 8 + 8);

  const GlobalResult result{1, {{{1}, 3}, {{2}, 2}}, true};
  CHECK(payload_bytes(result) == 16 + 2 * (4 + 8));
  CHECK(level_of(result) == 1);

  const CountVector vec{0, 1, {1, 2, 3}};
  CHECK(payload_bytes(vec) == 16 + 24);
  CHECK(payload_items(vec) == 3);

  CHECK(payload_bytes(LocalReport{3, 4, {}}) == 16);
}

TEST_CASE("trace line format") {
  const TraceRecord rec{7, Actor::site_actor(2), Actor::center(), 3, "LocalReport", 4, 96};
  CHECK(to_json_line(rec) ==
        R"({"seq":7,"from":"site:2","to":"center","k":3,"type":"LocalReport","items":4,"bytes":96})");
}

TEST_CASE("simulated network delivers in order and tallies") {
  SimulatedNetwork net(2, true);
  net.send(Actor::site_actor(0), Actor::center(), LocalReport{0, 1, {}});
  net.send(Actor::site_actor(1), Actor::center(), LocalReport{1, 1, {{{0}, 1}}});
  net.send(Actor::center(), Actor::site_actor(1), CountRequest{1, {{2}}});

  const auto inbox = net.drain(Actor::center());
  REQUIRE(inbox.size() == 2);
  CHECK(std::get<LocalReport>(inbox[0]).site_id == 0);
  CHECK(std::get<LocalReport>(inbox[1]).site_id == 1);
  CHECK(net.drain(Actor::center()).empty());
  CHECK(net.drain(Actor::site_actor(1)).size() == 1);

  const auto tally = net.take_tally();
  CHECK(tally.messages == 3);
  CHECK(tally.bytes == 16 + (16 + 12) + (8 + 4));
  CHECK(net.take_tally().messages == 0);

  REQUIRE(net.trace().size() == 3);
  CHECK(net.trace()[2].seq == 2);
  CHECK(net.trace()[2].from == Actor::center());
  CHECK(net.trace()[2].type == "CountRequest");

  CHECK_THROWS_AS(net.send(Actor::center(), Actor::center(), CountRequest{}), ProtocolError);
  CHECK_THROWS_AS(net.send(Actor::center(), Actor::site_actor(5), CountRequest{}), ProtocolError);
}

TEST_CASE("co-located traffic can be left out of the tally") {
  SimulatedNetwork net(2, false);
  net.send(Actor::site_actor(0), Actor::center(), LocalReport{0, 1, {}});
  net.send(Actor::center(), Actor::site_actor(0), GlobalResult{1, {}, false});
  net.send(Actor::site_actor(1), Actor::center(), LocalReport{1, 1, {}});
  net.send(Actor::site_actor(0), Actor::site_actor(1), CountVector{0, 1, {}});
  const auto tally = net.take_tally();
  CHECK(tally.messages == 2);
  CHECK(net.trace().size() == 4);
}

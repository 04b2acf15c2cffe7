#include <doctest.h>

#include <sstream>

#include "darm/errors.hpp"
#include "darm/report.hpp"
#include "fixtures.hpp"

using namespace darm;

TEST_CASE("result JSON layout") {
  const MiningResult r = sequential_apriori(fixtures::shop_db(), Minsup::parse("2/3"));
  CHECK(result_json(r) ==
        R"({"minsup":"2/3","db_size":3,"threshold":2,"frequent":[)"
        R"({"items":[1],"support":3},{"items":[2],"support":2},{"items":[3],"support":2},)"
        R"({"items":[5],"support":2},{"items":[1,2],"support":2},{"items":[1,3],"support":2},)"
        R"({"items":[1,5],"support":2}]})"
        "\n");

  const MiningResult none{Minsup::parse("0.9"), 0, {}};
  CHECK(result_json(none) == "{\"minsup\":\"0.9\",\"db_size\":0,\"threshold\":0,\"frequent\":[]}\n");
}

TEST_CASE("result JSON with labels") {
  const MiningResult r = sequential_apriori(fixtures::shop_db(), Minsup::parse("2/3"));
  const LabelMap labels{{1, "Coffee"}, {2, "Tea"}, {3, "Milk"}, {5, "Butter"}};
  const std::string json = result_json(r, &labels);
  CHECK(json.find(R"({"items":[1],"support":3,"labels":["Coffee"]})") != std::string::npos);
  CHECK(json.find(R"({"items":[1,5],"support":2,"labels":["Coffee","Butter"]})") !=
        std::string::npos);

  const LabelMap partial{{1, "Coffee"}};
  CHECK(result_json(r, &partial).find(R"("labels":["Coffee","Tea"])") == std::string::npos);
  CHECK(result_json(r, &partial).find(R"("labels":["Coffee","2"])") != std::string::npos);
}

TEST_CASE("load_labels formats") {
  std::istringstream in("1 Coffee\n2\tTea\n3:Milk\n\n5 = Peanut Butter  \r\n");
  const LabelMap labels = load_labels(in);
  CHECK(labels == LabelMap{{1, "Coffee"}, {2, "Tea"}, {3, "Milk"}, {5, "Peanut Butter"}});

  std::istringstream bad("1 Coffee\nx Tea\n");
  CHECK_THROWS_AS(load_labels(bad), ParseError);
  std::istringstream nameless("4\n");
  CHECK_THROWS_AS(load_labels(nameless), ParseError);
}

TEST_CASE("metrics CSV") {
  RoundMetrics r;
  r.level = 2;
  r.candidates_generated = 7;
  r.candidates_pruned_local = 1;
  r.messages_sent = 8;
  r.payload_bytes = 300;
  r.llk_total = 5;
  r.lk_size = 3;
  r.wall_ms = 1.23456;
  const std::vector<RoundMetrics> rounds{r};

  std::ostringstream untimed;
  write_metrics_csv(untimed, "improved", rounds, false);
  CHECK(untimed.str() ==
        "algorithm,round,candidates,candidates_pruned_local,messages,bytes,llk_total,lk_size,"
        "wall_ms\nimproved,2,7,1,8,300,5,3,0.000\n");

  std::ostringstream timed;
  write_metrics_rows(timed, "cd", rounds, true);
  CHECK(timed.str() == "cd,2,7,1,8,300,5,3,1.235\n");
}

TEST_CASE("trace output is one JSON object per line") {
  const std::vector<TraceRecord> trace{
      {0, Actor::site_actor(0), Actor::center(), 1, "LocalReport", 2, 40},
      {1, Actor::center(), Actor::site_actor(1), 1, "CountRequest", 1, 12},
  };
  std::ostringstream out;
  write_trace(out, trace);
  CHECK(out.str() ==
        "{\"seq\":0,\"from\":\"site:0\",\"to\":\"center\",\"k\":1,\"type\":\"LocalReport\","
        "\"items\":2,\"bytes\":40}\n"
        "{\"seq\":1,\"from\":\"center\",\"to\":\"site:1\",\"k\":1,\"type\":\"CountRequest\","
        "\"items\":1,\"bytes\":12}\n");
}

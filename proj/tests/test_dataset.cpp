#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "darm/dataset.hpp"
#include "darm/errors.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace darm;

namespace {

TransactionDb parse(const std::string& text) {
  std::istringstream in(text);
  return load_fimi(in);
}

}  // namespace

TEST_CASE("load_fimi reads the shop example") {
  const TransactionDb db = parse("1 2 3\n1 2 4 5\n1 3 5\n");
  CHECK(db.size() == 3);
  CHECK(db.universe() == 6);
  CHECK(db[0] == Itemset{1, 2, 3});
  CHECK(db[1] == Itemset{1, 2, 4, 5});
  CHECK(db[2] == Itemset{1, 3, 5});
}

TEST_CASE("load_fimi edge cases") {
  SUBCASE("empty input") {
    const TransactionDb db = parse("");
    CHECK(db.size() == 0);
    CHECK(db.universe() == 0);
  }
  SUBCASE("duplicates collapse and items sort") {
    const TransactionDb db = parse("7 7 2\n");
    REQUIRE(db.size() == 1);
    CHECK(db[0] == Itemset{2, 7});
    CHECK(db.universe() == 8);
  }
  SUBCASE("blank lines, tabs, repeated spaces and CRLF") {
    const TransactionDb db = parse("\n3\t 1\r\n   \n\t\n0  2\n");
    REQUIRE(db.size() == 2);
    CHECK(db[0] == Itemset{1, 3});
    CHECK(db[1] == Itemset{0, 2});
    CHECK(db.universe() == 4);
  }
  SUBCASE("no trailing newline") {
    CHECK(parse("4 5").size() == 1);
  }
}

TEST_CASE("load_fimi rejects malformed tokens with the line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("1 2\n3 x 4\n") == 2);
  CHECK(line_of("-1\n") == 1);
  CHECK(line_of("\n\n1.5\n") == 3);
  CHECK(line_of("99999999999\n") == 1);
  CHECK_THROWS_WITH_AS(parse("1\n2a\n"), doctest::Contains("line 2"), ParseError);
}

TEST_CASE("FIMI write then load is the identity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    TransactionDb db = oracle::random_db(rng, 1, 30, 9);
    // Parsing drops empty transactions and infers the universe.
    std::vector<Itemset> kept;
    for (const auto& t : db.transactions()) {
      if (!t.empty()) kept.push_back(t);
    }
    db = TransactionDb::from_transactions(kept);
    std::stringstream buf;
    write_fimi(buf, db);
    CHECK(load_fimi(buf) == db);
  }
}

TEST_CASE("TransactionDb validates the universe") {
  CHECK_THROWS_AS(TransactionDb({{0, 5}}, 5), ArgumentError);
  CHECK_NOTHROW(TransactionDb({{0, 4}}, 5));
  CHECK_THROWS_AS(Itemset({2, 1}), ArgumentError);
  CHECK_THROWS_AS(Itemset({1, 1}), ArgumentError);
}

TEST_CASE("partition examples") {
  const TransactionDb db = fixtures::shop_db();

  SUBCASE("contiguous, two sites") {
    const auto parts = partition(db, {2, PartitionStrategy::contiguous, 0});
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].transactions() == std::vector<Itemset>{db[0], db[1]});
    CHECK(parts[1].transactions() == std::vector<Itemset>{db[2]});
    CHECK(parts[0].universe() == db.universe());
    CHECK(parts[1].universe() == db.universe());
  }
  SUBCASE("round robin, three sites") {
    const auto parts = partition(db, {3, PartitionStrategy::round_robin, 0});
    REQUIRE(parts.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      REQUIRE(parts[i].size() == 1);
      CHECK(parts[i][0] == db[i]);
    }
  }
  SUBCASE("one site is the identity") {
    for (auto strategy : {PartitionStrategy::contiguous, PartitionStrategy::round_robin,
                          PartitionStrategy::random}) {
      const auto parts = partition(db, {1, strategy, 99});
      REQUIRE(parts.size() == 1);
      CHECK(parts[0] == db);
    }
  }
  SUBCASE("too many sites") {
    CHECK_THROWS_AS(partition(db, {4, PartitionStrategy::contiguous, 0}), PartitionError);
    CHECK_THROWS_AS(partition(db, {0, PartitionStrategy::contiguous, 0}), PartitionError);
  }
}

TEST_CASE("contiguous blocks give the remainder to the first sites") {
  std::vector<Itemset> txns;
  for (Item i = 0; i < 10; ++i) txns.push_back({i});
  const auto parts = partition(TransactionDb(txns, 10), {4, PartitionStrategy::contiguous, 0});
  std::vector<std::size_t> sizes;
  for (const auto& p : parts) sizes.push_back(p.size());
  CHECK(sizes == std::vector<std::size_t>{3, 3, 2, 2});
}

TEST_CASE("partitions are disjoint, cover the db and keep relative order") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    // Tag each transaction with a unique item so order is observable.
    const std::size_t size = 1 + rng() % 40;
    std::vector<Itemset> txns;
    for (Item t = 0; t < size; ++t) txns.push_back({t});
    const TransactionDb db(txns, size);
    const std::size_t n = 1 + rng() % std::min<std::size_t>(size, 6);

    for (auto strategy : {PartitionStrategy::contiguous, PartitionStrategy::round_robin,
                          PartitionStrategy::random}) {
      const auto parts = partition(db, {n, strategy, rng()});
      REQUIRE(parts.size() == n);
      std::vector<Item> seen;
      for (const auto& p : parts) {
        CHECK(p.size() >= 1);
        for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i - 1].front() < p[i].front());
        for (const auto& t : p.transactions()) seen.push_back(t.front());
      }
      std::sort(seen.begin(), seen.end());
      std::vector<Item> all(size);
      std::iota(all.begin(), all.end(), 0);
      CHECK(seen == all);

      if (strategy == PartitionStrategy::contiguous) {
        CHECK(concatenate(parts) == db);
      }
      if (strategy == PartitionStrategy::round_robin) {
        for (std::size_t t = 0; t < size; ++t) CHECK(parts[t % n][t / n] == db[t]);
      }
    }
  }
}

TEST_CASE("random partitioning is seeded") {
  std::mt19937_64 rng(3);
  const TransactionDb db = oracle::random_db(rng, 30, 30, 8);
  const auto a = partition(db, {3, PartitionStrategy::random, 5});
  const auto b = partition(db, {3, PartitionStrategy::random, 5});
  const auto c = partition(db, {3, PartitionStrategy::random, 6});
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("generate_synthetic") {
  SUBCASE("zero transactions") {
    const TransactionDb db = generate_synthetic({0, 5, 2, 1});
    CHECK(db.size() == 0);
    CHECK(db.universe() == 5);
  }
  SUBCASE("deterministic per seed") {
    const TransactionDb a = generate_synthetic({1000, 50, 8, 42});
    const TransactionDb b = generate_synthetic({1000, 50, 8, 42});
    const TransactionDb c = generate_synthetic({1000, 50, 8, 43});
    CHECK(a == b);
    CHECK(a != c);
  }
  SUBCASE("mean length near avg_len and valid transactions") {
    const TransactionDb db = generate_synthetic({1000, 50, 8, 42});
    std::size_t total = 0;
    for (const auto& t : db.transactions()) {
      CHECK(t.size() >= 1);
      CHECK(t.size() <= 50);
      CHECK(t.back() < 50);
      total += t.size();
    }
    const double mean = static_cast<double>(total) / 1000.0;
    CHECK(mean >= 8 * 0.8);
    CHECK(mean <= 8 * 1.2);
    // Frozen from the first run with this seed.
    CHECK(total == 8118);
  }
  SUBCASE("popularity falls with rank") {
    const TransactionDb db = generate_synthetic({2000, 40, 6, 9});
    CHECK(oracle::naive_support(db, {0}) > 2 * oracle::naive_support(db, {39}));
  }
  SUBCASE("avg_len equal to n_items fills every transaction") {
    const TransactionDb db = generate_synthetic({20, 4, 4, 1});
    for (const auto& t : db.transactions()) CHECK(t.size() >= 2);
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(generate_synthetic({10, 0, 1, 0}), ArgumentError);
    CHECK_THROWS_AS(generate_synthetic({10, 5, 0, 0}), ArgumentError);
    CHECK_THROWS_AS(generate_synthetic({10, 5, 6, 0}), ArgumentError);
  }
}

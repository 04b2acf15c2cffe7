#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "darm/dataset.hpp"

namespace darm::cli {

enum class Algorithm { improved, cd, sequential };

struct RunConfig {
  std::optional<std::filesystem::path> input;
  std::optional<SyntheticParams> synthetic;
  std::string minsup;
  std::size_t n_sites = 1;
  PartitionStrategy strategy = PartitionStrategy::contiguous;
  std::uint64_t partition_seed = 0;
  Algorithm algorithm = Algorithm::improved;
  std::optional<std::filesystem::path> out;      // result JSON; stdout when absent
  std::optional<std::filesystem::path> metrics;  // metrics CSV
  std::optional<std::filesystem::path> trace;    // message trace
  std::optional<std::filesystem::path> labels;
  bool count_colocated_messages = true;
  bool timing = false;
};

struct SweepConfig {
  RunConfig base;
  std::vector<std::string> minsups;
  std::vector<std::size_t> sizes;
  std::vector<Algorithm> algorithms{Algorithm::improved, Algorithm::cd, Algorithm::sequential};
};

/// Distinct nonzero exit status per failure class.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kIoError = 3,
  kParseError = 4,
  kProtocolError = 5,
};

/// "T=<avg_len>,I=<items>,D=<txns>,seed=<u64>"
SyntheticParams parse_synthetic(std::string_view text);

/// "contiguous" | "roundrobin" | "random:<seed>"
void parse_partition(std::string_view text, RunConfig& config);

Algorithm parse_algorithm(std::string_view text);
const char* algorithm_name(Algorithm a);

/// Everything a run writes, rendered in memory.
struct RunOutputs {
  std::string result_json;
  std::string metrics_csv;
  std::string trace;  // empty for the sequential miner
};

/// Loads or generates data, partitions, mines. Throws darm errors.
RunOutputs execute(const RunConfig& config);

/// execute() plus file output and error reporting; returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Header is "minsup,db_size," followed by the metrics CSV header. Writes one
/// row per (algorithm, minsup, size, round) and a "total" row per
/// (algorithm, minsup, size) carrying end-to-end wall-clock milliseconds.
int sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);

/// Full command line front end.
int main(int argc, char** argv);

}  // namespace darm::cli

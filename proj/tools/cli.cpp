#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "darm/apriori.hpp"
#include "darm/count_distribution.hpp"
#include "darm/errors.hpp"
#include "darm/improved.hpp"
#include "darm/report.hpp"

namespace darm::cli {
namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  if (text.empty()) throw ArgumentError("empty value for " + std::string(what));
  std::uint64_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw ArgumentError("malformed " + std::string(what) + " '" + std::string(text) + "'");
    }
    const std::uint64_t next = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (next / 10 != v) throw ArgumentError(std::string(what) + " out of range");
    v = next;
  }
  return v;
}

TransactionDb load_source(const RunConfig& config) {
  if (config.input.has_value() == config.synthetic.has_value()) {
    throw ArgumentError("exactly one of --input and --synthetic is required");
  }
  if (config.synthetic) return generate_synthetic(*config.synthetic);
  std::ifstream in(*config.input);
  if (!in) throw IoError("cannot open input " + config.input->string());
  return load_fimi(in);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write to " + path.string() + " failed");
}

struct MinedRun {
  MiningResult result;
  std::vector<RoundMetrics> rounds;
  std::vector<TraceRecord> trace;
};

MinedRun mine(const TransactionDb& db, const Minsup& minsup, const RunConfig& config,
              Algorithm algorithm) {
  if (algorithm == Algorithm::sequential) {
    MinedRun out;
    out.result = sequential_apriori(db, minsup, &out.rounds);
    return out;
  }
  const auto parts = partition(db, {config.n_sites, config.strategy, config.partition_seed});
  if (algorithm == Algorithm::cd) {
    CdRun cd = run_cd(parts, minsup);
    return {std::move(cd.result), std::move(cd.rounds), std::move(cd.trace)};
  }
  ImprovedRun imp = run_improved(parts, minsup, {config.count_colocated_messages});
  return {std::move(imp.result), std::move(imp.rounds), std::move(imp.trace)};
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    err << "error: io: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << '\n';
    return kParseError;
  } catch (const ProtocolError& e) {
    err << "error: protocol: " << e.what() << '\n';
    return kProtocolError;
  } catch (const InternalError& e) {
    err << "error: internal: " << e.what() << '\n';
    return kProtocolError;
  } catch (const Error& e) {
    err << "error: config: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::ios_base::failure& e) {
    err << "error: io: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace

SyntheticParams parse_synthetic(std::string_view text) {
  SyntheticParams params;
  bool seen_t = false, seen_i = false, seen_d = false;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view field = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError("synthetic field '" + std::string(field) + "' lacks '='");
    }
    const std::string_view key = field.substr(0, eq);
    const std::uint64_t value = parse_u64(field.substr(eq + 1), key);
    if (key == "T") {
      params.avg_len = value;
      seen_t = true;
    } else if (key == "I") {
      params.n_items = value;
      seen_i = true;
    } else if (key == "D") {
      params.n_transactions = value;
      seen_d = true;
    } else if (key == "seed") {
      params.seed = value;
    } else {
      throw ArgumentError("unknown synthetic field '" + std::string(key) + "'");
    }
  }
  if (!seen_t || !seen_i || !seen_d) throw ArgumentError("--synthetic needs T, I and D");
  return params;
}

void parse_partition(std::string_view text, RunConfig& config) {
  if (text == "contiguous") {
    config.strategy = PartitionStrategy::contiguous;
  } else if (text == "roundrobin") {
    config.strategy = PartitionStrategy::round_robin;
  } else if (text.starts_with("random:")) {
    config.strategy = PartitionStrategy::random;
    config.partition_seed = parse_u64(text.substr(7), "partition seed");
  } else if (text == "random") {
    config.strategy = PartitionStrategy::random;
  } else {
    throw ArgumentError("unknown partition strategy '" + std::string(text) + "'");
  }
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "improved") return Algorithm::improved;
  if (text == "cd") return Algorithm::cd;
  if (text == "sequential") return Algorithm::sequential;
  throw ArgumentError("unknown algorithm '" + std::string(text) + "'");
}

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::improved: return "improved";
    case Algorithm::cd: return "cd";
    case Algorithm::sequential: return "sequential";
  }
  return "?";
}

RunOutputs execute(const RunConfig& config) {
  const Minsup minsup = Minsup::parse(config.minsup);
  const TransactionDb db = load_source(config);

  LabelMap labels;
  if (config.labels) {
    std::ifstream in(*config.labels);
    if (!in) throw IoError("cannot open labels " + config.labels->string());
    labels = load_labels(in);
  }

  const MinedRun mined = mine(db, minsup, config, config.algorithm);
  RunOutputs out;
  out.result_json = result_json(mined.result, config.labels ? &labels : nullptr);
  std::ostringstream csv;
  write_metrics_csv(csv, algorithm_name(config.algorithm), mined.rounds, config.timing);
  out.metrics_csv = csv.str();
  std::ostringstream trace;
  write_trace(trace, mined.trace);
  out.trace = trace.str();
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunOutputs outputs = execute(config);
    if (config.out) {
      write_file(*config.out, outputs.result_json);
    } else {
      out << outputs.result_json;
    }
    if (config.metrics) write_file(*config.metrics, outputs.metrics_csv);
    if (config.trace) write_file(*config.trace, outputs.trace);
    return int{kOk};
  });
}

int sweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.base.synthetic) throw ArgumentError("sweep needs a --synthetic source");
    if (config.base.input) throw ArgumentError("sweep does not read --input");
    if (config.minsups.empty() || config.sizes.empty()) {
      throw ArgumentError("sweep needs non-empty --minsups and --sizes");
    }
    std::vector<Minsup> minsups;
    for (const auto& s : config.minsups) minsups.push_back(Minsup::parse(s));

    SyntheticParams params = *config.base.synthetic;
    params.n_transactions = *std::max_element(config.sizes.begin(), config.sizes.end());
    const TransactionDb full = generate_synthetic(params);

    std::ostringstream csv;
    csv << "minsup,db_size," << kMetricsHeader << '\n';
    for (std::size_t size : config.sizes) {
      const TransactionDb db = full.prefix(size);
      for (const auto& minsup : minsups) {
        for (Algorithm algorithm : config.algorithms) {
          const auto start = std::chrono::steady_clock::now();
          const MinedRun mined = mine(db, minsup, config.base, algorithm);
          const double ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
          const std::string prefix = minsup.text() + "," + std::to_string(db.size()) + ",";
          std::ostringstream rows;
          write_metrics_rows(rows, algorithm_name(algorithm), mined.rounds, true);
          std::istringstream lines(rows.str());
          for (std::string line; std::getline(lines, line);) csv << prefix << line << '\n';

          RoundMetrics sum;
          for (const auto& r : mined.rounds) {
            sum.candidates_generated += r.candidates_generated;
            sum.candidates_pruned_local += r.candidates_pruned_local;
            sum.messages_sent += r.messages_sent;
            sum.payload_bytes += r.payload_bytes;
            sum.llk_total += r.llk_total;
            sum.lk_size += r.lk_size;
          }
          char wall[32];
          std::snprintf(wall, sizeof wall, "%.3f", ms);
          csv << prefix << algorithm_name(algorithm) << ",total," << sum.candidates_generated
              << ',' << sum.candidates_pruned_local << ',' << sum.messages_sent << ','
              << sum.payload_bytes << ',' << sum.llk_total << ',' << sum.lk_size << ',' << wall
              << '\n';
        }
      }
    }
    if (config.base.metrics) {
      write_file(*config.base.metrics, csv.str());
    } else {
      out << csv.str();
    }
    return int{kOk};
  });
}

int main(int argc, char** argv) {
  CLI::App app{"Distributed frequent itemset mining over simulated sites"};
  app.require_subcommand(1);

  RunConfig config;
  std::string input, synthetic, partition_text = "contiguous", algorithm_text = "improved";
  std::string out_path, metrics_path, trace_path, labels_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "FIMI .dat transaction file");
    cmd->add_option("--synthetic", synthetic, "T=<avg_len>,I=<items>,D=<txns>,seed=<u64>");
    cmd->add_option("--sites", config.n_sites, "number of sites")->check(CLI::PositiveNumber);
    cmd->add_option("--partition", partition_text, "contiguous|roundrobin|random:<seed>");
    cmd->add_option("--metrics", metrics_path, "metrics CSV output");
    cmd->add_option("--count-colocated-messages", config.count_colocated_messages,
                    "count traffic between site 0 and the center (default true)");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "mine one configuration");
  add_common(run_cmd);
  run_cmd->add_option("--minsup", config.minsup, "minimum support, e.g. 0.05 or 2/3")->required();
  run_cmd->add_option("--algorithm", algorithm_text, "improved|cd|sequential");
  run_cmd->add_option("--out", out_path, "result JSON output (default stdout)");
  run_cmd->add_option("--trace", trace_path, "message trace output");
  run_cmd->add_option("--labels", labels_path, "item id to name map");
  run_cmd->add_flag("--timing", config.timing, "record per-round wall-clock time in the CSV");

  SweepConfig sweep_config;
  std::vector<std::string> algorithms_text;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "metrics over minsup and database size");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--minsups", sweep_config.minsups, "comma-separated minsups")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--sizes", sweep_config.sizes, "comma-separated database sizes")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--algorithms", algorithms_text, "subset of improved,cd,sequential")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  auto fill = [&]() {
    if (!input.empty()) config.input = input;
    if (!synthetic.empty()) config.synthetic = parse_synthetic(synthetic);
    parse_partition(partition_text, config);
    config.algorithm = parse_algorithm(algorithm_text);
    if (!out_path.empty()) config.out = out_path;
    if (!metrics_path.empty()) config.metrics = metrics_path;
    if (!trace_path.empty()) config.trace = trace_path;
    if (!labels_path.empty()) config.labels = labels_path;
  };
  try {
    fill();
    if (*sweep_cmd && !algorithms_text.empty()) {
      sweep_config.algorithms.clear();
      for (const auto& a : algorithms_text) sweep_config.algorithms.push_back(parse_algorithm(a));
    }
  } catch (const Error& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kConfigError;
  }

  if (*run_cmd) return run(config, std::cout, std::cerr);
  sweep_config.base = config;
  return sweep(sweep_config, std::cout, std::cerr);
}

}  // namespace darm::cli

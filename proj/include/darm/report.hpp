#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "darm/apriori.hpp"
#include "darm/messages.hpp"
#include "darm/metrics.hpp"

namespace darm {

using LabelMap = std::map<Item, std::string>;

/// One label per non-empty line: "<id> <name>", "<id>\t<name>" or "<id>:<name>".
LabelMap load_labels(std::istream& in);

/// Compact JSON, itemsets sorted by (length, lex), newline-terminated:
/// {"minsup":"..","db_size":..,"threshold":..,"frequent":[{"items":[..],"support":..},..]}
/// With labels, each entry also gets a "labels" array parallel to "items";
/// unlabeled ids render as their decimal value.
std::string result_json(const MiningResult& result, const LabelMap* labels = nullptr);

inline constexpr std::string_view kMetricsHeader =
    "algorithm,round,candidates,candidates_pruned_local,messages,bytes,llk_total,lk_size,wall_ms";

/// One row per round. wall_ms is written as 0 unless `with_timing`, so runs
/// with identical inputs produce identical files.
void write_metrics_rows(std::ostream& out, std::string_view algorithm,
                        std::span<const RoundMetrics> rounds, bool with_timing);

void write_metrics_csv(std::ostream& out, std::string_view algorithm,
                       std::span<const RoundMetrics> rounds, bool with_timing);

void write_trace(std::ostream& out, std::span<const TraceRecord> trace);

}  // namespace darm

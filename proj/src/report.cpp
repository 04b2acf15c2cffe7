#include "darm/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "darm/errors.hpp"

namespace darm {

LabelMap load_labels(std::istream& in) {
  LabelMap labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto sep = line.find_first_of(" \t:=", first);
    if (sep == std::string::npos) throw ParseError(line_no, "label line without a name");
    const std::string id_text = line.substr(first, sep - first);
    std::uint64_t id = 0;
    for (char c : id_text) {
      if (c < '0' || c > '9') throw ParseError(line_no, "malformed item id '" + id_text + "'");
      id = id * 10 + static_cast<std::uint64_t>(c - '0');
      if (id >= std::numeric_limits<Item>::max()) throw ParseError(line_no, "item id out of range");
    }
    const auto name_start = line.find_first_not_of(" \t:=", sep);
    if (name_start == std::string::npos) throw ParseError(line_no, "label line without a name");
    const auto name_end = line.find_last_not_of(" \t");
    labels[static_cast<Item>(id)] = line.substr(name_start, name_end - name_start + 1);
  }
  return labels;
}

std::string result_json(const MiningResult& result, const LabelMap* labels) {
  nlohmann::ordered_json doc;
  doc["minsup"] = result.minsup.text();
  doc["db_size"] = result.db_size;
  doc["threshold"] = result.threshold();
  auto frequent = nlohmann::ordered_json::array();
  for (const auto& [itemset, support] : result.frequent) {
    nlohmann::ordered_json entry;
    entry["items"] = std::vector<Item>(itemset.begin(), itemset.end());
    entry["support"] = support;
    if (labels) {
      auto names = nlohmann::ordered_json::array();
      for (Item item : itemset) {
        const auto it = labels->find(item);
        names.push_back(it != labels->end() ? it->second : std::to_string(item));
      }
      entry["labels"] = std::move(names);
    }
    frequent.push_back(std::move(entry));
  }
  doc["frequent"] = std::move(frequent);
  return doc.dump() + "\n";
}

void write_metrics_rows(std::ostream& out, std::string_view algorithm,
                        std::span<const RoundMetrics> rounds, bool with_timing) {
  char wall[32];
  for (const auto& r : rounds) {
    std::snprintf(wall, sizeof wall, "%.3f", with_timing ? r.wall_ms : 0.0);
    out << algorithm << ',' << r.level << ',' << r.candidates_generated << ','
        << r.candidates_pruned_local << ',' << r.messages_sent << ',' << r.payload_bytes << ','
        << r.llk_total << ',' << r.lk_size << ',' << wall << '\n';
  }
}

void write_metrics_csv(std::ostream& out, std::string_view algorithm,
                       std::span<const RoundMetrics> rounds, bool with_timing) {
  out << kMetricsHeader << '\n';
  write_metrics_rows(out, algorithm, rounds, with_timing);
}

void write_trace(std::ostream& out, std::span<const TraceRecord> trace) {
  for (const auto& rec : trace) out << to_json_line(rec) << '\n';
}

}  // namespace darm

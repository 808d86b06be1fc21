#include "antpower/export.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace antpower {
namespace {

std::string Optional(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : "";
}

std::string OptionalInt(const std::optional<int>& v) {
  return v ? std::to_string(*v) : "";
}

std::string Quote(const std::string& id) {
  std::string out = "\"";
  for (char ch : id) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string IterationsCsv(const RunMetrics& m) {
  std::ostringstream out;
  out << "iteration,power,spf_power,savings,avg_path_len,adoptions,rejections\n";
  for (const auto& row : m.iterations) {
    out << row.iteration << ',' << FormatDouble(row.power) << ','
        << FormatDouble(row.spf_power) << ',' << FormatDouble(row.savings)
        << ',' << FormatDouble(row.avg_path_length) << ',' << row.adoptions
        << ',' << row.rejections << '\n';
  }
  return out.str();
}

std::string AggregateCsv(const AggregateMetrics& agg) {
  std::ostringstream out;
  out << "metric,mean,ci95_half_width,samples\n";
  auto row = [&out](const char* name, const Estimate& e) {
    out << name << ',' << (e.samples > 0 ? FormatDouble(e.mean) : "") << ','
        << Optional(e.half_width) << ',' << e.samples << '\n';
  };
  row("savings", agg.savings);
  row("power", agg.power);
  row("spf_power", agg.spf_power);
  row("path_length", agg.path_length);
  row("spf_path_length", agg.spf_path_length);
  row("path_length_increment", agg.path_length_increment);
  row("iterations_to_90", agg.iterations_to_90);
  row("iterations_to_99", agg.iterations_to_99);
  return out.str();
}

std::string RunsCsv(const AggregateMetrics& agg) {
  std::ostringstream out;
  out << "seed,final_power,final_spf_power,final_savings,final_path_length,"
         "spf_path_length,iterations_to_90,iterations_to_99\n";
  for (const auto& r : agg.runs) {
    out << r.seed << ',' << FormatDouble(r.final_power) << ','
        << FormatDouble(r.final_spf_power) << ','
        << FormatDouble(r.final_savings) << ','
        << FormatDouble(r.final_path_length) << ','
        << FormatDouble(r.spf_path_length) << ','
        << OptionalInt(r.iterations_to_90) << ','
        << OptionalInt(r.iterations_to_99) << '\n';
  }
  return out.str();
}

std::string HistogramCsv(const std::map<int, int>& histogram) {
  std::ostringstream out;
  out << "flows,links\n";
  for (const auto& [flows, links] : histogram) {
    out << flows << ',' << links << '\n';
  }
  return out.str();
}

std::string ExportDot(const Network& net, std::span<const Path> paths) {
  std::vector<int> count(net.num_links(), 0);
  for (const Path& p : paths) {
    for (LinkIndex l : p.links) ++count[l];
  }
  const int max_count =
      count.empty() ? 0 : *std::max_element(count.begin(), count.end());

  std::ostringstream out;
  out << "digraph network {\n";
  for (const Node& n : net.nodes()) {
    out << "  " << Quote(n.name);
    if (n.edge) out << " [shape=box]";
    out << ";\n";
  }
  for (LinkIndex l = 0; l < net.num_links(); ++l) {
    const Link& lk = net.link(l);
    out << "  " << Quote(net.node(lk.from).name) << " -> "
        << Quote(net.node(lk.to).name) << " [";
    if (count[l] == 0) {
      out << "style=dotted, penwidth=1";
    } else {
      char width[32];
      std::snprintf(width, sizeof(width), "%.3f",
                    1.0 + 7.0 * count[l] / max_count);
      out << "style=solid, penwidth=" << width << ", label=\"" << count[l]
          << "\"";
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace antpower

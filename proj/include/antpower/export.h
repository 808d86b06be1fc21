#ifndef ANTPOWER_EXPORT_H_
#define ANTPOWER_EXPORT_H_

#include <map>
#include <span>
#include <string>

#include "antpower/network.h"
#include "antpower/simulation.h"

namespace antpower {

// One row per iteration:
// iteration,power,spf_power,savings,avg_path_len,adoptions,rejections
std::string IterationsCsv(const RunMetrics& m);

// metric,mean,ci95_half_width,samples; the half width is empty when fewer
// than two samples exist.
std::string AggregateCsv(const AggregateMetrics& agg);

// One row per replication.
std::string RunsCsv(const AggregateMetrics& agg);

// flows,links
std::string HistogramCsv(const std::map<int, int>& histogram);

// Directed graph where pen width grows with the number of flows on a link
// and unused links are dotted.
std::string ExportDot(const Network& net, std::span<const Path> paths);

// Shortest round-trip decimal form; "inf"/"nan" for non-finite values.
std::string FormatDouble(double value);

}  // namespace antpower

#endif  // ANTPOWER_EXPORT_H_

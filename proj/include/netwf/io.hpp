#pragma once

#include "netwf/evaluation.hpp"
#include "netwf/filter.hpp"
#include "netwf/network.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace netwf {

// Dense labeled matrix CSV: header row and column of node labels, cell
// token "NaN" (case-insensitive) marks an unobserved entry. Directedness
// is auto-detected from symmetry unless overridden.
WeightedNetwork read_matrix_csv(const std::string& path,
                                std::optional<bool> directed_override = {});

// 17-significant-digit serialization; unobserved entries written as NaN.
void write_matrix_csv(const WeightedNetwork& net, const std::string& path);

struct EdgeListResult {
  WeightedNetwork net;  // directed; unlisted pairs have weight 0, observed
  std::optional<Matrix> variances;  // present when a 4th column exists
};

// Tab-separated rows: source, target, weight[, variance]. Duplicate rows
// for an ordered pair are averaged. Node order follows node_universe
// when given, else first appearance in the file.
EdgeListResult read_edge_list(const std::string& path,
                              const std::optional<std::vector<std::string>>& node_universe = {});

// One node label per line.
std::vector<std::string> read_node_list(const std::string& path);

// Two-column TSV of node-label pairs.
BenchmarkPairs read_benchmark_pairs(const std::string& path, const std::string& name);

struct MonthlyNetworks {
  std::vector<WeightedNetwork> months;  // weight = raw count in that month
  WeightedNetwork aggregate;            // weight = total count / number of months
};

// Builds per-month frequency snapshots and the commensurate full-period
// aggregate from per-month edge-count networks over a shared node set.
MonthlyNetworks build_monthly_frequency(const std::vector<WeightedNetwork>& month_counts);

// Noise model JSON:
//   {"type":"homogeneous","sigma2":<real>}
//   {"type":"diagonal","path":<matrix-csv>}
//   {"type":"ensemble","snapshots":[<paths>]}
// Snapshot paths ending in .tsv are read as edge lists (over
// node_universe when given), anything else as matrix CSV.
NoiseModel parse_noise_spec(const std::string& json_text,
                            const std::vector<std::string>& node_ids,
                            const std::optional<std::vector<std::string>>& node_universe = {});

}  // namespace netwf

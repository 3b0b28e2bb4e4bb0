#include "netwf/io.hpp"

#include "netwf/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace netwf {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.push_back("");
  return fields;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

bool is_nan_token(const std::string& s) {
  if (s.size() != 3) return false;
  return std::tolower(s[0]) == 'n' && std::tolower(s[1]) == 'a' &&
         std::tolower(s[2]) == 'n';
}

double parse_number(const std::string& token, std::size_t line, std::size_t column,
                    const std::string& path) {
  const std::string t = trim(token);
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(value))
    throw DataError(path + ": unparsable cell at line " + std::to_string(line) +
                    ", column " + std::to_string(column) + ": '" + token + "'");
  return value;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string format_value(double value, bool observed) {
  if (!observed) return "NaN";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

WeightedNetwork read_matrix_csv(const std::string& path,
                                std::optional<bool> directed_override) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw DataError(path + ": empty file");

  const auto header = split(lines[0], ',');
  if (header.size() < 2) throw DataError(path + ": header row too short");
  std::vector<std::string> labels;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string label = trim(header[c]);
    if (label.empty())
      throw DataError(path + ": empty node label in header column " + std::to_string(c + 1));
    labels.push_back(label);
  }
  const Eigen::Index v = static_cast<Eigen::Index>(labels.size());
  {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (static_cast<Eigen::Index>(seen.size()) != v)
      throw DataError(path + ": duplicate node labels in header");
  }

  std::size_t data_rows = 0;
  for (std::size_t l = 1; l < lines.size(); ++l)
    if (!trim(lines[l]).empty()) ++data_rows;
  if (static_cast<Eigen::Index>(data_rows) != v)
    throw DataError(path + ": expected " + std::to_string(v) + " data rows, found " +
                    std::to_string(data_rows));

  Matrix weights(v, v);
  BoolMatrix observed(v, v);
  Eigen::Index row = 0;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    if (trim(lines[l]).empty()) continue;
    const auto fields = split(lines[l], ',');
    if (static_cast<Eigen::Index>(fields.size()) != v + 1)
      throw DataError(path + ": ragged row at line " + std::to_string(l + 1) + " (" +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(v + 1) + ")");
    if (trim(fields[0]) != labels[static_cast<std::size_t>(row)])
      throw DataError(path + ": row label '" + trim(fields[0]) + "' at line " +
                      std::to_string(l + 1) + " does not match header order");
    for (Eigen::Index c = 0; c < v; ++c) {
      const std::string token = trim(fields[static_cast<std::size_t>(c) + 1]);
      if (is_nan_token(token)) {
        observed(row, c) = false;
        weights(row, c) = std::numeric_limits<double>::quiet_NaN();
      } else {
        observed(row, c) = true;
        weights(row, c) = parse_number(token, l + 1, static_cast<std::size_t>(c) + 2, path);
      }
    }
    ++row;
  }

  bool directed;
  if (directed_override) {
    directed = *directed_override;
  } else {
    directed = false;
    for (Eigen::Index i = 0; i < v && !directed; ++i)
      for (Eigen::Index j = i + 1; j < v; ++j) {
        if (observed(i, j) != observed(j, i) ||
            (observed(i, j) && weights(i, j) != weights(j, i))) {
          directed = true;
          break;
        }
      }
  }
  WeightedNetwork net(std::move(labels), std::move(weights), std::move(observed), directed);
  net.validate();
  return net;
}

void write_matrix_csv(const WeightedNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  const Eigen::Index v = net.size();
  for (Eigen::Index c = 0; c < v; ++c)
    out << ',' << net.node_ids[static_cast<std::size_t>(c)];
  out << '\n';
  for (Eigen::Index r = 0; r < v; ++r) {
    out << net.node_ids[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < v; ++c)
      out << ',' << format_value(net.weights(r, c), net.observed(r, c));
    out << '\n';
  }
  if (!out) throw DataError("failed writing file: " + path);
}

EdgeListResult read_edge_list(const std::string& path,
                              const std::optional<std::vector<std::string>>& node_universe) {
  const auto lines = read_lines(path);

  std::vector<std::string> labels;
  std::map<std::string, Eigen::Index> index;
  auto node_index = [&](const std::string& label, std::size_t line_no) -> Eigen::Index {
    const auto found = index.find(label);
    if (found != index.end()) return found->second;
    if (node_universe)
      throw DataError(path + ": node '" + label + "' at line " + std::to_string(line_no) +
                      " is not in the node universe");
    const Eigen::Index id = static_cast<Eigen::Index>(labels.size());
    labels.push_back(label);
    index[label] = id;
    return id;
  };
  if (node_universe) {
    labels = *node_universe;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(labels.size()); ++i)
      index[labels[static_cast<std::size_t>(i)]] = i;
  }

  struct Accum {
    double weight_sum = 0.0;
    double variance_sum = 0.0;
    int count = 0;
  };
  std::map<std::pair<Eigen::Index, Eigen::Index>, Accum> cells;
  bool has_variances = false;

  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::string line = lines[l];
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3 && fields.size() != 4)
      throw DataError(path + ": malformed row at line " + std::to_string(l + 1) +
                      " (expected 3 or 4 tab-separated fields)");
    const std::string src = trim(fields[0]);
    const std::string tgt = trim(fields[1]);
    if (src.empty() || tgt.empty())
      throw DataError(path + ": empty node label at line " + std::to_string(l + 1));
    const Eigen::Index i = node_index(src, l + 1);
    const Eigen::Index j = node_index(tgt, l + 1);
    Accum& acc = cells[{i, j}];
    acc.weight_sum += parse_number(fields[2], l + 1, 3, path);
    if (fields.size() == 4) {
      acc.variance_sum += parse_number(fields[3], l + 1, 4, path);
      has_variances = true;
    }
    acc.count += 1;
  }

  const Eigen::Index v = static_cast<Eigen::Index>(labels.size());
  Matrix weights = Matrix::Zero(v, v);
  std::optional<Matrix> variances;
  if (has_variances) variances = Matrix::Zero(v, v);
  for (const auto& [cell, acc] : cells) {
    weights(cell.first, cell.second) = acc.weight_sum / acc.count;
    if (variances) (*variances)(cell.first, cell.second) = acc.variance_sum / acc.count;
  }

  EdgeListResult result;
  result.net = WeightedNetwork::dense(std::move(labels), std::move(weights), /*dir=*/true);
  result.variances = std::move(variances);
  return result;
}

std::vector<std::string> read_node_list(const std::string& path) {
  std::vector<std::string> nodes;
  for (const auto& line : read_lines(path)) {
    const std::string label = trim(line);
    if (!label.empty()) nodes.push_back(label);
  }
  if (nodes.empty()) throw DataError(path + ": empty node list");
  return nodes;
}

BenchmarkPairs read_benchmark_pairs(const std::string& path, const std::string& name) {
  BenchmarkPairs bench;
  bench.name = name;
  const auto lines = read_lines(path);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (trim(lines[l]).empty() || trim(lines[l])[0] == '#') continue;
    const auto fields = split(lines[l], '\t');
    if (fields.size() < 2)
      throw DataError(path + ": malformed benchmark row at line " + std::to_string(l + 1));
    const std::string a = trim(fields[0]);
    const std::string b = trim(fields[1]);
    if (a.empty() || b.empty())
      throw DataError(path + ": empty label at line " + std::to_string(l + 1));
    bench.insert(a, b);
  }
  return bench;
}

MonthlyNetworks build_monthly_frequency(const std::vector<WeightedNetwork>& month_counts) {
  if (month_counts.empty())
    throw ArgumentError("build_monthly_frequency: no snapshots given");
  const auto& first = month_counts.front();
  for (const auto& m : month_counts) {
    if (m.node_ids != first.node_ids)
      throw ArgumentError("build_monthly_frequency: snapshot node sets differ");
    for (const auto& [i, j] : profile_relevant_cells(m))
      if (m.weights(i, j) < 0.0)
        throw ArgumentError("build_monthly_frequency: counts must be non-negative");
  }

  MonthlyNetworks out;
  out.months = month_counts;
  Matrix total = Matrix::Zero(first.size(), first.size());
  for (const auto& m : month_counts) total += m.weights;
  total /= static_cast<double>(month_counts.size());
  out.aggregate =
      WeightedNetwork::dense(first.node_ids, std::move(total), first.directed);
  return out;
}

NoiseModel parse_noise_spec(const std::string& json_text,
                            const std::vector<std::string>& node_ids,
                            const std::optional<std::vector<std::string>>& node_universe) {
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(std::string("invalid noise spec JSON: ") + e.what());
  }
  if (!spec.is_object() || !spec.contains("type"))
    throw ArgumentError("noise spec must be an object with a 'type' field");
  const std::string type = spec["type"];

  if (type == "homogeneous") {
    if (!spec.contains("sigma2") || !spec["sigma2"].is_number())
      throw ArgumentError("homogeneous noise spec needs numeric 'sigma2'");
    return HomogeneousNoise{spec["sigma2"].get<double>()};
  }
  if (type == "diagonal") {
    if (!spec.contains("path"))
      throw ArgumentError("diagonal noise spec needs 'path'");
    const WeightedNetwork vars = read_matrix_csv(spec["path"].get<std::string>());
    if (vars.node_ids != node_ids)
      throw ArgumentError("diagonal noise matrix node set does not match the input");
    if (!vars.fully_observed())
      throw ArgumentError("diagonal noise matrix has missing entries; impute first");
    return DiagonalNoise{vars.weights};
  }
  if (type == "ensemble") {
    if (!spec.contains("snapshots") || !spec["snapshots"].is_array())
      throw ArgumentError("ensemble noise spec needs a 'snapshots' array");
    std::vector<WeightedNetwork> snaps;
    for (const auto& entry : spec["snapshots"]) {
      const std::string path = entry.get<std::string>();
      if (path.size() >= 4 && path.substr(path.size() - 4) == ".tsv") {
        snaps.push_back(read_edge_list(path, node_universe).net);
      } else {
        snaps.push_back(read_matrix_csv(path));
      }
      if (snaps.back().node_ids != node_ids)
        throw ArgumentError("ensemble snapshot node set does not match the input: " + path);
    }
    return estimate_ensemble_noise(snaps).ensemble;
  }
  throw ArgumentError("unknown noise type: " + type);
}

}  // namespace netwf

#include "netwf/cli.hpp"

#include "netwf/datagen.hpp"
#include "netwf/errors.hpp"
#include "netwf/evaluation.hpp"
#include "netwf/io.hpp"
#include "netwf/shrinker.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>

#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace netwf {

namespace {

using nlohmann::json;

json base_summary(const std::string& command) {
  json j;
  j["metrics"] = json::object();
  j["breakdown"] = json::array();
  j["stderr"] = nullptr;
  j["config_echo"] = json::object();
  j["config_echo"]["command"] = command;
  return j;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct CommonInput {
  std::string input;
  std::string node_universe_path;
  std::string directedness = "auto";  // auto|directed|undirected
};

WeightedNetwork load_network(const CommonInput& in,
                             std::optional<std::vector<std::string>>* universe_out = nullptr) {
  std::optional<std::vector<std::string>> universe;
  if (!in.node_universe_path.empty()) universe = read_node_list(in.node_universe_path);
  if (universe_out) *universe_out = universe;
  if (ends_with(in.input, ".tsv")) return read_edge_list(in.input, universe).net;
  std::optional<bool> override;
  if (in.directedness == "directed") override = true;
  if (in.directedness == "undirected") override = false;
  return read_matrix_csv(in.input, override);
}

// Variance matrices arrive as labeled CSVs with NaN for missing cells;
// node order must match the network.
std::optional<Matrix> load_variances(const std::string& path,
                                     const WeightedNetwork& net) {
  if (path.empty()) return std::nullopt;
  const WeightedNetwork vars = read_matrix_csv(path, net.directed);
  if (vars.node_ids != net.node_ids)
    throw ArgumentError("variance matrix node set does not match the input network");
  Matrix v = vars.weights;
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (!vars.observed(i, j)) v(i, j) = std::numeric_limits<double>::quiet_NaN();
  return v;
}

struct FilterFlags {
  double epsilon = 0.0;
  double cg_tol = 1e-8;
  int cg_max_iter = 0;
  std::string mode = "cg";
  bool no_demean = false;
  std::string directed_variant = "source_target";
  Eigen::Index direct_k_cap = 5000;
  bool include_mutual_pair = false;
  bool no_psd_projection = false;

  FilterConfig to_config() const {
    FilterConfig cfg;
    cfg.epsilon = epsilon;
    cfg.cg_tol = cg_tol;
    cfg.cg_max_iter = cg_max_iter;
    cfg.mode = mode == "direct" ? FilterMode::Direct : FilterMode::Cg;
    cfg.demean = !no_demean;
    cfg.directed_variant = directed_variant == "source_source"
                               ? DirectedVariant::SourceSource
                               : DirectedVariant::SourceTarget;
    cfg.direct_k_cap = direct_k_cap;
    cfg.similarity.exclude_mutual_pair = !include_mutual_pair;
    cfg.project_psd = !no_psd_projection;
    return cfg;
  }
};

void add_filter_flags(CLI::App* cmd, FilterFlags& flags) {
  cmd->add_option("--epsilon", flags.epsilon,
                  "Ridge shift (default: 1e-6 * (prefactor + mean noise variance))");
  cmd->add_option("--cg-tol", flags.cg_tol, "CG relative-residual tolerance");
  cmd->add_option("--cg-max-iter", flags.cg_max_iter, "CG iteration cap (default 10*v^2)");
  cmd->add_option("--mode", flags.mode, "Solver mode")
      ->check(CLI::IsMember({"cg", "direct"}));
  cmd->add_flag("--no-demean", flags.no_demean, "Skip global-mean removal");
  cmd->add_option("--directed-variant", flags.directed_variant,
                  "Edge-similarity variant for directed networks")
      ->check(CLI::IsMember({"source_target", "source_source"}));
  cmd->add_option("--direct-k-cap", flags.direct_k_cap,
                  "Refuse direct mode above this k = v^2");
  cmd->add_flag("--include-mutual-pair", flags.include_mutual_pair,
                "Keep the mutual pair entries in correlation profiles");
  cmd->add_flag("--no-psd-projection", flags.no_psd_projection,
                "Use the raw (possibly indefinite) PSNs in the signal covariance");
}

json cg_report_json(const std::optional<CgReport>& report) {
  if (!report) return nullptr;
  json j;
  j["iterations"] = report->iterations;
  j["final_relative_residual"] = report->final_relative_residual;
  j["converged"] = report->converged;
  return j;
}

// --- subcommand runners -------------------------------------------------

int run_psn(const CommonInput& in, const std::string& kind, bool include_mutual_pair,
            std::optional<double> cutoff, const std::string& out_path,
            std::ostream& out) {
  const WeightedNetwork raw = load_network(in);
  const auto [net, ignored] = impute_missing(raw);
  SimilarityOptions opts;
  opts.exclude_mutual_pair = !include_mutual_pair;

  std::string effective_kind = kind;
  if (effective_kind == "auto") effective_kind = net.directed ? "source" : "undirected";
  ProfileSimilarity psn;
  if (effective_kind == "undirected") {
    psn = undirected_profile_similarity(net, opts);
  } else if (effective_kind == "source") {
    psn = source_profile_similarity(net, opts);
  } else {
    psn = target_profile_similarity(net, opts);
  }

  WeightedNetwork psn_net =
      WeightedNetwork::dense(psn.node_ids, psn.matrix, /*dir=*/false);
  write_matrix_csv(psn_net, out_path);

  json summary = base_summary("psn");
  summary["config_echo"]["input"] = in.input;
  summary["config_echo"]["kind"] = effective_kind;
  summary["config_echo"]["out"] = out_path;
  summary["metrics"]["nodes"] = psn.size();
  if (cutoff) {
    summary["config_echo"]["cutoff"] = *cutoff;
    summary["metrics"]["edges_above_cutoff"] =
        static_cast<std::int64_t>(psn_threshold(psn, *cutoff).size());
  }
  out << summary.dump(2) << '\n';
  return 0;
}

int run_denoise(const CommonInput& in, const std::string& noise_json,
                const std::string& variances_path, const FilterFlags& flags,
                bool remove_self_links, bool truncate_negative,
                const std::string& out_path, std::ostream& out) {
  std::optional<std::vector<std::string>> universe;
  const WeightedNetwork raw = load_network(in, &universe);
  const std::optional<Matrix> raw_vars = load_variances(variances_path, raw);
  auto [net, filled_vars] = impute_missing(raw, raw_vars);

  NoiseModel noise = HomogeneousNoise{0.0};
  std::string noise_desc;
  if (!noise_json.empty()) {
    noise = parse_noise_spec(noise_json, net.node_ids, universe);
    if (std::holds_alternative<DiagonalNoise>(noise) && filled_vars)
      throw ArgumentError("pass either --noise diagonal or --variances, not both");
    noise_desc = "spec";
  } else if (filled_vars) {
    noise = DiagonalNoise{*filled_vars};
    noise_desc = "diagonal from --variances";
  } else {
    noise = naive_noise_guess(net);
    noise_desc = "naive single-snapshot variance";
  }

  const FilterConfig cfg = flags.to_config();
  DenoiseResult result = netwf(net, noise, cfg);
  result = postprocess(std::move(result), remove_self_links, truncate_negative);

  WeightedNetwork denoised = net;
  denoised.weights = result.denoised;
  write_matrix_csv(denoised, out_path);

  json summary = base_summary("denoise");
  summary["config_echo"]["input"] = in.input;
  summary["config_echo"]["out"] = out_path;
  summary["config_echo"]["noise"] = noise_desc;
  summary["config_echo"]["mode"] = flags.mode;
  summary["config_echo"]["remove_self_links"] = remove_self_links;
  summary["config_echo"]["truncate_negative"] = truncate_negative;
  summary["metrics"]["prefactor"] = result.prefactor_used;
  summary["metrics"]["epsilon"] = result.epsilon_used;
  summary["metrics"]["global_mean_restored"] = result.global_mean_restored;
  summary["metrics"]["cg"] = cg_report_json(result.cg_report);
  out << summary.dump(2) << '\n';
  return 0;
}

int run_shrink(const CommonInput& in, std::optional<double> sigma2,
               const std::string& noise_json, const std::string& variances_path,
               bool remove_self_links, bool truncate_negative,
               const std::string& out_path, const std::string& report_path,
               std::ostream& out) {
  std::optional<std::vector<std::string>> universe;
  const WeightedNetwork raw = load_network(in, &universe);
  const std::optional<Matrix> raw_vars = load_variances(variances_path, raw);
  auto [net, filled_vars] = impute_missing(raw, raw_vars);

  double sigma2_used = 0.0;
  if (sigma2) {
    sigma2_used = *sigma2;
  } else if (!noise_json.empty()) {
    sigma2_used =
        homogenize_noise(parse_noise_spec(noise_json, net.node_ids, universe)).sigma2;
  } else if (filled_vars) {
    sigma2_used = homogenize_noise(DiagonalNoise{*filled_vars}).sigma2;
  } else {
    sigma2_used = naive_noise_guess(net).sigma2;
  }

  auto [denoised, report] = optimal_shrink(net, sigma2_used);
  if (remove_self_links) denoised.weights.diagonal().setZero();
  if (truncate_negative) denoised.weights = denoised.weights.cwiseMax(0.0);
  write_matrix_csv(denoised, out_path);

  json report_json;
  report_json["original_singular_values"] = report.original_singular_values;
  report_json["shrunk_singular_values"] = report.shrunk_singular_values;
  report_json["retained_rank"] = report.retained_rank;
  report_json["sigma2_used"] = report.sigma2_used;
  if (!report_path.empty()) {
    std::ofstream rf(report_path);
    if (!rf) throw DataError("cannot write report: " + report_path);
    rf << report_json.dump(2) << '\n';
  }

  json summary = base_summary("shrink");
  summary["config_echo"]["input"] = in.input;
  summary["config_echo"]["out"] = out_path;
  summary["metrics"]["sigma2_used"] = sigma2_used;
  summary["metrics"]["retained_rank"] = report.retained_rank;
  out << summary.dump(2) << '\n';
  return 0;
}

int run_eval(const CommonInput& scores_in, const std::string& reference_path,
             const std::vector<std::string>& benchmark_paths,
             const std::vector<std::string>& benchmark_names, std::size_t top_k,
             std::optional<double> neg_thresh, std::optional<double> pos_thresh,
             const std::string& out_path, std::ostream& out) {
  const WeightedNetwork scores = load_network(scores_in);
  json summary = base_summary("eval");
  summary["config_echo"]["scores"] = scores_in.input;

  if (!reference_path.empty()) {
    CommonInput ref_in;
    ref_in.input = reference_path;
    ref_in.directedness = scores.directed ? "directed" : "undirected";
    const WeightedNetwork reference = load_network(ref_in);
    if (reference.node_ids != scores.node_ids)
      throw ArgumentError("reference node set does not match the scores network");
    BoolMatrix mask(scores.size(), scores.size());
    for (Eigen::Index j = 0; j < scores.size(); ++j)
      for (Eigen::Index i = 0; i < scores.size(); ++i)
        mask(i, j) = i != j && scores.observed(i, j) && reference.observed(i, j);
    summary["config_echo"]["reference"] = reference_path;
    summary["metrics"]["mse"] = mse(scores.weights, reference.weights, mask);
    const auto r2 = r_squared(scores.weights, reference.weights, mask);
    summary["metrics"]["r_squared"] = r2 ? json(*r2) : json(nullptr);
  }

  for (std::size_t b = 0; b < benchmark_paths.size(); ++b) {
    const std::string name = b < benchmark_names.size()
                                 ? benchmark_names[b]
                                 : std::filesystem::path(benchmark_paths[b]).stem().string();
    const BenchmarkPairs bench = read_benchmark_pairs(benchmark_paths[b], name);
    const auto resolution = resolve_benchmark(bench, scores.node_ids);
    json entry;
    entry["benchmark"] = name;
    entry["pairs_input"] = resolution.input_count;
    entry["pairs_resolved"] = resolution.pairs.size();
    entry["pairs_dropped_unresolved"] = resolution.dropped_unresolved;
    entry["pairs_dropped_self"] = resolution.dropped_self;
    entry["auprc"] = auprc(scores, bench);
    const auto enrichment = fold_enrichment(scores, bench, top_k);
    entry["fold_enrichment"] = enrichment ? json(*enrichment) : json(nullptr);
    entry["top_k"] = top_k;
    summary["breakdown"].push_back(entry);
  }

  if (neg_thresh && pos_thresh) {
    const auto [negatives, positives] = threshold_counts(scores, *neg_thresh, *pos_thresh);
    summary["metrics"]["n_negative"] = negatives;
    summary["metrics"]["n_positive"] = positives;
    summary["config_echo"]["neg_thresh"] = *neg_thresh;
    summary["config_echo"]["pos_thresh"] = *pos_thresh;
  }

  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw DataError("cannot write report: " + out_path);
    f << summary.dump(2) << '\n';
  }
  out << summary.dump(2) << '\n';
  return 0;
}

int run_crossval(const CommonInput& in, const std::string& variances_path, int k,
                 std::uint64_t seed, const std::string& methods_csv,
                 const FilterFlags& flags, const std::string& out_path,
                 std::ostream& out) {
  const WeightedNetwork net = load_network(in);
  const std::optional<Matrix> variances = load_variances(variances_path, net);

  std::vector<CvMethod> methods;
  std::stringstream ss(methods_csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "netwf") {
      methods.push_back(CvMethod::NetWF);
    } else if (token == "os") {
      methods.push_back(CvMethod::OptimalShrink);
    } else if (token == "mi" || token == "mean_impute") {
      methods.push_back(CvMethod::MeanImpute);
    } else {
      throw ArgumentError("unknown method '" + token + "' (expected netwf, os, mi)");
    }
  }

  const EvaluationReport report =
      cross_validate(net, variances, k, seed, methods, flags.to_config());

  json summary = base_summary("crossval");
  summary["config_echo"]["input"] = in.input;
  summary["config_echo"]["k"] = k;
  summary["config_echo"]["seed"] = seed;
  summary["config_echo"]["methods"] = methods_csv;
  for (const auto& [key, value] : report.metrics) summary["metrics"][key] = value;
  json stderr_json = json::object();
  for (const auto& [key, value] : report.standard_error) stderr_json[key] = value;
  summary["stderr"] = stderr_json;
  for (const auto& [key, values] : report.breakdown) {
    json entry;
    entry["metric"] = key;
    entry["per_fold"] = values;
    summary["breakdown"].push_back(entry);
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw DataError("cannot write report: " + out_path);
    f << summary.dump(2) << '\n';
  }
  out << summary.dump(2) << '\n';
  return 0;
}

int run_synth(const std::string& type, Eigen::Index v, double w_in, double w_out,
              const std::string& singular_values_csv, double sigma, std::uint64_t seed,
              const std::string& truth_path, const std::string& noisy_path,
              std::ostream& out) {
  WeightedNetwork truth;
  if (type == "two-community") {
    truth = two_community_network(v, w_in, w_out);
  } else {
    std::vector<double> values;
    std::stringstream ss(singular_values_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token.empty()) continue;
      values.push_back(std::stod(token));
    }
    truth = planted_lowrank(v, values, seed);
  }

  const SyntheticInstance instance = add_gaussian_noise(truth, sigma, seed);
  if (!truth_path.empty()) write_matrix_csv(instance.truth, truth_path);
  if (!noisy_path.empty()) write_matrix_csv(instance.noisy, noisy_path);

  json summary = base_summary("synth");
  summary["config_echo"]["type"] = type;
  summary["config_echo"]["v"] = v;
  summary["config_echo"]["sigma"] = sigma;
  summary["config_echo"]["seed"] = seed;
  if (!truth_path.empty()) summary["config_echo"]["truth_out"] = truth_path;
  if (!noisy_path.empty()) summary["config_echo"]["noisy_out"] = noisy_path;
  summary["metrics"]["noise_sigma2"] = sigma * sigma;
  out << summary.dump(2) << '\n';
  return 0;
}

void add_common_input(CLI::App* cmd, CommonInput& in, const std::string& option_name) {
  cmd->add_option(option_name, in.input, "Input network (.csv matrix or .tsv edge list)")
      ->required();
  cmd->add_option("--node-universe", in.node_universe_path,
                  "Node list fixing label order for edge-list inputs");
  cmd->add_option("--directedness", in.directedness,
                  "Directedness of matrix-CSV inputs (default: auto-detect)")
      ->check(CLI::IsMember({"auto", "directed", "undirected"}));
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out) {
  if (const char* threads = std::getenv("NETWF_THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));

  CLI::App app{"netwf: collective noise filtering for weighted networks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from an INI/TOML file");

  // psn
  auto* psn_cmd = app.add_subcommand("psn", "Compute a profile similarity network")->configurable()->fallthrough();
  CommonInput psn_in;
  add_common_input(psn_cmd, psn_in, "--input");
  std::string psn_kind = "auto";
  bool psn_include_mutual = false;
  double psn_cutoff_value = 0.0;
  std::string psn_out;
  psn_cmd->add_option("--kind", psn_kind, "PSN kind")
      ->check(CLI::IsMember({"auto", "undirected", "source", "target"}));
  psn_cmd->add_flag("--include-mutual-pair", psn_include_mutual,
                    "Keep the mutual pair entries in correlation profiles");
  auto* psn_cutoff_opt =
      psn_cmd->add_option("--cutoff", psn_cutoff_value, "Report edges above this cutoff");
  psn_cmd->add_option("--out", psn_out, "Output PSN matrix CSV")->required();

  // denoise
  auto* denoise_cmd = app.add_subcommand("denoise", "Run the network Wiener filter")->configurable()->fallthrough();
  CommonInput denoise_in;
  add_common_input(denoise_cmd, denoise_in, "--input");
  std::string denoise_noise, denoise_vars, denoise_out;
  FilterFlags denoise_flags;
  bool denoise_remove_self = false, denoise_truncate_neg = false;
  denoise_cmd->add_option("--noise", denoise_noise, "Noise model JSON spec");
  denoise_cmd->add_option("--variances", denoise_vars,
                          "Per-edge noise variance matrix CSV (NaN = missing)");
  add_filter_flags(denoise_cmd, denoise_flags);
  denoise_cmd->add_flag("--remove-self-links", denoise_remove_self,
                        "Zero the diagonal of the output");
  denoise_cmd->add_flag("--truncate-negative", denoise_truncate_neg,
                        "Clip negative output weights to zero");
  denoise_cmd->add_option("--out", denoise_out, "Output matrix CSV")->required();

  // shrink
  auto* shrink_cmd = app.add_subcommand("shrink", "Singular-value shrinkage baseline")->configurable()->fallthrough();
  CommonInput shrink_in;
  add_common_input(shrink_cmd, shrink_in, "--input");
  double shrink_sigma2_value = 0.0;
  std::string shrink_noise, shrink_vars, shrink_out, shrink_report;
  bool shrink_remove_self = false, shrink_truncate_neg = false;
  auto* shrink_sigma2_opt =
      shrink_cmd->add_option("--sigma2", shrink_sigma2_value, "Homogeneous noise variance");
  shrink_cmd->add_option("--noise", shrink_noise,
                         "Noise model JSON spec (homogenized to its mean variance)");
  shrink_cmd->add_option("--variances", shrink_vars,
                         "Per-edge noise variance matrix CSV (homogenized)");
  shrink_cmd->add_flag("--remove-self-links", shrink_remove_self,
                       "Zero the diagonal of the output");
  shrink_cmd->add_flag("--truncate-negative", shrink_truncate_neg,
                       "Clip negative output weights to zero");
  shrink_cmd->add_option("--out", shrink_out, "Output matrix CSV")->required();
  shrink_cmd->add_option("--report", shrink_report, "Shrinkage report JSON path");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a scored network")->configurable()->fallthrough();
  CommonInput eval_in;
  add_common_input(eval_cmd, eval_in, "--scores");
  std::string eval_reference, eval_out;
  std::vector<std::string> eval_benchmarks, eval_benchmark_names;
  std::size_t eval_top_k = 1000;
  double eval_neg_value = 0.0, eval_pos_value = 0.0;
  eval_cmd->add_option("--reference", eval_reference, "Reference network matrix CSV");
  eval_cmd->add_option("--benchmark", eval_benchmarks, "Benchmark pair TSV (repeatable)");
  eval_cmd->add_option("--benchmark-name", eval_benchmark_names,
                       "Name for the corresponding --benchmark");
  eval_cmd->add_option("--top-k", eval_top_k, "Pairs considered for fold enrichment");
  auto* eval_neg_opt =
      eval_cmd->add_option("--neg-thresh", eval_neg_value, "Strict negative threshold");
  auto* eval_pos_opt =
      eval_cmd->add_option("--pos-thresh", eval_pos_value, "Strict positive threshold");
  eval_neg_opt->needs(eval_pos_opt);
  eval_pos_opt->needs(eval_neg_opt);
  eval_cmd->add_option("--out", eval_out, "Write the report JSON here too");

  // crossval
  auto* crossval_cmd = app.add_subcommand("crossval", "K-fold cross validation")->configurable()->fallthrough();
  CommonInput crossval_in;
  add_common_input(crossval_cmd, crossval_in, "--input");
  std::string crossval_vars, crossval_methods = "netwf,os,mi", crossval_out;
  int crossval_k = 10;
  std::uint64_t crossval_seed = 0;
  FilterFlags crossval_flags;
  crossval_cmd->add_option("--variances", crossval_vars,
                           "Per-edge noise variance matrix CSV (NaN = missing)");
  crossval_cmd->add_option("--k", crossval_k, "Number of folds");
  crossval_cmd->add_option("--seed", crossval_seed, "Fold-assignment seed");
  crossval_cmd->add_option("--methods", crossval_methods,
                           "Comma-separated methods: netwf,os,mi");
  add_filter_flags(crossval_cmd, crossval_flags);
  crossval_cmd->add_option("--out", crossval_out, "Write the report JSON here too");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic instances")->configurable()->fallthrough();
  std::string synth_type = "two-community";
  Eigen::Index synth_v = 40;
  double synth_w_in = 1.0, synth_w_out = 0.1, synth_sigma = 0.0;
  std::string synth_singular_values, synth_truth_out, synth_noisy_out;
  std::uint64_t synth_seed = 0;
  synth_cmd->add_option("--type", synth_type, "Instance family")
      ->check(CLI::IsMember({"two-community", "lowrank"}));
  synth_cmd->add_option("--v", synth_v, "Number of nodes");
  synth_cmd->add_option("--w-in", synth_w_in, "Within-community weight");
  synth_cmd->add_option("--w-out", synth_w_out, "Cross-community weight");
  synth_cmd->add_option("--singular-values", synth_singular_values,
                        "Comma-separated descending singular values (lowrank)");
  synth_cmd->add_option("--sigma", synth_sigma, "Gaussian noise standard deviation");
  synth_cmd->add_option("--seed", synth_seed, "Noise / factor seed");
  synth_cmd->add_option("--truth-out", synth_truth_out, "Truth matrix CSV path");
  synth_cmd->add_option("--noisy-out", synth_noisy_out, "Noisy matrix CSV path");

  std::vector<std::string> argv_reversed(args.rbegin(), args.rend());
  try {
    app.parse(argv_reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, std::cerr);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, std::cerr);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, std::cerr);
    return 2;
  }

  try {
    if (psn_cmd->parsed()) {
      std::optional<double> cutoff;
      if (psn_cutoff_opt->count() > 0) cutoff = psn_cutoff_value;
      return run_psn(psn_in, psn_kind, psn_include_mutual, cutoff, psn_out, out);
    }
    if (denoise_cmd->parsed()) {
      return run_denoise(denoise_in, denoise_noise, denoise_vars, denoise_flags,
                         denoise_remove_self, denoise_truncate_neg, denoise_out, out);
    }
    if (shrink_cmd->parsed()) {
      std::optional<double> sigma2;
      if (shrink_sigma2_opt->count() > 0) sigma2 = shrink_sigma2_value;
      return run_shrink(shrink_in, sigma2, shrink_noise, shrink_vars, shrink_remove_self,
                        shrink_truncate_neg, shrink_out, shrink_report, out);
    }
    if (eval_cmd->parsed()) {
      std::optional<double> neg, pos;
      if (eval_neg_opt->count() > 0) neg = eval_neg_value;
      if (eval_pos_opt->count() > 0) pos = eval_pos_value;
      return run_eval(eval_in, eval_reference, eval_benchmarks, eval_benchmark_names,
                      eval_top_k, neg, pos, eval_out, out);
    }
    if (crossval_cmd->parsed()) {
      return run_crossval(crossval_in, crossval_vars, crossval_k, crossval_seed,
                          crossval_methods, crossval_flags, crossval_out, out);
    }
    if (synth_cmd->parsed()) {
      return run_synth(synth_type, synth_v, synth_w_in, synth_w_out,
                       synth_singular_values, synth_sigma, synth_seed, synth_truth_out,
                       synth_noisy_out, out);
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace netwf

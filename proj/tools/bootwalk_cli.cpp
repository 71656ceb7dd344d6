// Command line front end: every subcommand renders one artifact (CSV or
// JSON) whose header echoes the resolved configuration, so a result file
// is always enough to reproduce itself.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bootwalk/exact.hpp"
#include "bootwalk/io.hpp"
#include "bootwalk/nu.hpp"
#include "bootwalk/operators.hpp"
#include "bootwalk/walks.hpp"

namespace bw = bootwalk;
using Json = bw::Json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw bw::BadValuesError("cannot parse label '" + item + "'");
    }
    if (used != item.size()) throw bw::BadValuesError("cannot parse label '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<long long> parse_ints(const std::string& csv, const char* what) {
  std::vector<long long> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw bw::ValidationError(std::string("cannot parse ") + what + " '" + item + "'");
    }
    if (used != item.size()) {
      throw bw::ValidationError(std::string("cannot parse ") + what + " '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

bw::GroupSpec group_from(int p, const std::string& values_csv) {
  if (values_csv.empty()) return bw::centered_group(p);
  return bw::make_group(p, parse_values(values_csv));
}

std::vector<bw::Element> elements_from(const std::vector<long long>& idx, int p,
                                       const char* what) {
  std::vector<bw::Element> out;
  out.reserve(idx.size());
  for (long long v : idx) {
    if (v < 0 || v >= p) {
      throw bw::ValidationError(std::string(what) + " index " + std::to_string(v) +
                                " outside [0, " + std::to_string(p) + ")");
    }
    out.push_back(bw::Element{static_cast<int>(v)});
  }
  return out;
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("BOOTWALK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 1;
}

struct Output {
  std::string format = "csv";
  std::string path = "-";
  bool echo_only = false;

  // Returns true when the run should stop after echoing the config.
  bool emit(const Json& config, const std::string& csv_body, const Json& data) const {
    if (echo_only) {
      std::cout << config.dump(2) << "\n";
      return true;
    }
    std::string text;
    if (format == "csv") {
      text = std::string("# bootwalk ") + kVersion + "\n# config " + config.dump() + "\n" +
             csv_body;
    } else {
      Json doc;
      doc["meta"] = Json{{"tool", "bootwalk"}, {"version", kVersion}, {"config", config}};
      doc["data"] = data;
      text = doc.dump(2) + "\n";
    }
    if (path == "-") {
      std::cout << text;
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw bw::ValidationError("cannot open output file: " + path);
      f << text;
    }
    return false;
  }
};

struct Opts {
  // shared
  std::string format = "csv";
  std::string out = "-";
  bool echo_config = false;
  int threads = 0;
  int p = 2;
  std::string values;
  uint64_t seed = 0;
  long long budget = bw::kDefaultEnumBudget;

  // per command
  long long k_max = 1;
  long long n = 1;
  long long n_max = 1;
  long long m = 1;
  int dims = 2;
  long long steps = 0;
  long long upto = 0;
  long long replicas = 10000;
  std::string layout = "matrix";
  std::string prefix;
  long long last = 0;
  std::string targets;
  std::string samples_out;
  bool exact = false;
  long long n_min_fit = 100;
  long long n_max_fit = 1000;
  long long tail_from = 0;
  long long tail_to = 0;
};

Json base_config(const char* command, const Opts& o) {
  Json c;
  c["command"] = command;
  c["format"] = o.format;
  return c;
}

int run_nu(const Opts& o) {
  const bw::NuTable t = bw::build_nu_recurrence(o.p, o.k_max, o.n_max);
  Json config = base_config("nu", o);
  config["p"] = o.p;
  config["k_max"] = o.k_max;
  config["n_max"] = o.n_max;
  config["layout"] = o.layout;
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, o.layout == "long" ? bw::nu_csv_long(t) : bw::nu_csv_matrix(t),
           bw::nu_json(t));
  return 0;
}

int run_omega(const Opts& o) {
  std::vector<std::pair<long long, bw::Omega>> rows;
  for (long long K = 0; K <= o.k_max; ++K) rows.emplace_back(K, bw::omega(K, o.p));
  Json config = base_config("omega", o);
  config["p"] = o.p;
  config["k_max"] = o.k_max;
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::omega_csv(rows), bw::omega_json(rows));
  return 0;
}

int run_pmf2d(const Opts& o) {
  const bw::GroupSpec g = o.values.empty() && o.p == 2 ? bw::sign_group()
                                                       : group_from(o.p, o.values);
  const bw::JointPmf pmf = bw::joint_pmf_2d_formula(g, o.n);
  Json config = base_config("pmf2d", o);
  config["p"] = o.p;
  config["n"] = o.n;
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::pmf_csv(pmf), bw::pmf_json(pmf));
  return 0;
}

int run_returns(const Opts& o) {
  if ((o.steps == 0) == (o.upto == 0)) {
    throw bw::ValidationError("give exactly one of --steps or --upto");
  }
  std::vector<bw::ReturnProb> rows;
  std::vector<double> sums;
  if (o.steps != 0) {
    rows.push_back(o.dims == 2 ? bw::return_prob_2d(o.steps) : bw::return_prob_3d(o.steps));
  } else {
    rows = bw::return_prob_series(o.dims, o.upto);
    sums.reserve(rows.size());
    double acc = 0.0;
    for (const auto& r : rows) {
      acc += std::exp(r.log_prob);
      sums.push_back(acc);
    }
  }
  Json config = base_config("returns", o);
  config["dims"] = o.dims;
  if (o.steps != 0) config["steps"] = o.steps;
  if (o.upto != 0) config["upto"] = o.upto;
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::returns_csv(rows, sums), bw::returns_json(rows, sums));
  return 0;
}

int run_oracle(const Opts& o) {
  const bw::GroupSpec g = group_from(o.p, o.values);
  const int threads = resolve_threads(o.threads);
  const bw::JointPmf pmf =
      bw::enumerate_oracle(g, static_cast<int>(o.k_max), o.n, o.budget, threads);
  Json config = base_config("oracle", o);
  config["p"] = o.p;
  config["values"] = g.values;
  config["k_max"] = o.k_max;
  config["n"] = o.n;
  config["budget"] = o.budget;
  config["threads"] = threads;
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::pmf_csv(pmf), bw::pmf_json(pmf));
  return 0;
}

int run_bins(const Opts& o) {
  const bw::JointPmf pmf = bw::bins_pmf(o.n);
  Json config = base_config("bins", o);
  config["n"] = o.n;
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::pmf_csv(pmf), bw::pmf_json(pmf));
  return 0;
}

int run_simulate(const Opts& o) {
  const bw::GroupSpec g = group_from(o.p, o.values);
  const bw::WalkPath w = bw::simulate_path(g, o.k_max, o.n, o.seed);
  Json config = base_config("simulate", o);
  config["p"] = o.p;
  config["values"] = g.values;
  config["k_max"] = o.k_max;
  config["n"] = o.n;
  config["seed"] = o.seed;
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::path_csv(w), bw::path_json(w));
  return 0;
}

int run_cov(const Opts& o) {
  const bw::GroupSpec g = group_from(o.p, o.values);
  const int threads = resolve_threads(o.threads);
  const bw::CovarianceReport rep =
      o.exact ? bw::covariance_check_exact(g, static_cast<int>(o.k_max), o.m, o.n, o.budget)
              : bw::covariance_check(g, static_cast<int>(o.k_max), o.m, o.n, o.replicas,
                                     o.seed, threads);
  Json config = base_config("cov", o);
  config["p"] = o.p;
  config["values"] = g.values;
  config["k_max"] = o.k_max;
  config["m"] = o.m;
  config["n"] = o.n;
  config["exact"] = o.exact;
  if (o.exact) {
    config["budget"] = o.budget;
  } else {
    config["replicas"] = o.replicas;
    config["seed"] = o.seed;
    config["threads"] = threads;
  }
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::cov_csv(rep), bw::cov_json(rep));
  return 0;
}

int run_fclt(const Opts& o) {
  const bw::GroupSpec g = group_from(o.p, o.values);
  const int threads = resolve_threads(o.threads);
  const bw::EnsembleStats st =
      bw::fclt_diagnostics(g, static_cast<int>(o.k_max), o.n, o.replicas, o.seed, threads);
  Json config = base_config("fclt", o);
  config["p"] = o.p;
  config["values"] = g.values;
  config["k_max"] = o.k_max;
  config["n"] = o.n;
  config["replicas"] = o.replicas;
  config["seed"] = o.seed;
  config["threads"] = threads;
  if (!o.samples_out.empty()) config["samples_out"] = o.samples_out;
  Output out{o.format, o.out, o.echo_config};
  const bool stopped = out.emit(config, bw::ensemble_csv(st), bw::ensemble_json(st));
  if (!stopped && !o.samples_out.empty()) {
    const auto rows =
        bw::ensemble_terminals(g, static_cast<int>(o.k_max), o.n, o.replicas, o.seed, threads);
    std::ofstream f(o.samples_out, std::ios::binary);
    if (!f) throw bw::ValidationError("cannot open output file: " + o.samples_out);
    f << "replica";
    for (long long K = 0; K <= o.k_max; ++K) f << ",Y" << K;
    f << "\n";
    for (size_t r = 0; r < rows.size(); ++r) {
      f << r;
      for (double v : rows[r]) f << "," << bw::format_double(v);
      f << "\n";
    }
  }
  return 0;
}

int run_visits(const Opts& o) {
  const int threads = resolve_threads(o.threads);
  const bw::VisitReport rep = bw::return_statistics(o.dims, o.steps, o.replicas, o.seed, threads);
  Json config = base_config("visits", o);
  config["dims"] = o.dims;
  config["steps"] = o.steps;
  config["replicas"] = o.replicas;
  config["seed"] = o.seed;
  config["threads"] = threads;
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::visits_csv(rep), bw::visits_json(rep));
  return 0;
}

int run_solve(const Opts& o) {
  const bw::GroupSpec g = group_from(o.p, o.values);
  const auto prefix = elements_from(parse_ints(o.prefix, "prefix"), g.p, "prefix");
  const auto targets = elements_from(parse_ints(o.targets, "target"), g.p, "target");
  if (o.last < 0 || o.last >= g.p) {
    throw bw::ValidationError("last index " + std::to_string(o.last) + " outside [0, " +
                              std::to_string(g.p) + ")");
  }
  const bw::Element x_last{static_cast<int>(o.last)};
  const std::vector<bw::Element> block = bw::solve_boundary(prefix, x_last, targets, g);

  // Reconstruct and re-check every target before reporting.
  bw::ElementSeq full{g, {}};
  full.items = prefix;
  full.items.insert(full.items.end(), block.begin(), block.end());
  full.items.push_back(x_last);
  for (size_t k = 1; k <= targets.size(); ++k) {
    const bw::ElementSeq lev = bw::iterate(full, static_cast<long long>(k));
    if (!(lev.items.back() == targets[k - 1])) {
      throw bw::ContractError("reconstructed sequence misses target at level " +
                              std::to_string(k));
    }
  }

  const long long first_pos = static_cast<long long>(prefix.size()) + 1;
  Json config = base_config("solve", o);
  config["p"] = o.p;
  config["values"] = g.values;
  config["prefix"] = parse_ints(o.prefix, "prefix");
  config["last"] = o.last;
  config["targets"] = parse_ints(o.targets, "target");
  Output out{o.format, o.out, o.echo_config};
  Json data = bw::solve_json(block, first_pos);
  data["verified"] = true;
  out.emit(config, bw::solve_csv(block, first_pos), data);
  return 0;
}

int run_decay(const Opts& o) {
  if (o.dims != 2 && o.dims != 3) throw bw::ValidationError("dims must be 2 or 3");
  std::vector<std::pair<std::string, double>> rows;
  rows.emplace_back("slope_loglog", o.dims == 2
                                        ? bw::decay_exponent_2d(o.n_min_fit, o.n_max_fit)
                                        : bw::decay_exponent_3d(o.n_min_fit, o.n_max_fit));
  if (o.tail_from > 0 || o.tail_to > 0) {
    if (!(o.tail_to > o.tail_from && o.tail_from > 0)) {
      throw bw::ValidationError("tail window needs 0 < --tail-from < --tail-to");
    }
    const std::vector<double> sums = bw::partial_sum_divergence(o.dims, o.tail_to);
    rows.emplace_back("tail_sum", sums[static_cast<size_t>(o.tail_to - 1)] -
                                      sums[static_cast<size_t>(o.tail_from - 1)]);
    rows.emplace_back("tail_from", static_cast<double>(o.tail_from));
    rows.emplace_back("tail_to", static_cast<double>(o.tail_to));
  }
  Json config = base_config("decay", o);
  config["dims"] = o.dims;
  config["n_min"] = o.n_min_fit;
  config["n_max"] = o.n_max_fit;
  if (o.tail_from > 0) {
    config["tail_from"] = o.tail_from;
    config["tail_to"] = o.tail_to;
  }
  Output out{o.format, o.out, o.echo_config};
  out.emit(config, bw::decay_csv(rows), bw::decay_json(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bootstrap random walks: multiplicity tables, exact laws, simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  Opts o;
  app.add_option("--format", o.format, "artifact format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", o.out, "output path, - for stdout")->capture_default_str();
  app.add_flag("--echo-config", o.echo_config,
               "print the resolved configuration and exit");
  app.add_option("--threads", o.threads,
                 "worker threads (default: BOOTWALK_THREADS or 1)");

  CLI::App* nu = app.add_subcommand("nu", "multiplicity table mod p");
  nu->add_option("--p", o.p, "group order (prime)")->capture_default_str();
  nu->add_option("--kmax", o.k_max, "last level")->required();
  nu->add_option("--nmax", o.n_max, "last lag")->required();
  nu->add_option("--layout", o.layout, "csv layout: matrix or long")
      ->check(CLI::IsMember({"matrix", "long"}))
      ->capture_default_str();

  CLI::App* om = app.add_subcommand("omega", "first nonzero lag per level");
  om->add_option("--p", o.p, "group order (prime)")->capture_default_str();
  om->add_option("--kmax", o.k_max, "last level")->required();

  CLI::App* pm = app.add_subcommand("pmf2d", "closed-form joint law of levels 0 and 1");
  pm->add_option("--p", o.p, "group order, must be 2")->capture_default_str();
  pm->add_option("--values", o.values, "labels, must be +-1");
  pm->add_option("--n", o.n, "steps")->required();

  CLI::App* re = app.add_subcommand("returns", "origin return probabilities");
  re->add_option("--dims", o.dims, "walk components: 2 or 3")->required();
  re->add_option("--steps", o.steps, "single even step count");
  re->add_option("--upto", o.upto, "series over even step counts up to here");

  CLI::App* orc = app.add_subcommand("oracle", "joint endpoint law by full enumeration");
  orc->add_option("--p", o.p, "group order (prime)")->capture_default_str();
  orc->add_option("--values", o.values, "comma separated labels (default centered)");
  orc->add_option("--kmax", o.k_max, "levels: 1 or 2")->capture_default_str();
  orc->add_option("--n", o.n, "steps")->required();
  orc->add_option("--budget", o.budget, "max sequences to enumerate")->capture_default_str();

  CLI::App* bi = app.add_subcommand("bins", "joint law of levels 0 and 1 via run counting");
  bi->add_option("--n", o.n, "steps")->required();

  CLI::App* si = app.add_subcommand("simulate", "one path of all level walks");
  si->add_option("--p", o.p, "group order (prime)")->capture_default_str();
  si->add_option("--values", o.values, "comma separated labels (default centered)");
  si->add_option("--kmax", o.k_max, "last level")->capture_default_str();
  si->add_option("--n", o.n, "steps")->required();
  si->add_option("--seed", o.seed, "master seed")->capture_default_str();

  CLI::App* cv = app.add_subcommand("cov", "cross covariances against the closed form");
  cv->add_option("--p", o.p, "group order (prime)")->capture_default_str();
  cv->add_option("--values", o.values, "comma separated labels (default centered)");
  cv->add_option("--kmax", o.k_max, "last level")->capture_default_str();
  cv->add_option("--m", o.m, "earlier horizon")->required();
  cv->add_option("--n", o.n, "later horizon")->required();
  cv->add_option("--replicas", o.replicas, "Monte Carlo sample size")->capture_default_str();
  cv->add_option("--seed", o.seed, "master seed")->capture_default_str();
  cv->add_flag("--exact", o.exact, "full enumeration instead of sampling");
  cv->add_option("--budget", o.budget, "max sequences in exact mode")->capture_default_str();

  CLI::App* fc = app.add_subcommand("fclt", "scaling limit diagnostics of an ensemble");
  fc->add_option("--p", o.p, "group order (prime)")->capture_default_str();
  fc->add_option("--values", o.values, "comma separated labels (default centered)");
  fc->add_option("--kmax", o.k_max, "last level")->capture_default_str();
  fc->add_option("--n", o.n, "steps per path")->required();
  fc->add_option("--replicas", o.replicas, "ensemble size")->capture_default_str();
  fc->add_option("--seed", o.seed, "master seed")->capture_default_str();
  fc->add_option("--samples-out", o.samples_out, "also write per-replica endpoints here");

  CLI::App* vi = app.add_subcommand("visits", "mean joint origin visits by horizon");
  vi->add_option("--dims", o.dims, "walk components: 2 or 3")->required();
  vi->add_option("--steps", o.steps, "horizon")->required();
  vi->add_option("--replicas", o.replicas, "ensemble size")->capture_default_str();
  vi->add_option("--seed", o.seed, "master seed")->capture_default_str();

  CLI::App* so = app.add_subcommand("solve", "complete a sequence from level targets");
  so->add_option("--p", o.p, "group order (prime)")->capture_default_str();
  so->add_option("--values", o.values, "comma separated labels (default centered)");
  so->add_option("--prefix", o.prefix, "known input indices x_1..x_{n-1}, comma separated");
  so->add_option("--last", o.last, "final input index")->required();
  so->add_option("--targets", o.targets, "level 1..K product targets at the end")->required();

  CLI::App* de = app.add_subcommand("decay", "log-log slope and tail mass of returns");
  de->add_option("--dims", o.dims, "walk components: 2 or 3")->required();
  de->add_option("--nmin", o.n_min_fit, "fit window start (in quarter steps)")
      ->capture_default_str();
  de->add_option("--nmax", o.n_max_fit, "fit window end (in quarter steps)")
      ->capture_default_str();
  de->add_option("--tail-from", o.tail_from, "tail window start (series index)");
  de->add_option("--tail-to", o.tail_to, "tail window end (series index)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(nu)) return run_nu(o);
    if (app.got_subcommand(om)) return run_omega(o);
    if (app.got_subcommand(pm)) return run_pmf2d(o);
    if (app.got_subcommand(re)) return run_returns(o);
    if (app.got_subcommand(orc)) return run_oracle(o);
    if (app.got_subcommand(bi)) return run_bins(o);
    if (app.got_subcommand(si)) return run_simulate(o);
    if (app.got_subcommand(cv)) return run_cov(o);
    if (app.got_subcommand(fc)) return run_fclt(o);
    if (app.got_subcommand(vi)) return run_visits(o);
    if (app.got_subcommand(so)) return run_solve(o);
    if (app.got_subcommand(de)) return run_decay(o);
    std::cerr << "error: no command selected\n";
    return 1;
  } catch (const bw::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const bw::ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

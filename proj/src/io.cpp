#include "bootwalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace bootwalk {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string rational_string(const BigInt& num, const BigInt& den) {
  return num.str() + "/" + den.str();
}

std::string pmf_csv(const JointPmf& pmf) {
  std::ostringstream os;
  os << (pmf.dims == 3 ? "k,l,m,count,probability" : "k,l,count,probability") << "\n";
  for (const auto& kv : pmf.cells) {
    os << kv.first[0] << "," << kv.first[1];
    if (pmf.dims == 3) os << "," << kv.first[2];
    const double prob =
        kv.second.convert_to<double>() / pmf.denominator.convert_to<double>();
    os << "," << kv.second.str() << "," << format_double(prob) << "\n";
  }
  return os.str();
}

Json pmf_json(const JointPmf& pmf) {
  Json cells = Json::array();
  for (const auto& kv : pmf.cells) {
    Json cell;
    cell["k"] = kv.first[0];
    cell["l"] = kv.first[1];
    if (pmf.dims == 3) cell["m"] = kv.first[2];
    cell["count"] = kv.second.str();
    cell["probability"] =
        kv.second.convert_to<double>() / pmf.denominator.convert_to<double>();
    cells.push_back(std::move(cell));
  }
  Json j;
  j["p"] = pmf.p;
  j["n"] = pmf.n;
  j["k_max"] = pmf.dims - 1;
  j["denominator"] = pmf.denominator.str();
  j["cells"] = std::move(cells);
  return j;
}

std::string nu_csv_matrix(const NuTable& t) {
  std::ostringstream os;
  os << "K/n";
  for (long long n = 1; n <= t.n_max; ++n) os << "," << n;
  os << "\n";
  for (long long K = 0; K <= t.k_max; ++K) {
    os << K;
    for (long long n = 1; n <= t.n_max; ++n) os << "," << t.at(K, n);
    os << "\n";
  }
  return os.str();
}

std::string nu_csv_long(const NuTable& t) {
  std::ostringstream os;
  os << "K,n,residue\n";
  for (long long K = 0; K <= t.k_max; ++K) {
    for (long long n = 1; n <= t.n_max; ++n) {
      os << K << "," << n << "," << t.at(K, n) << "\n";
    }
  }
  return os.str();
}

Json nu_json(const NuTable& t) {
  Json rows = Json::array();
  for (long long K = 0; K <= t.k_max; ++K) {
    Json row = Json::array();
    for (long long n = 1; n <= t.n_max; ++n) row.push_back(t.at(K, n));
    rows.push_back(std::move(row));
  }
  Json j;
  j["p"] = t.p;
  j["k_max"] = t.k_max;
  j["n_max"] = t.n_max;
  j["rows"] = std::move(rows);
  return j;
}

std::string omega_csv(const std::vector<std::pair<long long, Omega>>& rows) {
  std::ostringstream os;
  os << "K,omega\n";
  for (const auto& r : rows) {
    os << r.first << ",";
    if (r.second.finite) {
      os << r.second.value;
    } else {
      os << "inf";
    }
    os << "\n";
  }
  return os.str();
}

Json omega_json(const std::vector<std::pair<long long, Omega>>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json e;
    e["K"] = r.first;
    if (r.second.finite) {
      e["omega"] = r.second.value;
    } else {
      e["omega"] = "inf";
    }
    arr.push_back(std::move(e));
  }
  return Json{{"entries", std::move(arr)}};
}

std::string returns_csv(const std::vector<ReturnProb>& rows,
                        const std::vector<double>& partial_sums) {
  std::ostringstream os;
  os << "steps,probability,log_prob,exact";
  const bool series = !partial_sums.empty();
  if (series) os << ",cum_sum";
  os << "\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << r.steps << "," << format_double(r.probability()) << ","
       << format_double(r.log_prob) << ",";
    if (r.has_exact) os << rational_string(r.num, r.den);
    if (series) os << "," << format_double(partial_sums[i]);
    os << "\n";
  }
  return os.str();
}

Json returns_json(const std::vector<ReturnProb>& rows,
                  const std::vector<double>& partial_sums) {
  Json arr = Json::array();
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    Json e;
    e["steps"] = r.steps;
    e["dims"] = r.dims;
    e["probability"] = r.probability();
    e["log_prob"] = r.log_prob;
    if (r.has_exact) e["exact"] = rational_string(r.num, r.den);
    if (!partial_sums.empty()) e["cum_sum"] = partial_sums[i];
    arr.push_back(std::move(e));
  }
  return Json{{"entries", std::move(arr)}};
}

std::string cov_csv(const CovarianceReport& rep) {
  std::ostringstream os;
  os << "statistic,value,tolerance,pass\n";
  for (const auto& e : rep.entries) {
    const double tol = rep.exact ? 1e-9 * std::max(1.0, std::abs(e.theory))
                                 : 4.0 * e.std_error;
    const bool pass = std::abs(e.estimate - e.theory) <= tol;
    os << "cov_" << e.K << "_" << e.J << "," << format_double(e.estimate) << ","
       << format_double(tol) << "," << (pass ? "true" : "false") << "\n";
  }
  return os.str();
}

Json cov_json(const CovarianceReport& rep) {
  Json arr = Json::array();
  for (const auto& e : rep.entries) {
    Json o;
    o["K"] = e.K;
    o["J"] = e.J;
    o["m"] = e.m;
    o["n"] = e.n;
    o["theory"] = e.theory;
    o["estimate"] = e.estimate;
    const double tol = rep.exact ? 1e-9 * std::max(1.0, std::abs(e.theory))
                                 : 4.0 * e.std_error;
    o["tolerance"] = tol;
    o["pass"] = std::abs(e.estimate - e.theory) <= tol;
    if (!rep.exact) {
      o["std_error"] = e.std_error;
      o["z"] = e.z;
    }
    arr.push_back(std::move(o));
  }
  Json j;
  j["exact"] = rep.exact;
  j["samples"] = rep.samples;
  j["sigma2"] = rep.sigma2;
  j["entries"] = std::move(arr);
  return j;
}

std::string ensemble_csv(const EnsembleStats& st) {
  std::ostringstream os;
  os << "statistic,value,tolerance,pass\n";
  for (const auto& s : st.stats) {
    os << s.name << "," << format_double(s.value) << "," << format_double(s.tolerance)
       << "," << (s.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

Json ensemble_json(const EnsembleStats& st) {
  Json arr = Json::array();
  for (const auto& s : st.stats) {
    Json o;
    o["statistic"] = s.name;
    o["value"] = s.value;
    o["target"] = s.target;
    o["tolerance"] = s.tolerance;
    o["pass"] = s.pass;
    arr.push_back(std::move(o));
  }
  Json j;
  j["n"] = st.n;
  j["replicas"] = st.replicas;
  j["sigma2"] = st.sigma2;
  j["cross_moments"] = st.cross_moments;
  j["correlations"] = st.correlations;
  j["statistics"] = std::move(arr);
  j["all_pass"] = st.all_pass();
  return j;
}

std::string visits_csv(const VisitReport& rep) {
  std::ostringstream os;
  os << "horizon,mean_visits\n";
  for (const auto& hv : rep.mean_visits) {
    os << hv.first << "," << format_double(hv.second) << "\n";
  }
  return os.str();
}

Json visits_json(const VisitReport& rep) {
  Json arr = Json::array();
  for (const auto& hv : rep.mean_visits) {
    arr.push_back(Json{{"horizon", hv.first}, {"mean_visits", hv.second}});
  }
  Json j;
  j["dims"] = rep.dims;
  j["n_steps"] = rep.n_steps;
  j["replicas"] = rep.replicas;
  j["mean_visits"] = std::move(arr);
  return j;
}

std::string path_csv(const WalkPath& w) {
  std::ostringstream os;
  os << "step";
  for (long long K = 0; K <= w.k_max; ++K) os << ",Y" << K;
  os << "\n";
  for (long long i = 0; i <= w.n; ++i) {
    os << i;
    for (long long K = 0; K <= w.k_max; ++K) {
      os << "," << format_double(w.paths[static_cast<size_t>(K)][static_cast<size_t>(i)]);
    }
    os << "\n";
  }
  return os.str();
}

Json path_json(const WalkPath& w) {
  Json j;
  j["p"] = w.group.p;
  j["k_max"] = w.k_max;
  j["n"] = w.n;
  Json paths = Json::array();
  for (long long K = 0; K <= w.k_max; ++K) {
    paths.push_back(w.paths[static_cast<size_t>(K)]);
  }
  j["paths"] = std::move(paths);
  Json rows = Json::array();
  for (long long K = 0; K <= w.k_max; ++K) {
    Json row = Json::array();
    for (const Element& el : w.triangle.rows[static_cast<size_t>(K)]) row.push_back(el.index);
    rows.push_back(std::move(row));
  }
  j["increment_rows"] = std::move(rows);
  return j;
}

std::string solve_csv(const std::vector<Element>& block, long long first_position) {
  std::ostringstream os;
  os << "position,index\n";
  for (size_t i = 0; i < block.size(); ++i) {
    os << first_position + static_cast<long long>(i) << "," << block[i].index << "\n";
  }
  return os.str();
}

Json solve_json(const std::vector<Element>& block, long long first_position) {
  Json idx = Json::array();
  Json pos = Json::array();
  for (size_t i = 0; i < block.size(); ++i) {
    pos.push_back(first_position + static_cast<long long>(i));
    idx.push_back(block[i].index);
  }
  Json j;
  j["positions"] = std::move(pos);
  j["indices"] = std::move(idx);
  return j;
}

std::string decay_csv(const std::vector<std::pair<std::string, double>>& rows) {
  std::ostringstream os;
  os << "statistic,value\n";
  for (const auto& r : rows) os << r.first << "," << format_double(r.second) << "\n";
  return os.str();
}

Json decay_json(const std::vector<std::pair<std::string, double>>& rows) {
  Json j;
  for (const auto& r : rows) j[r.first] = r.second;
  return j;
}

}  // namespace bootwalk

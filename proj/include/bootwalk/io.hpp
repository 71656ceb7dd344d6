#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bootwalk/exact.hpp"
#include "bootwalk/nu.hpp"
#include "bootwalk/walks.hpp"

namespace bootwalk {

using Json = nlohmann::json;

// 17 significant digits: enough to round-trip any double exactly.
std::string format_double(double v);

// Reduced "num/den" form; callers pass already-reduced pairs.
std::string rational_string(const BigInt& num, const BigInt& den);

// CSV bodies and JSON payloads per artifact. The CLI prepends meta
// (version + resolved config) so every artifact states how to remake it.

std::string pmf_csv(const JointPmf& pmf);
Json pmf_json(const JointPmf& pmf);

std::string nu_csv_matrix(const NuTable& t);
std::string nu_csv_long(const NuTable& t);
Json nu_json(const NuTable& t);

std::string omega_csv(const std::vector<std::pair<long long, Omega>>& rows);
Json omega_json(const std::vector<std::pair<long long, Omega>>& rows);

// One row per step count; cumulative sums only when the query was a series.
std::string returns_csv(const std::vector<ReturnProb>& rows,
                        const std::vector<double>& partial_sums);
Json returns_json(const std::vector<ReturnProb>& rows,
                  const std::vector<double>& partial_sums);

std::string cov_csv(const CovarianceReport& rep);
Json cov_json(const CovarianceReport& rep);

std::string ensemble_csv(const EnsembleStats& st);
Json ensemble_json(const EnsembleStats& st);

std::string visits_csv(const VisitReport& rep);
Json visits_json(const VisitReport& rep);

std::string path_csv(const WalkPath& w);
Json path_json(const WalkPath& w);

std::string solve_csv(const std::vector<Element>& block, long long first_position);
Json solve_json(const std::vector<Element>& block, long long first_position);

std::string decay_csv(const std::vector<std::pair<std::string, double>>& rows);
Json decay_json(const std::vector<std::pair<std::string, double>>& rows);

}  // namespace bootwalk

#include "bootwalk/group.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bootwalk {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

GroupSpec make_group(int p, std::vector<double> values) {
  if (!is_prime(p)) {
    throw NonPrimeError("group order must be prime, got " + std::to_string(p));
  }
  if (static_cast<int>(values.size()) != p) {
    throw BadValuesError("expected " + std::to_string(p) + " labels, got " +
                         std::to_string(values.size()));
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw BadValuesError("labels must be pairwise distinct");
  }
  return GroupSpec{p, std::move(values)};
}

GroupSpec sign_group() { return make_group(2, {1.0, -1.0}); }

GroupSpec centered_group(int p) {
  if (p == 2) return sign_group();
  if (!is_prime(p)) {
    throw NonPrimeError("group order must be prime, got " + std::to_string(p));
  }
  std::vector<double> values;
  values.reserve(static_cast<size_t>(p));
  for (int v = -(p - 1) / 2; v <= (p - 1) / 2; ++v) values.push_back(v);
  return make_group(p, std::move(values));
}

Element op(Element a, Element b, const GroupSpec& g) {
  int s = a.index + b.index;
  if (s >= g.p) s -= g.p;
  return Element{s};
}

Element power(Element a, long long m, const GroupSpec& g) {
  long long r = m % g.p;
  if (r < 0) r += g.p;
  return Element{static_cast<int>(static_cast<long long>(a.index) * r % g.p)};
}

Element inverse(Element a, const GroupSpec& g) { return power(a, g.p - 1, g); }

double sigma2(const GroupSpec& g) {
  double s = 0.0;
  for (double v : g.values) s += v * v;
  return s / static_cast<double>(g.p);
}

double label_mean(const GroupSpec& g) {
  double s = 0.0;
  for (double v : g.values) s += v;
  return s;
}

}  // namespace bootwalk

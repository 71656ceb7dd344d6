#include "bootwalk/operators.hpp"

#include <string>

#include "bootwalk/nu.hpp"

namespace bootwalk {

ElementSeq forward(const ElementSeq& x) {
  ElementSeq out{x.spec, std::vector<Element>(x.items.size())};
  int acc = 0;
  const int p = x.spec.p;
  for (size_t i = 0; i < x.items.size(); ++i) {
    acc += x.items[i].index;
    if (acc >= p) acc -= p;
    out.items[i] = Element{acc};
  }
  return out;
}

ElementSeq backward(const ElementSeq& y) {
  ElementSeq out{y.spec, std::vector<Element>(y.items.size())};
  const int p = y.spec.p;
  int prev = 0;
  for (size_t i = 0; i < y.items.size(); ++i) {
    int d = y.items[i].index - prev;
    if (d < 0) d += p;
    out.items[i] = Element{d};
    prev = y.items[i].index;
  }
  return out;
}

ElementSeq iterate(const ElementSeq& x, long long K) {
  ElementSeq cur = x;
  for (long long i = 0; i < K; ++i) cur = forward(cur);
  for (long long i = 0; i > K; --i) cur = backward(cur);
  return cur;
}

ElementSeq direct(const ElementSeq& x, long long K) {
  if (K < 1) throw ValidationError("direct needs K >= 1");
  const int p = x.spec.p;
  const size_t n = x.items.size();
  std::vector<int> mult(n + 1, 0);
  for (size_t l = 1; l <= n; ++l) mult[l] = nu_lucas(K, static_cast<long long>(l), p);

  ElementSeq out{x.spec, std::vector<Element>(n)};
  for (size_t i = 0; i < n; ++i) {
    long long acc = 0;
    for (size_t l = 1; l <= i + 1; ++l) {
      acc += static_cast<long long>(x.items[i + 1 - l].index) * mult[l];
    }
    out.items[i] = Element{static_cast<int>(acc % p)};
  }
  return out;
}

ElementSeq power_sequence(const ElementSeq& x, const std::vector<long long>& m) {
  if (m.size() != x.items.size()) {
    throw ValidationError("exponent list length " + std::to_string(m.size()) +
                          " does not match sequence length " +
                          std::to_string(x.items.size()));
  }
  const int p = x.spec.p;
  for (size_t i = 0; i < m.size(); ++i) {
    long long r = m[i] % p;
    if (r < 0) r += p;
    if (r == 0) {
      throw ZeroExponentError("exponent at position " + std::to_string(i + 1) +
                              " is divisible by " + std::to_string(p));
    }
  }
  ElementSeq powered{x.spec, std::vector<Element>(x.items.size())};
  for (size_t i = 0; i < x.items.size(); ++i) {
    powered.items[i] = power(x.items[i], m[i], x.spec);
  }
  return forward(powered);
}

IncrementTriangle build_triangle(const ElementSeq& xi, long long k_max) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  IncrementTriangle t{xi.spec, k_max, static_cast<long long>(xi.items.size()), {}};
  t.rows.reserve(static_cast<size_t>(k_max + 1));
  t.rows.push_back(xi.items);
  ElementSeq cur = xi;
  for (long long K = 1; K <= k_max; ++K) {
    cur = forward(cur);
    t.rows.push_back(cur.items);
  }
  return t;
}

std::vector<Element> solve_boundary(const std::vector<Element>& x_prefix,
                                    Element x_last,
                                    const std::vector<Element>& y_targets,
                                    const GroupSpec& g) {
  const long long K = static_cast<long long>(y_targets.size());
  if (K < 1) throw ValidationError("need at least one level target");
  const long long n = static_cast<long long>(x_prefix.size()) + 1;
  const long long L = n + K;  // full sequence length
  const int p = g.p;

  auto add = [p](int a, int b) {
    const int s = a + b;
    return s >= p ? s - p : s;
  };
  auto sub = [p](int a, int b) {
    const int d = a - b;
    return d < 0 ? d + p : d;
  };

  // e[k][l] = entry l of level k, with a unit column at l = 0 so the
  // defining relation e(k, l) = e(k, l-1) * e(k-1, l) holds for every
  // l >= 1. Known cells: row 0 at 1..n-1 (prefix) and L (x_last),
  // rows 1..K at L (targets). Unknowns include the wanted block,
  // row 0 at n..L-1.
  std::vector<std::vector<int>> e(
      static_cast<size_t>(K + 1),
      std::vector<int>(static_cast<size_t>(L + 1), 0));
  for (long long l = 1; l < n; ++l) e[0][l] = x_prefix[static_cast<size_t>(l - 1)].index;
  e[0][static_cast<size_t>(L)] = x_last.index;
  for (long long k = 1; k <= K; ++k) {
    e[static_cast<size_t>(k)][static_cast<size_t>(L)] =
        y_targets[static_cast<size_t>(k - 1)].index;
  }

  // Left block, rows 1..K over columns 1..n-1, straight from the relation.
  for (long long k = 1; k <= K; ++k) {
    for (long long l = 1; l < n; ++l) {
      e[k][l] = add(e[k][l - 1], e[k - 1][l]);
    }
  }
  // Right edge, columns L-1 down to n. Solving the relation at (k, l+1)
  // for its left neighbor: e(k, l) = e(k, l+1) - e(k-1, l+1). Column l
  // reaches rows L-l .. K, so row 0 is only consulted at the known
  // column L.
  for (long long l = L - 1; l >= n; --l) {
    for (long long k = L - l; k <= K; ++k) {
      e[k][l] = sub(e[k][l + 1], e[k - 1][l + 1]);
    }
  }
  // Remaining wedge, rows K-1 down to 0, columns n..L-k-1. Solving the
  // relation one level up for its bottom factor:
  // e(k, l) = e(k+1, l) - e(k+1, l-1). Row k+1 is complete by now.
  for (long long k = K - 1; k >= 0; --k) {
    for (long long l = n; l <= L - k - 1; ++l) {
      e[k][l] = sub(e[k + 1][l], e[k + 1][l - 1]);
    }
  }

  std::vector<Element> block;
  block.reserve(static_cast<size_t>(K));
  for (long long l = n; l < L; ++l) block.push_back(Element{e[0][static_cast<size_t>(l)]});
  return block;
}

}  // namespace bootwalk

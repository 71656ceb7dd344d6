#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bootwalk/group.hpp"

namespace bootwalk {

namespace detail {

// Running products of residues, out[i] = (x[0] + ... + x[i]) mod p.
// Safe in place (out == x). The hot kernel under every operator,
// enumerator, and simulation driver in this library.
inline void prefix_product_mod(const uint8_t* x, uint8_t* out, size_t n, int p) {
  int acc = 0;
  for (size_t i = 0; i < n; ++i) {
    acc += x[i];
    if (acc >= p) acc -= p;
    out[i] = static_cast<uint8_t>(acc);
  }
}

}  // namespace detail

// A finite sequence of group elements with the group they live in.
struct ElementSeq {
  GroupSpec spec;
  std::vector<Element> items;

  size_t size() const { return items.size(); }
};

// Recycling step: position n of the output is the product of inputs 1..n.
ElementSeq forward(const ElementSeq& x);

// Inverse step: y[n-1]^(p-1) * y[n] recovers the n-th input.
ElementSeq backward(const ElementSeq& y);

// K forward steps for K >= 0, |K| backward steps for K < 0. K = 0 copies.
ElementSeq iterate(const ElementSeq& x, long long K);

// Level K in one pass: output n is the product of x[n-l+1]^(m_l) where
// m_l is the level-K multiplicity of lag l. Requires K >= 1. Agrees with
// iterate(x, K) entry for entry.
ElementSeq direct(const ElementSeq& x, long long K);

// Componentwise powers followed by the recycling step. Every exponent must
// be a unit mod p (ZeroExponentError otherwise); that keeps the map a
// bijection on sequences.
ElementSeq power_sequence(const ElementSeq& x, const std::vector<long long>& m);

// Rows 0..k_max of the recycling triangle of one increment sequence:
// row 0 is the input, row K is forward(row K-1).
struct IncrementTriangle {
  GroupSpec spec;
  long long k_max = 0;
  long long n = 0;
  std::vector<std::vector<Element>> rows;
};

IncrementTriangle build_triangle(const ElementSeq& xi, long long k_max);

// Completes an increment sequence from boundary data: given inputs
// x_1..x_{n-1}, the final input x_{n+K}, and the level-k products
// y_k = (level k of x)_{n+K} for k = 1..K, reconstructs the missing block
// x_n..x_{n+K-1}. The K targets pin down exactly K unknowns; the fill
// order below never needs a value before it exists.
std::vector<Element> solve_boundary(const std::vector<Element>& x_prefix,
                                    Element x_last,
                                    const std::vector<Element>& y_targets,
                                    const GroupSpec& g);

}  // namespace bootwalk

#pragma once

#include <vector>

#include "bootwalk/errors.hpp"

namespace bootwalk {

// Element of a cyclic group of prime order p, stored as an index in [0, p).
// The operation is index addition mod p; index 0 is the unit.
struct Element {
  int index = 0;
  friend bool operator==(const Element&, const Element&) = default;
};

// A prime-order cyclic group together with a real label per element.
// values[i] is the increment contributed by element i; values[0] belongs
// to the unit. Labels must be pairwise distinct so that an element can be
// recovered from its label.
struct GroupSpec {
  int p = 2;
  std::vector<double> values;

  Element unit() const { return Element{0}; }
  double value_of(Element a) const { return values[static_cast<size_t>(a.index)]; }
};

bool is_prime(long long n);

// Validates p (primality) and values (size p, pairwise distinct).
GroupSpec make_group(int p, std::vector<double> values);

// The two-element group with labels +1, -1. Sums of its labels are the
// classic simple-walk increments.
GroupSpec sign_group();

// Zero-mean integer labels: {+1,-1} for p = 2, {-(p-1)/2, ..., (p-1)/2}
// in ascending order for odd p.
GroupSpec centered_group(int p);

Element op(Element a, Element b, const GroupSpec& g);

// a repeated m times. m may be negative or zero; only m mod p matters.
Element power(Element a, long long m, const GroupSpec& g);

// Inverse = (p-1)-fold power, the only exponent that works uniformly.
Element inverse(Element a, const GroupSpec& g);

// Mean square label (1/p) * sum values[i]^2.
double sigma2(const GroupSpec& g);

// Sum of labels; walks over g are centered only when this is zero.
double label_mean(const GroupSpec& g);

}  // namespace bootwalk

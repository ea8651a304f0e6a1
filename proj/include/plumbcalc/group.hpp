#pragma once

#include <string>
#include <vector>

#include "plumbcalc/dart_graph.hpp"

namespace plumbcalc {

// Finite group as a Cayley table with identity at index 0. Construction
// verifies the axioms (O(n^3) associativity check, intended for n <= 512).
class FiniteGroup {
 public:
  FiniteGroup() : n_(1), table_{0}, inv_{0} {}
  explicit FiniteGroup(std::vector<std::vector<int>> table);
  static FiniteGroup cyclic(int n);
  static FiniteGroup from_invariant_factors(const std::vector<int>& factors);
  static FiniteGroup symmetric3();

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int element_order(int a) const;
  int pow(int a, long long k) const;
  bool abelian() const;

  bool operator==(const FiniteGroup& o) const { return n_ == o.n_ && table_ == o.table_; }

 private:
  int n_;
  std::vector<int> table_;
  std::vector<int> inv_;
  void validate();
};

struct Subgroup {
  std::vector<int> elems;  // sorted, contains 0
  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const;
};

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens);

// All automorphisms, each as the image vector; deterministic order. Throws
// when the order exceeds the budget.
std::vector<std::vector<int>> automorphisms(const FiniteGroup& g, int max_order = 512);

}  // namespace plumbcalc

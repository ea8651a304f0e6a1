#include "plumbcalc/group.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>

namespace plumbcalc {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) {
  n_ = static_cast<int>(table.size());
  if (n_ == 0) throw GraphError("empty Cayley table");
  table_.resize(n_ * n_);
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(table[i].size()) != n_) throw GraphError("ragged Cayley table");
    for (int j = 0; j < n_; ++j) {
      if (table[i][j] < 0 || table[i][j] >= n_) throw GraphError("Cayley entry out of range");
      table_[i * n_ + j] = table[i][j];
    }
  }
  validate();
}

void FiniteGroup::validate() {
  for (int i = 0; i < n_; ++i)
    if (mul(0, i) != i || mul(i, 0) != i)
      throw GraphError("index 0 is not an identity");
  inv_.assign(n_, -1);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j)
      if (mul(i, j) == 0 && mul(j, i) == 0) inv_[i] = j;
    if (inv_[i] < 0) throw GraphError("element without inverse");
  }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw GraphError("Cayley table is not associative");
}

FiniteGroup FiniteGroup::cyclic(int n) { return from_invariant_factors({n}); }

FiniteGroup FiniteGroup::from_invariant_factors(const std::vector<int>& factors) {
  long long n = 1;
  for (int f : factors) {
    if (f < 1) throw GraphError("invariant factor < 1");
    n *= f;
  }
  if (n > 4096) throw GraphError("group too large");
  int nn = static_cast<int>(n);
  auto decode = [&](int x) {
    std::vector<int> digits;
    for (int f : factors) {
      digits.push_back(x % f);
      x /= f;
    }
    return digits;
  };
  auto encode = [&](const std::vector<int>& digits) {
    int x = 0;
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i)
      x = x * factors[i] + digits[i];
    return x;
  };
  std::vector<std::vector<int>> table(nn, std::vector<int>(nn));
  for (int a = 0; a < nn; ++a) {
    auto da = decode(a);
    for (int b = 0; b < nn; ++b) {
      auto db = decode(b);
      std::vector<int> dc(factors.size());
      for (size_t i = 0; i < factors.size(); ++i) dc[i] = (da[i] + db[i]) % factors[i];
      table[a][b] = encode(dc);
    }
  }
  return FiniteGroup(std::move(table));
}

FiniteGroup FiniteGroup::symmetric3() {
  // Permutations of {0,1,2} ordered with the identity first.
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  auto index = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = index(c);
    }
  return FiniteGroup(std::move(table));
}

int FiniteGroup::element_order(int a) const {
  int x = a, k = 1;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

int FiniteGroup::pow(int a, long long k) const {
  int ord = element_order(a);
  k %= ord;
  if (k < 0) k += ord;
  int x = 0;
  for (long long i = 0; i < k; ++i) x = mul(x, a);
  return x;
}

bool FiniteGroup::abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> seen{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (int h : gens) {
        for (int y : {g.mul(x, h), g.mul(x, g.inv(h))}) {
          if (seen.insert(y).second) next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  Subgroup s;
  s.elems.assign(seen.begin(), seen.end());
  return s;
}

std::vector<std::vector<int>> automorphisms(const FiniteGroup& g, int max_order) {
  int n = g.order();
  if (n > max_order) throw GraphError("automorphism budget exceeded");
  // Greedy minimal generating set.
  std::vector<int> gens;
  Subgroup cur = subgroup_closure(g, {});
  while (cur.order() < n) {
    for (int x = 0; x < n; ++x) {
      if (!cur.contains(x)) {
        gens.push_back(x);
        cur = subgroup_closure(g, gens);
        break;
      }
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> images(gens.size(), -1);

  // Expand a candidate generator assignment into a full map by closure.
  auto expand = [&](const std::vector<int>& img) -> std::optional<std::vector<int>> {
    std::vector<int> phi(n, -1);
    phi[0] = 0;
    std::vector<int> known{0};
    // Elements as words in generators, built breadth-first.
    size_t head = 0;
    while (head < known.size()) {
      int x = known[head++];
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        int y = g.mul(x, gens[gi]);
        int im = g.mul(phi[x], img[gi]);
        if (phi[y] == -1) {
          phi[y] = im;
          known.push_back(y);
        } else if (phi[y] != im) {
          return std::nullopt;
        }
      }
    }
    // Bijectivity and the homomorphism law.
    std::vector<char> hit(n, 0);
    for (int x = 0; x < n; ++x) {
      if (phi[x] < 0 || hit[phi[x]]) return std::nullopt;
      hit[phi[x]] = 1;
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (g.mul(phi[a], phi[b]) != phi[g.mul(a, b)]) return std::nullopt;
    return phi;
  };

  std::function<void(size_t)> rec = [&](size_t gi) {
    if (gi == gens.size()) {
      if (auto phi = expand(images)) out.push_back(*phi);
      return;
    }
    int want = g.element_order(gens[gi]);
    for (int x = 0; x < n; ++x) {
      if (g.element_order(x) != want) continue;
      images[gi] = x;
      rec(gi + 1);
    }
    images[gi] = -1;
  };
  rec(0);
  return out;
}

}  // namespace plumbcalc

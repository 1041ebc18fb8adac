#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace oracle {

std::int64_t partitions(std::int64_t n) {
  if (n < 0) return 0;
  std::vector<std::int64_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (std::int64_t part = 1; part <= n; ++part)
    for (std::int64_t s = part; s <= n; ++s) p[s] += p[s - part];
  return p[n];
}

Mat fold_form(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
              const std::vector<std::size_t>& perm) {
  std::vector<int> orbit(n, -1);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t v = 0; v < n; ++v) {
    if (orbit[v] >= 0) continue;
    std::vector<std::size_t> cyc;
    for (auto x = v; orbit[x] < 0; x = perm[x]) {
      orbit[x] = static_cast<int>(orbits.size());
      cyc.push_back(x);
    }
    orbits.push_back(cyc);
  }
  const auto m = orbits.size();
  Mat f(m, Vec(m, 0));
  for (std::size_t o = 0; o < m; ++o) f[o][o] = 2 * static_cast<std::int64_t>(orbits[o].size());
  for (auto [u, v] : edges) {
    const auto a = static_cast<std::size_t>(orbit[u]), b = static_cast<std::size_t>(orbit[v]);
    if (a == b) continue;
    f[a][b] -= 1;
    f[b][a] -= 1;
  }
  return f;
}

std::vector<Vec> positive_roots(const Mat& a) {
  const auto n = a.size();
  std::set<Vec> all;
  std::vector<Vec> stack;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    all.insert(e);
    stack.push_back(e);
  }
  while (!stack.empty()) {
    auto r = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t p = 0;
      for (std::size_t j = 0; j < n; ++j) p += a[i][j] * r[j];
      auto s = r;
      s[i] -= p;
      if (all.insert(s).second) stack.push_back(s);
    }
  }
  std::vector<Vec> pos;
  for (const auto& r : all)
    if (std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x >= 0; })) pos.push_back(r);
  return pos;
}

std::int64_t weyl_dimension(const Mat& a, const Vec& d, const Vec& lambda) {
  // (lambda + rho, beta) / (rho, beta) with (omega_i, alpha_j) = d_j delta_ij.
  std::int64_t inum = 1, iden = 1;
  for (const auto& b : positive_roots(a)) {
    std::int64_t x = 0, y = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      x += (lambda[j] + 1) * d[j] * b[j];
      y += d[j] * b[j];
    }
    inum *= x;
    iden *= y;
    const auto g = std::gcd(inum, iden);
    inum /= g;
    iden /= g;
  }
  return iden == 1 ? inum : -1;
}

std::int64_t kostant(const std::vector<Vec>& roots, const Vec& nu) {
  std::function<std::int64_t(std::size_t, Vec)> go = [&](std::size_t k, Vec rest) -> std::int64_t {
    if (std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; })) return 1;
    if (k == roots.size()) return 0;
    std::int64_t total = go(k + 1, rest);
    for (;;) {
      for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= roots[k][j];
      if (std::any_of(rest.begin(), rest.end(), [](std::int64_t x) { return x < 0; })) break;
      total += go(k + 1, rest);
    }
    return total;
  };
  return go(0, nu);
}

std::int64_t basic_layer(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t m = -n - 1; m <= n + 1; ++m) s += partitions(n - m * m);
  return s;
}

std::string fixture(const std::string& name) { return std::string(FOLDKIT_FIXTURES) + "/" + name; }

} // namespace oracle

#include "hassett/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>

#include "hassett/errors.hpp"

namespace hassett {

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

Permutation transposition(std::size_t n, std::size_t a, std::size_t b) {
  Permutation p = identity_permutation(n);
  std::swap(p.at(a), p.at(b));
  return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

bool is_permutation(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto x : p) {
    if (x >= n || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

std::string cycle_string(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (j != i) out += " ";
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

mpz_class factorial(std::size_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

bool PermGroup::is_orbit_symmetric_product() const {
  mpz_class full = 1;
  for (const auto& o : orbits) full *= factorial(o.size());
  return full == order;
}

std::string PermGroup::label() const {
  if (order == 1) return "trivial";
  if (!is_orbit_symmetric_product()) return "order " + order.get_str();
  std::vector<std::size_t> sizes;
  for (const auto& o : orbits) {
    if (o.size() > 1) sizes.push_back(o.size());
  }
  std::sort(sizes.rbegin(), sizes.rend());
  std::string out;
  for (std::size_t s : sizes) {
    if (!out.empty()) out += " x ";
    out += "S" + std::to_string(s);
  }
  return out;
}

namespace {

// Base and strong generating set, built by the incremental Schreier-Sims
// procedure. Transversals only ever grow, so Schreier generators already
// checked at a level stay valid.
class StabilizerChain {
public:
  explicit StabilizerChain(std::size_t n) : n_(n) {}

  void build(const std::vector<Permutation>& gens) {
    for (const auto& g : gens) {
      if (!is_identity(g)) add_strong(g);
    }
    std::size_t i = levels_.size();
    while (i > 0) {
      --i;
      if (auto deeper = close_level(i)) i = *deeper + 1;
    }
  }

  mpz_class order() const {
    mpz_class o = 1;
    for (const auto& l : levels_) o *= static_cast<unsigned long>(l.orbit.size());
    return o;
  }

private:
  struct Level {
    std::size_t base;
    std::vector<std::optional<Permutation>> transversal;  // u with u[base] = point
    std::vector<std::size_t> orbit;
    std::set<std::pair<std::size_t, std::size_t>> checked;  // (point, strong generator id)
  };

  struct Strong {
    Permutation perm;
    std::size_t level;  // fixes the first `level` base points
  };

  std::size_t fixed_prefix(const Permutation& g) const {
    std::size_t j = 0;
    while (j < levels_.size() && g[levels_[j].base] == levels_[j].base) ++j;
    return j;
  }

  void push_level(const Permutation& moved_by) {
    std::size_t b = 0;
    while (moved_by[b] == b) ++b;
    Level l;
    l.base = b;
    l.transversal.assign(n_, std::nullopt);
    l.transversal[b] = identity_permutation(n_);
    l.orbit = {b};
    levels_.push_back(std::move(l));
  }

  // Adds g to S_0 .. S_j where j = fixed_prefix(g); returns j.
  std::size_t add_strong(const Permutation& g) {
    std::size_t j = fixed_prefix(g);
    if (j == levels_.size()) push_level(g);
    strong_.push_back({g, j});
    for (std::size_t i = 0; i <= j; ++i) extend_orbit(i);
    return j;
  }

  void extend_orbit(std::size_t i) {
    Level& l = levels_[i];
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      const std::size_t beta = l.orbit[k];
      for (const auto& s : strong_) {
        if (s.level < i) continue;
        const std::size_t gamma = s.perm[beta];
        if (!l.transversal[gamma]) {
          l.transversal[gamma] = compose(s.perm, *l.transversal[beta]);
          l.orbit.push_back(gamma);
        }
      }
    }
  }

  // Residue of h after stripping through levels start.., and the level at
  // which it dropped out.
  std::pair<Permutation, std::size_t> sift(Permutation h, std::size_t start) const {
    for (std::size_t j = start; j < levels_.size(); ++j) {
      const std::size_t x = h[levels_[j].base];
      if (!levels_[j].transversal[x]) return {std::move(h), j};
      h = compose(inverse(*levels_[j].transversal[x]), h);
    }
    return {std::move(h), levels_.size()};
  }

  // Checks every Schreier generator of level i. When one does not sift,
  // it becomes a strong generator and the level it lands on is returned.
  std::optional<std::size_t> close_level(std::size_t i) {
    extend_orbit(i);
    for (std::size_t k = 0; k < levels_[i].orbit.size(); ++k) {
      const std::size_t beta = levels_[i].orbit[k];
      for (std::size_t sid = 0; sid < strong_.size(); ++sid) {
        if (strong_[sid].level < i) continue;
        if (!levels_[i].checked.insert({beta, sid}).second) continue;
        const Permutation& s = strong_[sid].perm;
        const Permutation& u_beta = *levels_[i].transversal[beta];
        const Permutation& u_image = *levels_[i].transversal[s[beta]];
        Permutation schreier = compose(inverse(u_image), compose(s, u_beta));
        auto [residue, at] = sift(std::move(schreier), i + 1);
        if (!is_identity(residue)) return add_strong(residue);
      }
    }
    return std::nullopt;
  }

  std::size_t n_;
  std::vector<Level> levels_;
  std::vector<Strong> strong_;
};

void check_generators(const std::vector<Permutation>& gens, std::size_t n) {
  for (const auto& g : gens) {
    if (!is_permutation(g, n)) {
      throw DomainError("invalid permutation of degree " + std::to_string(n));
    }
  }
}

}  // namespace

PermGroup generate_group(const std::vector<Permutation>& generators, std::size_t n) {
  check_generators(generators, n);
  PermGroup g;
  g.degree = n;
  for (const auto& p : generators) {
    if (!is_identity(p)) g.generators.push_back(p);
  }
  std::sort(g.generators.begin(), g.generators.end());
  g.generators.erase(std::unique(g.generators.begin(), g.generators.end()), g.generators.end());

  StabilizerChain chain(n);
  chain.build(g.generators);
  g.order = chain.order();

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : g.generators) {
    for (std::size_t i = 0; i < n; ++i) parent[find(i)] = find(p[i]);
  }
  std::vector<std::vector<std::size_t>> by_root(n);
  for (std::size_t i = 0; i < n; ++i) by_root[find(i)].push_back(i);
  for (auto& o : by_root) {
    if (!o.empty()) g.orbits.push_back(std::move(o));
  }
  std::sort(g.orbits.begin(), g.orbits.end());
  return g;
}

std::vector<Permutation> enumerate_elements(const std::vector<Permutation>& generators, std::size_t n,
                                            std::size_t limit) {
  check_generators(generators, n);
  std::set<Permutation> seen{identity_permutation(n)};
  std::deque<Permutation> queue{identity_permutation(n)};
  while (!queue.empty()) {
    const Permutation x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      Permutation y = compose(g, x);
      if (seen.insert(y).second) {
        if (seen.size() > limit) throw DomainError("group closure exceeds the element limit");
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace hassett

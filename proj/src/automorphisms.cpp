#include "gerbes/automorphisms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gerbes/error.hpp"

namespace gerbes {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose_perms(const Perm& f, const Perm& g) {
  Perm r(f.size());
  for (size_t x = 0; x < g.size(); ++x) r[x] = f[g[x]];
  return r;
}

Perm inverse_perm(const Perm& p) {
  Perm r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<Elt>(x);
  return r;
}

bool is_automorphism(const FiniteGroup& g, const Perm& p) {
  const int n = g.order();
  if (static_cast<int>(p.size()) != n || p[0] != 0) return false;
  std::vector<bool> seen(n, false);
  for (Elt x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = true;
  }
  for (Elt a = 0; a < n; ++a)
    for (Elt b = 0; b < n; ++b)
      if (p[g.mul(a, b)] != g.mul(p[a], p[b])) return false;
  return true;
}

Perm conjugation(const FiniteGroup& g, Elt x) {
  Perm p(g.order());
  for (Elt a = 0; a < g.order(); ++a) p[a] = g.conj(x, a);
  return p;
}

namespace {

// canonical generating set: scan elements in index order, keep the ones that
// enlarge the generated subgroup
std::vector<Elt> canonical_generators(const FiniteGroup& g) {
  std::vector<Elt> gens;
  std::vector<Elt> closure{0};
  for (Elt a = 1; a < g.order(); ++a) {
    if (std::binary_search(closure.begin(), closure.end(), a)) continue;
    gens.push_back(a);
    closure = generated_subgroup(g, gens);
    if (static_cast<int>(closure.size()) == g.order()) break;
  }
  return gens;
}

// express every element as a word in the generators: elem = mul(from, gen)
struct WordTree {
  std::vector<Elt> from, gen;  // gen == -1 marks the identity / a generator root
};

WordTree word_tree(const FiniteGroup& g, const std::vector<Elt>& gens) {
  WordTree t;
  t.from.assign(g.order(), -1);
  t.gen.assign(g.order(), -1);
  std::vector<bool> seen(g.order(), false);
  std::vector<Elt> queue{0};
  seen[0] = true;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Elt x = queue[qi];
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      Elt y = g.mul(x, gens[gi]);
      if (seen[y]) continue;
      seen[y] = true;
      t.from[y] = x;
      t.gen[y] = static_cast<Elt>(gi);
      queue.push_back(y);
    }
  }
  return t;
}

}  // namespace

std::vector<Perm> all_automorphisms_bruteforce(const FiniteGroup& g) {
  const int n = g.order();
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  // permute indices 1..n-1 only; identity stays fixed
  std::sort(p.begin() + 1, p.end());
  do {
    if (is_automorphism(g, p)) out.push_back(p);
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return out;
}

AutStructure automorphism_structure(const FiniteGroup& g, int order_bound) {
  const int n = g.order();
  if (n > order_bound)
    throw SizeBoundError("OrderBound: automorphism search limited to order <= " +
                         std::to_string(order_bound));

  std::vector<Elt> gens = canonical_generators(g);
  WordTree tree = word_tree(g, gens);

  std::vector<int> order_of(n);
  for (Elt a = 0; a < n; ++a) order_of[a] = g.element_order(a);

  std::vector<std::vector<Elt>> candidates(gens.size());
  for (size_t i = 0; i < gens.size(); ++i)
    for (Elt a = 0; a < n; ++a)
      if (order_of[a] == order_of[gens[i]]) candidates[i].push_back(a);

  std::set<Perm> found;
  std::vector<Elt> images(gens.size());
  // backtracking over generator images; a full image choice induces at most
  // one homomorphism, verified on the whole table
  auto extend = [&](auto&& self, size_t k) -> void {
    if (k == gens.size()) {
      Perm p(n, -1);
      p[0] = 0;
      // evaluate words; tree order guarantees ancestors are set first
      std::vector<Elt> queue{0};
      std::vector<bool> done(n, false);
      done[0] = true;
      bool progress = true;
      while (progress) {
        progress = false;
        for (Elt e = 0; e < n; ++e) {
          if (done[e] || tree.from[e] < 0) continue;
          if (!done[tree.from[e]]) continue;
          p[e] = g.mul(p[tree.from[e]], images[tree.gen[e]]);
          done[e] = true;
          progress = true;
        }
      }
      if (is_automorphism(g, p)) found.insert(p);
      return;
    }
    for (Elt c : candidates[k]) {
      images[k] = c;
      self(self, k + 1);
    }
  };
  if (gens.empty()) {
    found.insert(identity_perm(n));
  } else {
    extend(extend, 0);
  }

  AutStructure s{FiniteGroup(Table{{0}}), {}, {}, FiniteGroup(Table{{0}}), {}};
  s.reps.assign(found.begin(), found.end());  // lexicographic; identity first
  const int an = static_cast<int>(s.reps.size());

  std::map<Perm, int> index;
  for (int i = 0; i < an; ++i) index[s.reps[i]] = i;

  Table at(an, std::vector<Elt>(an));
  for (int a = 0; a < an; ++a)
    for (int b = 0; b < an; ++b) at[a][b] = index.at(compose_perms(s.reps[a], s.reps[b]));
  s.aut = FiniteGroup(at, "aut(" + g.name() + ")");

  std::set<int> inn_set;
  for (Elt x = 0; x < n; ++x) inn_set.insert(index.at(conjugation(g, x)));
  s.inn.assign(inn_set.begin(), inn_set.end());

  // cosets of inn, ordered by least representative
  std::vector<int> coset_of(an, -1);
  std::vector<int> coset_rep;
  for (int a = 0; a < an; ++a) {
    if (coset_of[a] >= 0) continue;
    int c = static_cast<int>(coset_rep.size());
    coset_rep.push_back(a);
    for (int i : s.inn) coset_of[s.aut.mul(a, i)] = c;
  }
  const int on = static_cast<int>(coset_rep.size());
  Table ot(on, std::vector<Elt>(on));
  for (int a = 0; a < on; ++a)
    for (int b = 0; b < on; ++b) ot[a][b] = coset_of[s.aut.mul(coset_rep[a], coset_rep[b])];
  s.out = FiniteGroup(ot, "out(" + g.name() + ")");
  s.proj = coset_of;
  return s;
}

int AutStructure::aut_index(const Perm& p) const {
  auto it = std::lower_bound(reps.begin(), reps.end(), p);
  if (it == reps.end() || *it != p) return -1;
  return static_cast<int>(it - reps.begin());
}

int AutStructure::out_of_perm(const Perm& p) const {
  int a = aut_index(p);
  return a < 0 ? -1 : proj[a];
}

}  // namespace gerbes

#include "gerbes/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gerbes/error.hpp"
#include "gerbes/linalg.hpp"

namespace gerbes {

std::string GroupViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::BadShape:
      os << "BadShape: table is not square or has out-of-range entries";
      break;
    case Kind::BadIdentity:
      os << "BadIdentity: row/column 0 is not the identity (element " << a << ")";
      break;
    case Kind::NoInverse:
      os << "NoInverse(" << a << ")";
      break;
    case Kind::NonAssociative:
      os << "NonAssociative(" << a << "," << b << "," << c << ")";
      break;
  }
  return os.str();
}

std::vector<GroupViolation> validate_group_table(const Table& table) {
  std::vector<GroupViolation> out;
  const int n = static_cast<int>(table.size());
  if (n == 0) {
    out.push_back({GroupViolation::Kind::BadShape});
    return out;
  }
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) {
      out.push_back({GroupViolation::Kind::BadShape});
      return out;
    }
    for (Elt e : row)
      if (e < 0 || e >= n) {
        out.push_back({GroupViolation::Kind::BadShape});
        return out;
      }
  }
  for (Elt a = 0; a < n; ++a) {
    if (table[0][a] != a || table[a][0] != a)
      out.push_back({GroupViolation::Kind::BadIdentity, a});
  }
  for (Elt a = 0; a < n; ++a) {
    bool left = false, right = false;
    for (Elt b = 0; b < n; ++b) {
      if (table[a][b] == 0) right = true;
      if (table[b][a] == 0) left = true;
    }
    if (!left || !right) out.push_back({GroupViolation::Kind::NoInverse, a});
  }
  for (Elt a = 0; a < n; ++a)
    for (Elt b = 0; b < n; ++b)
      for (Elt c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          out.push_back({GroupViolation::Kind::NonAssociative, a, b, c});
  return out;
}

FiniteGroup::FiniteGroup(Table table, std::string name)
    : order_(static_cast<int>(table.size())), name_(std::move(name)) {
  auto violations = validate_group_table(table);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid group table:";
    size_t shown = 0;
    for (const auto& v : violations) {
      os << " " << v.describe() << ";";
      if (++shown >= 8) {
        os << " ...";
        break;
      }
    }
    throw ValidationError(os.str());
  }
  table_.resize(static_cast<size_t>(order_) * order_);
  for (Elt a = 0; a < order_; ++a)
    for (Elt b = 0; b < order_; ++b) table_[static_cast<size_t>(a) * order_ + b] = table[a][b];
  inv_.resize(order_);
  for (Elt a = 0; a < order_; ++a)
    for (Elt b = 0; b < order_; ++b)
      if (mul(a, b) == 0) inv_[a] = b;
}

int FiniteGroup::element_order(Elt a) const {
  int n = 1;
  Elt x = a;
  while (x != 0) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

bool FiniteGroup::is_abelian() const {
  for (Elt a = 0; a < order_; ++a)
    for (Elt b = a + 1; b < order_; ++b)
      if (!commutes(a, b)) return false;
  return true;
}

std::vector<Elt> FiniteGroup::center() const {
  std::vector<Elt> z;
  for (Elt a = 0; a < order_; ++a) {
    bool central = true;
    for (Elt b = 0; b < order_ && central; ++b) central = commutes(a, b);
    if (central) z.push_back(a);
  }
  return z;
}

Table FiniteGroup::table() const {
  Table t(order_, std::vector<Elt>(order_));
  for (Elt a = 0; a < order_; ++a)
    for (Elt b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<Elt> elements,
                                std::string name) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements[0] != 0)
    throw ValidationError("subgroup must contain the identity");
  std::vector<Elt> index_of(g.order(), -1);
  for (size_t i = 0; i < elements.size(); ++i) index_of[elements[i]] = static_cast<Elt>(i);
  const int n = static_cast<int>(elements.size());
  Table t(n, std::vector<Elt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elt p = g.mul(elements[i], elements[j]);
      if (index_of[p] < 0) throw ValidationError("subset is not closed under multiplication");
      t[i][j] = index_of[p];
    }
  return Subgroup{FiniteGroup(std::move(t), std::move(name)), std::move(elements),
                  std::move(index_of)};
}

std::vector<Elt> generated_subgroup(const FiniteGroup& g, const std::vector<Elt>& gens) {
  std::set<Elt> have{0};
  std::vector<Elt> frontier{0};
  for (Elt x : gens)
    if (have.insert(x).second) frontier.push_back(x);
  while (!frontier.empty()) {
    Elt x = frontier.back();
    frontier.pop_back();
    for (Elt y : std::vector<Elt>(have.begin(), have.end())) {
      for (Elt p : {g.mul(x, y), g.mul(y, x)})
        if (have.insert(p).second) frontier.push_back(p);
    }
  }
  return {have.begin(), have.end()};
}

std::vector<long> abelian_invariant_factors(const FiniteGroup& abelian) {
  if (!abelian.is_abelian()) throw ValidationError("abelian_invariant_factors: group not abelian");
  const int n = abelian.order();
  if (n == 1) return {};
  // presentation: generators e_0..e_{n-1}, relations e_i + e_j - e_{i*j} = 0
  IMat rel(n * n, n);
  int r = 0;
  for (Elt a = 0; a < n; ++a)
    for (Elt b = 0; b < n; ++b, ++r) {
      rel(r, a) += 1;
      rel(r, b) += 1;
      rel(r, abelian.mul(a, b)) -= 1;
    }
  auto snf = smith_normal_form(rel);
  std::vector<Int> fs = snf.invariant_factors();
  std::vector<long> out;
  for (const Int& f : fs)
    if (f > 1) out.push_back(static_cast<long>(f));
  // full rank is guaranteed (finite group), so no free part to report
  return out;
}

FiniteGroup cyclic_group(int n) {
  Table t(n, std::vector<Elt>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(t, "z" + std::to_string(n));
}

FiniteGroup klein_group() {
  Table t(4, std::vector<Elt>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return FiniteGroup(t, "klein4");
}

namespace {

// permutations of {0,1,2} indexed 0..5, composed left-to-right (apply p, then q)
const int kS3Perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};

int s3_index(const int p[3]) {
  for (int i = 0; i < 6; ++i)
    if (kS3Perms[i][0] == p[0] && kS3Perms[i][1] == p[1] && kS3Perms[i][2] == p[2]) return i;
  return -1;
}

}  // namespace

FiniteGroup symmetric_group_3() {
  Table t(6, std::vector<Elt>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int comp[3];
      for (int x = 0; x < 3; ++x) comp[x] = kS3Perms[b][kS3Perms[a][x]];
      t[a][b] = s3_index(comp);
    }
  return FiniteGroup(t, "s3");
}

FiniteGroup dihedral_group(int n) {
  // elements 0..n-1 rotations r^k, n..2n-1 reflections s*r^k
  const int m = 2 * n;
  Table t(m, std::vector<Elt>(m));
  auto idx = [n](bool flip, int rot) { return (flip ? n : 0) + ((rot % n) + n) % n; };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      bool fa = a >= n, fb = b >= n;
      int ra = a % n, rb = b % n;
      // (s^fa r^ra)(s^fb r^rb) = s^(fa+fb) r^(rb + (fb ? -ra : ra))
      t[a][b] = idx(fa ^ fb, rb + (fb ? -ra : ra));
    }
  return FiniteGroup(t, "d" + std::to_string(n));
}

FiniteGroup quaternion_group() {
  // 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
  auto neg = [](int x) { return x ^ 1; };
  Table t(8, std::vector<Elt>(8));
  auto set = [&](int a, int b, int c) {
    t[a][b] = c;
    t[a][neg(b)] = neg(c);
    t[neg(a)][b] = neg(c);
    t[neg(a)][neg(b)] = c;
  };
  for (int b = 0; b < 8; ++b) t[0][b] = b, t[1][b] = neg(b);
  for (int a = 2; a < 8; a += 2) {
    set(a, 0, a);
    set(a, a, 1);  // i*i = -1
  }
  set(2, 4, 6);  // i*j = k
  set(4, 2, 7);  // j*i = -k
  set(2, 6, 5);  // i*k = -j
  set(6, 2, 4);  // k*i = j
  set(4, 6, 2);  // j*k = i
  set(6, 4, 3);  // k*j = -i
  return FiniteGroup(t, "q8");
}

}  // namespace gerbes

#include "gerbes/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gerbes/error.hpp"

namespace gerbes {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("ParseError: expected integer for " + what + ", got '" + s + "'");
  }
}

struct Lines {
  std::vector<std::string> raw;
  std::string origin;
};

Lines read_lines(const std::string& text, const std::string& origin) {
  Lines ls;
  ls.origin = origin;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (!line.empty()) ls.raw.push_back(line);
  }
  return ls;
}

// "key: rest" split; returns false if no colon
bool key_value(const std::string& line, std::string* key, std::string* value) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return false;
  *key = strip(line.substr(0, colon));
  *value = strip(line.substr(colon + 1));
  return true;
}

}  // namespace

void Workspace::ensure_unique(const std::string& name) {
  if (name.empty()) throw ParseError("ParseError: missing name");
  if (kinds_.count(name))
    throw ParseError("ParseError: duplicate artifact name '" + name + "'");
}

namespace {

// default artifact name: file stem of the origin path
std::string stem_of(const std::string& origin) {
  auto slash = origin.find_last_of('/');
  std::string base = slash == std::string::npos ? origin : origin.substr(slash + 1);
  auto dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

}  // namespace

void Workspace::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("ParseError: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path);
}

void Workspace::load_text(const std::string& text, const std::string& origin) {
  Lines ls = read_lines(text, origin);
  if (ls.raw.empty()) throw ParseError("ParseError: empty file " + origin);
  std::string key, value;
  if (!key_value(ls.raw[0], &key, &value) || key != "kind")
    throw ParseError("ParseError: first line must be 'kind: ...' in " + origin);
  const std::string kind = value;

  if (kind == "group") {
    std::string name;
    int order = -1;
    Table table;
    bool in_table = false;
    for (size_t i = 1; i < ls.raw.size(); ++i) {
      const std::string& line = ls.raw[i];
      if (!in_table && key_value(line, &key, &value)) {
        if (key == "name") name = value;
        else if (key == "order") order = to_int(value, "order");
        else if (key == "table") in_table = true;
        else throw ParseError("ParseError: unknown group field '" + key + "' in " + origin);
      } else {
        std::vector<int> row;
        for (const auto& t : tokens(line)) row.push_back(to_int(t, "table entry"));
        table.push_back(row);
      }
    }
    if (order < 1 || static_cast<int>(table.size()) != order)
      throw ParseError("ParseError: group table must have 'order' rows in " + origin);
    if (name.empty()) name = stem_of(origin);
    ensure_unique(name);
    try {
      groups_.emplace(name, FiniteGroup(table, name));
    } catch (const ValidationError& e) {
      throw ValidationError("group '" + name + "': " + e.what());
    }
    kinds_[name] = kind;
  } else if (kind == "cover") {
    CoverModel c;
    std::string name;
    for (size_t i = 1; i < ls.raw.size(); ++i) {
      if (!key_value(ls.raw[i], &key, &value))
        throw ParseError("ParseError: bad cover line '" + ls.raw[i] + "' in " + origin);
      if (key == "name") name = value;
      else if (key == "points") c.points = to_int(value, "points");
      else if (key == "mode") {
        if (value == "pointwise") c.mode = CoverMode::pointwise;
        else if (value == "nerve") c.mode = CoverMode::nerve_constant;
        else throw ParseError("ParseError: mode must be pointwise|nerve in " + origin);
      } else if (key == "set") {
        std::vector<int> pts;
        for (const auto& t : tokens(value)) pts.push_back(to_int(t, "set point"));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        c.sets.push_back(pts);
      } else {
        throw ParseError("ParseError: unknown cover field '" + key + "' in " + origin);
      }
    }
    if (name.empty()) name = stem_of(origin);
    c.name = name;
    ensure_unique(name);
    validate_cover(c);
    covers_.emplace(name, std::move(c));
    kinds_[name] = kind;
  } else if (kind == "cocycle") {
    CocycleSpec spec;
    for (size_t i = 1; i < ls.raw.size(); ++i) {
      const std::string& line = ls.raw[i];
      auto toks = tokens(line);
      if (toks[0] == "lambda" || toks[0] == "g") {
        auto eq = std::find(toks.begin(), toks.end(), "=");
        if (eq == toks.end())
          throw ParseError("ParseError: entry needs '=' in '" + line + "' (" + origin + ")");
        std::vector<std::string> lhs(toks.begin() + 1, eq);
        std::vector<std::string> rhs(eq + 1, toks.end());
        int point = -1;
        auto at = std::find(lhs.begin(), lhs.end(), "@");
        if (at != lhs.end()) {
          if (at + 1 == lhs.end())
            throw ParseError("ParseError: '@' needs a point in '" + line + "'");
          point = to_int(*(at + 1), "point");
          lhs.erase(at, lhs.end());
        }
        if (rhs.empty()) throw ParseError("ParseError: missing value in '" + line + "'");
        if (toks[0] == "lambda") {
          if (lhs.size() != 2)
            throw ParseError("ParseError: lambda needs two indices in '" + line + "'");
          LambdaEntry e;
          e.i = to_int(lhs[0], "lambda index");
          e.j = to_int(lhs[1], "lambda index");
          e.point = point;
          if (rhs[0] == "aut") {
            if (rhs.size() != 2) throw ParseError("ParseError: 'aut' needs an index");
            e.is_aut_ref = true;
            e.aut_index = to_int(rhs[1], "aut index");
          } else if (rhs[0] == "perm") {
            for (size_t t = 1; t < rhs.size(); ++t)
              e.perm.push_back(to_int(rhs[t], "perm image"));
          } else if (rhs[0] == "id" && rhs.size() == 1) {
            e.is_aut_ref = true;
            e.aut_index = 0;
          } else {
            throw ParseError("ParseError: lambda value must be aut|perm|id in '" + line + "'");
          }
          spec.lambda.push_back(std::move(e));
        } else {
          if (lhs.size() != 3)
            throw ParseError("ParseError: g needs three indices in '" + line + "'");
          GEntry e;
          e.i = to_int(lhs[0], "g index");
          e.j = to_int(lhs[1], "g index");
          e.k = to_int(lhs[2], "g index");
          e.point = point;
          if (rhs.size() != 1) throw ParseError("ParseError: g needs one value in '" + line + "'");
          e.value = to_int(rhs[0], "g value");
          spec.g.push_back(std::move(e));
        }
      } else if (key_value(line, &key, &value)) {
        if (key == "name") spec.name = value;
        else if (key == "group") spec.group_ref = value;
        else if (key == "cover") spec.cover_ref = value;
        else throw ParseError("ParseError: unknown cocycle field '" + key + "' in " + origin);
      } else {
        throw ParseError("ParseError: bad cocycle line '" + line + "' in " + origin);
      }
    }
    ensure_unique(spec.name);
    kinds_[spec.name] = kind;
    cocycles_.emplace(spec.name, std::move(spec));
  } else if (kind == "refinement") {
    RefinementSpec spec;
    std::vector<std::pair<int, int>> entries;
    for (size_t i = 1; i < ls.raw.size(); ++i) {
      if (!key_value(ls.raw[i], &key, &value))
        throw ParseError("ParseError: bad refinement line '" + ls.raw[i] + "'");
      if (key == "name") spec.name = value;
      else if (key == "from") spec.from_cover = value;
      else if (key == "to") spec.to_cover = value;
      else if (key == "map") {
        auto ts = tokens(value);
        if (ts.size() != 2)
          throw ParseError("ParseError: refinement map needs 'a b' in '" + ls.raw[i] + "'");
        entries.push_back({to_int(ts[0], "map"), to_int(ts[1], "map")});
      } else {
        throw ParseError("ParseError: unknown refinement field '" + key + "'");
      }
    }
    std::sort(entries.begin(), entries.end());
    for (size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].first != static_cast<int>(i))
        throw ParseError("ParseError: refinement map must list each fine set exactly once");
      spec.map.push_back(entries[i].second);
    }
    ensure_unique(spec.name);
    kinds_[spec.name] = kind;
    refinements_.emplace(spec.name, std::move(spec));
  } else if (kind == "objmap") {
    ObjMapSpec spec;
    for (size_t i = 1; i < ls.raw.size(); ++i) {
      if (!key_value(ls.raw[i], &key, &value))
        throw ParseError("ParseError: bad objmap line '" + ls.raw[i] + "'");
      if (key == "name") spec.name = value;
      else if (key == "target") spec.target = value;
      else if (key == "map") {
        auto ts = tokens(value);
        if (ts.size() != 2)
          throw ParseError("ParseError: objmap entries are 'point set'");
        spec.labels.push_back({to_int(ts[0], "point"), to_int(ts[1], "set")});
      } else {
        throw ParseError("ParseError: unknown objmap field '" + key + "'");
      }
    }
    ensure_unique(spec.name);
    kinds_[spec.name] = kind;
    objmaps_.emplace(spec.name, std::move(spec));
  } else {
    throw ParseError("ParseError: unknown kind '" + kind + "' in " + origin);
  }
}

const FiniteGroup& Workspace::group(const std::string& name) const {
  auto it = groups_.find(name);
  if (it == groups_.end()) throw ParseError("ParseError: unknown group '" + name + "'");
  return it->second;
}
const CoverModel& Workspace::cover(const std::string& name) const {
  auto it = covers_.find(name);
  if (it == covers_.end()) throw ParseError("ParseError: unknown cover '" + name + "'");
  return it->second;
}
const CocycleSpec& Workspace::cocycle_spec(const std::string& name) const {
  auto it = cocycles_.find(name);
  if (it == cocycles_.end()) throw ParseError("ParseError: unknown cocycle '" + name + "'");
  return it->second;
}
const RefinementSpec& Workspace::refinement(const std::string& name) const {
  auto it = refinements_.find(name);
  if (it == refinements_.end())
    throw ParseError("ParseError: unknown refinement '" + name + "'");
  return it->second;
}
const ObjMapSpec& Workspace::objmap(const std::string& name) const {
  auto it = objmaps_.find(name);
  if (it == objmaps_.end()) throw ParseError("ParseError: unknown objmap '" + name + "'");
  return it->second;
}

std::vector<std::string> Workspace::loaded_names() const {
  std::vector<std::string> out;
  for (const auto& [name, kind] : kinds_) out.push_back(kind + " " + name);
  std::sort(out.begin(), out.end());
  return out;
}

NonAbelianCocycle Workspace::resolve_cocycle(const std::string& name,
                                             int aut_order_bound) const {
  const CocycleSpec& spec = cocycle_spec(name);
  const FiniteGroup& g = group(spec.group_ref);
  const CoverModel& c = cover(spec.cover_ref);

  std::optional<AutStructure> aut;
  auto aut_perm = [&](int index) -> Perm {
    if (!aut) aut = automorphism_structure(g, aut_order_bound);
    if (index < 0 || index >= static_cast<int>(aut->reps.size()))
      throw ParseError("ParseError: aut index " + std::to_string(index) + " out of range");
    return aut->reps[index];
  };

  // stage sorted data; entries with point -1 broadcast over all slots
  NonAbelianCocycle probe(g, c);  // for admissibility and slot lookups
  SortedCocycleData data;
  for (const auto& e : spec.lambda) {
    if (!(e.i < e.j))
      throw ParseError("ParseError: lambda keys must be sorted (i < j), got (" +
                       std::to_string(e.i) + "," + std::to_string(e.j) + ")");
    int pos = probe.edge_pos(e.i, e.j);
    if (pos < 0)
      throw ParseError("ParseError: lambda key (" + std::to_string(e.i) + "," +
                       std::to_string(e.j) + ") is not admissible");
    auto pts = probe.key_points({e.i, e.j});
    auto& slot_values = data.lambda[{e.i, e.j}];
    if (slot_values.empty()) slot_values.assign(pts.size(), identity_perm(g.order()));
    Perm p = e.is_aut_ref ? aut_perm(e.aut_index) : e.perm;
    if (!is_automorphism(g, p)) {
      // recorded as data anyway: validation reports C0, but a malformed
      // permutation (wrong size) cannot even be stored
      if (static_cast<int>(p.size()) != g.order())
        throw ParseError("ParseError: lambda permutation must have " +
                         std::to_string(g.order()) + " entries");
    }
    if (e.point < 0) {
      for (auto& v : slot_values) v = p;
    } else {
      auto it = std::lower_bound(pts.begin(), pts.end(), e.point);
      if (it == pts.end() || *it != e.point)
        throw ParseError("ParseError: point " + std::to_string(e.point) +
                         " not in the intersection of edge (" + std::to_string(e.i) + "," +
                         std::to_string(e.j) + ")");
      if (c.mode == CoverMode::nerve_constant)
        throw ParseError("ParseError: '@ point' entries are not allowed in nerve mode");
      slot_values[it - pts.begin()] = p;
    }
  }
  for (const auto& e : spec.g) {
    if (!(e.i < e.j && e.j < e.k))
      throw ParseError("ParseError: g keys must be sorted (i < j < k)");
    int pos = probe.triple_pos(e.i, e.j, e.k);
    if (pos < 0) throw ParseError("ParseError: g key not admissible");
    if (e.value < 0 || e.value >= g.order())
      throw ParseError("ParseError: g value out of range");
    auto pts = probe.key_points({e.i, e.j, e.k});
    auto& slot_values = data.g[{e.i, e.j, e.k}];
    if (slot_values.empty()) slot_values.assign(pts.size(), FiniteGroup::id);
    if (e.point < 0) {
      for (auto& v : slot_values) v = e.value;
    } else {
      auto it = std::lower_bound(pts.begin(), pts.end(), e.point);
      if (it == pts.end() || *it != e.point)
        throw ParseError("ParseError: point " + std::to_string(e.point) +
                         " not in the triple intersection");
      if (c.mode == CoverMode::nerve_constant)
        throw ParseError("ParseError: '@ point' entries are not allowed in nerve mode");
      slot_values[it - pts.begin()] = e.value;
    }
  }
  return complete_cocycle(g, c, data);
}

std::string format_group_file(const FiniteGroup& g, const std::string& name) {
  std::ostringstream os;
  os << "kind: group\n";
  os << "name: " << name << "\n";
  os << "order: " << g.order() << "\n";
  os << "table:\n";
  for (Elt a = 0; a < g.order(); ++a) {
    for (Elt b = 0; b < g.order(); ++b) os << (b ? " " : "") << g.mul(a, b);
    os << "\n";
  }
  return os.str();
}

std::string format_cover_file(const CoverModel& c, const std::string& name) {
  std::ostringstream os;
  os << "kind: cover\n";
  os << "name: " << name << "\n";
  os << "points: " << c.points << "\n";
  os << "mode: " << (c.mode == CoverMode::pointwise ? "pointwise" : "nerve") << "\n";
  for (const auto& s : c.sets) {
    os << "set:";
    for (int p : s) os << " " << p;
    os << "\n";
  }
  return os.str();
}

std::string format_cocycle_file(const NonAbelianCocycle& d, const std::string& name,
                                const std::string& group_ref, const std::string& cover_ref) {
  std::ostringstream os;
  os << "kind: cocycle\n";
  os << "name: " << name << "\n";
  os << "group: " << group_ref << "\n";
  os << "cover: " << cover_ref << "\n";
  const bool nerve = d.mode() == CoverMode::nerve_constant;
  Perm id = identity_perm(d.group().order());
  for (const auto& [i, j] : d.edges()) {
    if (!(i < j)) continue;
    for (int p : d.key_points({i, j})) {
      const Perm& l = d.lambda(i, j, p);
      if (l == id) continue;
      os << "lambda " << i << " " << j;
      if (!nerve) os << " @ " << p;
      os << " = perm";
      for (Elt x : l) os << " " << x;
      os << "\n";
    }
  }
  for (const auto& t : d.triples()) {
    auto [i, j, k] = t;
    if (!(i < j && j < k)) continue;
    for (int p : d.key_points({i, j, k})) {
      Elt v = d.g(i, j, k, p);
      if (v == FiniteGroup::id) continue;
      os << "g " << i << " " << j << " " << k;
      if (!nerve) os << " @ " << p;
      os << " = " << v << "\n";
    }
  }
  return os.str();
}

}  // namespace gerbes

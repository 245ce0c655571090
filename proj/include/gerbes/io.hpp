// The structured-text file family: groups, covers, cocycles, refinements,
// object maps; plus the name-resolving workspace used by the CLI.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gerbes/automorphisms.hpp"
#include "gerbes/cocycle.hpp"
#include "gerbes/cover.hpp"
#include "gerbes/group.hpp"

namespace gerbes {

struct LambdaEntry {
  int i = 0, j = 0;
  int point = -1;  // -1: applies to every point slot of the edge
  bool is_aut_ref = false;
  int aut_index = -1;  // when is_aut_ref
  Perm perm;           // otherwise
};

struct GEntry {
  int i = 0, j = 0, k = 0;
  int point = -1;
  Elt value = 0;
};

struct CocycleSpec {
  std::string name, group_ref, cover_ref;
  std::vector<LambdaEntry> lambda;
  std::vector<GEntry> g;
};

struct RefinementSpec {
  std::string name, from_cover, to_cover;
  std::vector<int> map;  // fine set index -> coarse set index
};

struct ObjMapSpec {
  std::string name, target;                 // target: cocycle name
  std::vector<std::pair<int, int>> labels;  // (point, set) per new object
};

class Workspace {
 public:
  // Parses one file, keyed by its declared kind; names must be unique
  // across the workspace (ParseError otherwise).
  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& origin);

  const FiniteGroup& group(const std::string& name) const;
  const CoverModel& cover(const std::string& name) const;
  const CocycleSpec& cocycle_spec(const std::string& name) const;
  const RefinementSpec& refinement(const std::string& name) const;
  const ObjMapSpec& objmap(const std::string& name) const;

  bool has_group(const std::string& name) const { return groups_.count(name) > 0; }
  bool has_cover(const std::string& name) const { return covers_.count(name) > 0; }
  bool has_cocycle(const std::string& name) const { return cocycles_.count(name) > 0; }
  bool has_refinement(const std::string& name) const { return refinements_.count(name) > 0; }
  bool has_objmap(const std::string& name) const { return objmaps_.count(name) > 0; }

  std::vector<std::string> loaded_names() const;  // sorted "kind name" lines

  // Resolves references, completes the sorted data and returns the full
  // cocycle. aut references are indices into the canonical AutStructure reps
  // of the group (bounded by aut_order_bound).
  NonAbelianCocycle resolve_cocycle(const std::string& name, int aut_order_bound = 24) const;

 private:
  void ensure_unique(const std::string& name);
  std::map<std::string, FiniteGroup> groups_;
  std::map<std::string, CoverModel> covers_;
  std::map<std::string, CocycleSpec> cocycles_;
  std::map<std::string, RefinementSpec> refinements_;
  std::map<std::string, ObjMapSpec> objmaps_;
  std::map<std::string, std::string> kinds_;  // name -> kind
};

std::string format_group_file(const FiniteGroup& g, const std::string& name);
std::string format_cover_file(const CoverModel& c, const std::string& name);
// Emits the sorted-representative entries of a full cocycle (identity values
// omitted), deterministically ordered.
std::string format_cocycle_file(const NonAbelianCocycle& d, const std::string& name,
                                const std::string& group_ref, const std::string& cover_ref);

}  // namespace gerbes

#include "gerbes/morita.hpp"

#include <algorithm>
#include <sstream>

#include "gerbes/error.hpp"

namespace gerbes {

PulledBackExtension pullback_extension(const GroupoidExtension& e, const FiniteGroup& g,
                                       const KernelTrivialization& chi,
                                       const std::vector<int>& j) {
  PulledBackExtension out;
  out.obj_map = j;
  PullbackGroupoid total = pullback_groupoid(e.total, j);
  PullbackGroupoid base = pullback_groupoid(e.base, j);
  out.ext.total = total.gpd;
  out.ext.base = base.gpd;
  out.total_arrow_map = total.arrow_proj;
  out.base_arrow_map = base.arrow_proj;

  out.ext.phi.resize(total.gpd.n_arrows());
  for (int a = 0; a < total.gpd.n_arrows(); ++a) {
    auto [p, x, q] = total.arrows[a];
    out.ext.phi[a] = base.arrow_index(p, e.phi[x], q);
    if (out.ext.phi[a] < 0) throw std::logic_error("pullback_extension: phi image missing");
  }
  out.ext.kernel.assign(total.gpd.n_objects(), {});
  for (int a = 0; a < total.gpd.n_arrows(); ++a)
    if (out.ext.phi[a] == base.gpd.unit(total.gpd.src(a)) &&
        total.gpd.src(a) == total.gpd.tgt(a))
      out.ext.kernel[total.gpd.src(a)].push_back(a);
  for (auto& k : out.ext.kernel) std::sort(k.begin(), k.end());

  auto problems = validate_extension(out.ext);
  if (!problems.empty())
    throw ValidationError("pullback_extension: " + problems.front());

  // kernel of the pullback = pullback of the kernel, fiberwise via chi
  std::vector<std::vector<int>> chi2(total.gpd.n_objects());
  for (int p = 0; p < total.gpd.n_objects(); ++p) {
    chi2[p].resize(g.order());
    for (Elt a = 0; a < g.order(); ++a) {
      int arrow = total.arrow_index(p, chi.chi[j[p]][a], p);
      if (arrow < 0) throw std::logic_error("pullback_extension: kernel arrow missing");
      chi2[p][a] = arrow;
    }
  }
  out.chi = make_trivialization(std::move(chi2));
  if (!is_valid_trivialization(out.ext, g, out.chi))
    throw ValidationError("pullback_extension: pulled-back trivialization invalid");
  return out;
}

void validate_refinement(const CoverModel& fine, const CoverModel& coarse,
                         const std::vector<int>& r) {
  if (fine.points != coarse.points)
    throw ValidationError("NotARefinement: point sets differ");
  if (static_cast<int>(r.size()) != fine.n_sets())
    throw ValidationError("NotARefinement: map size mismatch");
  for (int a = 0; a < fine.n_sets(); ++a) {
    if (r[a] < 0 || r[a] >= coarse.n_sets())
      throw ValidationError("NotARefinement: image out of range");
    for (int p : fine.sets[a])
      if (!coarse.in_set(r[a], p))
        throw ValidationError("NotARefinement: point " + std::to_string(p) + " of fine set " +
                              std::to_string(a) + " is not in coarse set " +
                              std::to_string(r[a]));
  }
}

NonAbelianCocycle refine_cocycle(const NonAbelianCocycle& coarse, const CoverModel& fine,
                                 const std::vector<int>& r) {
  validate_refinement(fine, coarse.cover(), r);
  if (fine.mode != coarse.mode())
    throw ValidationError("NotARefinement: cover modes differ");
  NonAbelianCocycle out(coarse.group(), fine);
  for (int e = 0; e < out.n_edges(); ++e) {
    auto [a, b] = out.edges()[e];
    for (int p : out.key_points({a, b})) out.set_lambda(a, b, p, coarse.lambda(r[a], r[b], p));
  }
  for (int t = 0; t < out.n_triples(); ++t) {
    auto [a, b, c] = out.triples()[t];
    for (int p : out.key_points({a, b, c}))
      out.set_g(a, b, c, p, coarse.g(r[a], r[b], r[c], p));
  }
  auto report = validate_cocycle(out);
  if (!report.ok())
    throw ValidationError("refine_cocycle: refined data invalid: " +
                          report.violations.front().describe());
  return out;
}

namespace {

// nerve-constant refinements may store the coarse value at a different
// representative point; compare at a shared point of both intersections
int shared_point(const NonAbelianCocycle& fine, int a, int b) {
  return fine.key_points({a, b})[0];
}

}  // namespace

MoritaCheck check_band_refinement(const NonAbelianCocycle& coarse, const NonAbelianCocycle& fine,
                                  const std::vector<int>& r, const AutStructure& aut) {
  validate_refinement(fine.cover(), coarse.cover(), r);
  BandCocycle bc = band(coarse, aut);
  BandCocycle bf = band(fine, aut);
  for (int e = 0; e < static_cast<int>(bf.edges.size()); ++e) {
    auto [a, b] = bf.edges[e];
    for (int p : fine.key_points({a, b})) {
      int lhs = bf.value_at(a, b, p);
      int rhs = bc.value_at(r[a], r[b], fine.mode() == CoverMode::nerve_constant
                                            ? shared_point(fine, a, b)
                                            : p);
      if (lhs != rhs) {
        std::ostringstream os;
        os << "band differs at fine edge (" << a << "," << b << ") p=" << p;
        return {false, os.str()};
      }
    }
  }
  return {true, ""};
}

MoritaCheck check_band_pullback(const GroupoidExtension& e, const FiniteGroup& g,
                                const KernelTrivialization& chi, const PulledBackExtension& pb,
                                const AutStructure& aut) {
  auto outer = outer_action(e, g, chi, aut);
  auto outer2 = outer_action(pb.ext, g, pb.chi, aut);
  for (int y = 0; y < pb.ext.base.n_arrows(); ++y) {
    if (outer2[y] != outer[pb.base_arrow_map[y]]) {
      std::ostringstream os;
      os << "outer action differs at pulled-back base arrow " << y;
      return {false, os.str()};
    }
  }
  return {true, ""};
}

MoritaCheck check_cohomology_morita(const GroupoidExtension& e, const GroupoidModule& mod,
                                    const GroupoidExtension& e2,
                                    const std::vector<int>& obj_map,
                                    const std::vector<int>& total_arrow_map, Side side) {
  // precondition: the data must exhibit a Morita morphism of the totals
  GroupoidMorphism f{&e2.total, &e.total, obj_map, total_arrow_map};
  auto w = is_morita_morphism(f);
  if (!w.ok) throw ValidationError("NotMorita: " + w.reason);

  GroupoidModule mod2 = pullback_module(mod, obj_map, total_arrow_map);
  for (int degree = 0; degree <= 2; ++degree) {
    auto h1 = groupoid_cohomology(e.total, mod, degree, side);
    auto h2 = groupoid_cohomology(e2.total, mod2, degree, side);
    if (!(h1 == h2)) {
      std::ostringstream os;
      os << "H^" << degree << " differs: " << h1.describe() << " vs " << h2.describe();
      return {false, os.str()};
    }
  }
  return {true, ""};
}

RefinedExtension refined_extension(const NonAbelianCocycle& coarse_data,
                                   const CechExtension& coarse, const CoverModel& fine_cover,
                                   const std::vector<int>& r) {
  NonAbelianCocycle fine_data = refine_cocycle(coarse_data, fine_cover, r);
  RefinedExtension out{extension_from_cocycle(fine_data), {}, {}, {}};
  const auto& fine = out.fine;
  out.obj_map.resize(fine.base.gpd.n_objects());
  for (int m = 0; m < fine.base.gpd.n_objects(); ++m) {
    auto [p, a] = fine.base.objects[m];
    out.obj_map[m] = coarse.base.object_index(p, r[a]);
  }
  out.base_arrow_map.resize(fine.base.gpd.n_arrows());
  for (int y = 0; y < fine.base.gpd.n_arrows(); ++y) {
    auto [p, a, b] = fine.base.arrows[y];
    out.base_arrow_map[y] = coarse.base.arrow_index(p, r[a], r[b]);
  }
  out.total_arrow_map.resize(fine.ext.total.n_arrows());
  for (int x = 0; x < fine.ext.total.n_arrows(); ++x) {
    auto [p, a, b, g] = fine.arrow_labels[x];
    out.total_arrow_map[x] = coarse.arrow_of(p, r[a], r[b], g);
  }
  return out;
}

}  // namespace gerbes

// Pullbacks and refinements of extensions, and executable Morita-invariance
// checks for the band and for groupoid cohomology.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gerbes/extension.hpp"
#include "gerbes/groupoid_module.hpp"

namespace gerbes {

// Pullback of an extension along a surjection onto its objects. Everything
// needed to compare with the original travels along: object map, arrow maps,
// pulled-back kernel trivialization.
struct PulledBackExtension {
  GroupoidExtension ext;
  KernelTrivialization chi;
  std::vector<int> obj_map;         // new object -> old object
  std::vector<int> total_arrow_map; // new total arrow -> old total arrow
  std::vector<int> base_arrow_map;  // new base arrow -> old base arrow
};

PulledBackExtension pullback_extension(const GroupoidExtension& e, const FiniteGroup& g,
                                       const KernelTrivialization& chi,
                                       const std::vector<int>& j);

// Cover refinement r: fine set a -> coarse set r(a); every fine set must be
// contained pointwise in its image ("NotARefinement" with a witness point).
// The refined cocycle is the pulled-back data.
void validate_refinement(const CoverModel& fine, const CoverModel& coarse,
                         const std::vector<int>& r);

NonAbelianCocycle refine_cocycle(const NonAbelianCocycle& coarse, const CoverModel& fine,
                                 const std::vector<int>& r);

// Witnessed boolean verdicts for the Morita-invariance checks.
struct MoritaCheck {
  bool ok = false;
  std::string witness;  // empty when ok
};

// Band comparison for a refinement: bar_lambda of the fine data must equal
// the pullback of the coarse band values edgewise.
MoritaCheck check_band_refinement(const NonAbelianCocycle& coarse,
                                  const NonAbelianCocycle& fine, const std::vector<int>& r,
                                  const AutStructure& aut);

// Band comparison for a pullback: outer action of the pulled-back extension
// equals the outer action of the original through the base arrow map.
MoritaCheck check_band_pullback(const GroupoidExtension& e, const FiniteGroup& g,
                                const KernelTrivialization& chi,
                                const PulledBackExtension& pb, const AutStructure& aut);

// Cohomology comparison (degrees 0..2, chosen side) between an extension and
// a Morita-related one, with the module pulled back along the object map.
// Refuses non-Morita data ("NotMorita").
MoritaCheck check_cohomology_morita(const GroupoidExtension& e, const GroupoidModule& mod,
                                    const GroupoidExtension& e2,
                                    const std::vector<int>& obj_map,
                                    const std::vector<int>& total_arrow_map, Side side);

// Convenience: the Cech-groupoid extension of a refined cocycle together
// with the strict morphism onto the coarse extension.
struct RefinedExtension {
  CechExtension fine;
  std::vector<int> obj_map;          // fine object -> coarse object
  std::vector<int> total_arrow_map;  // fine total arrow -> coarse total arrow
  std::vector<int> base_arrow_map;
};

RefinedExtension refined_extension(const NonAbelianCocycle& coarse_data,
                                   const CechExtension& coarse, const CoverModel& fine_cover,
                                   const std::vector<int>& r);

}  // namespace gerbes

#pragma once

#include <string>
#include <vector>

#include "splb/geometry.hpp"
#include "splb/mapped.hpp"
#include "splb/tensor.hpp"

namespace splb {

struct Patch {
  GeometryMap map;
  TensorSpace space;
};

/// Glued pair of patch edges.  Edge indices: 0 is x = a1 and 1 is x = b1
/// (running coordinate y); 2 is y = a2 and 3 is y = b2 (running coordinate
/// x).  reversed flips the running coordinate of patch_b against patch_a.
struct Interface {
  int patch_a;
  int edge_a;
  int patch_b;
  int edge_b;
  bool reversed = false;
};

struct MultiPatch {
  std::vector<Patch> patches;
  std::vector<Interface> interfaces;
};

/// Validates and assembles a layout.  Along every interface the univariate
/// edge spaces must coincide (after mirroring when reversed) and the two
/// physical parameterizations must agree to 1e-10 at edge samples.
MultiPatch build_multipatch(std::vector<Patch> patches, std::vector<Interface> interfaces);

/// Built-in layouts on uniform maximally smooth spaces with n_interior
/// interior breakpoints per direction: "two-patch-square" (two translated
/// unit squares), "two-patch-reversed" (second patch parameterized upside
/// down), "two-patch-bent" (both patches bulged; needs a mesh containing
/// 1/2).
MultiPatch multipatch_catalog(const std::string& id, int n_interior, int degree);

/// Per-patch anchored projection from per-patch physical evaluators.  The
/// result is continuous across interfaces because each edge restriction is
/// the univariate projection of the shared edge trace.
std::vector<TensorSpline> multipatch_q_project(const MultiPatch& mp, const std::vector<PhysicalTestFunction>& u);

} // namespace splb

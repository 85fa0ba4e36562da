#pragma once

#include <map>
#include <string>
#include <vector>

#include "oneone/diagram.hpp"

namespace oneone {

// Two-dimensional shadow of the branched surface associated to a non-simple
// reduced diagram: the diagram with branch directions (always the left side
// of the oriented curve), the source bigon removed, the sink bigon punctured,
// and the removed bigon's boundary arcs frozen (they leave the branch locus).
//
// Pushes replace `map` by the surgered complex; `base` keeps the diagram the
// shadow was built from.
struct BranchShadow {
    TorusDiagram base;
    CurveComplex map;
    bool pushed = false;
    CurveId pushed_role = CurveId::Beta;
    FaceId removed_face = -1;    // source bigon interior: not a sector
    FaceId punctured_face = -1;  // sink bigon: an annulus sector
    std::vector<EdgeId> frozen_arcs;
    VertexId x1 = -1;  // new double point near the sink bigon, if pushed
    VertexId x2 = -1;  // new double point at the polygon end, if pushed
    // provenance notes for collapsed circles (certify stage), keyed by a
    // stable name; purely informational for the 2-D scan they guard.
    std::map<std::string, std::string> provenance;
};

struct DoublePoint {
    VertexId vertex = -1;
    FaceId sink_corner = -1;
};

struct PushMove {
    EdgeId pushed_arc = -1;
    EdgeId target_arc = -1;
};

enum class SafetyReason : uint8_t {
    AnnulusCorner,           // corner is the punctured sector
    OutwardBoundaryArc,      // corner has a frozen or cut-boundary arc
    SameDirectionVerticals,  // >= 2 same-direction vertical arcs, one outward
    SameDirectionRainbows,   // >= 2 same-direction rainbow arcs, one outward
    OutwardArc,              // some boundary branch direction points outward
};

const char* safety_reason_name(SafetyReason r);

struct SafetyEntry {
    VertexId vertex = -1;
    FaceId corner = -1;
    SafetyReason reason = SafetyReason::OutwardArc;
    EdgeId witness_a = -1;
    EdgeId witness_b = -1;
};

// Builds the shadow; throws SimpleDiagram when there are no bigons.
BranchShadow shadow_from_diagram(const TorusDiagram& d);

// Ordered sink sectors of the shadow's base diagram (see sink_tube_of).
std::vector<FaceId> sink_tube(const BranchShadow& sh, CurveId role);

// Elementary splitting: one arc is pushed over another onto the sector
// beyond; the arc's endpoints stay put and it acquires two crossings with
// the target. Euler characteristic is preserved.
BranchShadow push_arc(const BranchShadow& sh, const PushMove& m);

// The sink tube push: the long tube arc not containing the source bigon's
// arc is pushed onto the one that does. Returns the surgered shadow and the
// two new double points (none when the tube has no sectors).
struct TubePushResult {
    BranchShadow shadow;
    std::vector<VertexId> new_points;
};
TubePushResult sink_tube_push(const BranchShadow& sh, CurveId role);

// Branch-locus self-intersections with their sink corners.
std::vector<DoublePoint> double_points(const BranchShadow& sh);

// Disk sectors whose boundary branch directions all point inwards.
std::vector<FaceId> sink_disk_scan(const BranchShadow& sh);

// Safety classification of every double point; throws InternalContradiction
// if some sink corner is an actual sink disk.
std::vector<SafetyEntry> safety_table(const BranchShadow& sh);

// Number of connected components of the branch locus (cusp circles).
int cusp_circle_count(const BranchShadow& sh);

// JSON export (schema "oneone-shadow/1").
std::string shadow_to_json(const BranchShadow& sh);

}  // namespace oneone

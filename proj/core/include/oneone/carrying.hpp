#pragma once

#include <string>
#include <vector>

#include "oneone/diagram.hpp"

namespace oneone {

// The carrying curve of one diagram curve: disjoint from and isotopic to it,
// crossing only the arcs of the other curve that are parallel with respect
// to the carried one. It is characterized by the cycle of parallel-arc
// regions it passes through, which visits every such region exactly once.
struct CarryingCurve {
    CurveId replaced = CurveId::Alpha;  // the curve it carries and replaces
    // exit_darts[i] is the dart of the i-th crossed arc whose left face the
    // curve enters after crossing it; crossed_arcs and region_cycle are the
    // corresponding edges and faces (region_cycle[i] is traversed between
    // crossings i and i+1). All lists share one length.
    std::vector<Dart> exit_darts;
    std::vector<EdgeId> crossed_arcs;
    std::vector<FaceId> region_cycle;
};

struct ReplaceResult {
    TorusDiagram diagram;
    bool simple = false;  // the replacement produced a bigon-free diagram
};

CarryingCurve carrying_curve(const TorusDiagram& d, CurveId replaced);

ReplaceResult replace_with_carrying(const TorusDiagram& d, const CarryingCurve& c);

struct HierarchyStep {
    DiagramTuple before;
    CurveId replaced = CurveId::Beta;
    DiagramTuple after;
};

// Finite reduction hierarchy from a non-simple reduced diagram down to a
// primitive one. stages[0] is the input; stages.back() the terminal.
struct Hierarchy {
    std::vector<HierarchyStep> steps;
    std::vector<TorusDiagram> stages;

    const TorusDiagram& terminal() const { return stages.back(); }
};

// Iterates carrying replacements, preferring to replace beta and falling
// back to alpha when that result would be simple, until primitive.
Hierarchy reduction_hierarchy(const TorusDiagram& d);

// JSON export (schema "oneone-hierarchy/1"): ordered steps with tuple
// normal forms and replaced roles.
std::string hierarchy_to_json(const Hierarchy& h);

}  // namespace oneone

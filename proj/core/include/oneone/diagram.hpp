#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "oneone/map.hpp"

namespace oneone {

// Parameters of a reduced doubly pointed genus-one diagram in standard
// position: p crossings, 2q rainbow arcs (q nested around each basepoint),
// r leaning vertical arcs, p-2q-r straight vertical arcs, and ceiling glued
// to floor with twist s (ceiling thread j meets floor thread j+s).
struct DiagramTuple {
    int p = 0;
    int q = 0;
    int r = 0;
    int s = 0;

    // s reduced modulo p; r=0 representative chosen when the leaning count
    // is degenerate (r == p-2q describes the same map as r == 0, s+2q).
    DiagramTuple normalized() const;
    bool bounds_ok() const;
    std::string to_string() const;                       // "p,q,r,s"
    static DiagramTuple parse(const std::string& text);  // throws InvalidTuple

    bool operator==(const DiagramTuple& o) const {
        auto a = normalized(), b = o.normalized();
        return a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s;
    }
};

// Exact combinatorial map of alpha and beta on the torus. Orientation
// conventions are fixed once: the surface is seen from the beta-disk side,
// alpha runs rightward-to-leftward along the floor, and beta is oriented so
// the bigon holding z is clockwise (the source bigon) and the bigon holding
// w anticlockwise (the sink bigon).
struct TorusDiagram {
    CurveComplex map;
    FaceId z_face = -1;
    FaceId w_face = -1;

    int crossings() const { return map.vertex_count(); }
};

enum class ArcClass : uint8_t { Sink, Source, Parallel };

enum class FaceClass : uint8_t {
    SinkBigon,
    SourceBigon,
    SinkSector,
    SourceSector,
    ParallelSector,
    Hexagon,
    Octagon,
};

struct FaceCensus {
    int bigons = 0;
    int quads = 0;
    int hexagons = 0;
    int octagons = 0;
    int faces = 0;
    bool simple() const { return bigons == 0; }
};

struct ValidationReport {
    bool euler_zero = false;
    bool crossings_transverse = false;  // every vertex 4-valent, E = 2V
    bool alpha_single_cycle = false;
    bool beta_single_cycle = false;
    bool reduced = false;      // every bigon face holds a basepoint
    bool census_ok = false;    // 2 bigons + (2 hexagons xor 1 octagon) + quads
    bool orientation_ok = false;  // source bigon clockwise, sink anticlockwise
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

// Per-arc classification tables, indexed by EdgeId. Alpha arcs are classified
// against beta and vice versa; entries for the other curve's edges are unset.
struct ArcClassification {
    std::vector<ArcClass> of_alpha_arc;  // class w.r.t. beta
    std::vector<ArcClass> of_beta_arc;   // class w.r.t. alpha
};

TorusDiagram build_from_tuple(const DiagramTuple& t);

ValidationReport validate(const TorusDiagram& d);

FaceCensus census(const TorusDiagram& d);

ArcClassification classify_arcs(const TorusDiagram& d);

// Class of one arc: the side of `against` on which `e` lies at each endpoint.
ArcClass arc_class(const TorusDiagram& d, EdgeId e);

// Face classified against the reference curve `ref` (quads become sectors of
// the ref-classification; bigons become ref-sink or ref-source bigons).
FaceClass face_class(const TorusDiagram& d, FaceId f, CurveId ref);

// The diagram rotated by the hyperelliptic involution: same map with every
// orientation bit reversed and the basepoints exchanged.
TorusDiagram involution_image(const TorusDiagram& d);

bool is_simple(const TorusDiagram& d);

bool is_primitive(const TorusDiagram& d);

// Net signed count of the crossings. Zero means the curves are homologous
// and the glued-up manifold is S1 x S2, which the theory excludes.
int algebraic_intersection(const TorusDiagram& d);

// True when every vertical arc leaves through its floor-side germ (crosses
// alpha upward in standard position). Throws when directions are mixed.
bool vertical_arcs_upward(const TorusDiagram& d);

// The unique twist making (p,q,r,s) primitive, found by aligning the single
// maximal run of equal crossing signs on roof and floor. Each (p,q,r) admits
// a mirror pair of primitive diagrams; the one with upward vertical arcs
// (positive sign run) is returned. Throws NoPrimitiveTwist when the bounds
// fail or no twist closes up primitively.
int primitive_twist(int p, int q, int r);

// Standard-position normal form of an abstract diagram (non-simple, reduced).
DiagramTuple tuple_of(const TorusDiagram& d);

// Canonical isomorphism-invariant serialization / content hash. Two diagrams
// are equal (as labeled maps with basepoints) iff the strings agree.
std::string canonical_string(const TorusDiagram& d);
std::string canonical_hash(const TorusDiagram& d);
bool isomorphic(const TorusDiagram& a, const TorusDiagram& b);

// ---- structure helpers shared by later stages --------------------------

// Bigon of the given classification role; requires a non-simple diagram.
FaceId sink_bigon(const TorusDiagram& d, CurveId ref);
FaceId source_bigon(const TorusDiagram& d, CurveId ref);

// The hexagon faces (two) or octagon face (one).
std::vector<FaceId> polygon_faces(const TorusDiagram& d);

// The chain of ref-sink sectors joining the ref-sink bigon to the sink arc
// of the hexagons/octagon, together with its boundary arcs.
struct SinkTube {
    FaceId bigon = -1;                // ref-sink bigon
    std::vector<FaceId> sectors;      // ordered from bigon to polygon
    FaceId polygon = -1;              // hexagon or octagon reached
    EdgeId bigon_arc = -1;            // arc of the non-ref curve on the bigon
    EdgeId polygon_arc = -1;          // sink arc of the polygon
    // Long boundary arcs of the tube, as ref-curve edge chains ordered from
    // the bigon end to the polygon end. long_a starts at the bigon vertex
    // shared with the bigon's ref arc tail.
    std::vector<EdgeId> long_a;
    std::vector<EdgeId> long_b;
};

SinkTube sink_tube_of(const TorusDiagram& d, CurveId ref);
SinkTube source_tube_of(const TorusDiagram& d, CurveId ref);

// Edges of one curve in traversal order starting from the forward dart of
// `start` (any edge of that curve when start == -1).
std::vector<EdgeId> curve_edges(const CurveComplex& m, CurveId c, EdgeId start = -1);

// JSON export (schema "oneone-diagram/1").
std::string diagram_to_json(const TorusDiagram& d);

}  // namespace oneone

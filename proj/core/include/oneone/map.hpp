#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oneone {

// A combinatorial map (rotation system) for curves on an oriented surface.
//
// Darts come in twin pairs: edge e owns darts 2e and 2e+1. Each dart sits in
// exactly one vertex rotation, listed in anticlockwise order as seen from the
// positive side of the surface. Faces are the orbits of
//   next_left(d) = rot_prev(twin(d)),
// which walks the boundary of the face lying to the LEFT of d, anticlockwise.
//
// Edges carry a curve id and an orientation (the "forward" dart points along
// the curve). Boundary circles of cut-open surfaces are ordinary edges whose
// curve is flagged as boundary by the caller.

using Dart = int32_t;
using EdgeId = int32_t;
using VertexId = int32_t;
using FaceId = int32_t;

enum class CurveId : uint8_t {
    Alpha = 0,
    Beta = 1,
    Carry = 2,     // carrying curve (gamma or delta) overlaid on a diagram
    CutBound = 3,  // boundary circle of a cut-open surface
};

// Kind label a beta-arc inherits from the standard-position build.
enum class ArcKind : uint8_t { Other = 0, Rainbow = 1, Vertical = 2 };

struct EdgeData {
    CurveId curve = CurveId::Alpha;
    ArcKind kind = ArcKind::Other;
    bool frozen = false;  // boundary of the removed source bigon: not branch locus
};

class CurveComplex {
public:
    CurveComplex() = default;

    // ---- construction -------------------------------------------------
    EdgeId add_edge(CurveId curve, ArcKind kind = ArcKind::Other);
    // Rotation darts in anticlockwise order. Every dart must be placed once.
    VertexId add_vertex(std::vector<Dart> rotation);
    // Marks dart d's edge as traversed from origin(d) toward origin(twin(d)).
    void orient_edge(Dart forward);
    // Checks dart placement and computes faces. Must be called before queries.
    void finalize();

    // ---- basic queries -------------------------------------------------
    int vertex_count() const { return static_cast<int>(rotations_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(face_first_.size()); }
    int dart_count() const { return 2 * edge_count(); }

    static Dart twin(Dart d) { return d ^ 1; }
    static EdgeId edge_of(Dart d) { return d >> 1; }
    Dart dart(EdgeId e, int side) const { return 2 * e + side; }

    VertexId vertex_of(Dart d) const { return dart_vertex_[d]; }
    int slot_of(Dart d) const { return dart_slot_[d]; }
    int degree(VertexId v) const { return static_cast<int>(rotations_[v].size()); }
    const std::vector<Dart>& rotation(VertexId v) const { return rotations_[v]; }

    Dart rot_next(Dart d) const;  // next dart anticlockwise around origin(d)
    Dart rot_prev(Dart d) const;
    Dart next_left(Dart d) const { return rot_prev(twin(d)); }

    FaceId face_left(Dart d) const { return dart_face_[d]; }
    int face_degree(FaceId f) const { return face_degree_[f]; }
    // Boundary darts of face f, anticlockwise; each has f on its left.
    std::vector<Dart> face_darts(FaceId f) const;

    const EdgeData& edata(EdgeId e) const { return edges_[e]; }
    EdgeData& edata(EdgeId e) { return edges_[e]; }
    CurveId curve_of(Dart d) const { return edges_[edge_of(d)].curve; }

    // Forward dart of the oriented edge.
    Dart forward(EdgeId e) const { return forward_[e]; }
    bool is_forward(Dart d) const { return forward_[edge_of(d)] == d; }
    void flip_edge(EdgeId e) { forward_[e] = twin(forward_[e]); }

    // Head/tail vertices in curve orientation.
    VertexId tail(EdgeId e) const { return vertex_of(forward(e)); }
    VertexId head(EdgeId e) const { return vertex_of(twin(forward(e))); }

    // The dart of the same curve continuing through origin(twin(d)).
    // Crossings are 4-valent and transverse (continuation two slots on);
    // subdivision vertices are 2-valent. Returns -1 if the strand ends.
    Dart strand_continue(Dart d) const;

    // Euler characteristic V - E + F of the closed-up map.
    int euler_characteristic() const;

    // Deterministic isomorphism-invariant serialization of the map together
    // with caller-chosen face marks (e.g. basepoints). Two maps are isomorphic
    // with matching edge data, orientations and marks iff the strings agree.
    std::string canonical_string(const std::vector<std::pair<FaceId, char>>& face_marks) const;

private:
    std::vector<EdgeData> edges_;
    std::vector<Dart> forward_;
    std::vector<std::vector<Dart>> rotations_;
    std::vector<VertexId> dart_vertex_;
    std::vector<int> dart_slot_;
    std::vector<FaceId> dart_face_;
    std::vector<Dart> face_first_;
    std::vector<int> face_degree_;
    bool finalized_ = false;

    std::string canonical_from(Dart start, const std::vector<std::pair<FaceId, char>>& marks) const;
};

// 64-bit FNV-1a, used for stable content hashes of canonical strings.
uint64_t fnv1a64(const std::string& s);
std::string hash_hex(uint64_t h);

}  // namespace oneone

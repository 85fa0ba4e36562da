#include "oneone/map.hpp"

#include <algorithm>
#include <stdexcept>

#include "oneone/errors.hpp"

namespace oneone {

EdgeId CurveComplex::add_edge(CurveId curve, ArcKind kind) {
    EdgeData d;
    d.curve = curve;
    d.kind = kind;
    edges_.push_back(d);
    forward_.push_back(static_cast<Dart>(2 * (edges_.size() - 1)));
    return static_cast<EdgeId>(edges_.size() - 1);
}

VertexId CurveComplex::add_vertex(std::vector<Dart> rotation) {
    rotations_.push_back(std::move(rotation));
    return static_cast<VertexId>(rotations_.size() - 1);
}

void CurveComplex::orient_edge(Dart forward) {
    forward_[edge_of(forward)] = forward;
}

void CurveComplex::finalize() {
    const int nd = dart_count();
    dart_vertex_.assign(nd, -1);
    dart_slot_.assign(nd, -1);
    for (VertexId v = 0; v < vertex_count(); ++v) {
        const auto& rot = rotations_[v];
        for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
            Dart d = rot[i];
            if (d < 0 || d >= nd) throw InternalContradiction("dart id out of range");
            if (dart_vertex_[d] != -1) throw InternalContradiction("dart placed twice");
            dart_vertex_[d] = v;
            dart_slot_[d] = i;
        }
    }
    for (Dart d = 0; d < nd; ++d)
        if (dart_vertex_[d] == -1) throw InternalContradiction("dart not placed in any rotation");

    dart_face_.assign(nd, -1);
    face_first_.clear();
    face_degree_.clear();
    for (Dart d = 0; d < nd; ++d) {
        if (dart_face_[d] != -1) continue;
        FaceId f = static_cast<FaceId>(face_first_.size());
        face_first_.push_back(d);
        int deg = 0;
        Dart cur = d;
        do {
            dart_face_[cur] = f;
            cur = next_left(cur);
            ++deg;
            if (deg > nd) throw InternalContradiction("face traversal does not close");
        } while (cur != d);
        face_degree_.push_back(deg);
    }
    finalized_ = true;
}

Dart CurveComplex::rot_next(Dart d) const {
    const auto& rot = rotations_[dart_vertex_[d]];
    int i = dart_slot_[d];
    return rot[(i + 1) % rot.size()];
}

Dart CurveComplex::rot_prev(Dart d) const {
    const auto& rot = rotations_[dart_vertex_[d]];
    int i = dart_slot_[d];
    return rot[(i + rot.size() - 1) % rot.size()];
}

std::vector<Dart> CurveComplex::face_darts(FaceId f) const {
    std::vector<Dart> out;
    out.reserve(face_degree_[f]);
    Dart d = face_first_[f];
    do {
        out.push_back(d);
        d = next_left(d);
    } while (d != face_first_[f]);
    return out;
}

Dart CurveComplex::strand_continue(Dart d) const {
    Dart in = twin(d);
    VertexId v = dart_vertex_[in];
    int deg = degree(v);
    int i = dart_slot_[in];
    if (deg == 4) return rotations_[v][(i + 2) % 4];
    if (deg == 2) return rotations_[v][(i + 1) % 2];
    return -1;
}

int CurveComplex::euler_characteristic() const {
    return vertex_count() - edge_count() + face_count();
}

namespace {
void append_int(std::string& s, int v) {
    s += std::to_string(v);
    s += ',';
}
}  // namespace

std::string CurveComplex::canonical_from(Dart start,
                                         const std::vector<std::pair<FaceId, char>>& marks) const {
    // Breadth-first relabeling of darts from `start`, exploring twin and
    // rotation successors. Emits a label stream that is invariant under
    // map isomorphism once minimized over all start darts.
    const int nd = dart_count();
    std::vector<int> label(nd, -1);
    std::vector<Dart> order;
    order.reserve(nd);
    label[start] = 0;
    order.push_back(start);
    std::string out;
    out.reserve(nd * 8);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        Dart d = order[qi];
        Dart nbrs[2] = {twin(d), rot_next(d)};
        for (Dart n : nbrs) {
            if (label[n] == -1) {
                label[n] = static_cast<int>(order.size());
                order.push_back(n);
            }
            append_int(out, label[n]);
        }
        const EdgeData& ed = edges_[edge_of(d)];
        out += static_cast<char>('a' + static_cast<int>(ed.curve));
        out += static_cast<char>('0' + static_cast<int>(ed.kind));
        out += ed.frozen ? 'F' : '.';
        out += is_forward(d) ? '>' : '<';
        for (const auto& [f, c] : marks)
            if (dart_face_[d] == f) out += c;
        out += ';';
    }
    return out;
}

std::string CurveComplex::canonical_string(
    const std::vector<std::pair<FaceId, char>>& face_marks) const {
    if (!finalized_) throw InternalContradiction("canonical_string before finalize");
    std::string best;
    for (Dart d = 0; d < dart_count(); ++d) {
        std::string s = canonical_from(d, face_marks);
        if (best.empty() || s < best) best = std::move(s);
    }
    return best;
}

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace oneone

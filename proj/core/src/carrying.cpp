#include "oneone/carrying.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "oneone/errors.hpp"

namespace oneone {

namespace {

CurveId other(CurveId c) { return c == CurveId::Alpha ? CurveId::Beta : CurveId::Alpha; }

}  // namespace

CarryingCurve carrying_curve(const TorusDiagram& d, CurveId replaced) {
    const CurveComplex& m = d.map;
    CurveId crossed_curve = other(replaced);

    // Parallel arcs of the other curve, and the faces they bound.
    std::set<EdgeId> parallel;
    for (EdgeId e = 0; e < m.edge_count(); ++e)
        if (m.edata(e).curve == crossed_curve && arc_class(d, e) == ArcClass::Parallel)
            parallel.insert(e);
    if (parallel.empty())
        throw InternalContradiction("no parallel arcs: carrying curve undefined");

    // Each face incident to a parallel arc sees exactly two parallel-arc
    // sides on its boundary (a face may meet the same arc from both sides).
    std::map<FaceId, std::vector<Dart>> darts_of_face;
    for (EdgeId e : parallel)
        for (int side = 0; side < 2; ++side) {
            Dart dd = m.dart(e, side);
            darts_of_face[m.face_left(dd)].push_back(dd);
        }
    for (const auto& [f, darts] : darts_of_face)
        if (darts.size() != 2)
            throw InternalContradiction("face with " + std::to_string(darts.size()) +
                                        " parallel arc sides");

    // Walk: cross an arc through its exit dart, traverse the face on that
    // dart's left, leave through the face's other parallel-arc side.
    CurveId kept = replaced;
    (void)kept;
    CarryingCurve out;
    out.replaced = replaced;
    Dart d0 = m.dart(*parallel.begin(), 0);
    Dart cur = d0;
    do {
        out.exit_darts.push_back(cur);
        out.crossed_arcs.push_back(CurveComplex::edge_of(cur));
        FaceId f = m.face_left(cur);
        out.region_cycle.push_back(f);
        const auto& pair = darts_of_face.at(f);
        if (pair[0] != cur && pair[1] != cur)
            throw InternalContradiction("region cycle left the parallel faces");
        Dart leave = (pair[0] == cur) ? pair[1] : pair[0];
        cur = CurveComplex::twin(leave);
        if (out.exit_darts.size() > parallel.size())
            throw InternalContradiction("region cycle does not close");
    } while (cur != d0);

    // Uniqueness witness: the single cycle crosses every parallel arc once
    // and traverses every parallel-arc face exactly once.
    std::set<EdgeId> crossed(out.crossed_arcs.begin(), out.crossed_arcs.end());
    if (crossed.size() != parallel.size() || out.crossed_arcs.size() != parallel.size() ||
        out.region_cycle.size() != darts_of_face.size())
        throw InternalContradiction("region cycle misses parallel regions");
    return out;
}

ReplaceResult replace_with_carrying(const TorusDiagram& d, const CarryingCurve& c) {
    const CurveComplex& m = d.map;
    CurveId kept = other(c.replaced);
    const int n = static_cast<int>(c.crossed_arcs.size());

    std::map<EdgeId, int> vindex;  // crossed arc -> new vertex index
    for (int i = 0; i < n; ++i) vindex[c.crossed_arcs[i]] = i;

    // Kept-curve traversal order of the crossed arcs.
    std::vector<EdgeId> kcycle = curve_edges(m, kept);
    std::vector<int> korder;
    for (EdgeId e : kcycle)
        if (vindex.count(e)) korder.push_back(vindex.at(e));
    if (static_cast<int>(korder.size()) != n)
        throw InternalContradiction("kept curve misses crossed arcs");

    TorusDiagram nd;
    CurveComplex& nm = nd.map;
    // Kept-curve edges first (edge j runs korder[j] -> korder[j+1]), then the
    // carrying chords (chord i runs v_i -> v_{i+1}). The new curve takes over
    // the replaced role.
    for (int j = 0; j < n; ++j) nm.add_edge(kept);
    for (int i = 0; i < n; ++i) nm.add_edge(c.replaced);

    std::vector<int> kpos(n, -1);  // kept-order position of each v-index
    for (int j = 0; j < n; ++j) kpos[korder[j]] = j;

    for (int i = 0; i < n; ++i) {
        int j = kpos[i];
        Dart k_out = nm.dart(j, 0);
        Dart k_in = nm.dart((j + n - 1) % n, 1);
        Dart g_out = nm.dart(n + i, 0);
        Dart g_in = nm.dart(n + (i + n - 1) % n, 1);
        // The carrying curve crosses arc i leaving through its exit dart; if
        // that is the kept curve's forward dart the chord crosses
        // right-to-left, putting its outgoing germ one anticlockwise step
        // after the kept-curve outgoing germ.
        EdgeId e = c.crossed_arcs[i];
        if (c.exit_darts[i] == m.forward(e))
            nm.add_vertex({k_out, g_out, k_in, g_in});
        else
            nm.add_vertex({k_out, g_in, k_in, g_out});
    }
    nm.finalize();
    for (int j = 0; j < n; ++j) nm.orient_edge(nm.dart(j, 0));
    for (int i = 0; i < n; ++i) nm.orient_edge(nm.dart(n + i, 0));

    // Transport the basepoints: each lives beside a kept-curve arc of its
    // face (never a crossed arc), which survives inside a new kept edge.
    auto transport = [&](FaceId old_face) -> FaceId {
        const int len = static_cast<int>(kcycle.size());
        for (Dart bd : m.face_darts(old_face)) {
            EdgeId e = CurveComplex::edge_of(bd);
            if (m.edata(e).curve != kept || vindex.count(e)) continue;
            int pos = -1;
            for (int t = 0; t < len; ++t)
                if (kcycle[t] == e) pos = t;
            if (pos < 0) throw InternalContradiction("kept arc missing from cycle");
            // Walk back to the nearest crossed arc: e lies on new edge j.
            for (int back = 0; back < len; ++back) {
                EdgeId prev = kcycle[((pos - back) % len + len) % len];
                if (vindex.count(prev)) {
                    int j = kpos[vindex.at(prev)];
                    Dart fwd = nm.dart(j, 0);
                    Dart use = m.is_forward(bd) ? fwd : CurveComplex::twin(fwd);
                    return nm.face_left(use);
                }
            }
        }
        throw InternalContradiction("basepoint face has no surviving kept arc");
    };
    nd.z_face = transport(d.z_face);
    nd.w_face = transport(d.w_face);

    ReplaceResult out;
    out.simple = true;
    for (FaceId f = 0; f < nm.face_count(); ++f)
        if (nm.face_degree(f) == 2) out.simple = false;

    if (!out.simple) {
        // Canonical orientation: the z bigon clockwise, w anticlockwise. The
        // traversal direction of the chords is a gauge; flip the new curve
        // and/or both so the convention holds.
        auto bigon_state = [&]() -> int {  // 0 cw, 1 acw, -1 incoherent
            bool all_fwd = true, all_rev = true;
            for (Dart bd : nm.face_darts(nd.z_face)) {
                if (nm.is_forward(bd)) all_rev = false;
                else all_fwd = false;
            }
            if (all_rev) return 0;
            if (all_fwd) return 1;
            return -1;
        };
        if (nm.face_degree(nd.z_face) != 2 || nm.face_degree(nd.w_face) != 2)
            throw InternalContradiction("basepoint not in a bigon after replacement");
        if (bigon_state() == -1)
            for (int i = 0; i < n; ++i) nm.flip_edge(n + i);
        int st = bigon_state();
        if (st == -1) throw InternalContradiction("z bigon cannot be made coherent");
        if (st == 1)
            for (EdgeId e = 0; e < nm.edge_count(); ++e) nm.flip_edge(e);
        for (Dart bd : nm.face_darts(nd.w_face))
            if (!nm.is_forward(bd))
                throw InternalContradiction("w bigon not anticlockwise after replacement");
    }

    for (EdgeId e = 0; e < nd.map.edge_count(); ++e) {
        if (nd.map.edata(e).curve == CurveId::Beta)
            nd.map.edata(e).kind =
                arc_class(nd, e) == ArcClass::Parallel ? ArcKind::Vertical : ArcKind::Rainbow;
        else
            nd.map.edata(e).kind = ArcKind::Other;
    }
    out.diagram = nd;
    return out;
}

Hierarchy reduction_hierarchy(const TorusDiagram& d) {
    if (!validate(d).ok()) throw InvalidTuple("hierarchy needs a valid reduced diagram");
    if (is_simple(d)) throw SimpleDiagram("hierarchy needs a non-simple diagram");

    Hierarchy h;
    h.stages.push_back(d);
    int guard = d.crossings();
    while (!is_primitive(h.stages.back())) {
        const TorusDiagram& cur = h.stages.back();
        // Prefer replacing beta by its carrying curve; fall back to alpha
        // when that result is simple. One of the two is non-simple.
        ReplaceResult res = replace_with_carrying(cur, carrying_curve(cur, CurveId::Beta));
        CurveId role = CurveId::Beta;
        if (res.simple) {
            res = replace_with_carrying(cur, carrying_curve(cur, CurveId::Alpha));
            role = CurveId::Alpha;
        }
        if (res.simple) throw InternalContradiction("both carrying replacements are simple");
        if (!validate(res.diagram).ok())
            throw InternalContradiction("carrying replacement produced an invalid diagram");
        if (res.diagram.crossings() >= cur.crossings())
            throw InternalContradiction("carrying replacement did not reduce crossings");
        HierarchyStep step;
        step.before = tuple_of(cur);
        step.replaced = role;
        step.after = tuple_of(res.diagram);
        h.steps.push_back(step);
        h.stages.push_back(res.diagram);
        if (static_cast<int>(h.steps.size()) > guard)
            throw InternalContradiction("hierarchy exceeded the crossing bound");
    }
    return h;
}

std::string hierarchy_to_json(const Hierarchy& h) {
    nlohmann::ordered_json j;
    j["schema"] = "oneone-hierarchy/1";
    auto steps = nlohmann::ordered_json::array();
    for (const auto& st : h.steps) {
        nlohmann::ordered_json js;
        js["before"] = st.before.to_string();
        js["replaced"] = st.replaced == CurveId::Beta ? "beta" : "alpha";
        js["after"] = st.after.to_string();
        steps.push_back(js);
    }
    j["steps"] = steps;
    j["terminal"] = tuple_of(h.terminal()).to_string();
    return j.dump(2);
}

}  // namespace oneone

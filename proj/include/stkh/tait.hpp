#pragma once

#include "stkh/diagram.hpp"
#include "stkh/signed_graph.hpp"

namespace stkh {

// Vertex-side corners of a crossing: the two corner faces that become Tait
// vertices when the crossing's edge has the given sign.  A positive edge is
// one whose A-smoothing joins the shaded regions.
inline std::array<int, 2> shaded_corner_slots(int sign) {
    return sign > 0 ? std::array<int, 2>{1, 3} : std::array<int, 2>{0, 2};
}

// Sign of crossing c as a Tait edge under coloring col: +1 when corners 1
// and 3 are shaded.
inline int tait_sign(const Diagram& d, const Coloring& col, int c) {
    bool s13 = col.is_shaded(d.face_of_corner(4 * c + 1));
    bool s02 = col.is_shaded(d.face_of_corner(4 * c + 0));
    if (s13 == s02) throw diagram_error("coloring does not checkerboard");
    return s13 ? 1 : -1;
}

// Tait graph: one vertex per shaded face, one edge per crossing in crossing
// order, sign per the smoothing convention above; rotation induced by the
// embedding.  End 0 of edge c sits at the shaded corner 3 (positive) or 2
// (negative) of crossing c.
inline SignedPlanarGraph tait_graph(const Diagram& d, const Coloring& col) {
    int n = d.crossing_count();
    // Map shaded faces to vertex ids in face order.
    std::vector<int> vertex_of_face(d.face_count(), -1);
    int nv = 0;
    for (int f = 0; f < d.face_count(); ++f)
        if (col.is_shaded(f)) vertex_of_face[f] = nv++;
    if (n == 0) return SignedPlanarGraph(1, {}, {{}});

    std::vector<SignedPlanarGraph::Edge> edges(n);
    std::vector<int> end_corner(2 * n);  // (edge,end) -> diagram corner
    for (int c = 0; c < n; ++c) {
        int s = tait_sign(d, col, c);
        auto slots = shaded_corner_slots(s);
        // end 0 at the higher slot (3 resp. 2), end 1 at the lower.
        int c0 = 4 * c + slots[1], c1 = 4 * c + slots[0];
        edges[c] = {vertex_of_face[d.face_of_corner(c0)], vertex_of_face[d.face_of_corner(c1)], s};
        end_corner[2 * c + 0] = c0;
        end_corner[2 * c + 1] = c1;
    }
    std::vector<int> corner_rot_pos(4 * n, -1);
    std::vector<std::vector<EdgeEnd>> rotation(nv);
    for (int f = 0; f < d.face_count(); ++f) {
        if (!col.is_shaded(f)) continue;
        int v = vertex_of_face[f];
        for (int corner : d.face_corners(f)) {
            int c = corner / 4, slot = corner % 4;
            int sign = tait_sign(d, col, c);
            auto slots = shaded_corner_slots(sign);
            int end = (slot == slots[1]) ? 0 : 1;
            corner_rot_pos[corner] = static_cast<int>(rotation[v].size());
            rotation[v].push_back({c, end});
        }
    }
    SignedPlanarGraph g(nv, std::move(edges), std::move(rotation));
    // Carry the diagram's unbounded face over when it is unshaded: the gap
    // after the rotation entry built from corner (c, s-1) faces the
    // diagram face at corner (c, s).
    int F = d.outer_face();
    if (!col.is_shaded(F)) {
        int corner = d.face_corners(F).front();
        int c = corner / 4, slot = corner % 4;
        int prev = 4 * c + (slot + 3) % 4;
        if (!col.is_shaded(d.face_of_corner(prev)))
            throw diagram_error("internal: expected shaded corner");
        int v = vertex_of_face[d.face_of_corner(prev)];
        g.set_outer_corner(v, corner_rot_pos[prev]);
    }
    return g;
}

// The checkerboard coloring preferred by the positive-edge-majority rule:
// strictly more positive Tait edges, ties broken by leaving the unbounded
// region unshaded.
inline Coloring canonical_coloring(const Diagram& d) {
    auto [a, b] = checkerboard(d);
    int n = d.crossing_count();
    if (n == 0) return a.is_shaded(d.outer_face()) ? b : a;
    int pos_a = 0;
    for (int c = 0; c < n; ++c)
        if (tait_sign(d, a, c) > 0) ++pos_a;
    int pos_b = n - pos_a;
    if (pos_a > pos_b) return a;
    if (pos_b > pos_a) return b;
    return a.is_shaded(d.outer_face()) ? b : a;
}

// Medial construction: the unique diagram whose Tait graph for the
// vertex-face coloring is g.  Crossing k comes from edge k; arcs are the
// corners of g, numbered lexicographically by (vertex, rotation position).
inline Diagram medial(const SignedPlanarGraph& g) {
    int m = g.edge_count();
    if (m == 0) return Diagram::round_unknot();

    // Arc id for the corner after rotation position p at vertex v.
    std::vector<int> corner_arc_offset(g.vertex_count() + 1, 0);
    for (int v = 0; v < g.vertex_count(); ++v)
        corner_arc_offset[v + 1] =
            corner_arc_offset[v] + static_cast<int>(g.rotation()[v].size());
    auto corner_arc = [&](int v, int p) { return corner_arc_offset[v] + p; };

    // The corner *before* an edge end is the gap after the previous entry;
    // the corner *after* it is the gap after the entry itself.
    auto before = [&](int e, int end) {
        int v = g.endpoint(e, end);
        int deg = static_cast<int>(g.rotation()[v].size());
        int p = g.rotation_pos(e, end);
        return corner_arc(v, (p + deg - 1) % deg);
    };
    auto after = [&](int e, int end) {
        int v = g.endpoint(e, end);
        return corner_arc(v, g.rotation_pos(e, end));
    };

    std::vector<Diagram::Crossing> crossings(m);
    for (int e = 0; e < m; ++e) {
        if (g.edge(e).sign > 0) {
            crossings[e].arc = {before(e, 0), after(e, 1), before(e, 1), after(e, 0)};
        } else {
            crossings[e].arc = {after(e, 1), before(e, 1), after(e, 0), before(e, 0)};
        }
    }
    Diagram d(std::move(crossings), corner_arc_offset[g.vertex_count()], 0);
    if (g.has_outer_mark()) {
        // The marked graph corner is an arc of d; its non-vertex side is the
        // unbounded face.
        auto [v, p] = g.outer_corner();
        int arc = corner_arc(v, p);
        int dart = d.arc_ends(arc)[0];
        int c = dart / 4, slot = dart % 4;
        auto shaded = shaded_corner_slots(g.edge(c).sign);
        int corner1 = 4 * c + slot;
        int corner2 = 4 * c + (slot + 3) % 4;
        bool c1_shaded = (slot == shaded[0] || slot == shaded[1]);
        d.set_outer_face(d.face_of_corner(c1_shaded ? corner2 : corner1));
    }
    return d;
}

// The coloring of medial(g) whose shaded faces are the vertex faces of g.
inline Coloring vertex_face_coloring(const SignedPlanarGraph& g, const Diagram& med) {
    auto [a, b] = checkerboard(med);
    if (med.crossing_count() == 0) return a;  // single vertex: either face works
    int want = g.edge(0).sign > 0 ? 1 : 0;
    return a.is_shaded(med.face_of_corner(0 * 4 + want)) ? a : b;
}

}  // namespace stkh

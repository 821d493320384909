#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stkh {

struct graph_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Half-edge reference: edge index plus end (0 = first endpoint, 1 = second).
struct EdgeEnd {
    int edge;
    int end;
    friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

// A connected signed planar graph with an explicit rotation system.  Loops
// and multi-edges are permitted.  The edge order (positions 0..n-1) is part
// of the value: activity words depend on it.
class SignedPlanarGraph {
public:
    struct Edge {
        int u, v;
        int sign;  // +1 or -1
    };

    SignedPlanarGraph(int vertex_count, std::vector<Edge> edges,
                      std::vector<std::vector<EdgeEnd>> rotation)
        : vertex_count_(vertex_count), edges_(std::move(edges)), rotation_(std::move(rotation)) {
        build();
    }

    // Convenience: a rotation system is synthesized (edge ends in edge
    // order at every vertex).  Only valid when that order happens to be
    // planar; callers that need the embedding should pass one explicitly.
    SignedPlanarGraph(int vertex_count, std::vector<Edge> edges)
        : vertex_count_(vertex_count), edges_(std::move(edges)) {
        rotation_.resize(vertex_count_);
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            rotation_[edges_[e].u].push_back({e, 0});
            rotation_[edges_[e].v].push_back({e, 1});
        }
        build();
    }

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }
    int endpoint(int e, int end) const { return end == 0 ? edges_[e].u : edges_[e].v; }
    const std::vector<std::vector<EdgeEnd>>& rotation() const { return rotation_; }

    int positive_edges() const {
        int k = 0;
        for (const auto& e : edges_)
            if (e.sign > 0) ++k;
        return k;
    }

    // --- faces of the embedding ------------------------------------------
    // A corner is (vertex, rotation position): the gap after that entry.

    struct Corner {
        int vertex;
        int pos;
        friend bool operator==(const Corner&, const Corner&) = default;
    };

    int face_count() const { return face_count_; }
    int face_of_corner(int vertex, int pos) const { return face_of_corner_[corner_id(vertex, pos)]; }
    const std::vector<Corner>& face_corners(int f) const { return face_corners_[f]; }
    int outer_face() const { return outer_face_; }
    void set_outer_corner(int vertex, int pos) {
        outer_face_ = face_of_corner(vertex, pos);
        outer_corner_ = {vertex, pos};
        has_outer_mark_ = true;
    }
    bool has_outer_mark() const { return has_outer_mark_; }
    Corner outer_corner() const { return outer_corner_; }

    // Rotation position of a given edge end at its vertex.
    int rotation_pos(int e, int end) const { return rot_pos_[2 * e + end]; }

    SignedPlanarGraph with_edge_order(const std::vector<int>& perm) const {
        // New edge k is old edge perm[k].
        int n = edge_count();
        if (static_cast<int>(perm.size()) != n) throw graph_error("permutation size mismatch");
        std::vector<int> inv(n, -1);
        for (int k = 0; k < n; ++k) {
            if (perm[k] < 0 || perm[k] >= n || inv[perm[k]] != -1)
                throw graph_error("invalid edge permutation");
            inv[perm[k]] = k;
        }
        std::vector<Edge> es(n);
        for (int k = 0; k < n; ++k) es[k] = edges_[perm[k]];
        auto rot = rotation_;
        for (auto& list : rot)
            for (auto& ee : list) ee.edge = inv[ee.edge];
        SignedPlanarGraph g(vertex_count_, std::move(es), std::move(rot));
        if (has_outer_mark_) g.set_outer_corner(outer_corner_.vertex, outer_corner_.pos);
        return g;
    }

private:
    int vertex_count_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeEnd>> rotation_;
    std::vector<int> rot_pos_;          // (edge,end) -> position in rotation list
    std::vector<int> corner_offset_;    // vertex -> first corner id
    std::vector<int> face_of_corner_;
    std::vector<std::vector<Corner>> face_corners_;
    int face_count_ = 0;
    int outer_face_ = 0;
    Corner outer_corner_{0, 0};
    bool has_outer_mark_ = false;

    int corner_id(int v, int pos) const { return corner_offset_[v] + pos; }

    void build() {
        if (vertex_count_ <= 0) throw graph_error("graph needs at least one vertex");
        if (static_cast<int>(rotation_.size()) != vertex_count_)
            throw graph_error("rotation must list every vertex");
        for (const auto& e : edges_) {
            if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_)
                throw graph_error("edge endpoint out of range");
            if (e.sign != 1 && e.sign != -1) throw graph_error("edge sign must be +1 or -1");
        }
        // Rotation lists must cover each edge end exactly once.
        rot_pos_.assign(2 * edges_.size(), -1);
        for (int v = 0; v < vertex_count_; ++v) {
            for (int p = 0; p < static_cast<int>(rotation_[v].size()); ++p) {
                auto [e, end] = rotation_[v][p];
                if (e < 0 || e >= edge_count() || (end != 0 && end != 1))
                    throw graph_error("bad rotation entry");
                if (endpoint(e, end) != v) throw graph_error("rotation entry at wrong vertex");
                if (rot_pos_[2 * e + end] != -1) throw graph_error("duplicate rotation entry");
                rot_pos_[2 * e + end] = p;
            }
        }
        for (int i = 0; i < static_cast<int>(rot_pos_.size()); ++i)
            if (rot_pos_[i] < 0) throw graph_error("rotation entry missing for an edge end");

        // Connectivity.
        {
            std::vector<char> seen(vertex_count_, 0);
            std::vector<int> stack = {0};
            seen[0] = 1;
            int reached = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [e, end] : rotation_[v]) {
                    int w = endpoint(e, 1 - end);
                    if (!seen[w]) {
                        seen[w] = 1;
                        ++reached;
                        stack.push_back(w);
                    }
                }
            }
            if (reached != vertex_count_) throw graph_error("graph is disconnected");
        }

        // Faces: from corner (v,p), follow the edge at position p+1 to its
        // other end (w,q); continue at corner (w,q).
        corner_offset_.assign(vertex_count_ + 1, 0);
        for (int v = 0; v < vertex_count_; ++v)
            corner_offset_[v + 1] = corner_offset_[v] + static_cast<int>(rotation_[v].size());
        int total = corner_offset_[vertex_count_];
        face_of_corner_.assign(std::max(total, 1), -1);
        face_count_ = 0;
        if (total == 0) {
            // Single vertex, no edges: one face.
            face_count_ = 1;
            face_corners_.push_back({});
        } else {
            for (int v = 0; v < vertex_count_; ++v) {
                for (int p = 0; p < static_cast<int>(rotation_[v].size()); ++p) {
                    if (face_of_corner_[corner_id(v, p)] >= 0) continue;
                    int f = face_count_++;
                    face_corners_.emplace_back();
                    int cv = v, cp = p;
                    do {
                        face_of_corner_[corner_id(cv, cp)] = f;
                        face_corners_[f].push_back({cv, cp});
                        int deg = static_cast<int>(rotation_[cv].size());
                        auto [e, end] = rotation_[cv][(cp + 1) % deg];
                        cv = endpoint(e, 1 - end);
                        cp = rot_pos_[2 * e + (1 - end)];
                    } while (cv != v || cp != p);
                }
            }
        }
        if (vertex_count_ - edge_count() + face_count_ != 2)
            throw graph_error("rotation system is not a sphere embedding (V-E+F != 2)");
        outer_face_ = face_of_corner_[0];
        outer_corner_ = {0, 0};
    }
};

// --- text format ----------------------------------------------------------
// `V n`, then `E i u v s` lines (1-based edge index i in file order,
// 1-based endpoints, sign +1/-1), then `R v e1 e2 ...` rotation lines
// (1-based; a loop edge appears twice, first occurrence = first endpoint),
// optionally `O v k` marking the outer face as the corner after the k-th
// (1-based) rotation entry of v.  `#` starts a comment.

inline SignedPlanarGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<SignedPlanarGraph::Edge> edges;
    std::vector<std::vector<int>> rot_raw;
    std::vector<char> rot_given;
    int outer_v = -1, outer_k = -1;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "V") {
            if (!(ls >> n) || n <= 0) throw graph_error("bad V line");
            rot_raw.resize(n);
            rot_given.assign(n, 0);
        } else if (tok == "E") {
            if (n < 0) throw graph_error("E before V");
            int idx, u, v, s;
            if (!(ls >> idx >> u >> v >> s)) throw graph_error("bad E line: " + line);
            if (idx != static_cast<int>(edges.size()) + 1)
                throw graph_error("edge indices must be consecutive from 1");
            if (u < 1 || u > n || v < 1 || v > n) throw graph_error("edge endpoint out of range");
            edges.push_back({u - 1, v - 1, s});
        } else if (tok == "R") {
            int v;
            if (!(ls >> v) || v < 1 || v > n) throw graph_error("bad R line: " + line);
            if (rot_given[v - 1]) throw graph_error("duplicate R line");
            rot_given[v - 1] = 1;
            int e;
            while (ls >> e) rot_raw[v - 1].push_back(e - 1);
        } else if (tok == "O") {
            if (!(ls >> outer_v >> outer_k)) throw graph_error("bad O line: " + line);
        } else {
            throw graph_error("unknown record: " + line);
        }
    }
    if (n < 0) throw graph_error("missing V line");
    // Resolve edge ends in rotation lists.
    std::vector<std::vector<EdgeEnd>> rotation(n);
    std::vector<char> loop_seen(edges.size(), 0);
    bool any_rot = false;
    for (int v = 0; v < n; ++v)
        if (rot_given[v]) any_rot = true;
    if (any_rot) {
        for (int v = 0; v < n; ++v) {
            for (int e : rot_raw[v]) {
                if (e < 0 || e >= static_cast<int>(edges.size()))
                    throw graph_error("rotation references unknown edge");
                int end;
                if (edges[e].u == edges[e].v) {
                    end = loop_seen[e] ? 1 : 0;
                    loop_seen[e] = 1;
                } else if (edges[e].u == v) {
                    end = 0;
                } else if (edges[e].v == v) {
                    end = 1;
                } else {
                    throw graph_error("rotation entry at wrong vertex");
                }
                rotation[v].push_back({e, end});
            }
        }
    }
    SignedPlanarGraph g = any_rot ? SignedPlanarGraph(n, std::move(edges), std::move(rotation))
                                  : SignedPlanarGraph(n, std::move(edges));
    if (outer_v >= 1) {
        if (outer_v > n || outer_k < 1 ||
            outer_k > static_cast<int>(g.rotation()[outer_v - 1].size()))
            throw graph_error("bad O line position");
        g.set_outer_corner(outer_v - 1, outer_k - 1);
    }
    return g;
}

inline std::string emit_graph(const SignedPlanarGraph& g) {
    std::ostringstream os;
    os << "V " << g.vertex_count() << "\n";
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        os << "E " << e + 1 << " " << ed.u + 1 << " " << ed.v + 1 << " "
           << (ed.sign > 0 ? "+1" : "-1") << "\n";
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        os << "R " << v + 1;
        for (auto [e, end] : g.rotation()[v]) os << " " << e + 1;
        os << "\n";
    }
    if (g.has_outer_mark())
        os << "O " << g.outer_corner().vertex + 1 << " " << g.outer_corner().pos + 1 << "\n";
    return os.str();
}

}  // namespace stkh

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stkh {

struct diagram_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A-markers join slots {0,1} and {2,3} of a crossing, B-markers join
// {0,3} and {1,2}.  Slots are counterclockwise, slot 0 is the incoming
// under-strand of the PD record.
enum class Marker : uint8_t { A, B };

inline int smoothing_partner(Marker m, int slot) {
    static constexpr int a_partner[4] = {1, 0, 3, 2};
    static constexpr int b_partner[4] = {3, 2, 1, 0};
    return m == Marker::A ? a_partner[slot] : b_partner[slot];
}

// A connected link diagram as a 4-valent plane graph: one crossing record
// per crossing with the four incident arc labels in counterclockwise
// order starting from the incoming under-strand.  The rotation system
// implied by the records defines a sphere embedding.
class Diagram {
public:
    struct Crossing {
        std::array<int, 4> arc;  // arc ids (0-based) at slots 0..3
    };

    // Builds and validates.  `basepoint` is a 0-based arc id.
    Diagram(std::vector<Crossing> crossings, int arc_count, int basepoint = 0)
        : crossings_(std::move(crossings)), arc_count_(arc_count), basepoint_(basepoint) {
        build();
    }

    // The 0-crossing round unknot.
    static Diagram round_unknot() { return Diagram({}, 1, 0); }

    int crossing_count() const { return static_cast<int>(crossings_.size()); }
    int arc_count() const { return arc_count_; }
    int basepoint() const { return basepoint_; }
    const std::vector<Crossing>& crossings() const { return crossings_; }

    Diagram with_basepoint(int arc) const {
        if (arc < 0 || arc >= arc_count_) throw diagram_error("basepoint arc out of range");
        return Diagram(crossings_, arc_count_, arc);
    }

    // Reorders the crossing records by `perm`: new crossing k is old
    // crossing perm[k].  Arc labels are untouched.
    Diagram permute_crossings(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != crossing_count())
            throw diagram_error("permutation size mismatch");
        std::vector<Crossing> cs;
        cs.reserve(perm.size());
        for (int p : perm) cs.push_back(crossings_.at(p));
        return Diagram(std::move(cs), arc_count_, basepoint_);
    }

    // --- darts -----------------------------------------------------------
    // A dart is an arc end: dart id = 4*crossing + slot.

    int dart_count() const { return 4 * crossing_count(); }
    int dart_arc(int d) const { return crossings_[d / 4].arc[d % 4]; }
    // The dart at the other end of the same arc.
    int dart_mate(int d) const { return mate_[d]; }

    const std::array<int, 2>& arc_ends(int a) const { return arc_ends_[a]; }

    // --- faces -----------------------------------------------------------
    // Corner c*4+s lies between slots s and s+1 of crossing c.

    int face_count() const { return face_count_; }
    int face_of_corner(int corner) const { return face_of_corner_[corner]; }
    // Corners of face f in traversal order.
    const std::vector<int>& face_corners(int f) const { return face_corners_[f]; }
    // Deterministic "unbounded" face: the face at corner 0 of crossing 0
    // unless a parser/constructor override marked another one.
    int outer_face() const { return outer_face_; }
    void set_outer_face(int f) {
        if (f < 0 || f >= face_count_) throw diagram_error("outer face out of range");
        outer_face_ = f;
    }

    // --- orientation and components --------------------------------------

    int component_count() const { return component_count_; }
    int arc_component(int a) const { return arc_component_[a]; }
    // Oriented head end of arc a (a dart), per the deterministic
    // lowest-arc-first traversal.
    int arc_head(int a) const { return arc_head_[a]; }
    // Sign of crossing c (+1/-1) under that orientation.
    int crossing_sign(int c) const { return crossing_sign_[c]; }

    int writhe() const {
        int w = 0;
        for (int s : crossing_sign_) w += s;
        return w;
    }

    // --- smoothings -------------------------------------------------------

    // Partition of arcs into loops after smoothing every crossing by
    // `markers`.  Returns (loop id per arc, loop count); loop ids are
    // 0..count-1, numbered by lowest contained arc.
    std::pair<std::vector<int>, int> smooth_loops(const std::vector<Marker>& markers) const {
        if (static_cast<int>(markers.size()) != crossing_count())
            throw diagram_error("one marker per crossing required");
        std::vector<int> parent(arc_count_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int c = 0; c < crossing_count(); ++c)
            for (int s = 0; s < 4; ++s) {
                int t = smoothing_partner(markers[c], s);
                int ra = find(crossings_[c].arc[s]);
                int rb = find(crossings_[c].arc[t]);
                if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            }
        std::vector<int> loop(arc_count_, -1);
        int count = 0;
        for (int a = 0; a < arc_count_; ++a) {
            int r = find(a);
            if (loop[r] < 0) loop[r] = count++;
            loop[a] = loop[r];
        }
        return {loop, count};
    }

private:
    std::vector<Crossing> crossings_;
    int arc_count_;
    int basepoint_;

    std::vector<std::array<int, 2>> arc_ends_;
    std::vector<int> mate_;
    std::vector<int> face_of_corner_;
    std::vector<std::vector<int>> face_corners_;
    int face_count_ = 0;
    int outer_face_ = 0;
    std::vector<int> arc_component_;
    std::vector<int> arc_head_;
    std::vector<int> crossing_sign_;
    int component_count_ = 0;

    void build() {
        const int n = crossing_count();
        if (basepoint_ < 0 || basepoint_ >= arc_count_)
            throw diagram_error("basepoint arc out of range");
        if (n == 0) {
            if (arc_count_ != 1) throw diagram_error("0-crossing diagram must have one arc");
            face_count_ = 2;
            outer_face_ = 0;
            arc_component_ = {0};
            arc_head_ = {-1};
            component_count_ = 1;
            return;
        }

        // Arc ends.
        std::vector<std::vector<int>> ends(arc_count_);
        for (int d = 0; d < 4 * n; ++d) {
            int a = dart_arc(d);
            if (a < 0 || a >= arc_count_) throw diagram_error("arc label out of range");
            ends[a].push_back(d);
        }
        arc_ends_.resize(arc_count_);
        mate_.assign(4 * n, -1);
        for (int a = 0; a < arc_count_; ++a) {
            if (ends[a].size() != 2)
                throw diagram_error("arc label " + std::to_string(a + 1) + " used " +
                                    std::to_string(ends[a].size()) + " times (expected 2)");
            arc_ends_[a] = {ends[a][0], ends[a][1]};
            mate_[ends[a][0]] = ends[a][1];
            mate_[ends[a][1]] = ends[a][0];
        }

        // Connectivity of the 4-valent graph.
        {
            std::vector<char> seen(n, 0);
            std::vector<int> stack = {0};
            seen[0] = 1;
            int reached = 1;
            while (!stack.empty()) {
                int c = stack.back();
                stack.pop_back();
                for (int s = 0; s < 4; ++s) {
                    int c2 = mate_[4 * c + s] / 4;
                    if (!seen[c2]) {
                        seen[c2] = 1;
                        ++reached;
                        stack.push_back(c2);
                    }
                }
            }
            if (reached != n) throw diagram_error("diagram is disconnected");
        }

        // Faces: orbit of corner (c,s) -> mate of dart (c, s+1).
        face_of_corner_.assign(4 * n, -1);
        for (int start = 0; start < 4 * n; ++start) {
            if (face_of_corner_[start] >= 0) continue;
            int f = face_count_++;
            face_corners_.emplace_back();
            int cur = start;
            do {
                face_of_corner_[cur] = f;
                face_corners_[f].push_back(cur);
                int c = cur / 4, s = cur % 4;
                cur = mate_[4 * c + (s + 1) % 4];
            } while (cur != start);
        }
        // Sphere embedding check.
        if (n - 2 * n + face_count_ != 2)
            throw diagram_error("rotation system is not a sphere embedding (V-E+F != 2)");
        outer_face_ = face_of_corner_[0];

        // Components and orientation.
        arc_component_.assign(arc_count_, -1);
        arc_head_.assign(arc_count_, -1);
        component_count_ = 0;
        for (int a0 = 0; a0 < arc_count_; ++a0) {
            if (arc_component_[a0] >= 0) continue;
            int comp = component_count_++;
            // Orient arc a0 toward its lexicographically larger end.
            int head = std::max(arc_ends_[a0][0], arc_ends_[a0][1]);
            int a = a0;
            while (arc_component_[a] < 0) {
                arc_component_[a] = comp;
                arc_head_[a] = head;
                // Pass through the crossing: in at slot s, out at s+2.
                int out = 4 * (head / 4) + (head % 4 + 2) % 4;
                a = dart_arc(out);
                head = mate_[out];
            }
        }

        // Crossing signs.
        crossing_sign_.assign(n, 0);
        for (int c = 0; c < n; ++c) {
            int under_in = -1, over_in = -1;
            for (int s = 0; s < 4; ++s) {
                int a = crossings_[c].arc[s];
                bool incoming = arc_head_[a] == 4 * c + s;
                // An arc with both ends here is incoming at exactly its head slot.
                if (incoming) {
                    if (s % 2 == 0) under_in = s;
                    else over_in = s;
                }
            }
            if (under_in < 0 || over_in < 0) throw diagram_error("orientation trace failed");
            crossing_sign_[c] = ((over_in + 1) % 4 == under_in) ? 1 : -1;
        }
    }
};

// --- PD-code text format --------------------------------------------------
// One crossing per line: `X a b c d` with 1-based arc labels in
// counterclockwise order from the incoming under-strand.  `unknot` denotes
// the 0-crossing round unknot.  Lines starting with `#` are comments.

inline Diagram parse_pd(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Diagram::Crossing> crossings;
    bool unknot = false;
    std::map<int, int> relabel;  // input label -> dense 0-based id
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "unknot") {
            unknot = true;
            continue;
        }
        if (tok != "X") throw diagram_error("malformed PD record: " + line);
        Diagram::Crossing cr{};
        for (int s = 0; s < 4; ++s) {
            int label;
            if (!(ls >> label)) throw diagram_error("malformed PD record: " + line);
            auto [it, inserted] = relabel.try_emplace(label, static_cast<int>(relabel.size()));
            cr.arc[s] = it->second;
        }
        std::string extra;
        if (ls >> extra) throw diagram_error("malformed PD record: " + line);
        crossings.push_back(cr);
    }
    if (unknot) {
        if (!crossings.empty()) throw diagram_error("'unknot' mixed with crossings");
        return Diagram::round_unknot();
    }
    if (crossings.empty()) throw diagram_error("empty PD code");
    // Arc ids follow first appearance order; the basepoint default is the
    // arc labeled lowest in the input.
    int lowest_label_arc = relabel.begin()->second;
    return Diagram(std::move(crossings), static_cast<int>(relabel.size()), lowest_label_arc);
}

inline std::string emit_pd(const Diagram& d) {
    std::ostringstream os;
    if (d.crossing_count() == 0) {
        os << "unknot\n";
        return os.str();
    }
    for (const auto& cr : d.crossings()) {
        os << "X";
        for (int s = 0; s < 4; ++s) os << " " << cr.arc[s] + 1;
        os << "\n";
    }
    return os.str();
}

inline int writhe(const Diagram& d) { return d.writhe(); }

// --- checkerboard colorings ----------------------------------------------

// A 2-coloring of the face set; adjacent faces get opposite colors.
struct Coloring {
    std::vector<char> shaded;  // per face
    bool is_shaded(int f) const { return shaded[f] != 0; }
};

// The two checkerboard colorings.  The first shades face 0.
inline std::pair<Coloring, Coloring> checkerboard(const Diagram& d) {
    int nf = d.face_count();
    Coloring a;
    a.shaded.assign(nf, 0);
    if (d.crossing_count() == 0) {
        a.shaded[0] = 1;
    } else {
        // 2-color by BFS over face adjacency across arcs.
        std::vector<std::vector<int>> adj(nf);
        for (int dart = 0; dart < 4 * d.crossing_count(); ++dart) {
            int c = dart / 4, s = dart % 4;
            int f1 = d.face_of_corner(4 * c + (s + 3) % 4);
            int f2 = d.face_of_corner(4 * c + s);
            adj[f1].push_back(f2);
            adj[f2].push_back(f1);
        }
        std::vector<int> color(nf, -1);
        std::vector<int> queue = {0};
        color[0] = 1;
        while (!queue.empty()) {
            int f = queue.back();
            queue.pop_back();
            for (int g : adj[f]) {
                if (color[g] < 0) {
                    color[g] = 1 - color[f];
                    queue.push_back(g);
                } else if (color[g] == color[f]) {
                    throw diagram_error("faces are not 2-colorable");
                }
            }
        }
        for (int f = 0; f < nf; ++f) a.shaded[f] = static_cast<char>(color[f] == 1);
    }
    Coloring b;
    b.shaded.resize(nf);
    for (int f = 0; f < nf; ++f) b.shaded[f] = static_cast<char>(!a.shaded[f]);
    return {a, b};
}

}  // namespace stkh

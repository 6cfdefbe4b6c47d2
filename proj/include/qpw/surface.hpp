#pragma once

#include "qpw/qp.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace qpw {

struct MarkedSurface {
    int genus = 0;
    /// Marked points on each boundary component.
    std::vector<int> marks;
    int punctures = 0;

    int boundary_components() const { return static_cast<int>(marks.size()); }
    int boundary_marks() const;
    bool operator==(const MarkedSurface& o) const = default;
};

/// n = 6g + 3b + 3p + c - 6.
int rank(const MarkedSurface& ms);
/// ExcludedSurface for the unpunctured monogon, digon and triangle, the
/// once-punctured monogon and digon, and spheres with fewer than 4 punctures.
void validate_surface(const MarkedSurface& ms);

/// Combinatorial ideal triangulation. Arc k (0-based) is vertex k+1 of the
/// adjacency quiver. Each triangle lists its sides in clockwise order; names
/// not listed among the arcs are boundary segments. A triangle repeating a
/// side is self-folded, the repeated side being the folded one.
struct Triangulation {
    MarkedSurface surface;
    std::vector<std::string> arcs;
    std::vector<std::array<std::string, 3>> triangles;
};

struct Puncture {
    int valency = 0;
    /// Corners (triangle, k) around the puncture in walking order; corner k
    /// sits between sides k and k+1.
    std::vector<std::pair<int, int>> corners;
};

/// Data derived from the side pairing.
struct TriangulationInfo {
    /// side[t][k] = arc index, or -1 for a boundary segment.
    std::vector<std::array<int, 3>> side;
    std::vector<bool> self_folded;
    /// pi[a] = a except for folded sides, which map to their enclosing loop.
    std::vector<int> pi;
    /// enclosed[a] = folded side inside loop a, or -1.
    std::vector<int> enclosed;
    std::vector<bool> is_loop;
    MarkedSurface computed;
    std::vector<Puncture> punctures;
    /// Puncture index of the folded side's inner end, for folded sides.
    std::map<int, int> inner_puncture;
};

/// InvalidTriangulation when the side pairing, Euler characteristic, rank
/// or declared surface do not match.
TriangulationInfo analyze(const Triangulation& tau);

BMatrix adjacency_matrix(const Triangulation& tau);
Quiver adjacency_quiver(const Triangulation& tau);
/// The new arc keeps the flipped arc's name and position. UnflippableFoldedSide
/// for folded sides of self-folded triangles.
Triangulation flip(const Triangulation& tau, const std::string& arc);
bool is_folded_side(const Triangulation& tau, const std::string& arc);

/// Potential S(tau, x) with x indexed like analyze().punctures. The
/// unreduced quiver has one arrow per triangle corner (with loops around
/// self-folded triangles doubled by their folded sides); 2-cycles from
/// punctures of valency 2 are removed by reduce.
QP triangulation_potential(const Triangulation& tau, const std::vector<Scalar>& x);
QP triangulation_potential(const Triangulation& tau);

enum class BlockType { I, II, IIIa, IIIb, IV, V };
std::string block_name(BlockType t);
BlockType parse_block(const std::string& s);

/// A block with global labels for its local vertices. Local order:
/// I (w1 -> w2); II (3-cycle w1 -> w2 -> w3); IIIa (w, b1, b2 with b -> w);
/// IIIb (w, b1, b2 with w -> b); IV (w1, w2, b1, b2 with w1 -> b -> w2 -> w1);
/// V (w, then blacks l, k, k', l' as in the five-vertex block).
struct Block {
    BlockType type = BlockType::I;
    std::vector<int> vertices;
};

/// Glueing encoded by shared labels: white vertices with equal labels are
/// identified, which defines the involution g.
struct GlueSpec {
    std::vector<Block> blocks;
    int vertex_count() const;
};

bool is_white(BlockType t, int local);
/// GlueInvalid unless g is an involution on white vertices pairing distinct blocks.
Quiver block_glue(const GlueSpec& spec);
/// Block decomposition read off the triangles; labels are arc positions + 1.
GlueSpec glue_from_triangulation(const Triangulation& tau);

struct GluePredicates {
    bool gentle = false;
    bool skewed_gentle = false;
    std::string violated;
    std::string detail;
};
GluePredicates triangulation_predicates(const GlueSpec& spec);

struct FGMaps {
    Quiver quiver;
    std::vector<int> f;
    std::vector<int> g;
    int f_orbits = 0;
    int g_orbits = 0;
};
/// HypothesesUnmet unless the boundary is empty, no arc is a loop, every
/// puncture has valency at least four and Q(tau) has no double arrows.
FGMaps fg_maps(const Triangulation& tau);
/// The puncture cycles (g-orbits) and triangle cycles (f-orbits) as paths.
std::vector<Path> g_orbit_cycles(const FGMaps& m);

struct CycleType {
    std::string kind;  ///< "I", "II", "III" or "S" (appears in the potential)
    int n = 1;
    std::string word;  ///< f/g letters for positions 1..r
};
CycleType cycle_type(const FGMaps& m, const Path& c);

struct PresetParams {
    int g = 2;
    int n = 6;
    int c1 = 2;
    int c2 = 1;
    int t = 3;
};
std::vector<std::string> preset_names();
Triangulation preset(const std::string& name, const PresetParams& params = {});

} // namespace qpw

#pragma once

#include <map>
#include <string>
#include <vector>

namespace qpw {

struct Arrow {
    std::string id;
    int s = 0;
    int t = 0;
    bool operator==(const Arrow& o) const { return id == o.id && s == o.s && t == o.t; }
};

using BMatrix = std::vector<std::vector<int>>;

/// Directed multigraph on vertices 1..n. Arrows are kept sorted by id, so an
/// arrow's index doubles as its rank in id order.
class Quiver {
public:
    Quiver() = default;
    Quiver(int n, std::vector<Arrow> arrows);

    int n() const { return n_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int i) const { return arrows_[i]; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    /// Index of the arrow with this id, or -1.
    int find(const std::string& id) const;
    int index_of(const std::string& id) const;

    /// counts[i][j] = number of arrows i -> j, 0-based.
    std::vector<std::vector<int>> counts() const;
    bool two_acyclic() const;
    bool operator==(const Quiver& o) const { return n_ == o.n_ && arrows_ == o.arrows_; }

private:
    int n_ = 0;
    std::vector<Arrow> arrows_;
};

BMatrix to_b_matrix(const Quiver& q);
Quiver from_b_matrix(const BMatrix& b);
/// Fomin-Zelevinsky matrix mutation, k is 1-based.
BMatrix mutate_matrix(const BMatrix& b, int k);

Quiver mutate(const Quiver& q, int k);

struct MultiplicityProfile {
    int max_parallel = 0;
    bool has_double = false;
    bool has_loop = false;
    bool has_2cycle = false;
};
MultiplicityProfile multiplicity_profile(const Quiver& q);

struct CanonicalKey {
    std::string key;
    /// witness[v-1] = canonical position (1-based) of vertex v.
    std::vector<int> witness;
};
CanonicalKey canonical_key(const Quiver& q);
/// Canonical key computed straight from an arrow-count matrix.
std::string canonical_key_counts(const std::vector<std::vector<int>>& a, std::vector<int>* order = nullptr);

struct Restriction {
    Quiver quiver;
    /// vertex_map[new-1] = old vertex.
    std::vector<int> vertex_map;
};
Restriction restrict_quiver(const Quiver& q, const std::vector<int>& vertices);

/// Relabel vertices: vertex v becomes perm[v-1].
Quiver permute_quiver(const Quiver& q, const std::vector<int>& perm);

bool is_connected(const Quiver& q);
std::vector<std::vector<int>> components(const Quiver& q);

} // namespace qpw

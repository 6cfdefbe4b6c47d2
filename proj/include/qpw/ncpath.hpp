#pragma once

#include "qpw/quiver.hpp"
#include "qpw/scalar.hpp"

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace qpw {

constexpr int kDefaultTrust = 16;
constexpr int kInfinity = std::numeric_limits<int>::max();

/// A path alpha_1 ... alpha_m, written in printed order and composed right to
/// left, so alpha_m is traversed first. A trivial path e_i has no arrows and
/// records its vertex in idem.
struct Path {
    std::vector<int> arrows;
    int idem = 0;

    int length() const { return static_cast<int>(arrows.size()); }
    bool trivial() const { return arrows.empty(); }

    static Path trivial_at(int v) { return Path{{}, v}; }
    static Path of(std::vector<int> arrows) { return Path{std::move(arrows), 0}; }

    bool operator<(const Path& o) const {
        if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
        if (arrows != o.arrows) return arrows < o.arrows;
        return idem < o.idem;
    }
    bool operator==(const Path& o) const { return arrows == o.arrows && idem == o.idem; }
};

int source(const Quiver& q, const Path& p);
int target(const Quiver& q, const Path& p);
bool is_cycle(const Quiver& q, const Path& p);
/// The concatenation p.q; requires s(p) = t(q).
Path compose(const Quiver& q, const Path& p, const Path& r);
/// Minimal rotation of a cycle by arrow order; equal outputs iff rotation equivalent.
Path cycle_rotation_class(const Quiver& q, const Path& c);
Path path_from_ids(const Quiver& q, const std::vector<std::string>& ids);
std::vector<std::string> path_ids(const Quiver& q, const Path& p);
std::string path_str(const Quiver& q, const Path& p);
/// All paths of the given length from vertex `from` to vertex `to`, in
/// increasing path order.
std::vector<Path> paths_between(const Quiver& q, int from, int to, int length);
/// All paths of the given length (trivial paths for length 0).
std::vector<Path> paths_of_length(const Quiver& q, int length);

/// Formal sum of paths with exact coefficients, truncated at degree trust.
struct NCElement {
    std::map<Path, Scalar> terms;
    int trust = kDefaultTrust;
    bool exact = true;

    bool is_zero() const { return terms.empty(); }
    void add(const Path& p, const Scalar& c);
    /// Minimal path length present, kInfinity for zero.
    int short_degree() const;
    /// Maximal path length present, -1 for zero.
    int long_degree() const;
    /// Homogeneous component of the given degree.
    NCElement degree_part(int d) const;
    NCElement min_part() const { return degree_part(short_degree()); }
    /// Drop terms of length > n, lowering trust and clearing exact on loss.
    void truncate(int n);

    static NCElement single(const Path& p, const Scalar& c = Scalar(1), int trust = kDefaultTrust);
};

NCElement operator+(const NCElement& x, const NCElement& y);
NCElement operator-(const NCElement& x, const NCElement& y);
NCElement operator*(const Scalar& c, const NCElement& x);
NCElement multiply(const Quiver& q, const NCElement& x, const NCElement& y);

bool is_potential(const Quiver& q, const NCElement& x);
NCElement cyclic_derivative(const Quiver& q, const NCElement& s, int arrow);
NCElement second_cyclic_derivative(const Quiver& q, const NCElement& w, int b, int a);
/// Replace every cycle by its rotation class representative.
NCElement cyclic_normalize(const Quiver& q, const NCElement& x);
bool rotationally_disjoint(const Quiver& q, const NCElement& s1, const NCElement& s2);

/// Algebra endomorphism given by arrow images; each image must be parallel to
/// its arrow.
struct Substitution {
    std::vector<NCElement> images;

    static Substitution identity(const Quiver& q, int trust = kDefaultTrust);
    void set(int arrow, NCElement image) { images[arrow] = std::move(image); }
};

NCElement apply_substitution(const Quiver& q, const Substitution& phi, const NCElement& x);
/// phi after psi: arrow -> phi(psi(arrow)).
Substitution compose_substitutions(const Quiver& q, const Substitution& phi, const Substitution& psi);
bool is_unitriangular(const Quiver& q, const Substitution& phi);
/// kInfinity for the identity.
int depth(const Quiver& q, const Substitution& phi);
NCElement deformation_family(const NCElement& s, const Scalar& lambda);

} // namespace qpw

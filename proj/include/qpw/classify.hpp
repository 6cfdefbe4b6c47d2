#pragma once

#include "qpw/quiver.hpp"

#include <string>
#include <vector>

namespace qpw {

constexpr int kDefaultClassCap = 50000;

struct MutationClassReport {
    bool finite = false;
    /// Canonical keys and exchange matrices of the class, in BFS order.
    std::vector<std::string> keys;
    std::vector<BMatrix> representatives;
    /// For an infinite class: 1-based mutation sequence from the input to a
    /// quiver with at least three parallel arrows (empty if the input has one).
    std::vector<int> witness;
    int cap = kDefaultClassCap;
    int size() const { return static_cast<int>(keys.size()); }
    bool contains(const std::string& key) const;
};

/// Breadth-first search over canonical keys. CapExceeded once more than cap
/// keys are reached.
MutationClassReport mutation_class(const Quiver& q, int cap = kDefaultClassCap);

struct FiniteTypeReport {
    bool finite = false;
    int class_size = 0;
    std::vector<int> witness;
};
FiniteTypeReport is_finite_mutation_type(const Quiver& q, int cap = kDefaultClassCap);

struct Classification {
    /// "representation-finite", "Jacobi-tame", "Jacobi-wild" or "Jacobi-irregular".
    std::string verdict;
    /// Dynkin, surface-or-E-type, X6, X7, K_m, T1, T2 or infinite-type.
    std::string reason;
    int class_size = -1;
    std::vector<int> witness;
    bool has_witness = false;
    /// Set for disconnected input, where the verdict is the worst component.
    bool per_component = false;
    std::vector<Classification> components;
};

Classification classify(const Quiver& q, int cap = kDefaultClassCap);

} // namespace qpw

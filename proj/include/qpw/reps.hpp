#pragma once

#include "qpw/linalg.hpp"
#include "qpw/qp.hpp"

#include <map>
#include <string>
#include <vector>

namespace qpw {

/// Representation of a quiver: dims[v-1] = dim M(v), mats[id] is the
/// dims[t-1] x dims[s-1] matrix of the arrow with that id.
struct Representation {
    std::vector<int> dims;
    std::map<std::string, Matrix> mats;
};

/// ShapeMismatch unless every arrow has a matrix of the right shape.
void validate_rep(const Quiver& q, const Representation& m);
Representation zero_rep(const Quiver& q);
Representation simple_rep(const Quiver& q, int k);

Matrix evaluate_path(const Quiver& q, const Representation& m, const Path& p);
/// Sum over the terms of x, one block per (source, target) pair.
std::map<std::pair<int, int>, Matrix> evaluate(const Quiver& q, const Representation& m, const NCElement& x);
/// The block of x from vertex s to vertex t (zero when x has no such terms).
Matrix evaluate_block(const Quiver& q, const Representation& m, const NCElement& x, int s, int t);

/// Smallest L such that every path of length L acts as zero, or -1.
int nilpotency_index(const Quiver& q, const Representation& m);

struct RelationReport {
    bool ok = true;
    /// Arrows whose cyclic derivative does not act as zero.
    std::vector<std::string> failing;
};
RelationReport check_relations(const QP& qp, const Representation& m);

struct RepMutation {
    QP premutated;
    Representation rep;
};
/// Representation of premutate(qp, k). RelationCheckFailed when the input
/// is not a representation of P(qp) or the output misses the new relations.
RepMutation rep_mutate(const QP& qp, const Representation& m, int k);

/// The representation M of (T2, W) on which a2 b2 c2 acts nonzero.
Representation t2_witness();

} // namespace qpw

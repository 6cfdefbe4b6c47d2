#pragma once

#include "qpw/qp.hpp"
#include "qpw/surface.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qpw {

struct RelationSpan;

/// The truncation C<<Q>>/(I(S) + m^p), described by a basis of paths of
/// length < p together with the reduction data needed for normal forms.
struct TruncatedAlgebra {
    int p = 0;
    int dimension = 0;
    std::vector<Path> basis;
    /// basis_by_degree[d] = number of basis paths of length d, d < p.
    std::vector<int> basis_by_degree;
    /// dims[q] = dim of the q-truncation for 1 <= q <= p; dims[0] = 0.
    std::vector<int> dims;
    /// Smallest degree d >= 1 with no basis paths, or -1. When present the
    /// algebra is finite-dimensional of dimension dims[d].
    int stable_degree = -1;
    bool stabilized() const { return stable_degree >= 0; }

    Quiver quiver;
    std::shared_ptr<const RelationSpan> span;
};

/// Elimination runs over all paths of length < p at once, columns ordered by
/// (length, arrow ids), so the pivot of each relation is its lowest term.
TruncatedAlgebra truncated_dimension(const QP& qp, int p);
NCElement normal_form(const NCElement& x, const TruncatedAlgebra& alg);
/// Every cycle at vertex i of length d..p-1 vanishes in the p-truncation.
bool corner_test(const QP& qp, int vertex, int d, int p);

/// Quiver with length-2 monomial relations and special loops L (relations
/// eps^2 - eps for eps in L).
struct SpecialPresentation {
    Quiver quiver;
    std::vector<Path> relations;
    std::vector<int> special_loops;
};

struct SpecialVerdict {
    std::string kind;      ///< "gentle", "skewed-gentle" or "neither"
    std::string violated;  ///< first failing clause, empty on success
    std::string detail;
};

SpecialVerdict recognize_special(const SpecialPresentation& pres);

struct SminReport {
    NCElement smin;
    GluePredicates predicates;
    /// Black pairs of IIIa, IIIb and IV blocks folded into one vertex each,
    /// carrying a special loop.
    SpecialPresentation presentation;
    SpecialVerdict verdict;
};

/// BlockConditionsUnmet unless the glue data satisfies (gl3)-(gl5) and
/// reproduces the quiver of qp.
SminReport smin_gentle_pipeline(const QP& qp, const GlueSpec& spec);

} // namespace qpw

#pragma once

#include "qpw/ncpath.hpp"
#include "qpw/quiver.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qpw {

struct QP {
    Quiver quiver;
    NCElement potential;
    std::vector<std::string> log;
};

/// Validates that every term of s is a cycle of q.
QP make_qp(Quiver q, NCElement s);

QP premutate(const QP& qp, int k);

struct PairingBlock {
    int i = 0, j = 0;
    std::vector<std::string> rows;  ///< arrows i -> j
    std::vector<std::string> cols;  ///< arrows j -> i
    std::vector<std::vector<Scalar>> matrix;
    int rank = 0;
    /// Product of the elimination pivots; the determinant up to sign when square and regular.
    Scalar pivot_product{1};
    std::vector<Scalar> pivots;
};

struct ReductionResult {
    QP reduced;
    std::vector<std::pair<std::string, std::string>> trivial_pairs;
    /// Composite right equivalence on the input quiver.
    Substitution equivalence;
    bool two_acyclic = true;
    std::vector<PairingBlock> pairings;
};

ReductionResult reduce(const QP& qp);
/// reduce(premutate(qp, k)); SingularPairing when the result keeps a 2-cycle.
ReductionResult qp_mutate(const QP& qp, int k);
QP restrict_qp(const QP& qp, const std::vector<int>& vertices);

struct Locus {
    Rational t;
    std::vector<int> witness;
    /// Generic pairing matrix of the 2-cycle block that degenerates there.
    std::vector<std::vector<Scalar>> pairing;
};

struct NondegReport {
    bool degenerate = false;
    int depth_searched = 0;
    std::vector<int> witness;
    int trust_at_leaves = 0;
    long nodes = 0;
    bool symbolic = false;
    /// Parameter values where a mutation sequence provably meets a singular pairing.
    std::vector<Locus> loci;
    /// Parameter values where a coefficient of the input potential vanishes
    /// or has a pole; these leave the family and are not probed.
    std::vector<Rational> excluded;
    std::string summary;
};

NondegReport nondeg_probe(const QP& qp, int depth);

/// Specialize t to a rational value; nullopt when a coefficient has a pole there.
std::optional<QP> specialize(const QP& qp, const Rational& t);

struct IdealTerm {
    Path left;
    int arrow = -1;
    Path right;
    Scalar coeff;
};

struct IdealCombination {
    std::vector<IdealTerm> terms;
    /// Per arrow: short(u_eta) + short(d_eta S).
    std::map<int, int> degree_certificate;
    /// Per arrow: u_eta for the cyclic form sum u_eta d_eta(S).
    std::map<int, NCElement> u;
};

/// Leading-order membership of c in the Jacobian ideal, modulo cyclic
/// equivalence when c is a cycle. nullopt means no combination at length(c).
std::optional<IdealCombination> express_in_jacobian_ideal(const Quiver& q, const Path& c, const NCElement& s,
                                                          int degree_bound);

/// All rotation classes of cycles of the given length.
std::vector<Path> cycle_classes(const Quiver& q, int length, long cap = 200000);

struct NormalizeResult {
    bool success = false;
    Substitution composite;
    NCElement residual;
    std::vector<int> residual_shorts;
    int rounds = 0;
};

NormalizeResult normalize_toward(const Quiver& q, const NCElement& s, const NCElement& w, int max_iter);

struct CertificateLength {
    int length = 0;
    int cycles = 0;
    int passed = 0;
    std::vector<Path> failures;
};

struct UniquenessCertificate {
    bool finite = false;
    bool passed = false;
    int long_s = 0;
    int bound = 0;
    std::vector<CertificateLength> lengths;
    std::string statement;
};

UniquenessCertificate uniqueness_certificate(const Quiver& q, const NCElement& s, int d, long cap = 200000);

struct RigidityReport {
    int bound = 0;
    int classes_checked = 0;
    std::vector<Path> not_representable;
};

RigidityReport rigidity_probe(const QP& qp, int d, long cap = 200000);

struct CycleAppearance {
    std::vector<Path> forced;
    std::vector<Path> missing;
};

CycleAppearance cycle_appearance_check(const QP& qp);

struct FamilyMatch {
    Rational t;
    std::vector<Rational> scaling;
};

/// Diagonal arrow rescaling carrying `from` onto `family` at some rational t;
/// family coefficients must be monomials c*t^e.
std::optional<FamilyMatch> match_family(const Quiver& q, const NCElement& from, const NCElement& family);
Substitution diagonal_substitution(const Quiver& q, const std::vector<Rational>& scaling, int trust);

struct WeakEquivalence {
    bool equivalent = false;
    Scalar scale{1};
    Substitution substitution;
    std::string note;
};

/// Opposite QP: every arrow reversed, every cycle read backwards.
QP opposite(const QP& qp);

/// Vertex map (result[v-1] = image of v) of a quiver isomorphism carrying the
/// potential of a onto that of b up to cyclic equivalence, optionally after a
/// diagonal rescaling of arrows. Parallel arrows are matched in every order.
std::optional<std::vector<int>> qp_isomorphism(const QP& a, const QP& b, bool allow_rescaling = false);

/// Semi-decision: searches phi with phi(scale * s1) cyclically equal to s2.
WeakEquivalence weak_equiv_probe(const Quiver& q, const NCElement& s1, const NCElement& s2);

} // namespace qpw

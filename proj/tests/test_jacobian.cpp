#include "qpw/catalog.hpp"
#include "qpw/errors.hpp"
#include "qpw/jacobian.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace qpw;

namespace {

QP entry(const std::string& name) {
    CatalogEntry e = catalog(name);
    return make_qp(e.quiver, e.potentials.begin()->second);
}

std::vector<int> dims_up_to(const QP& qp, int p) {
    TruncatedAlgebra alg = truncated_dimension(qp, p);
    return {alg.dims.begin() + 1, alg.dims.end()};
}

// Paths of length < p avoiding the given forbidden length-2 words; this is
// the dimension of a truncated monomial algebra, counted by brute force.
int monomial_dim(const Quiver& q, const std::set<std::pair<int, int>>& forbidden, int p) {
    int total = q.n();
    std::vector<std::vector<int>> layer;
    for (int a = 0; a < q.arrow_count(); ++a) layer.push_back({a});
    for (int len = 1; len < p; ++len) {
        total += static_cast<int>(layer.size());
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int a = 0; a < q.arrow_count(); ++a)
                if (q.arrow(a).s == q.arrow(w.back()).t && !forbidden.count({w.back(), a})) {
                    next.push_back(w);
                    next.back().push_back(a);
                }
        layer = std::move(next);
    }
    return total;
}

} // namespace

// Frozen values produced by a separate exact-arithmetic elimination script
// that enumerates paths and relation multiples on its own.
TEST(TruncatedDimension, T1TameKeepsGrowing) {
    QP qp = make_qp(catalog("T1").quiver, catalog("T1.S_tame").potentials.at("S_tame"));
    EXPECT_EQ(dims_up_to(qp, 10), (std::vector<int>{3, 9, 15, 21, 27, 33, 39, 45, 51, 57}));
    EXPECT_FALSE(truncated_dimension(qp, 10).stabilized());
}

TEST(TruncatedDimension, T1TameMatchesMonomialCount) {
    QP qp = make_qp(catalog("T1").quiver, catalog("T1.S_tame").potentials.at("S_tame"));
    const Quiver& q = qp.quiver;
    // traversal pairs (first, second) killed by the derivatives of c1 b1 a1 + c2 b2 a2
    std::set<std::pair<int, int>> forbidden;
    for (std::string i : {"1", "2"}) {
        int a = q.index_of("a" + i), b = q.index_of("b" + i), c = q.index_of("c" + i);
        forbidden.insert({a, b});
        forbidden.insert({b, c});
        forbidden.insert({c, a});
    }
    TruncatedAlgebra alg = truncated_dimension(qp, 10);
    for (int p = 1; p <= 10; ++p) EXPECT_EQ(alg.dims[p], monomial_dim(q, forbidden, p)) << "p=" << p;
}

TEST(TruncatedDimension, T2WStabilizes) {
    TruncatedAlgebra alg = truncated_dimension(make_qp(catalog("T2").quiver, catalog("T2").potentials.at("W")), 10);
    EXPECT_EQ(std::vector<int>(alg.dims.begin() + 1, alg.dims.end()),
              (std::vector<int>{4, 11, 18, 25, 29, 31, 32, 32, 32, 32}));
    ASSERT_TRUE(alg.stabilized());
    EXPECT_EQ(alg.stable_degree, 7);
    EXPECT_EQ(alg.dimension, 32);
}

TEST(TruncatedDimension, T2SStabilizes) {
    TruncatedAlgebra alg = truncated_dimension(make_qp(catalog("T2").quiver, catalog("T2").potentials.at("S")), 10);
    EXPECT_EQ(std::vector<int>(alg.dims.begin() + 1, alg.dims.end()),
              (std::vector<int>{4, 11, 17, 22, 26, 29, 31, 32, 32, 32}));
    EXPECT_EQ(alg.stable_degree, 8);
}

TEST(TruncatedDimension, DeformedT1) {
    QP qp = make_qp(catalog("T1").quiver, catalog("T1").potentials.at("S_deform"));
    EXPECT_EQ(dims_up_to(qp, 10), (std::vector<int>{3, 9, 15, 21, 27, 33, 36, 36, 36, 36}));
}

TEST(TruncatedDimension, HIsTheFullQuotient) {
    TruncatedAlgebra alg = truncated_dimension(entry("H"), 10);
    EXPECT_TRUE(alg.stabilized());
    EXPECT_EQ(alg.dimension, 10);
}

TEST(TruncatedDimension, ZeroPotentialOnA2) {
    QP qp = make_qp(Quiver(2, {{"a", 1, 2}}), NCElement{});
    EXPECT_EQ(truncated_dimension(qp, 1).dimension, 2);
    for (int p = 2; p <= 6; ++p) EXPECT_EQ(truncated_dimension(qp, p).dimension, 3);
}

TEST(TruncatedDimension, NonzeroDeformationsAgree) {
    CatalogEntry t1 = catalog("T1");
    const NCElement& s = t1.potentials.at("S_deform");
    int reference = truncated_dimension(make_qp(t1.quiver, s), 8).dimension;
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(1, 12), den(1, 5), sign(0, 1);
    for (int i = 0; i < 10; ++i) {
        Rational lambda(num(rng) * (sign(rng) ? 1 : -1), den(rng));
        lambda.canonicalize();
        QP qp = make_qp(t1.quiver, deformation_family(s, Scalar(lambda)));
        EXPECT_EQ(truncated_dimension(qp, 8).dimension, reference) << lambda.get_str();
    }
    QP at_zero = make_qp(t1.quiver, deformation_family(s, Scalar(0)));
    EXPECT_EQ(truncated_dimension(at_zero, 8).dimension, 45);
    EXPECT_EQ(reference, 36);
}

TEST(TruncatedDimension, TrustTooLow) {
    QP qp = entry("T2");
    qp.potential.exact = false;
    qp.potential.trust = 4;
    EXPECT_NO_THROW(truncated_dimension(qp, 5));
    try {
        truncated_dimension(qp, 6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "TrustExceeded");
    }
}

TEST(NormalForm, DerivativesVanish) {
    QP qp = make_qp(catalog("T2").quiver, catalog("T2").potentials.at("W"));
    TruncatedAlgebra alg = truncated_dimension(qp, 7);
    for (int a = 0; a < qp.quiver.arrow_count(); ++a)
        EXPECT_TRUE(normal_form(cyclic_derivative(qp.quiver, qp.potential, a), alg).is_zero());
}

TEST(NormalForm, BasisPathsAreFixed) {
    QP qp = make_qp(catalog("T2").quiver, catalog("T2").potentials.at("W"));
    TruncatedAlgebra alg = truncated_dimension(qp, 7);
    for (const Path& b : alg.basis) {
        NCElement nf = normal_form(NCElement::single(b), alg);
        ASSERT_EQ(nf.terms.size(), 1u);
        EXPECT_EQ(nf.terms.begin()->first, b);
        EXPECT_TRUE(nf.terms.begin()->second.is_one());
    }
}

TEST(NormalForm, LinearAndIdempotent) {
    QP qp = make_qp(catalog("T1").quiver, catalog("T1").potentials.at("S_deform"));
    TruncatedAlgebra alg = truncated_dimension(qp, 7);
    std::mt19937 rng(5);
    std::vector<Path> all;
    for (int len = 0; len < 7; ++len)
        for (const Path& p : paths_of_length(qp.quiver, len)) all.push_back(p);
    auto random_element = [&] {
        NCElement x;
        for (int i = 0; i < 6; ++i) x.add(all[rng() % all.size()], Scalar(Rational(static_cast<int>(rng() % 7) - 3)));
        return x;
    };
    for (int trial = 0; trial < 20; ++trial) {
        NCElement x = random_element(), y = random_element();
        NCElement nx = normal_form(x, alg);
        EXPECT_EQ(normal_form(nx, alg).terms, nx.terms);
        NCElement lhs = normal_form(x + Scalar(3) * y, alg);
        NCElement rhs = nx + Scalar(3) * normal_form(y, alg);
        EXPECT_EQ(lhs.terms, rhs.terms);
    }
}

TEST(NormalForm, LengthFivePathsVanishOnQ2) {
    QP qp = sphere4_family(2, 1, Scalar(Rational(2)));
    TruncatedAlgebra alg = truncated_dimension(qp, 6);
    for (const Path& p : paths_of_length(qp.quiver, 5))
        EXPECT_TRUE(normal_form(NCElement::single(p), alg).is_zero()) << path_str(qp.quiver, p);
}

TEST(CornerTest, SeparatesSFromW) {
    // cubic cycles at 2; the length-4 cycle a1 b2 d c1 avoids every relation of S
    CatalogEntry t2 = catalog("T2");
    EXPECT_TRUE(corner_test(make_qp(t2.quiver, t2.potentials.at("S")), 2, 3, 4));
    EXPECT_FALSE(corner_test(make_qp(t2.quiver, t2.potentials.at("W")), 2, 3, 4));
    EXPECT_FALSE(corner_test(make_qp(t2.quiver, t2.potentials.at("S")), 2, 3, 5));
}

TEST(CornerTest, AcyclicIsVacuous) {
    QP qp = make_qp(Quiver(3, {{"a", 1, 2}, {"b", 2, 3}}), NCElement{});
    EXPECT_TRUE(corner_test(qp, 2, 1, 6));
}

TEST(RecognizeSpecial, T1TameIsGentle) {
    QP qp = make_qp(catalog("T1").quiver, catalog("T1").potentials.at("S_tame"));
    SpecialPresentation pres{qp.quiver, {}, {}};
    for (int a = 0; a < qp.quiver.arrow_count(); ++a)
        for (const auto& [p, c] : cyclic_derivative(qp.quiver, qp.potential, a).terms) pres.relations.push_back(p);
    SpecialVerdict v = recognize_special(pres);
    EXPECT_EQ(v.kind, "gentle");
    EXPECT_EQ(v.violated, "");
}

TEST(RecognizeSpecial, LinearQuiverWithEndLoops) {
    Quiver q(5, {{"alpha", 4, 5}, {"beta", 3, 4}, {"delta", 1, 2}, {"eps1", 1, 1}, {"eps5", 5, 5}, {"gamma", 2, 3}});
    SpecialPresentation pres{q, {}, {q.index_of("eps1"), q.index_of("eps5")}};
    EXPECT_EQ(recognize_special(pres).kind, "skewed-gentle");
}

TEST(RecognizeSpecial, KroneckerThreeBreaksFirstCondition) {
    SpecialVerdict v = recognize_special({kronecker_quiver(3), {}, {}});
    EXPECT_EQ(v.kind, "neither");
    EXPECT_EQ(v.violated, "g1");
}

TEST(RecognizeSpecial, BranchingNeedsExactlyOneRelation) {
    Quiver q(4, {{"a", 1, 2}, {"b", 2, 3}, {"c", 2, 4}});
    SpecialVerdict v = recognize_special({q, {}, {}});
    EXPECT_EQ(v.violated, "g3");
    Path ba = Path::of({q.index_of("b"), q.index_of("a")});
    EXPECT_EQ(recognize_special({q, {ba}, {}}).kind, "gentle");
}

TEST(RecognizeSpecial, LongRelationBreaksSecondCondition) {
    Quiver q(4, {{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 4}});
    Path abc = Path::of({q.index_of("a"), q.index_of("b"), q.index_of("c")});
    EXPECT_EQ(recognize_special({q, {abc}, {}}).violated, "g2");
}

TEST(SminPipeline, GentleGenusThreeSurface) {
    PresetParams params;
    params.g = 3;
    Triangulation tau = preset("4g-gon", params);
    SminReport r = smin_gentle_pipeline(triangulation_potential(tau), glue_from_triangulation(tau));
    EXPECT_TRUE(r.predicates.gentle);
    EXPECT_EQ(r.verdict.kind, "gentle");
}

TEST(SminPipeline, PuncturedDigonIsSkewedGentle) {
    Triangulation tau = preset("digon-skewed");
    SminReport r = smin_gentle_pipeline(triangulation_potential(tau), glue_from_triangulation(tau));
    EXPECT_FALSE(r.predicates.gentle);
    EXPECT_EQ(r.verdict.kind, "skewed-gentle");
    EXPECT_EQ(r.presentation.special_loops.size(), 4u);
}

TEST(SminPipeline, BlockFourFoldsLikeTheClannishExample) {
    // H with S = a1 b1 c + a2 b2 c is a single block of type IV
    QP h = entry("H");
    GlueSpec spec{{{BlockType::IV, {1, 4, 2, 3}}}};
    SminReport r = smin_gentle_pipeline(h, spec);
    EXPECT_EQ(r.verdict.kind, "skewed-gentle");
    EXPECT_EQ(r.presentation.quiver.n(), 3);
    EXPECT_EQ(r.presentation.relations.size(), 3u);
}

TEST(SminPipeline, StrayThreeCycleIsRejected) {
    // three type I blocks glued into a 3-cycle that no block contains
    GlueSpec spec{{{BlockType::I, {1, 2}}, {BlockType::I, {2, 3}}, {BlockType::I, {3, 1}}}};
    Quiver q = block_glue(spec);
    try {
        smin_gentle_pipeline(make_qp(q, NCElement{}), spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "BlockConditionsUnmet");
    }
}

#include "qpw/catalog.hpp"
#include "qpw/classify.hpp"
#include "qpw/errors.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace qpw;

namespace {

Quiver doubled_path() { return Quiver(3, {{"a1", 1, 2}, {"a2", 1, 2}, {"b", 2, 3}}); }

Quiver triangle_with_double() { return Quiver(3, {{"a", 1, 2}, {"b", 2, 3}, {"c1", 3, 1}, {"c2", 3, 1}}); }

int max_entry(const BMatrix& b) {
    int m = 0;
    for (const auto& row : b)
        for (int x : row) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST(MutationClass, SingletonClasses) {
    for (const std::string& name : {"T1", "T2", "K3", "K4"}) {
        MutationClassReport r = mutation_class(catalog(name).quiver);
        EXPECT_TRUE(r.finite) << name;
        EXPECT_EQ(r.size(), 1) << name;
    }
}

// Class sizes frozen from a separate brute-force enumeration (permutation
// canonical forms over exchange matrices).
TEST(MutationClass, FrozenSizes) {
    std::vector<std::pair<Quiver, int>> cases{
        {dynkin_quiver('A', 3), 4},    {dynkin_quiver('A', 5), 19},     {dynkin_quiver('D', 4), 6},
        {dynkin_quiver('D', 6), 80},   {dynkin_quiver('E', 6), 67},     {dynkin_quiver('E', 7), 416},
        {catalog("E").quiver, 10},     {catalog("E6_11").quiver, 49},   {catalog("E7_11").quiver, 506},
        {catalog("X6").quiver, 5},     {catalog("X7").quiver, 2},       {catalog("Q1").quiver, 4},
        {triangle_with_double(), 2},
    };
    for (const auto& [q, size] : cases) {
        MutationClassReport r = mutation_class(q);
        EXPECT_TRUE(r.finite);
        EXPECT_EQ(r.size(), size) << canonical_key(q).key;
    }
}

TEST(MutationClass, ClassIsClosedUnderMutation) {
    for (const Quiver& q : {catalog("E").quiver, dynkin_quiver('D', 5), catalog("X6").quiver}) {
        MutationClassReport r = mutation_class(q);
        std::set<std::string> keys(r.keys.begin(), r.keys.end());
        EXPECT_EQ(keys.size(), r.keys.size());
        for (const BMatrix& b : r.representatives)
            for (int k = 1; k <= q.n(); ++k)
                EXPECT_TRUE(keys.count(canonical_key(from_b_matrix(mutate_matrix(b, k))).key));
    }
}

TEST(MutationClass, InfiniteWitnessReplays) {
    Quiver q = doubled_path();
    MutationClassReport r = mutation_class(q);
    EXPECT_FALSE(r.finite);
    ASSERT_FALSE(r.witness.empty());
    BMatrix b = to_b_matrix(q);
    for (int k : r.witness) b = mutate_matrix(b, k);
    EXPECT_GE(max_entry(b), 3);
}

TEST(MutationClass, TriangleWithDoubleArrowIsAffineA) {
    MutationClassReport r = mutation_class(triangle_with_double());
    ASSERT_TRUE(r.finite);
    EXPECT_TRUE(r.contains(canonical_key(affine_quiver('A', 2)).key));
}

TEST(MutationClass, CapExceeded) {
    try {
        mutation_class(catalog("E8_11").quiver, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "CapExceeded");
    }
}

TEST(MutationClass, E8ElevenFitsUnderDefaultCap) {
    MutationClassReport r = mutation_class(catalog("E8_11").quiver);
    EXPECT_TRUE(r.finite);
    EXPECT_EQ(r.size(), 5739);
}

TEST(FiniteType, Examples) {
    EXPECT_TRUE(is_finite_mutation_type(catalog("X6").quiver).finite);
    EXPECT_TRUE(is_finite_mutation_type(dynkin_quiver('A', 3)).finite);
    Quiver k3_pendant(3, {{"a1", 1, 2}, {"a2", 1, 2}, {"a3", 1, 2}, {"b", 2, 3}});
    FiniteTypeReport r = is_finite_mutation_type(k3_pendant);
    EXPECT_FALSE(r.finite);
    EXPECT_TRUE(r.witness.empty());
    EXPECT_FALSE(is_finite_mutation_type(doubled_path()).finite);
}

TEST(Classify, TheoremTable) {
    struct Case {
        std::string name, verdict, reason;
    };
    std::vector<Case> cases{
        {"T1", "Jacobi-irregular", "T1"}, {"T2", "Jacobi-irregular", "T2"}, {"X6", "Jacobi-wild", "X6"},
        {"X7", "Jacobi-wild", "X7"},      {"K3", "Jacobi-wild", "K_m"},     {"K4", "Jacobi-wild", "K_m"},
        {"E", "Jacobi-tame", "surface-or-E-type"},  {"E6_11", "Jacobi-tame", "surface-or-E-type"},
        {"Q1", "Jacobi-tame", "surface-or-E-type"}, {"H", "representation-finite", "Dynkin"},
    };
    for (const Case& c : cases) {
        Classification r = classify(catalog(c.name).quiver);
        EXPECT_EQ(r.verdict, c.verdict) << c.name;
        EXPECT_EQ(r.reason, c.reason) << c.name;
    }
}

TEST(Classify, SmallQuivers) {
    EXPECT_EQ(classify(dynkin_quiver('A', 1)).verdict, "representation-finite");
    EXPECT_EQ(classify(dynkin_quiver('A', 2)).verdict, "representation-finite");
    EXPECT_EQ(classify(kronecker_quiver(2)).verdict, "Jacobi-tame");
    EXPECT_EQ(classify(dynkin_quiver('E', 8)).verdict, "representation-finite");
    EXPECT_EQ(classify(affine_quiver('D', 5)).verdict, "Jacobi-tame");
    Classification w = classify(doubled_path());
    EXPECT_EQ(w.verdict, "Jacobi-wild");
    EXPECT_EQ(w.reason, "infinite-type");
    EXPECT_TRUE(w.has_witness);
}

TEST(Classify, InvariantUnderMutation) {
    std::vector<Quiver> qs{catalog("T1").quiver, catalog("T2").quiver, catalog("X6").quiver, catalog("X7").quiver,
                           catalog("E").quiver,  catalog("Q2").quiver, catalog("H").quiver,  doubled_path()};
    std::mt19937 rng(99);
    for (const Quiver& q0 : qs) {
        Classification base = classify(q0);
        Quiver q = q0;
        for (int step = 0; step < 6; ++step) {
            int k = std::uniform_int_distribution<int>(1, q.n())(rng);
            q = mutate(q, k);
            Classification c = classify(q);
            EXPECT_EQ(c.verdict, base.verdict);
            EXPECT_EQ(c.reason, base.reason);
            EXPECT_EQ(c.class_size, base.class_size);
        }
    }
}

TEST(Classify, DisconnectedTakesWorstComponent) {
    Quiver q(5, {{"a1", 1, 2}, {"a2", 1, 2}, {"b1", 2, 3}, {"b2", 2, 3}, {"c1", 3, 1}, {"c2", 3, 1}, {"p", 4, 5}});
    Classification c = classify(q);
    EXPECT_TRUE(c.per_component);
    EXPECT_EQ(c.verdict, "Jacobi-irregular");
    ASSERT_EQ(c.components.size(), 2u);
    EXPECT_EQ(c.components[1].verdict, "representation-finite");

    Quiver w(5, {{"a1", 1, 2}, {"a2", 1, 2}, {"b", 2, 3}, {"p", 4, 5}});
    Classification cw = classify(w);
    EXPECT_EQ(cw.verdict, "Jacobi-wild");
    ASSERT_FALSE(cw.witness.empty());
}

TEST(Classify, RejectsTwoCycles) {
    Quiver q(2, {{"a", 1, 2}, {"b", 2, 1}});
    EXPECT_THROW(classify(q), Error);
}

TEST(Catalog, ParameterOrbit) {
    auto orbit = parameter_orbit(Scalar(2));
    std::set<std::string> got;
    for (const Scalar& s : orbit) got.insert(s.str());
    EXPECT_EQ(got, (std::set<std::string>{"2", "1/2", "-1"}));
    Scalar t(Rational(3, 7));
    auto o = parameter_orbit(t);
    EXPECT_EQ(o.size(), 6u);
    for (const Scalar& s : o) {
        EXPECT_NE(std::find(o.begin(), o.end(), Scalar(1) / s), o.end());
        EXPECT_NE(std::find(o.begin(), o.end(), Scalar(1) - s), o.end());
    }
}

TEST(Catalog, Sphere4InverseParameterOnly) {
    for (int i = 1; i <= 4; ++i) {
        QP a = sphere4_family(i, 1, Scalar(2));
        EXPECT_TRUE(qp_isomorphism(a, sphere4_family(i, 1, Scalar(Rational(1, 2))), true).has_value()) << i;
        for (Rational s : {Rational(-1), Rational(3), Rational(1, 3)})
            EXPECT_FALSE(qp_isomorphism(a, sphere4_family(i, 1, Scalar(s)), true).has_value()) << i;
    }
}

TEST(Catalog, Sphere4MutationClosure) {
    std::mt19937 rng(41);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    int tested = 0;
    while (tested < 5) {
        Rational t(num(rng), den(rng));
        t.canonicalize();
        if (t == 0 || t == 1) continue;
        ++tested;
        auto orbit = parameter_orbit(Scalar(t));
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 6; ++j) {
                QP m = qp_mutate(sphere4_family(i, 1, Scalar(t)), j).reduced;
                bool found = false;
                for (int i2 = 1; i2 <= 4 && !found; ++i2)
                    for (const Scalar& s : orbit)
                        if (qp_isomorphism(m, sphere4_family(i2, 1, s), true)) {
                            found = true;
                            break;
                        }
                EXPECT_TRUE(found) << "t=" << t.get_str() << " i=" << i << " j=" << j;
            }
    }
}

TEST(Catalog, DegenerateParameter) {
    EXPECT_THROW(sphere4_family(2, 1, Scalar(1)), Error);
    EXPECT_THROW(sphere4_family(3, 1, Scalar(0)), Error);
    EXPECT_NO_THROW(sphere4_family(3, 1, Scalar(1), true));
}

TEST(Catalog, T2DerivativesOfW) {
    CatalogEntry e = catalog("T2");
    const Quiver& q = e.quiver;
    const NCElement& w = e.potentials.at("W");
    std::map<std::string, std::vector<std::pair<Scalar, std::string>>> expect{
        {"a1", {{1, "b1 c1"}, {1, "b2 c2"}}},   {"a2", {{1, "b2 d c1"}}},
        {"b1", {{1, "c1 a1"}}},                 {"b2", {{1, "c2 a1"}, {1, "d c1 a2"}}},
        {"c1", {{1, "a1 b1"}, {1, "a2 b2 d"}}}, {"c2", {{1, "a1 b2"}}},
        {"d", {{1, "c1 a2 b2"}}},
    };
    for (const auto& [id, terms] : expect)
        EXPECT_EQ(cyclic_derivative(q, w, q.index_of(id)).terms, build_element(q, terms).terms) << id;
}

TEST(Catalog, T1WildHasThreeTriangles) {
    CatalogEntry e = catalog("T1.S_wild");
    const NCElement& s = e.potentials.at("S_wild");
    EXPECT_EQ(s.terms.size(), 3u);
    for (const auto& [p, c] : s.terms) EXPECT_EQ(p.arrows.size(), 3u);
}

TEST(Catalog, UnknownEntry) {
    try {
        catalog("Z9");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "UnknownEntry");
    }
}

#include "qpw/catalog.hpp"
#include "qpw/errors.hpp"
#include "qpw/surface.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace qpw;

namespace {

std::string error_name(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.name();
    }
    return "";
}

std::string key(const Quiver& q) { return canonical_key(q).key; }

PresetParams genus(int g) {
    PresetParams p;
    p.g = g;
    return p;
}

} // namespace

TEST(Rank, Formula) {
    EXPECT_EQ(rank({1, {}, 1}), 3);
    EXPECT_EQ(rank({0, {}, 4}), 6);
    EXPECT_EQ(rank({0, {2, 1}, 0}), 3);
    EXPECT_EQ(rank({3, {}, 1}), 15);
}

TEST(Rank, ExcludedSurfaces) {
    EXPECT_EQ(error_name([] { validate_surface({0, {3}, 0}); }), "ExcludedSurface");
    EXPECT_EQ(error_name([] { validate_surface({0, {2}, 1}); }), "ExcludedSurface");
    EXPECT_EQ(error_name([] { validate_surface({0, {}, 3}); }), "ExcludedSurface");
    EXPECT_EQ(error_name([] { validate_surface({0, {4}, 0}); }), "");
    EXPECT_EQ(error_name([] { validate_surface({0, {}, 4}); }), "");
}

TEST(Presets, PrintedQuivers) {
    EXPECT_EQ(key(adjacency_quiver(preset("torus-closed-1p"))), key(catalog("T1").quiver));
    EXPECT_EQ(key(adjacency_quiver(preset("torus-boundary-1m"))), key(catalog("T2").quiver));
    EXPECT_EQ(key(adjacency_quiver(preset("sphere-4p-tetrahedron"))), key(catalog("Q1").quiver));
}

TEST(Presets, SurfacesAndRanks) {
    for (const std::string& name : preset_names()) {
        Triangulation tau = preset(name);
        TriangulationInfo info = analyze(tau);
        EXPECT_EQ(static_cast<int>(tau.arcs.size()), rank(tau.surface)) << name;
        EXPECT_EQ(static_cast<int>(info.punctures.size()), tau.surface.punctures) << name;
        BMatrix b = adjacency_matrix(tau);
        for (const auto& row : b)
            for (int x : row) EXPECT_LE(std::abs(x), 2) << name;
    }
    Triangulation g3 = preset("4g-gon", genus(3));
    EXPECT_EQ(g3.arcs.size(), 15u);
    EXPECT_EQ(analyze(g3).computed.genus, 3);
    EXPECT_EQ(error_name([] { preset("klein-bottle"); }), "UnknownPreset");
}

TEST(Presets, BlockDecomposable) {
    for (const std::string& name : preset_names()) {
        Triangulation tau = preset(name);
        EXPECT_EQ(block_glue(glue_from_triangulation(tau)).counts(), adjacency_quiver(tau).counts()) << name;
    }
}

TEST(Analyze, RejectsBrokenPairings) {
    Triangulation t = preset("torus-closed-1p");
    t.triangles[1][2] = "x";
    EXPECT_EQ(error_name([&] { analyze(t); }), "InvalidTriangulation");
    Triangulation wrong = preset("torus-closed-1p");
    wrong.surface = {0, {}, 4};
    EXPECT_EQ(error_name([&] { analyze(wrong); }), "InvalidTriangulation");
}

TEST(Analyze, ValencyCountsLoopsTwice) {
    TriangulationInfo info = analyze(preset("torus-closed-1p"));
    ASSERT_EQ(info.punctures.size(), 1u);
    EXPECT_EQ(info.punctures[0].valency, 6);
    for (bool loop : info.is_loop) EXPECT_TRUE(loop);
}

TEST(Flip, MatchesMatrixMutationOnRandomWalks) {
    std::mt19937 rng(2024);
    for (const std::string& name : preset_names()) {
        Triangulation tau = preset(name);
        int n = static_cast<int>(tau.arcs.size());
        int flips = 0;
        for (int step = 0; step < 100; ++step) {
            int k = static_cast<int>(rng() % n);
            if (is_folded_side(tau, tau.arcs[k])) continue;
            BMatrix before = adjacency_matrix(tau);
            Triangulation next = flip(tau, tau.arcs[k]);
            ASSERT_EQ(adjacency_matrix(next), mutate_matrix(before, k + 1)) << name << " step " << step;
            EXPECT_EQ(key(adjacency_quiver(next)), key(mutate(adjacency_quiver(tau), k + 1)));
            EXPECT_EQ(static_cast<int>(next.arcs.size()), rank(analyze(next).computed));
            tau = std::move(next);
            ++flips;
        }
        EXPECT_GT(flips, 50) << name;
    }
}

TEST(Flip, TwiceRestoresTheQuiver) {
    Triangulation tau = preset("4g-gon");
    for (const std::string& arc : tau.arcs) {
        Triangulation back = flip(flip(tau, arc), arc);
        EXPECT_EQ(adjacency_matrix(back), adjacency_matrix(tau)) << arc;
    }
}

TEST(Flip, FoldedSideIsRefused) {
    Triangulation tau = preset("digon-skewed");
    EXPECT_TRUE(is_folded_side(tau, "c0"));
    EXPECT_EQ(error_name([&] { flip(tau, "c0"); }), "UnflippableFoldedSide");
    EXPECT_EQ(error_name([&] { flip(tau, "nope"); }), "UnknownArc");
}

TEST(TriangulationPotential, OncePuncturedTorus) {
    QP qp = triangulation_potential(preset("torus-closed-1p"));
    std::vector<int> lengths;
    for (const auto& [p, c] : qp.potential.terms) {
        lengths.push_back(p.length());
        EXPECT_TRUE(c.is_one());
    }
    std::sort(lengths.begin(), lengths.end());
    EXPECT_EQ(lengths, (std::vector<int>{3, 3, 6}));
    QP minimal = make_qp(qp.quiver, qp.potential.min_part());
    QP tame = make_qp(catalog("T1").quiver, catalog("T1").potentials.at("S_tame"));
    EXPECT_TRUE(qp_isomorphism(minimal, tame, true).has_value());
}

TEST(TriangulationPotential, TetrahedronGivesTheSphereFamily) {
    Triangulation tau = preset("sphere-4p-tetrahedron");
    for (int x : {2, 3, -1}) {
        QP qp = triangulation_potential(tau, {Scalar(Rational(x)), Scalar(1), Scalar(1), Scalar(1)});
        EXPECT_EQ(qp.potential.terms.size(), 8u);
        EXPECT_TRUE(qp_isomorphism(qp, sphere4_family(1, 1, Scalar(Rational(x)), true), true).has_value()) << x;
    }
    // all scalars 1 is the degenerate member t = 1
    EXPECT_TRUE(qp_isomorphism(triangulation_potential(tau), sphere4_family(1, 1, Scalar(1), true), true).has_value());
}

TEST(TriangulationPotential, FivePuncturedSphereShape) {
    Triangulation tau = preset("sphere-5p");
    std::vector<Scalar> x{Scalar(Rational(2)), Scalar(Rational(3)), Scalar(Rational(5)), Scalar(Rational(7)),
                          Scalar(Rational(11))};
    TriangulationInfo info = analyze(tau);
    QP qp = triangulation_potential(tau, x);
    EXPECT_EQ(qp.quiver.n(), 9);
    EXPECT_EQ(qp.quiver.arrow_count(), 12);
    int quartic = 0, sextic = 0;
    for (const auto& [p, c] : qp.potential.terms) {
        if (p.length() == 4) {
            ++quartic;
            bool matches = false;
            for (size_t i = 0; i < x.size(); ++i)
                if (info.punctures[i].valency == 2 && c == Scalar(-1) / x[i]) matches = true;
            EXPECT_TRUE(matches) << c.str();
        } else if (p.length() == 6) {
            ++sextic;
            bool matches = false;
            for (size_t i = 0; i < x.size(); ++i)
                if (info.punctures[i].valency == 6 && c == x[i]) matches = true;
            EXPECT_TRUE(matches) << c.str();
        } else {
            ADD_FAILURE() << "unexpected term of length " << p.length();
        }
    }
    EXPECT_EQ(quartic, 3);
    EXPECT_EQ(sextic, 2);
}

TEST(TriangulationPotential, UnpuncturedSurfacesUseInteriorTriangles) {
    for (const std::string& name : {"ngon-fan", "annulus"}) {
        Triangulation tau = preset(name);
        TriangulationInfo info = analyze(tau);
        int interior = 0;
        for (const auto& s : info.side)
            if (s[0] >= 0 && s[1] >= 0 && s[2] >= 0) ++interior;
        QP qp = triangulation_potential(tau);
        EXPECT_EQ(static_cast<int>(qp.potential.terms.size()), interior) << name;
        for (const auto& [p, c] : qp.potential.terms) EXPECT_EQ(p.length(), 3);
    }
    PresetParams six;
    six.n = 6;
    EXPECT_EQ(key(adjacency_quiver(preset("ngon-fan", six))), key(dynkin_quiver('A', 3)));
}

TEST(TriangulationPotential, SelfFoldedTriangles) {
    QP qp = triangulation_potential(preset("triangle-3p-skewed"));
    // two interior triangles, each with a 3-cycle through the loop and one through the folded side
    std::vector<std::string> coefficients;
    for (const auto& [p, c] : qp.potential.terms) {
        EXPECT_EQ(p.length(), 3);
        coefficients.push_back(c.str());
    }
    std::sort(coefficients.begin(), coefficients.end());
    EXPECT_EQ(coefficients, (std::vector<std::string>{"-1", "-1", "1", "1"}));
}

TEST(Glue, TwoTypeOneBlocks) {
    Quiver q = block_glue({{{BlockType::I, {1, 2}}, {BlockType::I, {2, 3}}}});
    EXPECT_EQ(key(q), key(dynkin_quiver('A', 3)));
}

TEST(Glue, DoubledTriangleIsT1) {
    Quiver q = block_glue({{{BlockType::II, {1, 2, 3}}, {BlockType::II, {1, 2, 3}}}});
    EXPECT_EQ(key(q), key(catalog("T1").quiver));
}

TEST(Glue, RejectsBadIdentifications) {
    EXPECT_EQ(error_name([] { block_glue({{{BlockType::IIIa, {1, 2, 3}}, {BlockType::I, {2, 4}}}}); }), "GlueInvalid");
    EXPECT_EQ(error_name([] {
                  block_glue({{{BlockType::I, {1, 2}}, {BlockType::I, {1, 3}}, {BlockType::I, {1, 4}}}});
              }),
              "GlueInvalid");
    EXPECT_EQ(error_name([] { block_glue({{{BlockType::II, {1, 1, 2}}}}); }), "GlueInvalid");
    EXPECT_EQ(error_name([] { block_glue({{{BlockType::IV, {1, 2, 3}}}}); }), "GlueInvalid");
}

TEST(Predicates, GentleAndSkewedGentle) {
    GluePredicates g3 = triangulation_predicates(glue_from_triangulation(preset("4g-gon", genus(3))));
    EXPECT_TRUE(g3.gentle);
    GluePredicates digon = triangulation_predicates(glue_from_triangulation(preset("digon-skewed")));
    EXPECT_TRUE(digon.skewed_gentle);
    EXPECT_FALSE(digon.gentle);
    EXPECT_EQ(digon.violated, "gl6");
    GluePredicates torus = triangulation_predicates(glue_from_triangulation(preset("torus-closed-1p")));
    EXPECT_FALSE(torus.skewed_gentle);
    EXPECT_EQ(torus.violated, "gl3");
}

TEST(Predicates, TypeFiveBlock) {
    GluePredicates p = triangulation_predicates({{{BlockType::V, {1, 2, 3, 4, 5}}}});
    EXPECT_FALSE(p.skewed_gentle);
    EXPECT_EQ(p.violated, "gl5");
}

TEST(FGMaps, ThreePuncturedTorus) {
    Triangulation tau = preset("torus-3p");
    FGMaps m = fg_maps(tau);
    EXPECT_EQ(m.f_orbits, static_cast<int>(tau.triangles.size()));
    EXPECT_EQ(m.g_orbits, 3);
    for (int a = 0; a < m.quiver.arrow_count(); ++a) {
        EXPECT_EQ(m.f[m.f[m.f[a]]], a);
        EXPECT_NE(m.f[a], m.g[a]);
        EXPECT_EQ(m.quiver.arrow(m.f[a]).s, m.quiver.arrow(a).t);
        EXPECT_EQ(m.quiver.arrow(m.g[a]).s, m.quiver.arrow(a).t);
    }
    size_t total = 0;
    for (const Path& c : g_orbit_cycles(m)) {
        total += c.arrows.size();
        EXPECT_EQ(cycle_type(m, c).kind, "S");
    }
    EXPECT_EQ(total, static_cast<size_t>(m.quiver.arrow_count()));
}

TEST(FGMaps, Hypotheses) {
    EXPECT_EQ(error_name([] { fg_maps(preset("sphere-4p-tetrahedron")); }), "HypothesesUnmet");
    EXPECT_EQ(error_name([] { fg_maps(preset("annulus")); }), "HypothesesUnmet");
    EXPECT_EQ(error_name([] { fg_maps(preset("torus-closed-1p")); }), "HypothesesUnmet");
}

TEST(CycleType, Classes) {
    FGMaps m = fg_maps(preset("torus-3p"));
    auto repeat = [](const Path& c, int n) {
        std::vector<int> arrows;
        for (int i = 0; i < n; ++i) arrows.insert(arrows.end(), c.arrows.begin(), c.arrows.end());
        return Path::of(arrows);
    };
    Path triangle = Path::of({m.f[m.f[0]], m.f[0], 0});
    EXPECT_EQ(cycle_type(m, triangle).kind, "S");
    CycleType twice = cycle_type(m, repeat(triangle, 2));
    EXPECT_EQ(twice.kind, "I");
    EXPECT_EQ(twice.n, 2);
    Path puncture = g_orbit_cycles(m).front();
    CycleType p2 = cycle_type(m, repeat(puncture, 2));
    EXPECT_EQ(p2.kind, "II");
    EXPECT_EQ(p2.n, 2);

    // shortest closed walk from arrow 0 that starts with an f step and uses g at least once
    std::vector<int> traversal;
    std::function<bool(int, bool)> walk = [&](int cur, bool used_g) {
        if (traversal.size() > 9) return false;
        for (int step = 0; step < 2; ++step) {
            int next = step == 0 ? m.f[cur] : m.g[cur];
            bool g_now = used_g || step == 1;
            if (next == traversal.front() && g_now) return true;
            traversal.push_back(next);
            if (walk(next, g_now)) return true;
            traversal.pop_back();
        }
        return false;
    };
    traversal = {0, m.f[0]};
    ASSERT_TRUE(walk(m.f[0], false));
    Path mixed = Path::of({traversal.rbegin(), traversal.rend()});
    CycleType t = cycle_type(m, mixed);
    EXPECT_EQ(t.kind, "III");
    EXPECT_NE(t.word.find('f'), std::string::npos);
    EXPECT_NE(t.word.find('g'), std::string::npos);

    EXPECT_EQ(error_name([&] { cycle_type(m, Path::of({0})); }), "NotACycle");
}

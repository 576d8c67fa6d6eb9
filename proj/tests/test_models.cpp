#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "spectralgof/models.hpp"
#include "spectralgof/spectral.hpp"

using namespace spectralgof;

namespace {

ModelSpec spec(Family f, std::size_t n, std::map<std::string, double> params = {}) {
    ModelSpec s;
    s.family = f;
    s.n = n;
    s.params = std::move(params);
    return s;
}

std::vector<double> sorted_weights(const Graph& g) {
    std::vector<double> w;
    for (const Edge& e : g.edges()) w.push_back(e.w);
    std::sort(w.begin(), w.end());
    return w;
}

} // namespace

TEST(Generate, StarIsHubAndSpoke) {
    const Graph g = generate(spec(Family::star, 100), 1);
    EXPECT_EQ(g.edge_count(), 99u);
    for (std::size_t i = 1; i < 100; ++i) EXPECT_TRUE(g.has_edge(0, i));
}

TEST(Generate, GnmWithAllPairsIsComplete) {
    const Graph g = generate(spec(Family::gnm, 10, {{"m", 45}}), 7);
    EXPECT_EQ(g.edge_count(), 45u);
    const auto s = laplacian_spectrum(g);
    for (std::size_t i = 1; i < 10; ++i) EXPECT_NEAR(s.values[i], 10.0, 1e-10);
}

TEST(Generate, GnpWithZeroProbabilityIsEmpty) {
    EXPECT_EQ(generate(spec(Family::gnp, 10, {{"p", 0.0}}), 3).edge_count(), 0u);
    EXPECT_EQ(generate(spec(Family::gnp, 10, {{"p", 1.0}}), 3).edge_count(), 45u);
}

TEST(Generate, ValidationErrors) {
    EXPECT_THROW(generate(spec(Family::gnp, 10, {{"p", 1.5}}), 1), ParameterError);
    EXPECT_THROW(generate(spec(Family::gnp, 10), 1), ParameterError);
    EXPECT_THROW(generate(spec(Family::gnm, 10, {{"m", 46}}), 1), ParameterError);
    EXPECT_THROW(generate(spec(Family::gnm, 10, {{"m", 2.5}}), 1), ParameterError);
    EXPECT_THROW(generate(spec(Family::degree_regular, 5, {{"d", 3}}), 1), ParameterError);
    EXPECT_THROW(generate(spec(Family::star, 0), 1), ParameterError);
    EXPECT_THROW(generate(spec(Family::fixed_graph, 3), 1), ParameterError);
}

TEST(Generate, FamilyNamesRoundTrip) {
    for (const auto& [family, name] : kFamilyNames) EXPECT_EQ(parse_family(name), family);
    EXPECT_THROW(parse_family("ergm"), ParameterError);
}

TEST(GenerateEnsemble, DeterministicAndIndependentOfThreadCount) {
    const auto s = spec(Family::gnp, 40, {{"p", 0.1}});
    const auto a = generate_ensemble(s, 20, 42);
    const auto b = generate_ensemble(s, 20, 42);
    EXPECT_EQ(a, b);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k], generate(s, derive_seed(42, k)));
    EXPECT_NE(a[0], a[1]);
    EXPECT_NE(generate_ensemble(s, 2, 43)[0], a[0]);
}

TEST(GenerateEnsemble, GnmHasExactEdgeCount) {
    for (const Graph& g : generate_ensemble(spec(Family::gnm, 100, {{"m", 250}}), 100, 5))
        EXPECT_EQ(g.edge_count(), 250u);
}

TEST(GenerateEnsemble, GnpMeanEdgeCountWithinThreeStandardErrors) {
    const double n = 50, p = 0.1;
    const auto ens = generate_ensemble(spec(Family::gnp, 50, {{"p", p}}), 1000, 9);
    double total = 0.0;
    for (const Graph& g : ens) total += static_cast<double>(g.edge_count());
    const double pairs = n * (n - 1) / 2;
    const double se = std::sqrt(pairs * p * (1 - p) / 1000.0);
    EXPECT_LE(std::abs(total / 1000.0 - pairs * p), 3 * se);
}

TEST(GenerateEnsemble, DegreeRegularHasExactDegrees) {
    for (const Graph& g : generate_ensemble(spec(Family::degree_regular, 30, {{"d", 4}}), 50, 2)) {
        for (std::size_t deg : [&] {
                 std::vector<std::size_t> d(30, 0);
                 for (const Edge& e : g.edges()) ++d[e.u], ++d[e.v];
                 return d;
             }())
            EXPECT_EQ(deg, 4u);
    }
}

TEST(GenerateEnsemble, WeightShufflePreservesWeightMultiset) {
    ModelSpec s = spec(Family::weight_shuffle, 20);
    s.weights = {0.5, 1.0, 1.0, 2.0, 3.5, 7.0, 7.0, 9.25};
    for (const Graph& g : generate_ensemble(s, 50, 4)) {
        EXPECT_EQ(g.edge_count(), s.weights.size());
        EXPECT_EQ(sorted_weights(g), s.weights);
    }
}

TEST(GenerateEnsemble, PreferentialAttachmentEdgeCountAndConnectivity) {
    for (std::size_t m : {1u, 2u, 3u, 5u}) {
        const std::size_t n = 80;
        for (const Graph& g : generate_ensemble(spec(Family::preferential_attachment, n,
                                                     {{"m_edges", static_cast<double>(m)}}),
                                                20, 11)) {
            EXPECT_EQ(g.node_count(), n);
            EXPECT_EQ(g.edge_count(), m * (m - 1) / 2 + (n - m) * m);
            EXPECT_EQ(connected_components(g), 1u);
        }
    }
}

TEST(GenerateEnsemble, RandomWalkGrowthIsConnected) {
    for (double k : {1.0, 2.0, 4.0, 6.0})
        for (double l : {1.0, 2.0, 3.0})
            for (const Graph& g :
                 generate_ensemble(spec(Family::random_walk_growth, 150, {{"k", k}, {"l", l}}), 10, 13)) {
                EXPECT_EQ(g.node_count(), 150u);
                EXPECT_EQ(connected_components(g), 1u);
            }
}

TEST(GenerateEnsemble, RandomWalkGrowthPoissonVariant) {
    const auto s = spec(Family::random_walk_growth, 100, {{"k", 3}, {"l", 2}, {"poisson", 1}});
    for (const Graph& g : generate_ensemble(s, 10, 1)) EXPECT_EQ(connected_components(g), 1u);
}

TEST(GenerateEnsemble, FixedGraphIsReturnedVerbatim) {
    auto g = std::make_shared<Graph>(4);
    g->add_edge(0, 1, 2.0);
    g->add_edge(2, 3);
    ModelSpec s = spec(Family::fixed_graph, 4);
    s.graph = g;
    for (const Graph& member : generate_ensemble(s, 5, 1)) EXPECT_EQ(member, *g);
}

TEST(NullFor, Examples) {
    Graph g(10);
    for (std::size_t i = 1; i < 10; ++i) g.add_edge(0, i, static_cast<double>(i));
    const auto gnm = null_for(g, NullKind::gnm);
    EXPECT_EQ(gnm.family, Family::gnm);
    EXPECT_EQ(gnm.param("m"), 9.0);
    const auto gnp = null_for(g, NullKind::gnp);
    EXPECT_DOUBLE_EQ(gnp.param("p"), 9.0 / 45.0);
    const auto ws = null_for(g, NullKind::weight_shuffle);
    EXPECT_EQ(ws.weights, sorted_weights(g));
    EXPECT_THROW(null_for(g, NullKind::degree_regular), DataError);
    EXPECT_THROW(null_for(Graph(5), NullKind::gnm), DataError);

    Graph cycle(6);
    for (std::size_t i = 0; i < 6; ++i) cycle.add_edge(i, (i + 1) % 6);
    EXPECT_EQ(null_for(cycle, NullKind::degree_regular).param("d"), 2.0);
}

TEST(NullKind, Parsing) {
    EXPECT_EQ(parse_null_kind("gnm"), NullKind::gnm);
    EXPECT_EQ(parse_null_kind("gnp"), NullKind::gnp);
    EXPECT_EQ(parse_null_kind("regular"), NullKind::degree_regular);
    EXPECT_EQ(parse_null_kind("weight-shuffle"), NullKind::weight_shuffle);
    EXPECT_THROW(parse_null_kind("config"), ParameterError);
}

TEST(Rng, UniformIndexStaysInRangeAndCoversIt) {
    Rng rng(1);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 7000; ++i) ++seen.at(rng.uniform_index(7));
    for (int c : seen) EXPECT_GT(c, 800);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Rng, PoissonMeanMatches) {
    Rng rng(3);
    for (double lambda : {0.5, 4.0, 60.0}) {
        double total = 0;
        for (int i = 0; i < 20000; ++i) total += static_cast<double>(rng.poisson(lambda));
        EXPECT_NEAR(total / 20000.0, lambda, 4 * std::sqrt(lambda / 20000.0));
    }
}

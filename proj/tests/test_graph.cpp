#include <gtest/gtest.h>

#include "spectralgof/graph.hpp"
#include "spectralgof/models.hpp"

using namespace spectralgof;

namespace {

Graph star(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 1; i < n; ++i) g.add_edge(0, i);
    return g;
}

Graph weighted_triangle() {
    Graph g(3);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 2.0);
    g.add_edge(0, 2, 3.0);
    return g;
}

} // namespace

TEST(Graph, RejectsSelfLoopsDuplicatesAndBadWeights) {
    Graph g(3);
    g.add_edge(0, 1);
    EXPECT_THROW(g.add_edge(1, 1), DataError);
    EXPECT_THROW(g.add_edge(1, 0), DataError);
    EXPECT_THROW(g.add_edge(0, 3), DataError);
    EXPECT_THROW(g.add_edge(0, 2, 0.0), DataError);
    EXPECT_THROW(g.add_edge(0, 2, -1.0), DataError);
    EXPECT_THROW(Graph(0), DataError);
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Graph, StoresEdgesWithSmallerEndpointFirst) {
    Graph g(4);
    g.add_edge(3, 1, 2.0);
    ASSERT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.edges()[0], (Edge{1, 3, 2.0}));
    EXPECT_TRUE(g.has_edge(3, 1));
    EXPECT_TRUE(g.has_edge(1, 3));
}

TEST(BuildLaplacian, SingleEdge) {
    Graph g(2);
    g.add_edge(0, 1);
    const auto l = build_laplacian(g);
    EXPECT_EQ(l(0, 0), 1.0);
    EXPECT_EQ(l(0, 1), -1.0);
    EXPECT_EQ(l(1, 0), -1.0);
    EXPECT_EQ(l(1, 1), 1.0);
}

TEST(BuildLaplacian, EmptyGraphIsZero) {
    const auto l = build_laplacian(Graph(3));
    EXPECT_EQ(l.matrix(), Matrix(3));
}

TEST(BuildLaplacian, WeightedTriangle) {
    // D = diag(1+3, 1+2, 2+3), off-diagonals are the negated weights.
    const auto l = build_laplacian(weighted_triangle());
    EXPECT_EQ(l(0, 0), 4.0);
    EXPECT_EQ(l(1, 1), 3.0);
    EXPECT_EQ(l(2, 2), 5.0);
    EXPECT_EQ(l(0, 1), -1.0);
    EXPECT_EQ(l(1, 2), -2.0);
    EXPECT_EQ(l(0, 2), -3.0);
    EXPECT_TRUE(is_symmetric(l.matrix()));
}

TEST(ConnectedComponents, Examples) {
    EXPECT_EQ(connected_components(star(100)), 1u);
    EXPECT_EQ(connected_components(Graph(4)), 4u);
    Graph two(6);
    for (std::size_t base : {0u, 3u}) {
        two.add_edge(base, base + 1);
        two.add_edge(base + 1, base + 2);
        two.add_edge(base, base + 2);
    }
    EXPECT_EQ(connected_components(two), 2u);
}

TEST(TotalWeight, Examples) {
    Graph e(2);
    e.add_edge(0, 1);
    EXPECT_EQ(total_weight(e), 2.0);
    EXPECT_EQ(total_weight(star(100)), 198.0);
    EXPECT_EQ(total_weight(weighted_triangle()), 12.0);
}

TEST(LaplacianProperties, TraceEqualsTotalWeightAndRowsSumToZero) {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(30);
        Graph g(n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (rng.bernoulli(0.3)) g.add_edge(u, v, 0.25 + 4.0 * rng.uniform01());
        const auto l = build_laplacian(g);
        EXPECT_NEAR(l.trace(), total_weight(g), 1e-12 * (1.0 + total_weight(g)));
        const double tol = 1e-12 * std::max(1.0, max_abs_entry(l.matrix()));
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                row += l(i, j);
                if (i != j) {
                    EXPECT_LE(l(i, j), 0.0);
                }
            }
            EXPECT_NEAR(row, 0.0, tol * static_cast<double>(n));
            EXPECT_GE(l(i, i), 0.0);
        }
    }
}

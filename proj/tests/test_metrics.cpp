#include <doctest.h>

#include <cmath>
#include <sstream>

#include "linkhide/metrics.hpp"
#include "oracles.hpp"

using namespace linkhide;

namespace {
ScoredRanking ranking(std::vector<double> q, std::vector<double> x) {
    ScoredRanking r;
    r.probe = std::move(q);
    r.rest = std::move(x);
    return r;
}
}  // namespace

TEST_CASE("AUC examples") {
    CHECK(auc(ranking({5}, {3, 5})) == 0.75);
    CHECK(auc(ranking({4, 5}, {1, 2, 3})) == 1.0);
    CHECK(auc(ranking({2, 2}, {2, 2, 2})) == 0.5);
    CHECK_THROWS_AS(auc(ranking({}, {1})), MetricError);
    CHECK_THROWS_AS(auc(ranking({1}, {})), MetricError);
}

TEST_CASE("AP examples") {
    CHECK(average_precision(ranking({5}, {3, 3})) == 1.0);
    CHECK(std::abs(average_precision(ranking({1}, {2, 3})) - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(average_precision(ranking({3, 1}, {2})) - 5.0 / 6.0) < 1e-15);
    CHECK_THROWS_AS(average_precision(ranking({}, {1})), MetricError);
}

TEST_CASE("implicit rest block counts like explicit entries") {
    Rng rng(1);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> q, x;
        for (std::size_t i = 0, n = 1 + rng.below(6); i < n; ++i)
            q.push_back(double(rng.below(4)));
        for (std::size_t i = 0, n = rng.below(6); i < n; ++i)
            x.push_back(double(1 + rng.below(3)));
        const std::size_t zeros = 1 + rng.below(5);
        auto implicit = ranking(q, x);
        implicit.implicit_rest = zeros;
        auto full = x;
        full.insert(full.end(), zeros, 0.0);
        CHECK(std::abs(auc(implicit) - oracle::auc(q, full)) < 1e-12);
        CHECK(std::abs(average_precision(implicit) - oracle::ap(q, full)) < 1e-12);
    }
}

TEST_CASE("closed formulas match brute force on tie-laden scores") {
    Rng rng(2);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> q, x;
        const int levels = 1 + int(rng.below(5));
        for (std::size_t i = 0, n = 1 + rng.below(20); i < n; ++i)
            q.push_back(double(rng.below(levels)) * 0.1);
        for (std::size_t i = 0, n = 1 + rng.below(60); i < n; ++i)
            x.push_back(double(rng.below(levels)) * 0.1);
        const auto r = ranking(q, x);
        CHECK(std::abs(auc(r) - oracle::auc(q, x)) < 1e-12);
        CHECK(std::abs(average_precision(r) - oracle::ap(q, x)) < 1e-12);
        const auto e = evaluate(r);
        CHECK(e.auc == auc(r));
        CHECK(metric_value(r, Metric::AP) == e.ap);
        CHECK(e.auc >= 0.0);
        CHECK(e.auc <= 1.0);
        CHECK(e.ap > 0.0);
        CHECK(e.ap <= 1.0);
    }
}

TEST_CASE("strictly increasing transforms leave both metrics unchanged") {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> q, x, tq, tx;
        for (std::size_t i = 0, n = 1 + rng.below(10); i < n; ++i)
            q.push_back(double(rng.below(6)));
        for (std::size_t i = 0, n = 1 + rng.below(30); i < n; ++i)
            x.push_back(double(rng.below(6)));
        for (double v : q)
            tq.push_back(std::exp(v) + 7.0);
        for (double v : x)
            tx.push_back(std::exp(v) + 7.0);
        CHECK(auc(ranking(q, x)) == auc(ranking(tq, tx)));
        CHECK(average_precision(ranking(q, x)) == average_precision(ranking(tq, tx)));
    }
}

TEST_CASE("reversing a tie-free ranking gives 1 - AUC") {
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> q, x;
        for (std::size_t i = 0, n = 1 + rng.below(10); i < n; ++i)
            q.push_back(rng.uniform());
        for (std::size_t i = 0, n = 1 + rng.below(30); i < n; ++i)
            x.push_back(rng.uniform());
        std::vector<double> nq, nx;
        for (double v : q)
            nq.push_back(-v);
        for (double v : x)
            nx.push_back(-v);
        CHECK(std::abs(auc(ranking(nq, nx)) - (1.0 - auc(ranking(q, x)))) < 1e-12);
    }
}

TEST_CASE("non-finite scores are rejected") {
    CHECK_THROWS_AS(auc(ranking({std::nan("")}, {1})), MetricError);
}

TEST_CASE("make_ranking") {
    const std::vector<ScoredPair> s{{Edge(0, 1), 3}, {Edge(0, 2), 1}, {Edge(1, 2), 2}};
    const std::vector<Edge> q{Edge(1, 0)};
    const auto r = make_ranking(s, q);
    CHECK(r.probe == std::vector<double>{3});
    CHECK(r.rest == std::vector<double>{1, 2});

    const std::vector<Edge> missing{Edge(3, 4)};
    CHECK_THROWS_AS(make_ranking(s, missing), MetricError);
    const std::vector<Edge> dup{Edge(0, 1), Edge(1, 0)};
    CHECK_THROWS_AS(make_ranking(s, dup), MetricError);
    const std::vector<ScoredPair> unsorted{{Edge(1, 2), 0}, {Edge(0, 1), 0}};
    CHECK_THROWS_AS(make_ranking(unsorted, q), MetricError);
}

TEST_CASE("ROC and PR points") {
    const std::vector<ScoredPair> s{{Edge(0, 1), 5}, {Edge(0, 2), 1}};
    const std::vector<Edge> q{Edge(0, 1)};
    const auto roc = roc_points(s, q);
    REQUIRE(roc.points.size() == 2);
    CHECK(roc.points[0].x == 0.0);
    CHECK(roc.points[0].y == 1.0);
    CHECK(roc.points[1].x == 1.0);
    CHECK(roc.points[1].y == 1.0);
    CHECK_FALSE(roc.tie_broken);

    const auto pr = pr_points(s, q);
    REQUIRE(pr.points.size() == 2);
    CHECK(pr.points[0].x == 1.0);
    CHECK(pr.points[0].y == 1.0);
    CHECK(pr.points[1].y == 0.5);

    const std::vector<ScoredPair> ties{{Edge(0, 1), 1}, {Edge(0, 2), 1}, {Edge(1, 2), 1}};
    const std::vector<Edge> q2{Edge(1, 2)};
    const auto a = roc_points(ties, q2), b = roc_points(ties, q2);
    CHECK(a.tie_broken);
    REQUIRE(a.points.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].y == b.points[i].y);
    }
    // Ties are traversed in pair order: (0,1), (0,2) from X first, then the probe.
    CHECK(a.points[0].y == 0.0);
    CHECK(a.points[2].y == 1.0);

    const std::vector<Edge> everything{Edge(0, 1), Edge(0, 2)};
    CHECK_THROWS_AS(roc_points(s, everything), MetricError);
    CHECK_THROWS_AS(pr_points(s, everything), MetricError);

    std::ostringstream os;
    write_curve_csv(os, roc);
    CHECK(os.str().rfind("x,y\n", 0) == 0);
    CHECK(os.str() == "x,y\n0,1\n1,1\n");
}

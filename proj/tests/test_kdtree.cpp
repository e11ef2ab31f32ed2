#include "doctest.h"

#include <vector>

#include "oracles.hpp"
#include "sreg/errors.hpp"
#include "sreg/kdtree.hpp"
#include "sreg/synthetic.hpp"

using namespace sreg;

TEST_CASE("single-point index answers everything with index 0") {
    const NearestNeighborIndex idx(PointSet(2, {5.0, 5.0}));
    for (double x : {-10.0, 0.0, 5.0, 42.0}) {
        const std::vector<double> q{x, 1.0};
        CHECK(idx.nearest(q).index == 0);
    }
}

TEST_CASE("two-point index returns exact distances") {
    const NearestNeighborIndex idx(PointSet(2, {0.0, 0.0, 10.0, 10.0}));
    const std::vector<double> q{1.0, 1.0};
    const auto hit = idx.nearest(q);
    CHECK(hit.index == 0);
    CHECK(hit.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("query at a model point returns it with distance zero") {
    Rng rng(9);
    std::vector<double> coords;
    for (int i = 0; i < 120; ++i) coords.push_back(rng.uniform(-4.0, 4.0));
    const PointSet model(3, coords);
    const NearestNeighborIndex idx(model);
    for (std::size_t i = 0; i < model.size(); i += 7) {
        const auto hit = idx.nearest(model.point(i));
        CHECK(hit.distance == 0.0);
        CHECK(model.point(hit.index)[0] == model.point(i)[0]);
    }
}

TEST_CASE("equidistant ties resolve to the smallest model index") {
    // Model points sit symmetrically around the query; exact integer
    // coordinates keep the squared distances bit-identical.
    std::vector<double> coords(20, 0.0);
    coords[2 * 2 + 0] = 2.0;   // index 2 at (2, 0)
    coords[7 * 2 + 0] = -2.0;  // index 7 at (-2, 0)
    for (int i = 0; i < 10; ++i) {
        if (i == 2 || i == 7) continue;
        coords[2 * i] = 50.0 + i;  // park the rest far away
        coords[2 * i + 1] = 50.0;
    }
    const NearestNeighborIndex idx(PointSet(2, coords));
    const std::vector<double> origin{0.0, 0.0};
    const auto hit = idx.nearest(origin);
    CHECK(hit.index == 2);
    CHECK(hit.distance == 2.0);
}

TEST_CASE("dimension mismatches are rejected") {
    const NearestNeighborIndex idx(PointSet(2, {0.0, 0.0}));
    const std::vector<double> q3{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(idx.nearest(q3), DimensionError);
}

TEST_CASE("kd-tree matches exhaustive search on random 3-D data") {
    Rng rng(2025);
    std::vector<double> coords;
    for (int i = 0; i < 3000; ++i) coords.push_back(rng.uniform(-10.0, 10.0));
    const PointSet model(3, coords);
    const NearestNeighborIndex idx(model);

    for (int rep = 0; rep < 1000; ++rep) {
        const std::vector<double> q{rng.uniform(-12.0, 12.0), rng.uniform(-12.0, 12.0),
                                    rng.uniform(-12.0, 12.0)};
        const auto hit = idx.nearest(q);
        const auto [bi, bd] = oracle::brute_nearest(model, q);
        CHECK(hit.index == bi);
        CHECK(hit.distance == bd);  // identical arithmetic, so exact equality
        // Returned distance is a lower bound over every model point.
        CHECK(hit.distance <= bd + 0.0);
    }
}

TEST_CASE("kd-tree matches exhaustive search on clustered duplicates") {
    // Duplicated coordinates stress the tie rule inside real tree searches.
    Rng rng(31337);
    std::vector<double> coords;
    for (int i = 0; i < 500; ++i) {
        const double x = std::floor(rng.uniform(-3.0, 3.0));
        const double y = std::floor(rng.uniform(-3.0, 3.0));
        coords.push_back(x);
        coords.push_back(y);
    }
    const PointSet model(2, coords);
    const NearestNeighborIndex idx(model);
    for (int rep = 0; rep < 400; ++rep) {
        const std::vector<double> q{std::floor(rng.uniform(-4.0, 4.0)),
                                    std::floor(rng.uniform(-4.0, 4.0))};
        const auto hit = idx.nearest(q);
        const auto [bi, bd] = oracle::brute_nearest(model, q);
        CHECK(hit.index == bi);
        CHECK(hit.distance == bd);
    }
}

TEST_CASE("queries are deterministic across repeated runs") {
    Rng rng(6);
    std::vector<double> coords;
    for (int i = 0; i < 600; ++i) coords.push_back(rng.uniform(-1.0, 1.0));
    const PointSet model(2, coords);
    const NearestNeighborIndex a(model);
    const NearestNeighborIndex b(model);
    for (int rep = 0; rep < 100; ++rep) {
        const std::vector<double> q{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const auto ha = a.nearest(q);
        const auto hb = b.nearest(q);
        CHECK(ha.index == hb.index);
        CHECK(ha.distance == hb.distance);
    }
}

TEST_CASE("establish_correspondences pairs every data point") {
    Rng rng(44);
    std::vector<double> coords;
    for (int i = 0; i < 60; ++i) coords.push_back(rng.uniform(-2.0, 2.0));
    const PointSet shape(2, coords);
    const NearestNeighborIndex idx(shape);
    const auto corr = establish_correspondences(shape, SimilarityTransform::identity(2), idx);
    REQUIRE(corr.size() == shape.size());
    for (std::size_t i = 0; i < corr.size(); ++i) {
        CHECK(corr.pairs[i].data_index == i);
        CHECK(corr.pairs[i].distance == 0.0);
        CHECK(corr.pairs[i].model_index == i);  // distinct random points match themselves
    }
}

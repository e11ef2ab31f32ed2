#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "sreg/errors.hpp"
#include "sreg/point_io.hpp"
#include "sreg/point_set.hpp"
#include "sreg/synthetic.hpp"
#include "sreg/transform.hpp"

using namespace sreg;

namespace {

PointSet pts2(std::initializer_list<double> flat) { return PointSet(2, flat); }

}  // namespace

TEST_CASE("point set invariants are enforced") {
    CHECK_THROWS_AS(PointSet(1, {1.0, 2.0}), InvalidValueError);
    CHECK_THROWS_AS(PointSet(2, {}), EmptyInputError);
    CHECK_THROWS_AS(PointSet(2, {1.0, 2.0, 3.0}), DimensionError);
    const PointSet p = pts2({1.0, 2.0, 3.0, 4.0});
    CHECK(p.size() == 2);
    CHECK(p(1, 0) == 3.0);
}

TEST_CASE("centroid basics") {
    CHECK(centroid(pts2({0, 0, 2, 0}))(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(centroid(pts2({0, 0, 2, 0}))(1) == 0.0);
    const PointSet single(3, {1.0, 1.0, 1.0});
    const Eigen::VectorXd c = centroid(single);
    for (int i = 0; i < 3; ++i) CHECK(c(i) == 1.0);
}

TEST_CASE("centroid of a uniform grid hits the grid center") {
    // 10x10 unit grid; direct summation oracle.
    std::vector<double> coords;
    double sx = 0.0, sy = 0.0;
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 10; ++x) {
            coords.push_back(x);
            coords.push_back(y);
            sx += x;
            sy += y;
        }
    }
    const PointSet grid(2, std::move(coords));
    const Eigen::VectorXd c = centroid(grid);
    CHECK(std::abs(c(0) - sx / 100.0) <= 1e-12);
    CHECK(std::abs(c(1) - sy / 100.0) <= 1e-12);
    CHECK(std::abs(c(0) - 4.5) <= 1e-12);
}

TEST_CASE("center removes the centroid and round-trips") {
    const auto [centered, mean] = center(pts2({0, 0, 2, 0}));
    CHECK(mean(0) == 1.0);
    CHECK(centered(0, 0) == -1.0);
    CHECK(centered(1, 0) == 1.0);

    const auto [single_centered, single_mean] = center(PointSet(2, {5.0, 5.0}));
    CHECK(single_centered(0, 0) == 0.0);
    CHECK(single_mean(1) == 5.0);

    // Random 3-D set: centered result has a tiny centroid and re-adding the
    // mean recovers the input exactly.
    Rng rng(77);
    std::vector<double> coords;
    for (int i = 0; i < 150; ++i) coords.push_back(rng.uniform(-30.0, 30.0));
    const PointSet set(3, coords);
    const auto [c3, m3] = center(set);
    const Eigen::VectorXd residual = centroid(c3);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(residual(c)) <= 1e-12);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (int c = 0; c < 3; ++c)
            CHECK(std::abs(c3(i, c) + m3(c) - set(i, c)) <=
                  1e-14 * std::max(1.0, std::abs(set(i, c))));
}

TEST_CASE("similarity transform construction guards its invariants") {
    Eigen::MatrixXd r = rotation2d(0.3);
    CHECK_NOTHROW(SimilarityTransform(1.5, r, Eigen::VectorXd::Zero(2)));
    CHECK_THROWS_AS(SimilarityTransform(0.0, r, Eigen::VectorXd::Zero(2)), InvalidValueError);
    CHECK_THROWS_AS(SimilarityTransform(-1.0, r, Eigen::VectorXd::Zero(2)), InvalidValueError);

    Eigen::MatrixXd reflection(2, 2);
    reflection << 1, 0, 0, -1;
    CHECK_THROWS_AS(SimilarityTransform(1.0, reflection, Eigen::VectorXd::Zero(2)),
                    InvalidValueError);

    Eigen::MatrixXd skewed = r;
    skewed(0, 0) += 1e-6;
    CHECK_THROWS_AS(SimilarityTransform(1.0, skewed, Eigen::VectorXd::Zero(2)),
                    InvalidValueError);

    CHECK_THROWS_AS(SimilarityTransform(1.0, rotation2d(0.1), Eigen::VectorXd::Zero(3)),
                    DimensionError);
}

TEST_CASE("apply_transform matches hand-computed cases") {
    const PointSet p = pts2({3.0, 4.0});
    const auto moved = apply_transform(SimilarityTransform::identity(2), p);
    CHECK(moved(0, 0) == 3.0);
    CHECK(moved(0, 1) == 4.0);

    Eigen::VectorXd shift(2);
    shift << 1.0, 0.0;
    const SimilarityTransform t2(2.0, Eigen::MatrixXd::Identity(2, 2), shift);
    const auto doubled = apply_transform(t2, pts2({1.0, 0.0}));
    CHECK(doubled(0, 0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(doubled(0, 1) == 0.0);

    const SimilarityTransform quarter(1.0, rotation2d(M_PI / 2), Eigen::VectorXd::Zero(2));
    const auto turned = apply_transform(quarter, pts2({1.0, 0.0}));
    CHECK(std::abs(turned(0, 0)) <= 1e-15);
    CHECK(turned(0, 1) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(apply_transform(SimilarityTransform::identity(3), p), DimensionError);
}

TEST_CASE("transform composed with its inverse is the identity map") {
    Rng rng(123);
    for (int rep = 0; rep < 20; ++rep) {
        const int dim = rep % 2 == 0 ? 2 : 3;
        const Eigen::MatrixXd r = random_rotation(dim, M_PI, rng);
        Eigen::VectorXd t(dim);
        for (int c = 0; c < dim; ++c) t(c) = rng.uniform(-10.0, 10.0);
        const SimilarityTransform fwd(rng.uniform(0.25, 4.0), r, t);
        const SimilarityTransform round = compose(fwd.inverse(), fwd);

        std::vector<double> coords;
        for (int i = 0; i < 40 * dim; ++i) coords.push_back(rng.uniform(-5.0, 5.0));
        const PointSet pts(dim, coords);
        const PointSet back = apply_transform(round, pts);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (int c = 0; c < dim; ++c) CHECK(std::abs(back(i, c) - pts(i, c)) <= 1e-9);
    }
}

TEST_CASE("centroid commutes with apply_transform") {
    Rng rng(321);
    const Eigen::MatrixXd r = random_rotation(3, M_PI, rng);
    Eigen::VectorXd t(3);
    t << 4.0, -2.0, 0.5;
    const SimilarityTransform fwd(1.7, r, t);
    std::vector<double> coords;
    for (int i = 0; i < 90; ++i) coords.push_back(rng.uniform(-3.0, 3.0));
    const PointSet pts(3, coords);
    const Eigen::VectorXd lhs = centroid(apply_transform(fwd, pts));
    const Eigen::VectorXd rhs = fwd.scale() * (fwd.rotation() * centroid(pts)) + fwd.translation();
    CHECK((lhs - rhs).norm() <= 1e-9);
}

TEST_CASE("text point files round-trip and reject malformed input") {
    std::istringstream in("1 2\n3 4\n# comment\n\n5 6\n");
    const PointSet p = read_text_points(in);
    CHECK(p.dim() == 2);
    CHECK(p.size() == 3);
    CHECK(p(2, 1) == 6.0);

    std::istringstream ragged("1 2\n3 4 5\n");
    CHECK_THROWS_AS(read_text_points(ragged), ParseError);
    std::istringstream garbage("1 banana\n");
    CHECK_THROWS_AS(read_text_points(garbage), ParseError);
    std::istringstream empty("\n# nothing\n");
    CHECK_THROWS_AS(read_text_points(empty), ParseError);
}

TEST_CASE("ascii ply vertices load, other elements ignored") {
    std::istringstream in(
        "ply\n"
        "format ascii 1.0\n"
        "comment made by hand\n"
        "element vertex 3\n"
        "property float x\n"
        "property float y\n"
        "property float z\n"
        "property uchar red\n"
        "element face 1\n"
        "property list uchar int vertex_indices\n"
        "end_header\n"
        "0 0 0 255\n"
        "1 0 0.5 255\n"
        "0 2 1 255\n"
        "3 0 1 2\n");
    const PointSet p = read_ascii_ply(in);
    CHECK(p.dim() == 3);
    CHECK(p.size() == 3);
    CHECK(p(1, 2) == 0.5);
    CHECK(p(2, 1) == 2.0);

    std::istringstream binary("ply\nformat binary_little_endian 1.0\nend_header\n");
    CHECK_THROWS_AS(read_ascii_ply(binary), ParseError);
}

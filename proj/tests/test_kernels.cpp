#include "doctest.h"

#include <cmath>
#include <vector>

#include "sreg/kernels.hpp"
#include "sreg/synthetic.hpp"

using namespace sreg;

namespace {

std::vector<double> random_buffer(std::size_t len, Rng& rng) {
    std::vector<double> v(len);
    for (double& x : v) x = rng.uniform(-5.0, 5.0);
    return v;
}

bool close(double a, double b, double scale) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, scale);
}

// Every vectorized kernel must agree with the scalar reference up to
// reassociation noise, for the specialized dimensions and for the generic
// fallback.
void check_tables_agree(int dim, std::size_t n, Rng& rng) {
    const auto& ref = kernels::scalar_ops();
    const kernels::Ops* simd = kernels::avx2_ops();
    if (!simd) return;  // nothing to compare on this machine

    const auto a = random_buffer(n * dim, rng);
    const auto b = random_buffer(n * dim, rng);
    std::vector<double> rot(dim * dim, 0.0);
    // A full (not necessarily orthogonal) matrix exercises every term.
    for (double& r : rot) r = rng.uniform(-1.0, 1.0);
    std::vector<double> trans(dim);
    for (double& t : trans) t = rng.uniform(-2.0, 2.0);
    const double s = rng.uniform(0.2, 3.0);

    std::vector<double> out_ref(n * dim), out_simd(n * dim);
    ref.transform_points(dim, n, s, rot.data(), trans.data(), a.data(), out_ref.data());
    simd->transform_points(dim, n, s, rot.data(), trans.data(), a.data(), out_simd.data());
    for (std::size_t i = 0; i < out_ref.size(); ++i)
        CHECK(close(out_ref[i], out_simd[i], std::abs(out_ref[i])));

    std::vector<double> sums_ref(dim), sums_simd(dim);
    ref.col_sums(dim, n, a.data(), sums_ref.data());
    simd->col_sums(dim, n, a.data(), sums_simd.data());
    for (int c = 0; c < dim; ++c) CHECK(close(sums_ref[c], sums_simd[c], n * 5.0));

    std::vector<double> mean(dim);
    for (int c = 0; c < dim; ++c) mean[c] = sums_ref[c] / static_cast<double>(n);
    std::vector<double> cent_ref(n * dim), cent_simd(n * dim);
    ref.subtract(dim, n, a.data(), mean.data(), cent_ref.data());
    simd->subtract(dim, n, a.data(), mean.data(), cent_simd.data());
    for (std::size_t i = 0; i < cent_ref.size(); ++i) CHECK(cent_ref[i] == cent_simd[i]);

    const double ss_ref = ref.sum_sq(dim, n, a.data());
    CHECK(close(ss_ref, simd->sum_sq(dim, n, a.data()), ss_ref));

    const double sd_ref = ref.sum_sq_diff(dim, n, a.data(), b.data());
    CHECK(close(sd_ref, simd->sum_sq_diff(dim, n, a.data(), b.data()), std::max(1.0, sd_ref)));

    std::vector<double> cp_ref(dim * dim), cp_simd(dim * dim);
    ref.cross_products(dim, n, a.data(), b.data(), cp_ref.data());
    simd->cross_products(dim, n, a.data(), b.data(), cp_simd.data());
    for (int k = 0; k < dim * dim; ++k) CHECK(close(cp_ref[k], cp_simd[k], n * 25.0));
}

}  // namespace

TEST_CASE("simd kernels match the scalar reference") {
    Rng rng(20240901);
    for (const int dim : {2, 3, 5}) {
        for (const std::size_t n : {1u, 2u, 3u, 7u, 64u, 501u}) {
            check_tables_agree(dim, n, rng);
        }
    }
}

TEST_CASE("scalar kernels compute the obvious sums") {
    const auto& ops = kernels::scalar_ops();
    // Two 2-D points (1,2) and (3,4).
    const std::vector<double> pts{1.0, 2.0, 3.0, 4.0};
    std::vector<double> sums(2);
    ops.col_sums(2, 2, pts.data(), sums.data());
    CHECK(sums[0] == 4.0);
    CHECK(sums[1] == 6.0);
    CHECK(ops.sum_sq(2, 2, pts.data()) == 1.0 + 4.0 + 9.0 + 16.0);

    const std::vector<double> other{0.0, 2.0, 3.0, 0.0};
    CHECK(ops.sum_sq_diff(2, 2, pts.data(), other.data()) == 1.0 + 16.0);

    std::vector<double> cp(4);
    ops.cross_products(2, 2, pts.data(), other.data(), cp.data());
    // sum a_i[r] * b_i[c]: rows of [1,2] x [0,2] plus [3,4] x [3,0]
    CHECK(cp[0] == 1.0 * 0.0 + 3.0 * 3.0);
    CHECK(cp[1] == 1.0 * 2.0 + 3.0 * 0.0);
    CHECK(cp[2] == 2.0 * 0.0 + 4.0 * 3.0);
    CHECK(cp[3] == 2.0 * 2.0 + 4.0 * 0.0);

    // 90 degree rotation with scale 2 and shift (1, 0).
    const std::vector<double> rot{0.0, -1.0, 1.0, 0.0};
    const std::vector<double> trans{1.0, 0.0};
    std::vector<double> out(4);
    ops.transform_points(2, 2, 2.0, rot.data(), trans.data(), pts.data(), out.data());
    CHECK(out[0] == doctest::Approx(1.0 - 4.0));
    CHECK(out[1] == doctest::Approx(2.0));
    CHECK(out[2] == doctest::Approx(1.0 - 8.0));
    CHECK(out[3] == doctest::Approx(6.0));
}

TEST_CASE("active table is one of the registered ones") {
    const auto& active = kernels::active_ops();
    const bool is_scalar = &active == &kernels::scalar_ops();
    const bool is_avx2 = kernels::avx2_ops() && &active == kernels::avx2_ops();
    CHECK((is_scalar || is_avx2));
}

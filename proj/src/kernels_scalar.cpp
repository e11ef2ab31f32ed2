#include "sreg/kernels.hpp"

namespace sreg::kernels {

namespace {

void transform_points_scalar(int dim, std::size_t n, double scale, const double* rot,
                             const double* trans, const double* in, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = in + i * dim;
        double* q = out + i * dim;
        for (int r = 0; r < dim; ++r) {
            double acc = 0.0;
            const double* row = rot + r * dim;
            for (int c = 0; c < dim; ++c) acc += row[c] * p[c];
            q[r] = scale * acc + trans[r];
        }
    }
}

void col_sums_scalar(int dim, std::size_t n, const double* pts, double* sums) {
    for (int c = 0; c < dim; ++c) sums[c] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = pts + i * dim;
        for (int c = 0; c < dim; ++c) sums[c] += p[c];
    }
}

void subtract_scalar(int dim, std::size_t n, const double* pts, const double* mean, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = pts + i * dim;
        double* q = out + i * dim;
        for (int c = 0; c < dim; ++c) q[c] = p[c] - mean[c];
    }
}

double sum_sq_scalar(int dim, std::size_t n, const double* pts) {
    double acc = 0.0;
    const std::size_t total = n * static_cast<std::size_t>(dim);
    for (std::size_t i = 0; i < total; ++i) acc += pts[i] * pts[i];
    return acc;
}

double sum_sq_diff_scalar(int dim, std::size_t n, const double* a, const double* b) {
    double acc = 0.0;
    const std::size_t total = n * static_cast<std::size_t>(dim);
    for (std::size_t i = 0; i < total; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void cross_products_scalar(int dim, std::size_t n, const double* a, const double* b,
                           double* products) {
    for (int k = 0; k < dim * dim; ++k) products[k] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* pa = a + i * dim;
        const double* pb = b + i * dim;
        for (int r = 0; r < dim; ++r) {
            double* row = products + r * dim;
            const double ar = pa[r];
            for (int c = 0; c < dim; ++c) row[c] += ar * pb[c];
        }
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops table{
        "scalar",
        transform_points_scalar,
        col_sums_scalar,
        subtract_scalar,
        sum_sq_scalar,
        sum_sq_diff_scalar,
        cross_products_scalar,
    };
    return table;
}

}  // namespace sreg::kernels

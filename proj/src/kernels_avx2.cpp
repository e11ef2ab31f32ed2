// AVX2 variants of the point kernels.  2-D packs two points per 256-bit
// register; 3-D runs one point per register with a masked fourth lane.
// Other dimensions fall through to the scalar reference.  This translation
// unit is the only one compiled with -mavx2 -mfma.

#include "sreg/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace sreg::kernels {

namespace {

const __m256i kMask3 = _mm256_set_epi64x(0, -1, -1, -1);

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

// ---- 2-D paths: lanes hold (x0, y0, x1, y1) ----

void transform_points_d2(std::size_t n, double s, const double* rot, const double* trans,
                         const double* in, double* out) {
    // Columns of s*R replicated across both point slots.
    const __m256d colx = _mm256_setr_pd(s * rot[0], s * rot[2], s * rot[0], s * rot[2]);
    const __m256d coly = _mm256_setr_pd(s * rot[1], s * rot[3], s * rot[1], s * rot[3]);
    const __m256d tt = _mm256_setr_pd(trans[0], trans[1], trans[0], trans[1]);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(in + 2 * i);
        const __m256d xs = _mm256_movedup_pd(v);         // x0 x0 x1 x1
        const __m256d ys = _mm256_permute_pd(v, 0xF);    // y0 y0 y1 y1
        __m256d r = _mm256_fmadd_pd(xs, colx, tt);
        r = _mm256_fmadd_pd(ys, coly, r);
        _mm256_storeu_pd(out + 2 * i, r);
    }
    for (; i < n; ++i) {
        const double x = in[2 * i], y = in[2 * i + 1];
        out[2 * i] = s * (rot[0] * x + rot[1] * y) + trans[0];
        out[2 * i + 1] = s * (rot[2] * x + rot[3] * y) + trans[1];
    }
}

void col_sums_d2(std::size_t n, const double* pts, double* sums) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, _mm256_loadu_pd(pts + 2 * i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sx = lanes[0] + lanes[2];
    double sy = lanes[1] + lanes[3];
    for (; i < n; ++i) {
        sx += pts[2 * i];
        sy += pts[2 * i + 1];
    }
    sums[0] = sx;
    sums[1] = sy;
}

double sum_sq_d2(std::size_t n, const double* pts) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(pts + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        total += pts[2 * i] * pts[2 * i] + pts[2 * i + 1] * pts[2 * i + 1];
    }
    return total;
}

double sum_sq_diff_d2(std::size_t n, const double* a, const double* b) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + 2 * i), _mm256_loadu_pd(b + 2 * i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double dx = a[2 * i] - b[2 * i];
        const double dy = a[2 * i + 1] - b[2 * i + 1];
        total += dx * dx + dy * dy;
    }
    return total;
}

void cross_products_d2(std::size_t n, const double* a, const double* b, double* products) {
    __m256d row0 = _mm256_setzero_pd();  // a_x * (b_x, b_y) in paired lanes
    __m256d row1 = _mm256_setzero_pd();  // a_y * (b_x, b_y)
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(a + 2 * i);
        const __m256d vb = _mm256_loadu_pd(b + 2 * i);
        row0 = _mm256_fmadd_pd(_mm256_movedup_pd(va), vb, row0);
        row1 = _mm256_fmadd_pd(_mm256_permute_pd(va, 0xF), vb, row1);
    }
    alignas(32) double l0[4], l1[4];
    _mm256_store_pd(l0, row0);
    _mm256_store_pd(l1, row1);
    double c00 = l0[0] + l0[2], c01 = l0[1] + l0[3];
    double c10 = l1[0] + l1[2], c11 = l1[1] + l1[3];
    for (; i < n; ++i) {
        const double ax = a[2 * i], ay = a[2 * i + 1];
        const double bx = b[2 * i], by = b[2 * i + 1];
        c00 += ax * bx;
        c01 += ax * by;
        c10 += ay * bx;
        c11 += ay * by;
    }
    products[0] = c00;
    products[1] = c01;
    products[2] = c10;
    products[3] = c11;
}

// ---- 3-D paths: one point per register, fourth lane masked to zero ----

void transform_points_d3(std::size_t n, double s, const double* rot, const double* trans,
                         const double* in, double* out) {
    const __m256d col0 = _mm256_setr_pd(s * rot[0], s * rot[3], s * rot[6], 0.0);
    const __m256d col1 = _mm256_setr_pd(s * rot[1], s * rot[4], s * rot[7], 0.0);
    const __m256d col2 = _mm256_setr_pd(s * rot[2], s * rot[5], s * rot[8], 0.0);
    const __m256d tt = _mm256_setr_pd(trans[0], trans[1], trans[2], 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d p = _mm256_maskload_pd(in + 3 * i, kMask3);
        __m256d r = _mm256_fmadd_pd(_mm256_permute4x64_pd(p, 0x00), col0, tt);
        r = _mm256_fmadd_pd(_mm256_permute4x64_pd(p, 0x55), col1, r);
        r = _mm256_fmadd_pd(_mm256_permute4x64_pd(p, 0xAA), col2, r);
        _mm256_maskstore_pd(out + 3 * i, kMask3, r);
    }
}

void col_sums_d3(std::size_t n, const double* pts, double* sums) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i)
        acc = _mm256_add_pd(acc, _mm256_maskload_pd(pts + 3 * i, kMask3));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    sums[0] = lanes[0];
    sums[1] = lanes[1];
    sums[2] = lanes[2];
}

double sum_sq_d3(std::size_t n, const double* pts) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d p = _mm256_maskload_pd(pts + 3 * i, kMask3);
        acc = _mm256_fmadd_pd(p, p, acc);
    }
    return hsum(acc);
}

double sum_sq_diff_d3(std::size_t n, const double* a, const double* b) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d d = _mm256_sub_pd(_mm256_maskload_pd(a + 3 * i, kMask3),
                                        _mm256_maskload_pd(b + 3 * i, kMask3));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    return hsum(acc);
}

void cross_products_d3(std::size_t n, const double* a, const double* b, double* products) {
    __m256d r0 = _mm256_setzero_pd();
    __m256d r1 = _mm256_setzero_pd();
    __m256d r2 = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d pa = _mm256_maskload_pd(a + 3 * i, kMask3);
        const __m256d pb = _mm256_maskload_pd(b + 3 * i, kMask3);
        r0 = _mm256_fmadd_pd(_mm256_permute4x64_pd(pa, 0x00), pb, r0);
        r1 = _mm256_fmadd_pd(_mm256_permute4x64_pd(pa, 0x55), pb, r1);
        r2 = _mm256_fmadd_pd(_mm256_permute4x64_pd(pa, 0xAA), pb, r2);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, r0);
    products[0] = lanes[0];
    products[1] = lanes[1];
    products[2] = lanes[2];
    _mm256_store_pd(lanes, r1);
    products[3] = lanes[0];
    products[4] = lanes[1];
    products[5] = lanes[2];
    _mm256_store_pd(lanes, r2);
    products[6] = lanes[0];
    products[7] = lanes[1];
    products[8] = lanes[2];
}

// ---- dimension dispatch ----

void transform_points_avx2(int dim, std::size_t n, double s, const double* rot,
                           const double* trans, const double* in, double* out) {
    if (dim == 2) return transform_points_d2(n, s, rot, trans, in, out);
    if (dim == 3) return transform_points_d3(n, s, rot, trans, in, out);
    scalar_ops().transform_points(dim, n, s, rot, trans, in, out);
}

void col_sums_avx2(int dim, std::size_t n, const double* pts, double* sums) {
    if (dim == 2) return col_sums_d2(n, pts, sums);
    if (dim == 3) return col_sums_d3(n, pts, sums);
    scalar_ops().col_sums(dim, n, pts, sums);
}

void subtract_avx2(int dim, std::size_t n, const double* pts, const double* mean, double* out) {
    if (dim == 2) {
        const __m256d mm = _mm256_setr_pd(mean[0], mean[1], mean[0], mean[1]);
        std::size_t i = 0;
        for (; i + 2 <= n; i += 2)
            _mm256_storeu_pd(out + 2 * i, _mm256_sub_pd(_mm256_loadu_pd(pts + 2 * i), mm));
        for (; i < n; ++i) {
            out[2 * i] = pts[2 * i] - mean[0];
            out[2 * i + 1] = pts[2 * i + 1] - mean[1];
        }
        return;
    }
    if (dim == 3) {
        const __m256d mm = _mm256_setr_pd(mean[0], mean[1], mean[2], 0.0);
        for (std::size_t i = 0; i < n; ++i)
            _mm256_maskstore_pd(out + 3 * i, kMask3,
                                _mm256_sub_pd(_mm256_maskload_pd(pts + 3 * i, kMask3), mm));
        return;
    }
    scalar_ops().subtract(dim, n, pts, mean, out);
}

double sum_sq_avx2(int dim, std::size_t n, const double* pts) {
    if (dim == 2) return sum_sq_d2(n, pts);
    if (dim == 3) return sum_sq_d3(n, pts);
    return scalar_ops().sum_sq(dim, n, pts);
}

double sum_sq_diff_avx2(int dim, std::size_t n, const double* a, const double* b) {
    if (dim == 2) return sum_sq_diff_d2(n, a, b);
    if (dim == 3) return sum_sq_diff_d3(n, a, b);
    return scalar_ops().sum_sq_diff(dim, n, a, b);
}

void cross_products_avx2(int dim, std::size_t n, const double* a, const double* b,
                         double* products) {
    if (dim == 2) return cross_products_d2(n, a, b, products);
    if (dim == 3) return cross_products_d3(n, a, b, products);
    scalar_ops().cross_products(dim, n, a, b, products);
}

}  // namespace

const Ops* avx2_ops() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Ops table{
        "avx2",
        transform_points_avx2,
        col_sums_avx2,
        subtract_avx2,
        sum_sq_avx2,
        sum_sq_diff_avx2,
        cross_products_avx2,
    };
    return &table;
}

}  // namespace sreg::kernels

#else

namespace sreg::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace sreg::kernels

#endif

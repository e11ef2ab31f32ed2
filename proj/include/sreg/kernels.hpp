#pragma once

#include <cstddef>

namespace sreg::kernels {

// The data-parallel inner loops shared by every solver, expressed over flat
// row-major point buffers (`dim` doubles per point).  Two implementations
// exist: a scalar reference and an AVX2 variant with specialized 2-D/3-D
// paths.  The AVX2 table must agree with the scalar one to floating-point
// reassociation tolerance; tests/test_kernels.cpp holds the equivalence
// suite.
//
// `rot` is row-major: out[r] = sum_c rot[r*dim + c] * p[c].
struct Ops {
    const char* name;

    // out_i = scale * R * p_i + t
    void (*transform_points)(int dim, std::size_t n, double scale, const double* rot,
                             const double* trans, const double* in, double* out);
    // sums[c] = sum_i p_i[c]
    void (*col_sums)(int dim, std::size_t n, const double* pts, double* sums);
    // out_i = p_i - mean
    void (*subtract)(int dim, std::size_t n, const double* pts, const double* mean, double* out);
    // sum_i ||p_i||^2
    double (*sum_sq)(int dim, std::size_t n, const double* pts);
    // sum_i ||a_i - b_i||^2
    double (*sum_sq_diff)(int dim, std::size_t n, const double* a, const double* b);
    // products[r*dim + c] = sum_i a_i[r] * b_i[c]
    void (*cross_products)(int dim, std::size_t n, const double* a, const double* b,
                           double* products);
};

// Reference implementation; also the fallback for dimensions without a
// vectorized path.
const Ops& scalar_ops();

// AVX2 implementation, or nullptr when the binary or the CPU lacks support.
const Ops* avx2_ops();

// The table used by the library.  Picks AVX2 when available unless the
// environment variable SREG_FORCE_SCALAR=1 is set.  Chosen once per process
// so results are reproducible within a run.
const Ops& active_ops();

}  // namespace sreg::kernels

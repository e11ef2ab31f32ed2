#pragma once

#include <cstdint>
#include <string>

#include "sreg/point_set.hpp"
#include "sreg/transform.hpp"

namespace sreg {

// Deterministic counter-based RNG (splitmix64 core) so every trial draws
// from its own stream and parallel execution cannot change results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial_index);

    std::uint64_t next_u64();
    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);    // [lo, hi)
    double normal();                         // standard normal
    std::uint64_t uniform_index(std::uint64_t n);  // [0, n)

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Parameters for one synthetic registration case.
struct SyntheticSpec {
    int dim = 2;
    std::string shape = "blob";  // blob | spiral | grid | helix
    std::size_t points = 500;
    double scale_min = 0.25;
    double scale_max = 4.0;
    double rotation_max = 3.14159265358979323846;  // radians
    double translation_max = 1.0;                  // fraction of scene diameter
    double occlusion = 0.0;                        // fraction of data points displaced
    double noise_sigma = 0.0;                      // isotropic, in base-shape units

    void validate() const;
};

struct GeneratedCase {
    PointSet data;
    PointSet model;   // model = truth * clean data
    SimilarityTransform truth;
    double true_xi;   // 1 - occlusion
};

// Base shapes with enough asymmetry to register; deterministic given the rng.
PointSet make_shape(const std::string& name, int dim, std::size_t n, Rng& rng);

// Samples a ground-truth similarity transform from the spec ranges, forms
// the model as its image of the base shape, then corrupts the data side by
// displacing the occlusion fraction far outside the model hull and adding
// Gaussian noise.  Bit-identical for identical (spec, seed, trial_index).
GeneratedCase generate_case(const SyntheticSpec& spec, std::uint64_t seed,
                            std::uint64_t trial_index);

// Uniformly random proper rotation with the angle magnitude capped at
// `max_angle` (2-D: signed angle; 3-D: random axis).
Eigen::MatrixXd random_rotation(int dim, double max_angle, Rng& rng);

}  // namespace sreg

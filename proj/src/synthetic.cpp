#include "sreg/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "sreg/errors.hpp"

namespace sreg {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix(std::uint64_t& state) {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial_index) {
    // Disjoint splitmix streams per trial, so trial order (or parallelism)
    // cannot change any draw.
    std::uint64_t s = seed;
    const std::uint64_t mixed = splitmix(s);
    return Rng(mixed + trial_index * kGolden);
}

std::uint64_t Rng::next_u64() { return splitmix(state_); }

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; only deterministic libm calls.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 2.0 * std::numbers::pi;
    spare_ = mag * std::sin(two_pi * u2);
    have_spare_ = true;
    return mag * std::cos(two_pi * u2);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) { return n ? next_u64() % n : 0; }

void SyntheticSpec::validate() const {
    if (dim != 2 && dim != 3) throw InvalidValueError("synthetic cases support dim 2 or 3");
    if (points < 4) throw InvalidValueError("synthetic cases need at least 4 points");
    if (!(scale_min > 0.0 && scale_max >= scale_min))
        throw InvalidValueError("scale range must satisfy 0 < min <= max");
    if (!(rotation_max >= 0.0)) throw InvalidValueError("rotation range must be >= 0");
    if (!(translation_max >= 0.0)) throw InvalidValueError("translation range must be >= 0");
    if (!(occlusion >= 0.0 && occlusion < 1.0))
        throw InvalidValueError("occlusion fraction must lie in [0, 1)");
    if (!(noise_sigma >= 0.0)) throw InvalidValueError("noise sigma must be >= 0");
}

namespace {

// Open single-arm spiral with a density chirp and slight thickness.  The
// radial arm spacing encodes scale, the arm ends anchor rotation, and the
// chirp breaks arm-to-arm aliasing, which is what lets plain ICP pull this
// shape in from arbitrary rotations.
PointSet make_spiral2d(std::size_t n, Rng& rng) {
    const double r0 = 1.0, r1 = 3.0, turns = 2.25;
    const double phi_max = turns * 2.0 * std::numbers::pi;
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double w = std::pow(u, 0.8);
        const double phi = phi_max * w;
        const double r = r0 + (r1 - r0) * w + 0.015 * rng.normal();
        coords.push_back(r * std::cos(phi));
        coords.push_back(r * std::sin(phi));
    }
    return PointSet(2, std::move(coords));
}

PointSet make_helix3d(std::size_t n, Rng& rng) {
    const double r0 = 1.0, r1 = 3.0, turns = 2.25;
    const double phi_max = turns * 2.0 * std::numbers::pi;
    std::vector<double> coords;
    coords.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double w = std::pow(u, 0.8);
        const double phi = phi_max * w;
        const double r = r0 + (r1 - r0) * w + 0.015 * rng.normal();
        coords.push_back(r * std::cos(phi));
        coords.push_back(r * std::sin(phi));
        coords.push_back(2.0 * w + 0.015 * rng.normal());
    }
    return PointSet(3, std::move(coords));
}

PointSet make_blob(int dim, std::size_t n, Rng& rng) {
    // Four anisotropic Gaussian clumps; enough asymmetry to register.
    const int k = 4;
    std::vector<double> centers(static_cast<std::size_t>(k) * dim);
    for (double& c : centers) c = rng.uniform(-2.0, 2.0);
    const double spread[4] = {0.2, 0.35, 0.5, 0.8};
    std::vector<double> coords;
    coords.reserve(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
        const int comp = static_cast<int>(rng.uniform_index(k));
        for (int c = 0; c < dim; ++c)
            coords.push_back(centers[comp * dim + c] + spread[comp] * rng.normal());
    }
    return PointSet(dim, std::move(coords));
}

PointSet make_grid(int dim, std::size_t n) {
    const auto side =
        static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 1.0 / dim)));
    std::vector<double> coords;
    coords.reserve(n * dim);
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < dim; ++c) coords.push_back(static_cast<double>(idx[c]));
        for (int c = dim - 1; c >= 0; --c) {
            if (++idx[c] < side) break;
            idx[c] = 0;
        }
    }
    return PointSet(dim, std::move(coords));
}

}  // namespace

PointSet make_shape(const std::string& name, int dim, std::size_t n, Rng& rng) {
    if (name == "spiral") return dim == 2 ? make_spiral2d(n, rng) : make_helix3d(n, rng);
    if (name == "helix") return make_helix3d(n, rng);
    if (name == "blob") return make_blob(dim, n, rng);
    if (name == "grid") return make_grid(dim, n);
    throw InvalidValueError("unknown shape '" + name + "'");
}

Eigen::MatrixXd random_rotation(int dim, double max_angle, Rng& rng) {
    if (dim == 2) return rotation2d(rng.uniform(-max_angle, max_angle));
    if (dim == 3) {
        Eigen::Vector3d axis;
        do {
            axis << rng.normal(), rng.normal(), rng.normal();
        } while (axis.norm() < 1e-12);
        return rotation3d(axis, rng.uniform(-max_angle, max_angle));
    }
    throw InvalidValueError("random rotations are provided for dim 2 and 3 only");
}

GeneratedCase generate_case(const SyntheticSpec& spec, std::uint64_t seed,
                            std::uint64_t trial_index) {
    spec.validate();
    Rng rng = Rng::for_trial(seed, trial_index);

    const PointSet base = make_shape(spec.shape, spec.dim, spec.points, rng);
    const double diameter = bounding_diameter(base);

    const double s = rng.uniform(spec.scale_min, spec.scale_max);
    const Eigen::MatrixXd rot = random_rotation(spec.dim, spec.rotation_max, rng);
    Eigen::VectorXd dir(spec.dim);
    do {
        for (int c = 0; c < spec.dim; ++c) dir(c) = rng.normal();
    } while (dir.norm() < 1e-12);
    dir.normalize();
    const Eigen::VectorXd t = rng.uniform(0.0, spec.translation_max * s * diameter) * dir;
    SimilarityTransform truth(s, rot, t);

    const PointSet model = apply_transform(truth, base);

    // Corrupt the data side: displace a fixed fraction far away, then add
    // isotropic noise.
    std::vector<double> data = base.coords();
    const auto displaced =
        static_cast<std::size_t>(std::llround(spec.occlusion * static_cast<double>(spec.points)));
    std::vector<std::size_t> order(spec.points);
    for (std::size_t i = 0; i < spec.points; ++i) order[i] = i;
    for (std::size_t i = 0; i < displaced; ++i) {
        const std::size_t j = i + rng.uniform_index(spec.points - i);
        std::swap(order[i], order[j]);
    }
    const Eigen::VectorXd base_mean = centroid(base);
    for (std::size_t i = 0; i < displaced; ++i) {
        Eigen::VectorXd away(spec.dim);
        do {
            for (int c = 0; c < spec.dim; ++c) away(c) = rng.normal();
        } while (away.norm() < 1e-12);
        away.normalize();
        const double reach = diameter * rng.uniform(2.0, 4.0);
        for (int c = 0; c < spec.dim; ++c)
            data[order[i] * spec.dim + c] = base_mean(c) + reach * away(c);
    }
    if (spec.noise_sigma > 0.0) {
        for (double& v : data) v += spec.noise_sigma * rng.normal();
    }

    const double true_xi =
        1.0 - static_cast<double>(displaced) / static_cast<double>(spec.points);
    return {PointSet(spec.dim, std::move(data)), model, std::move(truth), true_xi};
}

}  // namespace sreg

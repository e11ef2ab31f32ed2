#pragma once

#include <cstddef>
#include <vector>

namespace sreg {

// One nearest-neighbor assignment: data point `data_index` matched to model
// point `model_index` at the given post-transform Euclidean distance.
struct Correspondence {
    std::size_t data_index;
    std::size_t model_index;
    double distance;
};

// One entry per data point, in data-index order (pairs[i].data_index == i).
struct CorrespondenceSet {
    std::vector<Correspondence> pairs;

    std::size_t size() const noexcept { return pairs.size(); }
    bool same_assignment(const CorrespondenceSet& other) const {
        if (pairs.size() != other.pairs.size()) return false;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (pairs[i].model_index != other.pairs[i].model_index) return false;
        return true;
    }
};

}  // namespace sreg

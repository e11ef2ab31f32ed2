#include "sreg/kernels.hpp"

#include <cstdlib>

namespace sreg::kernels {

const Ops& active_ops() {
    static const Ops& chosen = []() -> const Ops& {
        if (const char* force = std::getenv("SREG_FORCE_SCALAR"); force && force[0] == '1')
            return scalar_ops();
        if (const Ops* v = avx2_ops()) return *v;
        return scalar_ops();
    }();
    return chosen;
}

}  // namespace sreg::kernels

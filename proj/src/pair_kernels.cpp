#include "rgg/pair_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace rgg {

void pair_kernel_2d_scalar(double qx, double qy, const double* xs, const double* ys,
                           std::size_t count, double delta2, double side, bool torus,
                           std::vector<PairHit>& out) {
    for (std::size_t i = 0; i < count; ++i) {
        double dx = qx - xs[i];
        double dy = qy - ys[i];
        if (torus) {
            dx = std::fabs(dx);
            dy = std::fabs(dy);
            dx = std::min(dx, side - dx);
            dy = std::min(dy, side - dy);
        }
        const double dist2 = dx * dx + dy * dy;
        if (dist2 <= delta2)
            out.push_back({static_cast<std::uint32_t>(i), dist2});
    }
}

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

PairKernel2d select_pair_kernel_2d(KernelKind kind) {
    switch (kind) {
        case KernelKind::Scalar:
            return pair_kernel_2d_scalar;
        case KernelKind::Avx2:
            if (!avx2_available())
                throw std::runtime_error("AVX2 kernel requested but not available");
            return pair_kernel_2d_avx2;
        case KernelKind::Auto:
            return avx2_available() ? pair_kernel_2d_avx2 : pair_kernel_2d_scalar;
    }
    return pair_kernel_2d_scalar;
}

}  // namespace rgg

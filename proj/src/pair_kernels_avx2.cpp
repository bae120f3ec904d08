// Compiled with -mavx2 (no FMA: the scalar kernel's mul/mul/add rounding must
// be reproduced exactly for the bit-equivalence guarantee).
#include "rgg/pair_kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace rgg {

void pair_kernel_2d_avx2(double qx, double qy, const double* xs, const double* ys,
                         std::size_t count, double delta2, double side, bool torus,
                         std::vector<PairHit>& out) {
    const __m256d vqx = _mm256_set1_pd(qx);
    const __m256d vqy = _mm256_set1_pd(qy);
    const __m256d vside = _mm256_set1_pd(side);
    const __m256d vdelta2 = _mm256_set1_pd(delta2);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d dx = _mm256_sub_pd(vqx, _mm256_loadu_pd(xs + i));
        __m256d dy = _mm256_sub_pd(vqy, _mm256_loadu_pd(ys + i));
        if (torus) {
            dx = _mm256_and_pd(dx, abs_mask);
            dy = _mm256_and_pd(dy, abs_mask);
            dx = _mm256_min_pd(dx, _mm256_sub_pd(vside, dx));
            dy = _mm256_min_pd(dy, _mm256_sub_pd(vside, dy));
        }
        const __m256d dist2 =
            _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        const int mask =
            _mm256_movemask_pd(_mm256_cmp_pd(dist2, vdelta2, _CMP_LE_OQ));
        if (mask == 0) continue;
        alignas(32) double lane[4];
        _mm256_store_pd(lane, dist2);
        for (int l = 0; l < 4; ++l)
            if (mask & (1 << l))
                out.push_back({static_cast<std::uint32_t>(i + l), lane[l]});
    }
    if (i < count) {
        const std::size_t before = out.size();
        pair_kernel_2d_scalar(qx, qy, xs + i, ys + i, count - i, delta2, side, torus,
                              out);
        // scalar tail indices are relative to xs + i
        for (std::size_t k = before; k < out.size(); ++k)
            out[k].index += static_cast<std::uint32_t>(i);
    }
}

}  // namespace rgg
#else
namespace rgg {
void pair_kernel_2d_avx2(double qx, double qy, const double* xs, const double* ys,
                         std::size_t count, double delta2, double side, bool torus,
                         std::vector<PairHit>& out) {
    pair_kernel_2d_scalar(qx, qy, xs, ys, count, delta2, side, torus, out);
}
}  // namespace rgg
#endif

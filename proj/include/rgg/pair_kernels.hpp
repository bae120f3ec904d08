#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rgg {

enum class KernelKind { Auto, Scalar, Avx2 };

/// One accepted candidate: position in the candidate arrays plus the squared
/// distance to the query point.
struct PairHit {
    std::uint32_t index;
    double dist2;
};

/// Scans `count` planar candidates against one query point and appends every
/// candidate with squared distance <= delta2 to `out`. In torus mode distances
/// wrap coordinate-wise on [0, side). The scalar and AVX2 variants produce
/// bit-identical results (same operation order, no fused multiply-add).
using PairKernel2d = void (*)(double qx, double qy, const double* xs,
                              const double* ys, std::size_t count, double delta2,
                              double side, bool torus, std::vector<PairHit>& out);

void pair_kernel_2d_scalar(double qx, double qy, const double* xs, const double* ys,
                           std::size_t count, double delta2, double side, bool torus,
                           std::vector<PairHit>& out);
void pair_kernel_2d_avx2(double qx, double qy, const double* xs, const double* ys,
                         std::size_t count, double delta2, double side, bool torus,
                         std::vector<PairHit>& out);

bool avx2_available();

/// Resolves Auto to the best available implementation.
PairKernel2d select_pair_kernel_2d(KernelKind kind);

}  // namespace rgg

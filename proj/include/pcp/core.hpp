#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pcp {

template <int D>
using Vec = Eigen::Matrix<double, D, 1>;
template <int D>
using Mat = Eigen::Matrix<double, D, D>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

/// Axis-aligned simulation domain with optional per-axis periodicity.
template <int D>
struct Box {
    Vec<D> lo = Vec<D>::Zero();
    Vec<D> hi = Vec<D>::Ones();
    std::array<bool, D> periodic{};

    Vec<D> extent() const { return hi - lo; }

    /// Wrap a position into [lo, hi) along periodic axes.
    Vec<D> wrap(Vec<D> x) const {
        for (int d = 0; d < D; ++d) {
            if (!periodic[d]) continue;
            const double ext = hi[d] - lo[d];
            double r = std::fmod(x[d] - lo[d], ext);
            if (r < 0.0) r += ext;
            x[d] = lo[d] + r;
        }
        return x;
    }

    /// Minimum-image displacement a - b.
    Vec<D> min_image(const Vec<D>& a, const Vec<D>& b) const {
        Vec<D> d = a - b;
        for (int ax = 0; ax < D; ++ax) {
            if (!periodic[ax]) continue;
            d[ax] = std::remainder(d[ax], hi[ax] - lo[ax]);
        }
        return d;
    }

    double distance(const Vec<D>& a, const Vec<D>& b) const {
        return min_image(a, b).norm();
    }

    bool contains(const Vec<D>& x) const {
        for (int d = 0; d < D; ++d)
            if (x[d] < lo[d] || x[d] > hi[d]) return false;
        return true;
    }
};

/// Execution mode for the data-parallel kernels. `serial` runs the same
/// per-element code on one thread and is the reference path used in tests
/// and benchmarks.
enum class RunMode { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Index-parallel driver. Every call writes only to slot i, so serial and
/// parallel execution produce bit-identical results.
template <class F>
void for_each_index(std::size_t n, RunMode mode, F&& f) {
    if (mode == RunMode::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            f(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) f(i);
    }
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace pcp

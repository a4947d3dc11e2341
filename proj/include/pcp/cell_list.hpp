#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>

#include "pcp/core.hpp"

namespace pcp {

/// Uniform cell-list index over a fixed point set. Build is single-threaded;
/// a built index is immutable and may be queried concurrently.
///
/// Distances respect per-axis periodicity of the domain (minimum image).
/// Queries with radius larger than the cell size scan as many cell shells
/// as needed, so one index can serve several cutoffs.
template <int D>
class CellList {
   public:
    CellList() = default;

    CellList(std::vector<Vec<D>> points, double cell_size, const Box<D>& domain) : box_(domain), cell_size_(cell_size) {
        require(cell_size > 0.0, "CellList: cell_size must be positive");
        for (int d = 0; d < D; ++d) {
            const double ext = box_.hi[d] - box_.lo[d];
            require(ext > 0.0, "CellList: degenerate domain");
            ncells_[d] = std::max<long>(1, static_cast<long>(std::floor(ext / cell_size)));
            width_[d] = ext / static_cast<double>(ncells_[d]);
        }
        points_ = std::move(points);
        long total = 1;
        for (int d = 0; d < D; ++d) total *= ncells_[d];
        cells_.assign(static_cast<std::size_t>(total), {});
        for (std::size_t i = 0; i < points_.size(); ++i) {
            Vec<D> p = box_.wrap(points_[i]);
            if (!box_.contains(p))
                throw std::invalid_argument("CellList: point " + std::to_string(i) + " outside non-periodic domain");
            points_[i] = p;
            cells_[linear_cell(cell_of(p))].push_back(i);
        }
    }

    std::size_t size() const { return points_.size(); }
    const Box<D>& domain() const { return box_; }
    double cell_size() const { return cell_size_; }
    const Vec<D>& point(std::size_t i) const { return points_[i]; }

    /// All indices with periodic distance(query, point) <= radius,
    /// ascending. Boundary is inclusive and compared exactly.
    std::vector<std::size_t> neighbors_within(const Vec<D>& query, double radius) const {
        std::vector<std::size_t> out;
        if (points_.empty() || radius < 0.0) return out;
        const Vec<D> q = box_.wrap(query);
        const std::array<long, D> qc = cell_of(q);
        std::array<long, D> lo{}, hi{};
        for (int d = 0; d < D; ++d) {
            const long reach = static_cast<long>(std::floor(radius / width_[d])) + 1;
            if (box_.periodic[d] && 2 * reach + 1 >= ncells_[d]) {
                lo[d] = 0;
                hi[d] = ncells_[d] - 1;
            } else {
                lo[d] = qc[d] - reach;
                hi[d] = qc[d] + reach;
                if (!box_.periodic[d]) {
                    lo[d] = std::max<long>(lo[d], 0);
                    hi[d] = std::min<long>(hi[d], ncells_[d] - 1);
                }
            }
        }
        const double r2 = radius * radius;
        std::array<long, D> c{};
        scan_box(lo, hi, c, 0, [&](const std::array<long, D>& cc) {
            for (std::size_t idx : cells_[linear_cell(wrap_cell(cc))]) {
                const double d2 = box_.min_image(q, points_[idx]).squaredNorm();
                if (d2 <= r2) out.push_back(idx);
            }
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Index of the closest point (ties broken by smallest index).
    /// `filter`, when set, restricts the candidate set.
    std::size_t nearest_point(const Vec<D>& query, const std::function<bool(std::size_t)>& filter = {}) const {
        require(!points_.empty(), "CellList::nearest_point: empty candidate set");
        const Vec<D> q = box_.wrap(query);
        const std::array<long, D> qc = cell_of(q);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_idx = std::numeric_limits<std::size_t>::max();
        double wmin = width_[0];
        for (int d = 1; d < D; ++d) wmin = std::min(wmin, width_[d]);

        long max_shell = 0;
        for (int d = 0; d < D; ++d) max_shell = std::max(max_shell, ncells_[d]);
        for (long s = 0; s <= max_shell; ++s) {
            if (best_idx != std::numeric_limits<std::size_t>::max() && static_cast<double>(s - 1) * wmin > best) break;
            bool any_cell = false;
            for_shell(qc, s, [&](const std::array<long, D>& cc) {
                any_cell = true;
                for (std::size_t idx : cells_[linear_cell(cc)]) {
                    if (filter && !filter(idx)) continue;
                    const double d2 = box_.min_image(q, points_[idx]).squaredNorm();
                    const double dd = std::sqrt(d2);
                    if (dd < best || (dd == best && idx < best_idx)) {
                        best = dd;
                        best_idx = idx;
                    }
                }
            });
            if (!any_cell && s > 0) break;  // ring exhausted in every axis
        }
        require(best_idx != std::numeric_limits<std::size_t>::max(), "CellList::nearest_point: no candidate passes filter");
        return best_idx;
    }

   private:
    std::array<long, D> cell_of(const Vec<D>& p) const {
        std::array<long, D> c{};
        for (int d = 0; d < D; ++d) {
            long i = static_cast<long>(std::floor((p[d] - box_.lo[d]) / width_[d]));
            c[d] = std::clamp<long>(i, 0, ncells_[d] - 1);
        }
        return c;
    }

    std::array<long, D> wrap_cell(std::array<long, D> c) const {
        for (int d = 0; d < D; ++d) {
            if (box_.periodic[d]) {
                c[d] %= ncells_[d];
                if (c[d] < 0) c[d] += ncells_[d];
            }
        }
        return c;
    }

    std::size_t linear_cell(const std::array<long, D>& c) const {
        long idx = 0;
        for (int d = 0; d < D; ++d) idx = idx * ncells_[d] + c[d];
        return static_cast<std::size_t>(idx);
    }

    template <class F>
    void scan_box(const std::array<long, D>& lo, const std::array<long, D>& hi, std::array<long, D>& c, int depth, const F& f) const {
        if (depth == D) {
            f(c);
            return;
        }
        for (long v = lo[depth]; v <= hi[depth]; ++v) {
            c[depth] = v;
            scan_box(lo, hi, c, depth + 1, f);
        }
    }

    // Distinct offset range per axis: for periodic axes the wrapped ring
    // must not revisit cells, so offsets are clamped to one full period.
    std::pair<long, long> offset_range(int d, long s) const {
        long lo = -s, hi = s;
        if (box_.periodic[d]) {
            lo = std::max(lo, -(ncells_[d] / 2));
            hi = std::min(hi, (ncells_[d] - 1) / 2);
        }
        return {lo, hi};
    }

    /// Visit distinct cells at Chebyshev shell s around center (offset with
    /// max-norm exactly s after per-axis clamping). Out-of-domain cells on
    /// non-periodic axes are skipped.
    template <class F>
    void for_shell(const std::array<long, D>& center, long s, const F& f) const {
        std::array<long, D> off{};
        shell_rec(center, s, off, 0, false, f);
    }

    template <class F>
    void shell_rec(const std::array<long, D>& center, long s, std::array<long, D>& off, int depth, bool touched, const F& f) const {
        if (depth == D) {
            if (!touched && s > 0) return;
            std::array<long, D> c{};
            for (int d = 0; d < D; ++d) {
                c[d] = center[d] + off[d];
                if (!box_.periodic[d] && (c[d] < 0 || c[d] >= ncells_[d])) return;
            }
            f(wrap_cell(c));
            return;
        }
        auto [lo, hi] = offset_range(depth, s);
        for (long v = std::max(lo, -s); v <= std::min(hi, s); ++v) {
            off[depth] = v;
            shell_rec(center, s, off, depth + 1, touched || std::labs(v) == s, f);
        }
    }

    Box<D> box_;
    double cell_size_ = 0.0;
    std::array<long, D> ncells_{};
    std::array<double, D> width_{};
    std::vector<Vec<D>> points_;
    std::vector<std::vector<std::size_t>> cells_;
};

/// Convenience builder matching the particle workflow: index a point set
/// for fixed-radius and nearest queries.
template <int D>
CellList<D> build_cell_list(const std::vector<Vec<D>>& points, double cell_size, const Box<D>& domain) {
    return CellList<D>(points, cell_size, domain);
}

}  // namespace pcp

#pragma once

// Mode confidence sets for gamma-unimodal laws on R^d. If X is gamma-unimodal
// about theta0 then ||X - theta0||^gamma is unimodal about 0, so theta is kept
// when a univariate method applied to {||X_i - theta||^gamma} retains 0.

#include "modeset/methods.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace modeset::multivariate {

/// n points in R^d stored row-major, with the unimodality index gamma.
class PointCloud {
public:
    /// Throws DomainError on d == 0, a ragged buffer, non-finite entries or
    /// gamma <= 0.
    PointCloud(std::vector<double> coords, std::size_t dim, double gamma);

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size() / dim_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept
    {
        return {coords_.data() + i * dim_, dim_};
    }
    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }

private:
    std::vector<double> coords_;
    std::size_t dim_;
    double gamma_;
};

/// {||X_i - theta||_2^gamma}. Throws DomainError on a dimension mismatch.
std::vector<double> radial_transform(const PointCloud& cloud, std::span<const double> theta);

/// True iff 0 belongs to the univariate set built on the radial transform.
bool contains_mode_candidate(const PointCloud& cloud, std::span<const double> theta,
                             Probability alpha, Method method, const MethodConfig& cfg);

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Axis-aligned bounding box of the cloud, padded by `margin` times each
/// side length.
Box bounding_box(const PointCloud& cloud, double margin = 0.0);

/// Membership of each cell centre of a regular grid over a box. Cells are
/// numbered with the first coordinate varying fastest.
struct MembershipGrid {
    Box box;
    std::vector<std::size_t> resolution;
    std::vector<bool> mask;

    [[nodiscard]] std::size_t cell_count() const noexcept { return mask.size(); }
    [[nodiscard]] std::vector<double> center(std::size_t cell) const;
    [[nodiscard]] std::size_t members() const noexcept;
};

inline constexpr std::size_t kMaxScanCells = 10'000'000;

/// Evaluates contains_mode_candidate at every cell centre. d must be 1, 2 or
/// 3 and the cell count at most kMaxScanCells. Deterministic for any thread
/// count.
MembershipGrid scan_region(const PointCloud& cloud, const Box& box,
                           std::span<const std::size_t> resolution, Probability alpha,
                           Method method, const MethodConfig& cfg, std::size_t threads = 1);

} // namespace modeset::multivariate

#include "modeset/multivariate.hpp"

#include "modeset/error.hpp"
#include "modeset/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace modeset::multivariate {

PointCloud::PointCloud(std::vector<double> coords, std::size_t dim, double gamma)
    : coords_(std::move(coords)), dim_(dim), gamma_(gamma)
{
    if (dim_ == 0) throw DomainError("point dimension must be at least 1");
    if (coords_.empty() || coords_.size() % dim_ != 0) {
        throw DomainError("coordinate buffer is empty or not a multiple of the dimension");
    }
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw DomainError("gamma must be positive");
    for (double v : coords_) {
        if (!std::isfinite(v)) throw DomainError("point cloud contains a non-finite coordinate");
    }
}

std::vector<double> radial_transform(const PointCloud& cloud, std::span<const double> theta)
{
    if (theta.size() != cloud.dim()) {
        std::ostringstream msg;
        msg << "theta has dimension " << theta.size() << " but the cloud has " << cloud.dim();
        throw DomainError(msg.str());
    }
    std::vector<double> out(cloud.size());
    const double g = cloud.gamma();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        double sq = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            const double diff = p[k] - theta[k];
            sq += diff * diff;
        }
        out[i] = g == 2.0 ? sq : std::pow(std::sqrt(sq), g);
    }
    return out;
}

bool contains_mode_candidate(const PointCloud& cloud, std::span<const double> theta,
                             Probability alpha, Method method, const MethodConfig& cfg)
{
    const auto y = radial_transform(cloud, theta);
    return run_method(method, y, alpha, cfg).set.contains(0.0);
}

Box bounding_box(const PointCloud& cloud, double margin)
{
    const std::size_t d = cloud.dim();
    Box box{std::vector<double>(d, std::numeric_limits<double>::infinity()),
            std::vector<double>(d, -std::numeric_limits<double>::infinity())};
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (std::size_t k = 0; k < d; ++k) {
            box.lo[k] = std::min(box.lo[k], p[k]);
            box.hi[k] = std::max(box.hi[k], p[k]);
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        const double pad = margin * (box.hi[k] - box.lo[k]);
        box.lo[k] -= pad;
        box.hi[k] += pad;
    }
    return box;
}

std::vector<double> MembershipGrid::center(std::size_t cell) const
{
    std::vector<double> c(resolution.size());
    for (std::size_t k = 0; k < resolution.size(); ++k) {
        const std::size_t idx = cell % resolution[k];
        cell /= resolution[k];
        const double step = (box.hi[k] - box.lo[k]) / static_cast<double>(resolution[k]);
        c[k] = box.lo[k] + (static_cast<double>(idx) + 0.5) * step;
    }
    return c;
}

std::size_t MembershipGrid::members() const noexcept
{
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

MembershipGrid scan_region(const PointCloud& cloud, const Box& box,
                           std::span<const std::size_t> resolution, Probability alpha,
                           Method method, const MethodConfig& cfg, std::size_t threads)
{
    const std::size_t d = cloud.dim();
    if (d < 1 || d > 3) throw DomainError("grid scans support dimensions 1 to 3");
    if (box.lo.size() != d || box.hi.size() != d || resolution.size() != d) {
        throw DomainError("box and resolution must match the cloud dimension");
    }
    std::size_t cells = 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (resolution[k] == 0) throw DomainError("resolution must be positive");
        if (!(box.hi[k] >= box.lo[k])) throw DomainError("box upper bound below lower bound");
        if (cells > kMaxScanCells / resolution[k]) {
            throw DomainError("grid resolution exceeds the 10^7 cell limit");
        }
        cells *= resolution[k];
    }

    MembershipGrid grid{box, {resolution.begin(), resolution.end()}, {}};
    std::vector<char> hits(cells, 0);
    parallel_for(cells, threads, [&](std::size_t cell) {
        const auto theta = grid.center(cell);
        hits[cell] = contains_mode_candidate(cloud, theta, alpha, method, cfg) ? 1 : 0;
    });
    grid.mask.assign(hits.begin(), hits.end());
    return grid;
}

} // namespace modeset::multivariate

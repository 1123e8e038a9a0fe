#pragma once

#include <span>
#include <vector>

#include "chnls/grid.hpp"

namespace chnls {

enum class PeakKind { Maximum, Minimum };

struct PeakSample {
    double position = 0.0;
    /// Density |psi|^2 at the extremum.
    double amplitude = 1.0;
    bool found = false;
};

/// |psi|^2 at every node.
std::vector<double> density(const SpectralField& psi);

/// Extremum of `values` among nodes within `half_width` of `center`
/// (periodic distance), refined by a three-point parabola.
PeakSample locate_extremum(std::span<const double> values, const GridSpec& grid, double center, double half_width,
                           PeakKind kind);

/// Follows one density extremum from snapshot to snapshot. The search window
/// is centred on the last position advanced by `velocity_guess`; a sample
/// whose deviation from the unit background is below `noise_threshold`
/// counts as lost.
class PeakTracker {
public:
    PeakTracker(PeakKind kind, double initial_position, double velocity_guess, double half_width,
                double noise_threshold);

    PeakSample update(const SpectralField& psi, double t);
    PeakSample update(std::span<const double> density, const GridSpec& grid, double t);

    /// Centre of the next search window at time t.
    double predicted(double t) const noexcept { return started_ ? position_ + velocity_ * (t - last_t_) : position_; }

    /// While coasting the window moves at the current velocity and ignores
    /// what it finds; used while two tracked structures overlap.
    void set_coasting(bool on) noexcept { coasting_ = on; }

    PeakKind kind() const noexcept { return kind_; }
    double velocity() const noexcept { return velocity_; }
    double half_width() const noexcept { return half_width_; }

private:
    PeakKind kind_;
    double position_;
    double velocity_;
    double half_width_;
    double threshold_;
    double last_t_ = 0.0;
    bool started_ = false;
    bool coasting_ = false;
    bool locked_ = false;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares; needs at least two distinct abscissae.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Number of separate structures in [x_min, x_max] whose density deviates
/// from 1 by more than `threshold` over a contiguous run at least
/// `min_width` long.
int count_structures(std::span<const double> density, const GridSpec& grid, double x_min, double x_max,
                     double threshold, double min_width);

}  // namespace chnls

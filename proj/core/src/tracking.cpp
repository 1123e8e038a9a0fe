#include "chnls/tracking.hpp"

#include <cmath>

#include "chnls/error.hpp"

namespace chnls {

namespace {

constexpr double kVelocityRelaxation = 0.2;

double wrap(double x, double half_length) {
    const double period = 2.0 * half_length;
    return x - period * std::floor((x + half_length) / period);
}

}  // namespace

std::vector<double> density(const SpectralField& psi) {
    std::vector<double> out(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        out[j] = std::norm(psi[j]);
    }
    return out;
}

PeakSample locate_extremum(std::span<const double> values, const GridSpec& grid, double center, double half_width,
                           PeakKind kind) {
    const auto n = grid.n_points();
    if (values.size() != n) {
        throw PreconditionError("locate_extremum: values do not match grid");
    }
    const double sign = kind == PeakKind::Maximum ? 1.0 : -1.0;
    const double L = grid.half_length();
    const double c = wrap(center, L);
    const auto span_nodes = static_cast<long>(std::ceil(half_width / grid.dx()));
    const long base = std::lround((c + L) / grid.dx());
    const auto nl = static_cast<long>(n);
    const auto index = [nl](long j) { return static_cast<std::size_t>(((j % nl) + nl) % nl); };

    long best = base;
    double best_value = -INFINITY;
    for (long j = base - span_nodes; j <= base + span_nodes; ++j) {
        const double v = sign * values[index(j)];
        if (v > best_value) {
            best_value = v;
            best = j;
        }
    }
    const double fm = values[index(best - 1)];
    const double f0 = values[index(best)];
    const double fp = values[index(best + 1)];
    const double curvature = fm - 2.0 * f0 + fp;
    double offset = 0.0;
    double peak = f0;
    if (curvature != 0.0) {
        offset = 0.5 * (fm - fp) / curvature;
        if (std::abs(offset) <= 1.0) {
            peak = f0 - 0.25 * (fm - fp) * offset;
        } else {
            offset = 0.0;
        }
    }
    const double x = -L + (static_cast<double>(best) + offset) * grid.dx();
    return PeakSample{wrap(x, L), peak, true};
}

PeakTracker::PeakTracker(PeakKind kind, double initial_position, double velocity_guess, double half_width,
                         double noise_threshold)
    : kind_(kind),
      position_(initial_position),
      velocity_(velocity_guess),
      half_width_(half_width),
      threshold_(noise_threshold) {}

PeakSample PeakTracker::update(const SpectralField& psi, double t) { return update(density(psi), psi.grid(), t); }

PeakSample PeakTracker::update(std::span<const double> values, const GridSpec& grid, double t) {
    const double center = predicted(t);
    auto sample = locate_extremum(values, grid, center, half_width_, kind_);
    const double deviation = kind_ == PeakKind::Maximum ? sample.amplitude - 1.0 : 1.0 - sample.amplitude;
    sample.found = deviation > threshold_;
    // The window velocity relaxes toward the displacement rate between
    // consecutive locks, so a poor initial guess (boosted runs) does not leave
    // the window trailing. A lock after coasting or a miss only resets the
    // reference point.
    const bool locked = sample.found && !coasting_;
    if (locked && locked_ && t > last_t_) {
        const double seen = wrap(sample.position - position_, grid.half_length()) / (t - last_t_);
        velocity_ += kVelocityRelaxation * (seen - velocity_);
    }
    position_ = locked ? sample.position : center;
    locked_ = locked;
    last_t_ = t;
    started_ = true;
    return sample;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw PreconditionError("fit_line: need at least two points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw PreconditionError("fit_line: abscissae are all equal");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

int count_structures(std::span<const double> values, const GridSpec& grid, double x_min, double x_max,
                     double threshold, double min_width) {
    int count = 0;
    int run_sign = 0;
    double run_start = 0.0;
    double run_end = 0.0;
    const auto close_run = [&] {
        if (run_sign != 0 && run_end - run_start + grid.dx() >= min_width) {
            ++count;
        }
        run_sign = 0;
    };
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double x = grid.node(j);
        if (x < x_min || x > x_max) {
            continue;
        }
        const double dev = values[j] - 1.0;
        const int sign = dev > threshold ? 1 : (dev < -threshold ? -1 : 0);
        if (sign != run_sign) {
            close_run();
            if (sign != 0) {
                run_sign = sign;
                run_start = x;
            }
        }
        run_end = x;
    }
    close_run();
    return count;
}

}  // namespace chnls

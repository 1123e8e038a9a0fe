#pragma once

#include <cmath>
#include <complex>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "chnls/grid.hpp"

namespace testing {

inline double max_abs_diff(std::span<const chnls::cx> a, std::span<const chnls::cx> b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        m = std::max(m, std::abs(a[j] - b[j]));
    }
    return m;
}

inline double max_abs(std::span<const chnls::cx> a) {
    double m = 0.0;
    for (const auto& z : a) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

/// Band-limited random field: random coefficients on |k| <= kmax modes.
inline chnls::SpectralField random_field(const chnls::GridPtr& grid, unsigned seed, int kmax = 6) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd;
    const auto n = grid->n_points();
    std::vector<chnls::cx> spec(n);
    for (int m = -kmax; m <= kmax; ++m) {
        spec[static_cast<std::size_t>((m + static_cast<int>(n)) % static_cast<int>(n))] =
            chnls::cx{nd(gen), nd(gen)} * static_cast<double>(n);
    }
    return chnls::from_spectrum(grid, spec);
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("chnls_test_" + tag + "_" + std::to_string(rd()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testing

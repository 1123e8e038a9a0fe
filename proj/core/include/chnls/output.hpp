#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "chnls/config.hpp"
#include "chnls/etdrk4.hpp"
#include "chnls/tracking.hpp"

namespace chnls {

std::string_view software_version() noexcept;

struct EmittedFile {
    std::string path;  ///< relative to the run directory
    std::uintmax_t bytes = 0;
    std::string sha256;
};

/// Provenance record of one run.
struct RunManifest {
    RunConfig config;
    nlohmann::json derived = nlohmann::json::object();
    std::optional<double> applied_nu;
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> flags;
    std::string software_version;
    std::string started_at;
    double wall_seconds = 0.0;
    std::string status = "pending";
    std::vector<EmittedFile> files;

    nlohmann::json to_json() const;
};

/// One row of series.csv. Missing quantities are NaN and written as "nan".
struct SeriesRow {
    double t = 0.0;
    std::optional<PeakSample> peak_1;
    std::optional<PeakSample> peak_2;
    double q_functional = 0.0;
    double l2_vs_reference = std::numeric_limits<double>::quiet_NaN();
};

/// Hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

/// Shortest decimal text that round-trips a double ("nan" for NaN).
std::string format_number(double v);

/// "t_00012.5000.csv"
std::string snapshot_filename(double t);

/// Writes one run directory:
///   manifest.json, series.csv, snapshots/t_<time>.csv
/// plus any experiment-specific CSV files. The manifest is written when the
/// writer is opened (status "running") and rewritten by `finalize` with the
/// checksum of every emitted file. If the writer is destroyed without
/// `finalize`, or any write fails, the files it created are removed.
class OutputWriter {
public:
    OutputWriter(std::filesystem::path dir, RunManifest& manifest);
    ~OutputWriter();

    OutputWriter(const OutputWriter&) = delete;
    OutputWriter& operator=(const OutputWriter&) = delete;

    const std::filesystem::path& dir() const noexcept { return dir_; }

    void write_series(std::span<const SeriesRow> rows);
    /// Columns: x, re_psi, im_psi, density. Only nodes inside `x_range` are written.
    void write_snapshot(const SpectralField& psi, double t, std::optional<std::array<double, 2>> x_range);
    /// Arbitrary CSV: a header line and rows of numbers.
    void write_table(const std::string& relative, std::span<const std::string> header,
                     std::span<const std::vector<double>> rows);

    /// Records checksums and rewrites manifest.json with `status`.
    void finalize(const std::string& status);

private:
    void write_file(const std::string& relative, const std::string& content);
    void write_manifest();
    void remove_written() noexcept;

    std::filesystem::path dir_;
    RunManifest& manifest_;
    std::vector<std::string> written_;
    bool finalized_ = false;
};

/// Writes manifest, series and snapshots of a finished trajectory.
void write_outputs(RunManifest& manifest, std::span<const SeriesRow> series, const Trajectory& snapshots);

}  // namespace chnls

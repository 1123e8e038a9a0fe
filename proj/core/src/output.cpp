#include "chnls/output.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "chnls/error.hpp"

#ifndef CHNLS_VERSION
#define CHNLS_VERSION "0.0.0"
#endif

namespace chnls {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view software_version() noexcept { return CHNLS_VERSION; }

json RunManifest::to_json() const {
    json j;
    j["config"] = chnls::to_json(config);
    j["derived"] = derived;
    j["applied_nu"] = applied_nu ? json(*applied_nu) : json(nullptr);
    j["results"] = results;
    j["flags"] = flags;
    j["software_version"] = software_version;
    j["started_at"] = started_at;
    j["wall_seconds"] = wall_seconds;
    j["status"] = status;
    json files_json = json::array();
    for (const auto& f : files) {
        files_json.push_back({{"path", f.path}, {"bytes", f.bytes}, {"sha256", f.sha256}});
    }
    j["files"] = files_json;
    return j;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path.string() + "' for checksumming");
    }
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (in.gcount() > 0) {
            EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
        }
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

std::string snapshot_filename(double t) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "t_%010.4f.csv", t);
    return buf;
}

OutputWriter::OutputWriter(fs::path dir, RunManifest& manifest) : dir_(std::move(dir)), manifest_(manifest) {
    std::error_code ec;
    fs::create_directories(dir_ / "snapshots", ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    }
    manifest_.status = "running";
    write_manifest();
}

OutputWriter::~OutputWriter() {
    if (!finalized_) {
        remove_written();
    }
}

void OutputWriter::write_file(const std::string& relative, const std::string& content) {
    const auto path = dir_ / relative;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (ec || !out) {
        remove_written();
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    written_.push_back(relative);
    out << content;
    out.close();
    if (!out) {
        remove_written();
        throw IoError("failed writing '" + path.string() + "'");
    }
}

void OutputWriter::write_manifest() {
    std::ofstream out(dir_ / "manifest.json", std::ios::trunc);
    if (!out) {
        remove_written();
        throw IoError("cannot write manifest in '" + dir_.string() + "'");
    }
    out << manifest_.to_json().dump(2) << '\n';
    if (!out) {
        remove_written();
        throw IoError("failed writing manifest in '" + dir_.string() + "'");
    }
}

void OutputWriter::remove_written() noexcept {
    std::error_code ec;
    for (const auto& rel : written_) {
        fs::remove(dir_ / rel, ec);
    }
    written_.clear();
}

void OutputWriter::write_series(std::span<const SeriesRow> rows) {
    std::string text = "t,peak_pos_1,peak_amp_1,peak_pos_2,peak_amp_2,q_functional,l2_vs_reference\n";
    const auto peak = [](const std::optional<PeakSample>& p) {
        if (!p || !p->found) {
            return std::string("nan,nan");
        }
        return format_number(p->position) + "," + format_number(p->amplitude);
    };
    for (const auto& r : rows) {
        text += format_number(r.t) + "," + peak(r.peak_1) + "," + peak(r.peak_2) + "," +
                format_number(r.q_functional) + "," + format_number(r.l2_vs_reference) + "\n";
    }
    write_file("series.csv", text);
}

void OutputWriter::write_snapshot(const SpectralField& psi, double t, std::optional<std::array<double, 2>> x_range) {
    std::string text = "x,re_psi,im_psi,density\n";
    const auto& grid = psi.grid();
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double x = grid.node(j);
        if (x_range && (x < (*x_range)[0] || x > (*x_range)[1])) {
            continue;
        }
        text += format_number(x) + "," + format_number(psi[j].real()) + "," + format_number(psi[j].imag()) + "," +
                format_number(std::norm(psi[j])) + "\n";
    }
    write_file("snapshots/" + snapshot_filename(t), text);
}

void OutputWriter::write_table(const std::string& relative, std::span<const std::string> header,
                               std::span<const std::vector<double>> rows) {
    std::string text;
    for (std::size_t i = 0; i < header.size(); ++i) {
        text += (i ? "," : "") + header[i];
    }
    text += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            text += (i ? "," : "") + format_number(row[i]);
        }
        text += "\n";
    }
    write_file(relative, text);
}

void OutputWriter::finalize(const std::string& status) {
    manifest_.files.clear();
    for (const auto& rel : written_) {
        const auto path = dir_ / rel;
        manifest_.files.push_back(EmittedFile{rel, fs::file_size(path), sha256_file(path)});
    }
    manifest_.status = status;
    write_manifest();
    finalized_ = true;
}

void write_outputs(RunManifest& manifest, std::span<const SeriesRow> series, const Trajectory& snapshots) {
    if (manifest.config.output_dir.empty()) {
        throw PreconditionError("write_outputs: manifest has no output directory");
    }
    const std::string final_status =
        manifest.status == "running" || manifest.status == "pending" ? "completed" : manifest.status;
    OutputWriter writer(manifest.config.output_dir, manifest);
    if (!series.empty()) {
        writer.write_series(series);
    }
    for (std::size_t s = 0; s < snapshots.snapshots.size(); ++s) {
        writer.write_snapshot(snapshots.snapshots[s], snapshots.times[s], manifest.config.snapshot_x_range);
    }
    writer.finalize(final_status);
}

}  // namespace chnls

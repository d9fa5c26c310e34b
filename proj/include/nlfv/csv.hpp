#pragma once

// Text output: CSV formatting for the study results and atomic file writes.
// All floating-point values are rendered with a fixed "%.7e" format so
// repeated runs of the same configuration produce byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace nlfv {

inline std::string fmt_sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.7e", v);
    return buf;
}

// Compact label for a time value ("0.5", "2"), used in file names.
inline std::string trim_time_label(double t) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

inline std::string format_error_table_csv(const ErrorTable& table) {
    std::string out = "dx,l1_error,eoa\n";
    for (const ErrorRow& row : table.rows) {
        out += row.dx.str();
        out += ',';
        out += fmt_sci(row.error);
        out += ',';
        if (row.order) out += fmt_sci(*row.order);
        out += '\n';
    }
    return out;
}

inline std::string format_snapshot_csv(const Snapshot& snap) {
    std::string out = "x,rho\n";
    for (std::size_t i = 0; i < snap.x.size(); ++i) {
        out += fmt_sci(snap.x[i]);
        out += ',';
        out += fmt_sci(snap.rho[i]);
        out += '\n';
    }
    return out;
}

// One table for both cases: case label, look-ahead radius, L1 distance to
// the local Godunov solution.
inline std::string format_distance_table_csv(
    const std::vector<Example2Result>& results) {
    std::string out = "case,eta,l1_distance\n";
    for (const Example2Result& result : results) {
        for (const DistanceRow& row : result.rows) {
            out += case_name(result.case_id);
            out += ',';
            out += fmt_sci(row.eta);
            out += ',';
            out += fmt_sci(row.distance);
            out += '\n';
        }
    }
    return out;
}

// Creates the directory (and parents) if needed, then verifies it is
// actually writable by creating and removing a probe file.  Called before
// any computation so a bad output path fails fast.
inline void ensure_writable_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" +
                                 dir.string() + "': " + ec.message());
    }
    const std::filesystem::path probe = dir / ".write_probe";
    {
        std::ofstream f(probe, std::ios::binary | std::ios::trunc);
        f << "probe";
        if (!f) {
            throw std::runtime_error("output directory '" + dir.string() +
                                     "' is not writable");
        }
    }
    std::filesystem::remove(probe, ec);
}

// Writes via a temporary file and a rename, so readers never observe a
// partially written file.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    const std::filesystem::path tmp =
        path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f.write(content.data(),
                static_cast<std::streamsize>(content.size()));
        if (!f) {
            throw std::runtime_error("failed to write '" + tmp.string() +
                                     "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw std::runtime_error("failed to move '" + tmp.string() +
                                 "' into place: " + ec.message());
    }
}

}  // namespace nlfv

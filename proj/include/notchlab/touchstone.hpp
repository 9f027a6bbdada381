#pragma once

#include "notchlab/engine.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace notchlab {

/// Option-line settings of a two-port Touchstone (v1) document.
struct TouchstoneOptions {
    std::string freq_unit = "HZ"; ///< HZ, KHZ, MHZ or GHZ
    std::string format = "RI";    ///< RI, MA or DB
    double z_ref_ohm = 50.0;
};

struct TouchstoneDocument {
    TouchstoneOptions options;
    FrequencyResponse response;
};

/// Writes a two-port file: option line "# HZ S RI R <z>", then rows of
/// nine numbers (f, then Re/Im of S11, S21, S12, S22). `stamp` prepends a
/// generation-time comment; off by default so outputs stay byte-identical.
void write_touchstone(const FrequencyResponse& resp, std::ostream& out, bool stamp = false);
void write_touchstone(const FrequencyResponse& resp, const std::filesystem::path& path,
                      bool stamp = false);

/// Reads a two-port file. Accepts RI/MA/DB data and Hz through GHz units;
/// frequencies in the returned response are always Hz. Parse failures name
/// the offending line.
TouchstoneDocument read_touchstone(std::istream& in, const std::string& origin = "<stream>");
TouchstoneDocument read_touchstone(const std::filesystem::path& path);

} // namespace notchlab

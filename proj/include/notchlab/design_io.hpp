#pragma once

#include "notchlab/synthesis.hpp"
#include "notchlab/topologies.hpp"
#include "notchlab/varactor.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace notchlab {

/// On-disk design document: the synthesized element set plus the chosen
/// topology, loss model and an optional varactor-profile reference.
/// Stored as JSON with SI-unit-suffixed field names; round-trips exactly.
struct DesignFile {
    SynthesizedDesign design;
    TopologyId topology = TopologyId::practical_v1;
    LossModel loss;
    std::optional<std::string> varactor_profile;
};

DesignFile load_design(const std::filesystem::path& path);
void save_design(const DesignFile& file, const std::filesystem::path& path);

/// Varactor profiles live in their own files so device data stays
/// swappable without touching designs.
VaractorModel load_varactor_profile(const std::filesystem::path& path);
void save_varactor_profile(const VaractorModel& model, const std::filesystem::path& path,
                           const std::string& comment = {});

} // namespace notchlab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cryomux/campaign.hpp"
#include "cryomux/mux.hpp"
#include "cryomux/planner.hpp"
#include "cryomux/transmon.hpp"

namespace cryomux {

struct OutputConfig {
    std::string directory = "out";
    bool write_csv = true;
    bool write_json = true;
};

/// Fully resolved run configuration. Defaults mirror the characterized
/// hardware anchors, so an empty JSON object is a valid config.
struct RunConfig {
    std::vector<TransmonParams> qubits;
    MuxModel mux;
    NoiseParams noise;
    CampaignConfig campaign;
    SweepConfig sweep;
    BudgetConfig budget;
    OutputConfig outputs;
};

RunConfig default_run_config();

/// Parses and validates a JSON config file. Unknown keys and malformed values
/// raise ConfigError with the offending key path; relative fixture paths
/// resolve against the config file's directory.
RunConfig load_run_config(const std::string& path);

/// Applies the same overrides from an already-parsed JSON text (path used only
/// for messages and relative-path resolution).
RunConfig parse_run_config(const std::string& json_text, const std::string& origin = "<inline>");

/// Canonical serialization of the resolved config (sorted keys); the
/// fingerprint is FNV-1a 64 over this string.
std::string dump_config(const RunConfig& cfg);
std::uint64_t config_fingerprint(const RunConfig& cfg);

std::uint64_t fnv1a64(const std::string& data);

/// Bundled qubit table (the characterized 20-qubit sample). Rows 1-3 and 20
/// carry the full readout parameters; the rest have spectra and coherence
/// times only.
const std::vector<TransmonParams>& builtin_qubits();

/// Case-sensitive lookup by name; returns nullptr when absent.
const TransmonParams* find_qubit(const std::vector<TransmonParams>& qubits,
                                 const std::string& name);

}  // namespace cryomux

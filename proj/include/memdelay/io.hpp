#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "memdelay/certificates.hpp"
#include "memdelay/state.hpp"

namespace memdelay {

/// trajectory.csv: t, E_S, E, kinetic, potential, memory_term, delay_term.
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);

/// Per-mode displacement/velocity snapshot rows: t, mode, u, v.
void write_snapshot_csv(const std::string& path, const Trajectory& trajectory);

nlohmann::json constants_to_json(const DecayConstants& constants);
DecayConstants constants_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const CertificateReport& report);

/// Formats a double at 17 significant digits (the file-output contract).
std::string format_double(double value);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace memdelay

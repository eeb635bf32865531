#pragma once

#include <ostream>
#include <span>

#include <nlohmann/json.hpp>

#include "refint/interference.hpp"
#include "refint/path_tracer.hpp"
#include "refint/scans.hpp"

namespace refint {

/// Per-path CSV, one row per path:
/// exit_angle_deg,n1,beta_rad,n2,n3,path_cm,amplitude_raw,amplitude_paper_scaled,
/// x_A_mm,x_B_mm,x_C_mm,transmitted
void write_table_csv(std::ostream& out, std::span<const TracedPath> paths);
void write_table_csv(std::ostream& out, std::span<const ExitChannel> channels);

/// Human-readable table rounded to 2 decimals (deg, cm) and 4 decimals (rad).
void write_table_display(std::ostream& out, std::span<const ExitChannel> channels);

/// phi_rad,sin_phi,intensity,intensity_no_envelope
void write_pattern_csv(std::ostream& out, const FringePattern& pattern,
                       const FringePattern& no_envelope);

/// alpha_deg,exit_angle_deg,rel_intensity (dark rows leave the last two empty)
void write_alpha_scan_csv(std::ostream& out, std::span<const IncidenceRecord> records);

/// lambda_angstrom,order_sum,exit_angle_deg (dark rows leave the last two empty)
void write_lambda_scan_csv(std::ostream& out, std::span<const WavelengthRecord> records);

nlohmann::json trace_to_json(std::span<const ExitChannel> channels);

}  // namespace refint

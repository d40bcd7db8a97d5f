#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "thermoqvi/checks.hpp"

namespace thermoqvi {

/// Formats v with 17 significant digits (shortest round-trippable form).
std::string format_double(double v);

/// Node table `i,j,x,y,value` (2D) or `i,x,value` (1D), row-major,
/// full double precision.
std::string field_csv(const ScalarField& field);
void write_field_csv(const std::filesystem::path& path, const ScalarField& field);
ScalarField read_field_csv(const std::filesystem::path& path);

/// Legacy-VTK structured-points rendering of one field.
void write_field_vtk(const std::filesystem::path& path, const ScalarField& field,
                     const std::string& name);

/// One CSV per field (theta1, theta2, phi, u, chi, chi_relaxed) plus
/// report.json with the solve report and condition margins.
void write_state(const std::filesystem::path& dir, const EllipticState& state,
                 const Coefficients& coeffs, const Sources& src,
                 const std::string& config_hash, bool vtk = false);
EllipticState read_state(const std::filesystem::path& dir);

/// step_<k>/ directories of field CSVs plus trajectory.csv with columns
/// k,t,||theta1||_inf,||theta1-theta2||_inf,contact_fraction,residual.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const std::string& config_hash, bool vtk = false);
Trajectory read_trajectory(const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// FNV-1a of the raw bytes, as fixed-width hex.
std::string content_hash(const std::string& bytes);

}  // namespace thermoqvi

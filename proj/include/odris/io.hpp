#pragma once

#include <string>
#include <vector>

#include "odris/linkrate.hpp"
#include "odris/scene.hpp"

namespace odris::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Shortest stable decimal rendering used in all CSV output ("%.12g").
std::string format_double(double v);

// Codebook files are a JSON array of mapping rows:
//   {"code": "0100001000", "mode": "reflect", "theta_deg": 31.22,
//    "phi_deg": -27.39, "coeff": 1.0}
// Bit strings are ASCII '0'/'1', most significant bit first.
std::vector<TableRow> codebook_rows_from_json(const std::string& text);
std::string codebook_rows_to_json(const std::vector<TableRow>& rows);
Codebook load_codebook_file(const std::string& path);
void save_codebook_file(const Codebook& book, const std::string& path);

// Scene files: {room, source, users[], layout, codebook_ref, assignments[]}.
Scene scene_from_json(const std::string& text);
std::string scene_to_json(const Scene& scene);
Scene load_scene_file(const std::string& path);
void save_scene_file(const Scene& scene, const std::string& path);

/// Per-element code listing; inactive or unassigned elements carry the "off"
/// marker instead of a bit string.
std::string codes_csv(const Scene& scene);

/// Decoded element states (element_index, mode, theta_r, phi_r, theta_t,
/// phi_t, R, T); blank angle columns where a side is absent.
std::string states_csv(const Scene& scene, const Codebook& book);

std::string budgets_csv(const std::vector<std::pair<NoiseLevel, std::vector<LinkBudget>>>& runs);

std::string sweep_csv(const SweepResult& result);

}  // namespace odris::io

#pragma once

#include "tentlab/spacetime.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>

namespace tentlab {

/// Binary field layout, every entry a little-endian IEEE-754 double:
///
///   [dim, N, L, components, values...]
///
/// values are physical samples, component-major, each component in flat
/// grid order (axis 0 slowest). Rank is inferred from components.
void write_field(std::ostream& out, const Field& field);
Field read_field(std::istream& in);
void save_field(const std::filesystem::path& path, const Field& field);
Field load_field(const std::filesystem::path& path);

/// Space-time layout: [dim, N, L, components, count, t_min, ratio], then
/// count slice blocks in the single-field value layout.
void write_spacetime(std::ostream& out, const SpaceTimeField& field);
SpaceTimeField read_spacetime(std::istream& in);
void save_spacetime(const std::filesystem::path& path, const SpaceTimeField& field);

/// {"dim", "N", "L", "rank", "values": [[...] per component]} with physical values.
nlohmann::json field_to_json(const Field& field);
Field field_from_json(const nlohmann::json& j);

}  // namespace tentlab

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "chaoskit/cli/csv.hpp"

namespace chaoskit::cli {

enum class PlotKind { Orbit, Map, Profile };

std::string_view to_string(PlotKind k) noexcept;
/// Throws InvalidConfig.
PlotKind parse_plot_kind(std::string_view name);

/// Self-contained SVG document.
///   orbit:   column "n" plus one or more norm series, log10 y axis
///   map:     columns "re", "im", "verdict", one colored cell per point
///   profile: columns "tau", "f_lower", "f_upper", log10 x axis
/// Throws IoError for an empty table, InvalidArgument for missing columns.
std::string render_svg(const Table& table, PlotKind kind);

void emit_plot(const Table& table, PlotKind kind, const std::filesystem::path& path);

}  // namespace chaoskit::cli

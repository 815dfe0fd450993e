#pragma once

#include "paley/sweep.hpp"

namespace paley {

/// Log-log scatter of each CSV's series with fitted power-law lines and a
/// legend; pure rendering of CSV content.
void emit_plot(const std::vector<std::string>& csv_paths, const std::string& out_svg);

}  // namespace paley

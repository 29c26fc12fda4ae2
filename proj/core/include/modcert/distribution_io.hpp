#pragma once

// Loading distributions and joints from JSON or CSV text.
//
//   {"weights": ["1/3", "1/3", "1/3"]}            distribution, JSON
//   {"cells": [[0, 0, "1/2"], [1, 0, "1/4"], ...]} joint, JSON
//   one weight per line, or "label,weight"          distribution, CSV
//   "row,col,weight" per line                       joint, CSV
//
// Weights may be rational strings ("1/3"), integers or decimals. The exact
// loaders accept only integers and rational strings.

#include "modcert/entropy.hpp"

#include <string>
#include <string_view>

namespace modcert {

enum class DataFormat { Json, Csv };

/// Json for *.json, Csv otherwise.
DataFormat format_for_path(std::string_view path);

/// True when the text describes a joint ("cells" key, or three CSV columns).
bool looks_like_joint(std::string_view text, DataFormat format);

RationalDistribution load_distribution_exact(std::string_view text, DataFormat format);
RealDistribution load_distribution_real(std::string_view text, DataFormat format);
RationalJoint load_joint_exact(std::string_view text, DataFormat format);
RealJoint load_joint_real(std::string_view text, DataFormat format);

std::string read_text_file(const std::string& path);

}  // namespace modcert

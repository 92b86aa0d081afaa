#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "gsteer/covariance_matrix.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/twomode.hpp"

namespace gsteer::io {

enum class Format { Json, Csv };

/// {"n_a": int, "n_b": int, "matrix": [row-major 2(n_a+n_b)^2 reals]}
CovarianceMatrix parse_cm_json(const std::string& text);

/// First line "n_a,n_b", then one matrix row per line.
CovarianceMatrix parse_cm_csv(const std::string& text);

/// Parses JSON when the first non-blank character is '{', CSV otherwise.
CovarianceMatrix parse_cm(const std::string& text);

CovarianceMatrix read_cm_file(const std::filesystem::path& path);

std::string cm_to_json(const CovarianceMatrix& sigma);
std::string cm_to_csv(const CovarianceMatrix& sigma);
std::string write_cm(const CovarianceMatrix& sigma, Format format);

/// %.17g, which round-trips every double.
std::string format_number(double x);

/// Serializes like nlohmann::json::dump but prints every float with 17
/// significant digits.
std::string dump_json(const nlohmann::json& value, int indent = 2);

/// Exactly the fields g_a_to_b, g_b_to_a, nu_a, nu_b, steerable_a_to_b,
/// steerable_b_to_a, reid_product_a, reid_product_b.
nlohmann::json to_json(const SteeringReport& report);
nlohmann::json to_json(const RegionLabel& label);
nlohmann::json to_json(const PurityProfile& profile);
nlohmann::json to_json(const EntanglementEstimate& estimate);
nlohmann::json to_json(const BoundsReport& report);
nlohmann::json to_json(const KeyRate& rate, bool bits = false);

}  // namespace gsteer::io

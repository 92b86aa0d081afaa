#include "gsteer/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "gsteer/errors.hpp"

namespace gsteer::io {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& cell) {
  const std::string t = trim(cell);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + t + "'");
  }
  if (used != t.size()) throw ParseError("not a number: '" + t + "'");
  return v;
}

int parse_modes(const std::string& cell) {
  const double v = parse_double(cell);
  if (v < 1 || v != std::floor(v) || v > 1e4) throw ParseError("invalid mode count '" + trim(cell) + "'");
  return static_cast<int>(v);
}

void dump_impl(const nlohmann::json& v, int indent, int depth, std::string& out) {
  const std::string pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent >= 0 ? "\n" : "";
  const char* colon = indent >= 0 ? ": " : ":";
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) { out += "{}"; return; }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) { out += ","; out += nl; }
        first = false;
        out += pad;
        out += nlohmann::json(it.key()).dump();
        out += colon;
        dump_impl(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) { out += "[]"; return; }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      out += "[";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) { out += nl; out += pad; }
        first = false;
        dump_impl(e, indent, depth + 1, out);
      }
      if (!flat) { out += nl; out += close_pad; }
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

CovarianceMatrix parse_cm_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n_a") || !j.contains("n_b") || !j.contains("matrix")) {
    throw ParseError("CM JSON needs the keys n_a, n_b and matrix");
  }
  if (!j["n_a"].is_number_integer() || !j["n_b"].is_number_integer()) {
    throw ParseError("n_a and n_b must be integers");
  }
  const int na = j["n_a"].get<int>();
  const int nb = j["n_b"].get<int>();
  if (na < 1 || nb < 1) throw ParseError("n_a and n_b must be positive");
  const auto& flat = j["matrix"];
  if (!flat.is_array()) throw ParseError("matrix must be a flat row-major array");
  const Eigen::Index dim = 2 * (na + nb);
  if (static_cast<Eigen::Index>(flat.size()) != dim * dim) {
    throw ParseError("matrix has " + std::to_string(flat.size()) + " entries, expected " +
                     std::to_string(dim * dim));
  }
  Matrix m(dim, dim);
  for (Eigen::Index k = 0; k < dim * dim; ++k) {
    const auto& e = flat[static_cast<std::size_t>(k)];
    if (!e.is_number()) throw ParseError("matrix entries must be numbers");
    m(k / dim, k % dim) = e.get<double>();
  }
  try {
    return CovarianceMatrix(std::move(m), na, nb);
  } catch (const StructuralError& e) {
    throw ParseError(e.what());
  }
}

CovarianceMatrix parse_cm_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty CSV");
  const auto header = split(lines[0], ',');
  if (header.size() != 2) throw ParseError("CSV header must be 'n_a,n_b'");
  const int na = parse_modes(header[0]);
  const int nb = parse_modes(header[1]);
  const Eigen::Index dim = 2 * (na + nb);
  if (static_cast<Eigen::Index>(lines.size()) != dim + 1) {
    throw ParseError("CSV has " + std::to_string(lines.size() - 1) + " matrix rows, expected " +
                     std::to_string(dim));
  }
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto cells = split(lines[static_cast<std::size_t>(i + 1)], ',');
    if (static_cast<Eigen::Index>(cells.size()) != dim) {
      throw ParseError("CSV row " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) +
                       " entries, expected " + std::to_string(dim));
    }
    for (Eigen::Index k = 0; k < dim; ++k) m(i, k) = parse_double(cells[static_cast<std::size_t>(k)]);
  }
  try {
    return CovarianceMatrix(std::move(m), na, nb);
  } catch (const StructuralError& e) {
    throw ParseError(e.what());
  }
}

CovarianceMatrix parse_cm(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_cm_json(text);
  return parse_cm_csv(text);
}

CovarianceMatrix read_cm_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_cm(buf.str());
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cm_to_json(const CovarianceMatrix& sigma) {
  std::string out = "{\"n_a\": " + std::to_string(sigma.n_a()) +
                    ", \"n_b\": " + std::to_string(sigma.n_b()) + ", \"matrix\": [";
  const Matrix& m = sigma.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i || j) out += ", ";
      out += format_number(m(i, j));
    }
  }
  out += "]}\n";
  return out;
}

std::string cm_to_csv(const CovarianceMatrix& sigma) {
  std::string out = std::to_string(sigma.n_a()) + "," + std::to_string(sigma.n_b()) + "\n";
  const Matrix& m = sigma.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += format_number(m(i, j));
    }
    out += "\n";
  }
  return out;
}

std::string write_cm(const CovarianceMatrix& sigma, Format format) {
  return format == Format::Json ? cm_to_json(sigma) : cm_to_csv(sigma);
}

std::string dump_json(const nlohmann::json& value, int indent) {
  std::string out;
  dump_impl(value, indent, 0, out);
  return out;
}

nlohmann::json to_json(const SteeringReport& r) {
  return {
      {"g_a_to_b", r.g_a_to_b},
      {"g_b_to_a", r.g_b_to_a},
      {"nu_a", r.nu_a},
      {"nu_b", r.nu_b},
      {"steerable_a_to_b", r.steerable_a_to_b},
      {"steerable_b_to_a", r.steerable_b_to_a},
      {"reid_product_a", r.reid_product_a},
      {"reid_product_b", r.reid_product_b},
  };
}

nlohmann::json to_json(const RegionLabel& label) {
  nlohmann::json j{{"physicality", to_string(label.physicality)},
                   {"steer_a_to_b", label.steer_a_to_b},
                   {"steer_b_to_a", label.steer_b_to_a}};
  j["separability"] = label.separability ? nlohmann::json(to_string(*label.separability)) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const PurityProfile& p) {
  return {{"mu_a", p.mu_a}, {"mu_b", p.mu_b}, {"mu", p.mu}, {"eta", p.eta}};
}

nlohmann::json to_json(const EntanglementEstimate& e) {
  nlohmann::json j{{"kind", to_string(e.kind)}, {"lower_bound", e.lower_bound}};
  j["value"] = e.value ? nlohmann::json(*e.value) : nlohmann::json();
  if (e.extremal_s) j["extremal_s"] = *e.extremal_s;
  return j;
}

nlohmann::json to_json(const BoundsReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"slack", c.slack}, {"holds", c.holds}});
  return {{"g_a_to_b", r.g_a_to_b}, {"g_b_to_a", r.g_b_to_a}, {"asymmetry", r.asymmetry},
          {"tolerance", r.tolerance}, {"defect", r.defect}, {"checks", checks}};
}

nlohmann::json to_json(const KeyRate& k, bool bits) {
  return {{"reconciliation", to_string(k.reconciliation)},
          {"measure", k.measure == Direction::BtoA ? "g_b_to_a" : "g_a_to_b"},
          {"unit", bits ? "bits" : "nats"},
          {"rate", bits ? k.bits() : k.nats}};
}

}  // namespace gsteer::io

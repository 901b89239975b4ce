#include "graphrd/kernel_io.hpp"

#include <sstream>
#include <vector>

#include <json.hpp>

#include "graphrd/error.hpp"
#include "graphrd/output.hpp"

namespace graphrd {

using nlohmann::json;

std::string to_json(const GraphonHandle& w) {
  json j;
  if (const auto* step = std::get_if<StepGraphon>(&w)) {
    const std::size_t n = step->size();
    j["kind"] = "step";
    j["n"] = n;
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(n);
      for (std::size_t k = 0; k < n; ++k) row[k] = (*step)(i, k);
      rows.push_back(row);
    }
    j["values"] = rows;
  } else {
    const auto& a = std::get<AnalyticGraphon>(w);
    j["kind"] = "analytic";
    j["family"] = std::string(a.family_name());
    j["params"] = a.params();
  }
  return j.dump();
}

GraphonHandle graphon_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "step") {
      const auto n = j.at("n").get<std::size_t>();
      const auto rows = j.at("values").get<std::vector<std::vector<double>>>();
      if (rows.size() != n) fail(ErrorCode::DimensionMismatch, "\"values\" must have n rows");
      Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) fail(ErrorCode::DimensionMismatch, "every row needs n entries");
        for (std::size_t k = 0; k < n; ++k) {
          a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
        }
      }
      return StepGraphon(std::move(a));
    }
    if (kind == "analytic") {
      const auto family = j.at("family").get<std::string>();
      const auto params = j.value("params", json::object()).get<std::map<std::string, double>>();
      return AnalyticGraphon::from_params(family, params);
    }
    fail(ErrorCode::ConfigError, "kernel \"kind\" must be \"step\" or \"analytic\"");
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("malformed kernel JSON: ") + e.what());
  }
}

Matrix parse_adjacency_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    std::string token;
    while (ls >> token) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(token, &pos));
        if (pos != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        fail(ErrorCode::ConfigError, "adjacency text: cannot parse '" + token + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n == 0) fail(ErrorCode::ConfigError, "adjacency text is empty");
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      fail(ErrorCode::DimensionMismatch, "adjacency row " + std::to_string(i + 1) + " has " +
                                             std::to_string(rows[i].size()) + " entries, expected " +
                                             std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return a;
}

std::string to_adjacency_text(const Matrix& a) {
  std::string out;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (k > 0) out += ' ';
      out += format_real(a(i, k));
    }
    out += '\n';
  }
  return out;
}

GraphonHandle load_graphon(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (path.extension() == ".json") return graphon_from_json(text);
  return StepGraphon(parse_adjacency_text(text));
}

}  // namespace graphrd

#include "bellscope/io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "bellscope/errors.hpp"

namespace bellscope::io {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_json(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{';
  }
  return false;
}

Json parse_json(const std::string& path, const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Eigen::MatrixXd rows_to_matrix(const std::string& path,
                               const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw ParseError(path + ": matrix has no entries");
  }
  const std::size_t cols = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw ParseError(path + ": row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(cols));
    }
  }
  Eigen::MatrixXd g(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return g;
}

std::vector<std::vector<double>> parse_csv(const std::string& path,
                                           const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char ch : line) {
      if (!std::isspace(static_cast<unsigned char>(ch))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    int col = 0;
    while (std::getline(fields, field, ',')) {
      ++col;
      const char* begin = field.c_str();
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      while (end && *end != '\0' &&
             std::isspace(static_cast<unsigned char>(*end))) {
        ++end;
      }
      if (end == begin || (end && *end != '\0')) {
        throw ParseError(path + ": line " + std::to_string(lineno) +
                         ", column " + std::to_string(col) +
                         ": not a number: '" + field + "'");
      }
      row.push_back(value);
    }
    if (row.empty()) {
      throw ParseError(path + ": line " + std::to_string(lineno) +
                       ": empty row");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

BellMatrix parse_matrix(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  std::string label;
  if (looks_like_json(text)) {
    const Json doc = parse_json(path, text);
    if (!doc.contains("g") || !doc["g"].is_array()) {
      throw ParseError(path + ": expected an object with a \"g\" array");
    }
    for (std::size_t i = 0; i < doc["g"].size(); ++i) {
      const auto& row = doc["g"][i];
      if (!row.is_array() || row.empty()) {
        throw ParseError(path + ": \"g\" row " + std::to_string(i + 1) +
                         " is not a nonempty array");
      }
      std::vector<double> values;
      for (const auto& cell : row) {
        if (!cell.is_number()) {
          throw ParseError(path + ": \"g\" row " + std::to_string(i + 1) +
                           " holds a non-numeric entry");
        }
        values.push_back(cell.get<double>());
      }
      rows.push_back(std::move(values));
    }
    if (doc.contains("label")) {
      if (!doc["label"].is_string()) {
        throw ParseError(path + ": \"label\" must be a string");
      }
      label = doc["label"].get<std::string>();
    }
  } else {
    rows = parse_csv(path, text);
  }
  Eigen::MatrixXd g = rows_to_matrix(path, rows);
  if (!g.allFinite()) {
    throw ParseError(path + ": matrix holds non-finite values");
  }
  return BellMatrix(std::move(g), std::move(label));
}

BellTensor parse_tensor(const std::string& path) {
  const std::string text = read_file(path);
  const Json doc = parse_json(path, text);
  if (!doc.contains("shape") || !doc["shape"].is_array() ||
      !doc.contains("coeffs") || !doc["coeffs"].is_array()) {
    throw ParseError(path +
                     ": expected an object with \"shape\" and \"coeffs\" arrays");
  }
  std::vector<int> shape;
  std::int64_t expected = 1;
  for (const auto& m : doc["shape"]) {
    if (!m.is_number_integer() || m.get<std::int64_t>() < 1) {
      throw ParseError(path + ": \"shape\" entries must be positive integers");
    }
    shape.push_back(m.get<int>());
    expected *= shape.back();
  }
  if (shape.size() < 2) {
    throw ParseError(path + ": \"shape\" needs at least two parties");
  }
  std::vector<double> coeffs;
  coeffs.reserve(doc["coeffs"].size());
  for (const auto& cell : doc["coeffs"]) {
    if (!cell.is_number()) {
      throw ParseError(path + ": \"coeffs\" holds a non-numeric entry");
    }
    coeffs.push_back(cell.get<double>());
  }
  if (static_cast<std::int64_t>(coeffs.size()) != expected) {
    throw ParseError(path + ": \"coeffs\" has " +
                     std::to_string(coeffs.size()) + " entries, shape needs " +
                     std::to_string(expected));
  }
  return BellTensor(std::move(shape), std::move(coeffs));
}

std::string matrix_to_json(const BellMatrix& bm) {
  Json doc;
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < bm.g.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < bm.g.cols(); ++j) {
      row.push_back(bm.g(i, j));
    }
    rows.push_back(std::move(row));
  }
  doc["g"] = std::move(rows);
  if (!bm.label.empty()) {
    doc["label"] = bm.label;
  }
  return doc.dump() + "\n";
}

std::string tensor_to_json(const BellTensor& t) {
  Json doc;
  doc["shape"] = t.shape;
  doc["coeffs"] = t.coeffs;
  return doc.dump() + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError(path + ": cannot open file for writing");
  }
  out << contents;
  if (!out) {
    throw ParseError(path + ": write failed");
  }
}

}  // namespace bellscope::io

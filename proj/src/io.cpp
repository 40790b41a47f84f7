#include "groth/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "groth/errors.hpp"
#include "json.hpp"

namespace groth {

namespace {

double finite_or_throw(double v, const std::string& where) {
  if (!std::isfinite(v)) throw Error(ErrorCode::parse, "non-finite value at " + where);
  return v;
}

DenseMatrix parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw Error(ErrorCode::parse, "matrix file needs rows, cols and entries");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
    throw Error(ErrorCode::parse, "rows and cols must be positive integers");
  const std::size_t m = j["rows"].get<std::size_t>(), n = j["cols"].get<std::size_t>();
  if (m == 0 || n == 0) throw Error(ErrorCode::parse, "rows and cols must be positive integers");
  const auto& e = j["entries"];
  if (!e.is_array() || e.size() != m * n)
    throw Error(ErrorCode::parse, "entries must hold rows*cols = " + std::to_string(m * n) + " pairs");
  std::vector<cplx> v(m * n);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const std::string where = "entry " + std::to_string(k);
    const auto& p = e[k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw Error(ErrorCode::parse, where + ": expected [re, im]");
    v[k] = {finite_or_throw(p[0].get<double>(), where), finite_or_throw(p[1].get<double>(), where)};
  }
  return DenseMatrix(m, n, std::move(v));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse, where + ": not a number");
  }
  while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
  if (used != cell.size()) throw Error(ErrorCode::parse, where + ": not a real number");
  return finite_or_throw(v, where);
}

DenseMatrix parse_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw Error(ErrorCode::parse, "empty CSV file");
  const auto head = split(lines[0]);
  if (head.size() != 2) throw Error(ErrorCode::parse, "line 1: expected header rows,cols");
  const double mr = parse_cell(head[0], "line 1"), nr = parse_cell(head[1], "line 1");
  if (mr < 1 || nr < 1 || mr != std::floor(mr) || nr != std::floor(nr))
    throw Error(ErrorCode::parse, "line 1: rows and cols must be positive integers");
  const auto m = static_cast<std::size_t>(mr), n = static_cast<std::size_t>(nr);
  if (lines.size() != m + 1)
    throw Error(ErrorCode::parse, "expected " + std::to_string(m) + " data rows, found " +
                                      std::to_string(lines.size() - 1));
  DenseMatrix x(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string where = "line " + std::to_string(i + 2);
    const auto cells = split(lines[i + 1]);
    if (cells.size() != n) throw Error(ErrorCode::parse, where + ": expected " + std::to_string(n) + " values");
    for (std::size_t j = 0; j < n; ++j)
      x(i, j) = parse_cell(cells[j], where + ", column " + std::to_string(j + 1));
  }
  return x;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DenseMatrix parse_matrix(const std::string& text, MatrixFormat format) {
  return format == MatrixFormat::json ? parse_json(text) : parse_csv(text);
}

std::string format_matrix(const DenseMatrix& x, MatrixFormat format) {
  if (!x.all_finite()) throw Error(ErrorCode::non_finite, "format_matrix: non-finite entry");
  std::string out;
  if (format == MatrixFormat::json) {
    out = "{\"rows\": " + std::to_string(x.rows()) + ", \"cols\": " + std::to_string(x.cols()) + ", \"entries\": [";
    bool first = true;
    for (const cplx& z : x.entries()) {
      out += first ? "[" : ", [";
      out += format_double(z.real()) + ", " + format_double(z.imag()) + "]";
      first = false;
    }
    return out + "]}\n";
  }
  for (const cplx& z : x.entries())
    if (z.imag() != 0.0) throw Error(ErrorCode::domain, "CSV holds real matrices only");
  out = std::to_string(x.rows()) + "," + std::to_string(x.cols()) + "\n";
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) out += (j ? "," : "") + format_double(x(i, j).real());
    out += "\n";
  }
  return out;
}

DenseMatrix read_matrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_matrix(ss.str(), format);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_matrix(const DenseMatrix& x, const std::string& path, MatrixFormat format) {
  const std::string text = format_matrix(x, format);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::io, "cannot write " + path);
}

MatrixFormat format_from_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0 ? MatrixFormat::csv
                                                                            : MatrixFormat::json;
}

}  // namespace groth

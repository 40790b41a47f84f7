#include "groth/report.hpp"

#include <cmath>
#include <fstream>

#include "groth/errors.hpp"
#include "groth/io.hpp"
#include "json.hpp"

namespace groth {

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

// JSON has no NaN or infinity; those become null.
std::string number(double v) { return std::isfinite(v) ? format_double(v + 0.0) : "null"; }  // no -0

void append_matrix(std::string& out, const DenseMatrix& x) {
  out += "{\"rows\": " + std::to_string(x.rows()) + ", \"cols\": " + std::to_string(x.cols()) + ", \"entries\": [";
  for (std::size_t k = 0; k < x.entries().size(); ++k) {
    const cplx z = x.entries()[k];
    out += (k ? ", [" : "[") + number(z.real()) + ", " + number(z.imag()) + "]";
  }
  out += "]}";
}

}  // namespace

ReportItem& Report::add(std::string name, double value, CheckStatus status) {
  ReportItem it;
  it.name = std::move(name);
  it.value = value;
  it.status = status;
  items.push_back(std::move(it));
  return items.back();
}

CheckStatus Report::overall() const {
  for (const auto& it : items)
    if (it.status == CheckStatus::fail) return CheckStatus::fail;
  return CheckStatus::pass;
}

std::string serialize(const Report& r) {
  std::string out = "{\n";
  out += "  \"version\": " + quote(r.version) + ",\n";
  out += "  \"command\": " + quote(r.command) + ",\n";
  out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
  out += "  \"status\": " + quote(r.error_code.empty() ? to_string(r.overall()) : "error") + ",\n";
  if (!r.error_code.empty()) {
    out += "  \"error_code\": " + quote(r.error_code) + ",\n";
    out += "  \"error\": " + quote(r.error) + ",\n";
  }
  out += "  \"items\": [";
  for (std::size_t k = 0; k < r.items.size(); ++k) {
    const ReportItem& it = r.items[k];
    out += k ? ",\n    {" : "\n    {";
    out += "\"name\": " + quote(it.name);
    out += ", \"value\": " + number(it.value);
    out += ", \"bracket\": ";
    out += it.bracket ? "[" + number(it.bracket->first) + ", " + number(it.bracket->second) + "]" : "null";
    out += ", \"status\": " + quote(to_string(it.status));
    out += ", \"slack\": " + (it.slack ? number(*it.slack) : std::string("null"));
    if (!it.note.empty()) out += ", \"note\": " + quote(it.note);
    out += "}";
  }
  out += r.items.empty() ? "]" : "\n  ]";
  if (!r.vectors.empty()) {
    out += ",\n  \"vectors\": {";
    for (std::size_t k = 0; k < r.vectors.size(); ++k) {
      out += (k ? ",\n    " : "\n    ") + quote(r.vectors[k].first) + ": [";
      const RVector& v = r.vectors[k].second;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + number(v[i]);
      out += "]";
    }
    out += "\n  }";
  }
  if (!r.matrices.empty()) {
    out += ",\n  \"matrices\": {";
    for (std::size_t k = 0; k < r.matrices.size(); ++k) {
      out += (k ? ",\n    " : "\n    ") + quote(r.matrices[k].first) + ": ";
      append_matrix(out, r.matrices[k].second);
    }
    out += "\n  }";
  }
  return out + "\n}\n";
}

void write_report(const Report& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << serialize(r))) throw Error(ErrorCode::io, "cannot write " + path);
}

}  // namespace groth

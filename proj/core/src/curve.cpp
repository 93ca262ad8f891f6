#include "radpulse/curve.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "radpulse/errors.hpp"

namespace radpulse {

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::ExitFlow: return "ExitFlow";
    case CurveKind::NormalizedExitFlow: return "NormalizedExitFlow";
    case CurveKind::Concentration: return "Concentration";
    case CurveKind::Holdup: return "Holdup";
  }
  return "ExitFlow";
}

CurveKind curve_kind_from_string(const std::string& name) {
  if (name == "ExitFlow") return CurveKind::ExitFlow;
  if (name == "NormalizedExitFlow") return CurveKind::NormalizedExitFlow;
  if (name == "Concentration") return CurveKind::Concentration;
  if (name == "Holdup") return CurveKind::Holdup;
  throw IoError("unknown curve kind '" + name + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void Curve::validate() const {
  if (t.size() != y.size()) {
    throw InvalidArgument("curve has " + std::to_string(t.size()) + " times but " +
                          std::to_string(y.size()) + " values");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(y[i])) {
      throw InvalidArgument("non-finite sample at row " + std::to_string(i));
    }
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw InvalidArgument("sample times not strictly increasing at row " + std::to_string(i));
    }
  }
}

void write_curve_csv(std::ostream& os, const Curve& curve) {
  curve.validate();
  os << "# " << to_string(curve.kind) << ", " << format_double(curve.pe) << ", "
     << format_double(curve.kappa_d) << ", " << format_double(curve.t_d) << ", "
     << format_double(curve.x0) << ", " << format_double(curve.a) << "\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    os << format_double(curve.t[i]) << "," << format_double(curve.y[i]) << "\n";
  }
}

void write_curve_csv(const std::string& path, const Curve& curve) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_curve_csv(os, curve);
  if (!os) throw IoError("write failed for '" + path + "'");
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_field(const std::string& field, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (strip(field.substr(used)).empty()) return v;
  } catch (...) {
  }
  throw IoError("unparseable number '" + field + "' on line " + std::to_string(line_no));
}

} // namespace

CurveReadResult read_curve_csv(std::istream& is) {
  CurveReadResult out;
  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string s = strip(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      // Only the first comment line before any data row carries metadata.
      if (saw_data || out.has_header) continue;
      std::stringstream ss(s.substr(1));
      std::string field;
      std::vector<std::string> fields;
      while (std::getline(ss, field, ',')) fields.push_back(strip(field));
      if (fields.size() == 6) {
        out.curve.kind = curve_kind_from_string(fields[0]);
        out.curve.pe = parse_field(fields[1], line_no);
        out.curve.kappa_d = parse_field(fields[2], line_no);
        out.curve.t_d = parse_field(fields[3], line_no);
        out.curve.x0 = parse_field(fields[4], line_no);
        out.curve.a = parse_field(fields[5], line_no);
        out.has_header = true;
      }
      continue;
    }
    const std::size_t comma = s.find(',');
    if (comma == std::string::npos) {
      throw IoError("expected 't,y' on line " + std::to_string(line_no));
    }
    out.curve.t.push_back(parse_field(s.substr(0, comma), line_no));
    out.curve.y.push_back(parse_field(s.substr(comma + 1), line_no));
    saw_data = true;
  }
  if (!saw_data) throw IoError("no data rows found");
  out.curve.validate();
  return out;
}

CurveReadResult read_curve_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return read_curve_csv(is);
}

} // namespace radpulse

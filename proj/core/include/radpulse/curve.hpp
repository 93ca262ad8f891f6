#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radpulse {

enum class CurveKind {
  ExitFlow,           // j(L, t), amount/time
  NormalizedExitFlow, // J(tau) = j * L / (a*D), dimensionless, tau = t/t_d
  Concentration,      // c(x, t) at fixed x, amount/length
  Holdup,             // I(t), amount
};

const char* to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& name); // throws IoError

// One sampled time series plus the metadata needed to interpret it.
struct Curve {
  CurveKind kind = CurveKind::ExitFlow;

  // metadata (dimensionless Pe/kappa_d; t_d, x0, a in the sample's units)
  double pe = 0.0;
  double kappa_d = 0.0;
  double t_d = 1.0;
  double x0 = 0.0;
  double a = 1.0;

  std::vector<double> t; // strictly increasing
  std::vector<double> y; // finite, same length as t

  std::size_t size() const noexcept { return t.size(); }
  // Throws InvalidArgument when sizes differ, t is not strictly increasing,
  // or any sample is non-finite.
  void validate() const;
};

// CSV layout: one comment line "# kind, Pe, kappa_d, t_d, x0, a" carrying
// the metadata values, then "t,y" data rows at 17 significant digits,
// LF-terminated. Readers accept files without the comment line (metadata
// fields keep their defaults and has_header is reported false).
void write_curve_csv(std::ostream& os, const Curve& curve);
void write_curve_csv(const std::string& path, const Curve& curve); // throws IoError

struct CurveReadResult {
  Curve curve;
  bool has_header = false;
};
CurveReadResult read_curve_csv(std::istream& is);
CurveReadResult read_curve_csv(const std::string& path); // throws IoError

// Shared numeric formatting: shortest round-trippable decimal form used by
// every CSV writer in the project.
std::string format_double(double v);

} // namespace radpulse

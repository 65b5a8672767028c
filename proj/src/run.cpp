#include "glt/run.hpp"

#include <cstdio>

namespace glt {

int abort_code(AbortReason r) {
  switch (r) {
    case AbortReason::none: return 0;
    case AbortReason::bit_error: return 1;
    case AbortReason::infeasible: return 2;
    case AbortReason::undefined_statistics: return 3;
  }
  return 3;
}

std::vector<ReportRow> execute(const RunConfig& cfg, Command cmd, std::optional<Mode> mode) {
  std::vector<ReportRow> rows;
  const DistanceGrid single{cfg.distance_km, cfg.distance_km, 1.0};
  for (auto v : cfg.scenarios()) {
    if (mode) v.scenario.mode = *mode;
    for (auto& p : sweep_distance(v.scenario, cmd == Command::keyrate ? single : cfg.sweep))
      rows.push_back({v.name, std::move(p)});
  }
  return rows;
}

namespace {
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}
}  // namespace

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "variant,distance_km,rate,mu_opt,c_lower,e_zz,i_eve,abort_flag\n";
  for (const auto& r : rows) {
    const auto& p = r.point;
    out << r.variant << ',' << num(p.distance_km) << ',' << num(p.rate) << ','
        << num(p.mu_opt) << ',' << num(p.summary.c_lower) << ','
        << num(p.summary.e_zz_upper) << ',' << num(p.summary.i_eve_upper) << ','
        << abort_code(p.summary.abort) << '\n';
  }
}

int exit_code(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (r.point.summary.abort == AbortReason::infeasible) return kExitInfeasible;
  return kExitOk;
}

}  // namespace glt

#include "modlcp/report_json.hpp"

#include <json.hpp>

namespace modlcp {
namespace {

using nlohmann::json;

template <typename T>
json optional_value(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string to_json(const SolveReport<double>& report, bool include_history) {
  json j = {
      {"status", std::string(to_string(report.status))},
      {"iterations", report.iterations},
      {"final_residual", report.final_residual},
      {"wall_time", report.wall_time.count()},
  };
  if (include_history) j["residual_history"] = report.residual_history;
  return j.dump(2);
}

std::string to_json(const CertReport<double>& report, const std::string& method) {
  const auto& od = report.omega_domain;
  json j = {
      {"method", method},
      {"is_Z", report.is_z},
      {"is_M", report.is_m},
      {"is_H", report.is_h},
      {"is_H_plus", report.is_h_plus},
      {"is_P", optional_value(report.is_p)},
      {"rho_T", optional_value(report.rho_t)},
      {"rho_T_bound", optional_value(report.rho_t_bound)},
      {"thm42_case1", od.case1},
      {"thm42_case2", od.case2},
      {"thm42_case2_without_comparison", optional_value(od.case2_without_comparison)},
      {"h_compatible", od.h_compatible},
      {"omega_domain_certified", od.certified()},
      {"spectral_certified", report.spectral_certified()},
      {"certified", report.convergence_certified()},
  };
  std::vector<std::string> notes = report.notes;
  notes.insert(notes.end(), od.notes.begin(), od.notes.end());
  j["notes"] = notes;
  return j.dump(2);
}

std::string to_json(const bench::CellResult& cell, const bench::MethodSpec& method, bool include_history) {
  json j = {
      {"method", std::string(to_string(method.variant))},
      {"label", method.label()},
      {"n", cell.n},
      {"alpha", optional_value(method.alpha)},
      {"beta", optional_value(method.beta)},
      {"status", cell.error.empty() ? std::string(to_string(cell.status)) : std::string("ERROR")},
      {"IT", cell.iterations},
      {"CPU", cell.seconds},
      {"Res", cell.residual},
  };
  if (!cell.error.empty()) j["error"] = cell.error;
  if (include_history) j["residual_history"] = cell.history;
  return j.dump(2);
}

}  // namespace modlcp

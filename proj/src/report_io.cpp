#include "cavur/report_io.hpp"

#include <cstdio>
#include <sstream>

namespace cavur {

namespace {

std::string fmt17(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

std::string csv_row(const GameReport& r) {
  std::ostringstream out;
  out << fmt17(r.u_b) << ',' << fmt17(r.u_c) << ',' << fmt17(r.H_sx_C) << ','
      << fmt17(r.H_sy_B) << ',' << fmt17(r.H_sx) << ',' << fmt17(r.H_sy) << ','
      << fmt17(r.J_C_sx) << ',' << fmt17(r.J_B_sy) << ',' << fmt17(r.lhs)
      << ',' << fmt17(r.bound) << ',' << fmt17(r.slack);
  return out.str();
}

std::string to_csv(const std::vector<GameReport>& reports) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : reports) out << csv_row(r) << '\n';
  return out.str();
}

nlohmann::json to_json(const GameReport& r) {
  return nlohmann::json{
      {"u_b", r.u_b},
      {"u_c", r.u_c},
      {"H_sx_C", r.H_sx_C},
      {"H_sy_B", r.H_sy_B},
      {"H_sx", r.H_sx},
      {"H_sy", r.H_sy},
      {"J_C_sx", r.J_C_sx},
      {"J_B_sy", r.J_B_sy},
      {"lhs", r.lhs},
      {"bound", r.bound},
      {"slack", r.slack},
      {"identity_residual", r.identity_residual},
      {"lambda", r.lambda},
      {"fbar", r.fbar},
      {"F_coh_re", r.F_coh.real()},
      {"F_coh_im", r.F_coh.imag()},
  };
}

GameReport game_report_from_json(const nlohmann::json& j) {
  GameReport r;
  r.u_b = j.at("u_b").get<double>();
  r.u_c = j.at("u_c").get<double>();
  r.H_sx_C = j.at("H_sx_C").get<double>();
  r.H_sy_B = j.at("H_sy_B").get<double>();
  r.H_sx = j.at("H_sx").get<double>();
  r.H_sy = j.at("H_sy").get<double>();
  r.J_C_sx = j.at("J_C_sx").get<double>();
  r.J_B_sy = j.at("J_B_sy").get<double>();
  r.lhs = j.at("lhs").get<double>();
  r.bound = j.at("bound").get<double>();
  r.slack = j.at("slack").get<double>();
  r.identity_residual = j.at("identity_residual").get<double>();
  r.lambda = j.at("lambda").get<std::array<double, 4>>();
  r.fbar = j.at("fbar").get<double>();
  r.F_coh = Complex(j.at("F_coh_re").get<double>(),
                    j.at("F_coh_im").get<double>());
  return r;
}

nlohmann::json to_json(const std::vector<GameReport>& reports) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) rows.push_back(to_json(r));
  return nlohmann::json{{"reports", std::move(rows)}};
}

nlohmann::json to_json(const SimulationReport& r) {
  return nlohmann::json{
      {"rounds", r.rounds},
      {"seed", r.seed},
      {"count_x_plus", r.count_x_plus},
      {"count_x_minus", r.count_x_minus},
      {"count_y_plus", r.count_y_plus},
      {"count_y_minus", r.count_y_minus},
      {"empirical_p_x_plus", r.empirical_p_x_plus},
      {"empirical_p_y_plus", r.empirical_p_y_plus},
      {"empirical_H_sx_C", r.empirical_H_sx_C},
      {"empirical_H_sy_B", r.empirical_H_sy_B},
      {"analytic_H_sx_C", r.analytic_H_sx_C},
      {"analytic_H_sy_B", r.analytic_H_sy_B},
  };
}

std::string format_text(const GameReport& r) {
  std::ostringstream out;
  out << "game report at u_b = " << fmt17(r.u_b) << ", u_c = " << fmt17(r.u_c)
      << '\n'
      << "  H(sx|C) = " << fmt17(r.H_sx_C) << '\n'
      << "  H(sy|B) = " << fmt17(r.H_sy_B) << '\n'
      << "  H(sx)   = " << fmt17(r.H_sx) << '\n'
      << "  H(sy)   = " << fmt17(r.H_sy) << '\n'
      << "  J(C|sx) = " << fmt17(r.J_C_sx) << '\n'
      << "  J(B|sy) = " << fmt17(r.J_B_sy) << '\n'
      << "  lhs     = " << fmt17(r.lhs) << '\n'
      << "  bound   = " << fmt17(r.bound) << '\n'
      << "  slack   = " << fmt17(r.slack) << '\n'
      << "  identity residual = " << fmt17(r.identity_residual) << '\n'
      << "  lambda  = [" << fmt17(r.lambda[0]) << ", " << fmt17(r.lambda[1])
      << ", " << fmt17(r.lambda[2]) << ", " << fmt17(r.lambda[3]) << "]\n"
      << "  fbar    = " << fmt17(r.fbar) << '\n'
      << "  F_coh   = " << fmt17(r.F_coh.real()) << " + "
      << fmt17(r.F_coh.imag()) << "i\n";
  return out.str();
}

std::string format_text(const SimulationReport& r) {
  std::ostringstream out;
  out << "simulation of " << r.rounds << " rounds (seed " << r.seed << ")\n"
      << "  sigma_x draws: +" << r.count_x_plus << " / -" << r.count_x_minus
      << "  (P+ = " << fmt17(r.empirical_p_x_plus) << ")\n"
      << "  sigma_y draws: +" << r.count_y_plus << " / -" << r.count_y_minus
      << "  (P+ = " << fmt17(r.empirical_p_y_plus) << ")\n"
      << "  empirical H(sx|C) = " << fmt17(r.empirical_H_sx_C)
      << "  (analytic " << fmt17(r.analytic_H_sx_C) << ")\n"
      << "  empirical H(sy|B) = " << fmt17(r.empirical_H_sy_B)
      << "  (analytic " << fmt17(r.analytic_H_sy_B) << ")\n";
  return out.str();
}

}  // namespace cavur

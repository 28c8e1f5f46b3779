#include "centrobody/report.hpp"

#include "centrobody/lab.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace centrobody::report {
namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

void emit(const Json& j, int indent, std::string& out) {
  const std::string pad(2 * (indent + 1), ' ');
  const std::string close(2 * indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        emit(it.value(), indent + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], indent + 1, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + number(r[i]);
    out += "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path);
}

Json vec_json(const Vec& v, int n) {
  Json a = Json::array();
  for (int i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

}  // namespace centrobody::report

namespace centrobody {

using report::Json;
using report::vec_json;

Json to_json(const VolumeEstimate& v) { return {{"value", v.value}, {"error", v.error}, {"method", v.method}}; }

Json to_json(const EmbedSummary& s, int n) {
  return {{"verdict", s.verdict}, {"route", s.route},          {"min_value", s.min_value},
          {"scale", s.scale},     {"witness", vec_json(s.witness, n)}, {"max_degree", s.max_degree}};
}

Json to_json(const EmbeddingCertificate& c, int n) {
  Json j = to_json(summarize(c), n);
  j["p"] = c.p;
  j["body_id"] = c.body_id;
  j["tol"] = c.tol;
  j["witness_index"] = c.witness_index;
  j["cross_check"] = c.cross_check;
  if (c.p == 0.0) {
    j["C"] = c.C;
    j["normalization"] = c.normalization;
  }
  Json nodes = Json::array();
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    Json row = vec_json(c.nodes[i], n);
    row.push_back(c.density[i]);
    nodes.push_back(std::move(row));
  }
  j["samples"] = std::move(nodes);
  return j;
}

Json to_json(const ComparisonReport& r) {
  Json j;
  j["p"] = r.p;
  j["dim"] = r.dim;
  j["bodies"] = {{"K", r.id_K}, {"L", r.id_L}};
  j["rule"] = {{"degree", r.rule_degree}, {"nodes", r.rule_nodes}};
  j["inclusion"] = {{"route", r.inclusion_route},
                    {"holds", r.inclusion_holds},
                    {"margin", r.inclusion_margin},
                    {"error_estimate", r.inclusion_error},
                    {"worst_direction", vec_json(r.worst_direction, r.dim)}};
  j["volumes"] = {{"volK", to_json(r.vol_K)}, {"volL", to_json(r.vol_L)}};
  j["volK"] = r.vol_K.value;
  j["volL"] = r.vol_L.value;
  j["margin"] = r.inclusion_margin;
  j["embed_K"] = to_json(r.embed_K, r.dim);
  if (r.embed_L) j["embed_L"] = to_json(*r.embed_L, r.dim);
  j["verdict"] = r.verdict;
  j["counterexample"] = r.counterexample;
  j["notes"] = r.notes;
  j["provenance"] = {{"seed", r.seed}, {"tol_rel", r.tol_rel}, {"build", r.build}};
  return j;
}

namespace {

Json spectrum_json(const HarmonicSpectrum& s) {
  return {{"max_degree", s.max_degree}, {"coeffs", s.coeffs}, {"truncation_error", s.truncation_error}};
}

}  // namespace

Json to_json(const CounterexampleCertificate& c) {
  Json j;
  j["mode"] = c.mode;
  j["p"] = c.p;
  j["omega_t"] = c.omega_t;
  j["density_at_center"] = c.density_at_center;
  j["bump"] = {{"center", c.bump.center},   {"width", c.bump.width},     {"amplitude", c.bump.amplitude},
               {"fill", c.bump.fill},       {"profile", c.bump.profile}, {"power", c.bump.power}};
  j["v"] = spectrum_json(c.v);
  j["g"] = spectrum_json(c.g);
  j["pairing"] = c.pairing;
  j["epsilon"] = c.epsilon;
  j["halvings"] = c.halvings;
  j["min_rho"] = c.min_rho;
  j["convexity"] = {{"passed", c.convexity.passed},
                    {"min_turn", c.convexity.min_turn},
                    {"resolution", c.convexity.resolution},
                    {"worst_t", c.convexity.worst_t}};
  j["vol_K"] = c.vol_K;
  j["vol_L"] = c.vol_L;
  j["margin_dilation"] = c.margin_dilation;
  if (c.mode == "log") {
    j["g_integral"] = c.g_integral;
    j["g_cross_check"] = c.g_cross_check;
    j["lambda"] = c.lambda;
    j["c_solve_residual"] = c.c_solve_residual;
  }
  j["diagnostics"] = c.diagnostics;
  return j;
}

Json to_json(const CounterexampleBundle& b) {
  Json j;
  j["L"] = b.L.id();
  j["K"] = b.K.id();
  j["certificate"] = to_json(b.certificate);
  j["L_certificate"] = to_json(b.L_certificate, b.L.dim());
  j["report"] = to_json(b.report);
  j["success"] = b.success;
  j["failures"] = b.failures;
  return j;
}

Json to_json(const BpReport& r) {
  return {{"bodies", {{"K", r.id_K}, {"L", r.id_L}}},
          {"dim", r.dim},
          {"directions", r.directions},
          {"min_gap", r.min_gap},
          {"worst_direction", vec_json(r.worst_direction, r.dim)},
          {"hypothesis_holds", r.hypothesis_holds},
          {"volK", to_json(r.vol_K)},
          {"volL", to_json(r.vol_L)},
          {"volume_ordered", r.volume_ordered}};
}

Json to_json(const std::vector<CriterionResult>& results) {
  Json all = Json::array();
  bool ok = true;
  for (const auto& c : results) {
    Json checks = Json::array();
    for (const auto& k : c.checks)
      checks.push_back({{"name", k.name}, {"value", k.value}, {"bound", k.bound}, {"passed", k.passed}});
    all.push_back({{"criterion", c.index}, {"title", c.title}, {"passed", c.passed}, {"checks", std::move(checks)}});
    ok = ok && c.passed;
  }
  return {{"criteria", std::move(all)}, {"passed", ok}};
}

}  // namespace centrobody

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "centrobody/body_io.hpp"
#include "centrobody/centroid.hpp"
#include "centrobody/lab.hpp"
#include "centrobody/report.hpp"
#include "centrobody/sections.hpp"

using namespace centrobody;
using report::Json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInvalidInput = 2;

// A body argument is a file path, inline JSON, or one of the shorthands
// ball:n[:r], fn:N[:n], lq:n:q.
StarBody load_body(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return body_from_json_text(arg);
  const auto colon = arg.find(':');
  if (colon != std::string::npos && !std::filesystem::exists(arg)) {
    std::vector<double> v;
    std::stringstream ss(arg.substr(colon + 1));
    for (std::string item; std::getline(ss, item, ':');) v.push_back(std::stod(item));
    const std::string kind = arg.substr(0, colon);
    if (kind == "ball" && !v.empty()) return StarBody::ball(static_cast<int>(v[0]), v.size() > 1 ? v[1] : 1.0);
    if (kind == "fn" && !v.empty()) return StarBody::fn_body(v[0], v.size() > 1 ? static_cast<int>(v[1]) : 4);
    if (kind == "lq" && v.size() >= 2) return StarBody::lq_ball(static_cast<int>(v[0]), v[1], 1.0);
    throw std::invalid_argument("unknown body shorthand '" + arg + "'");
  }
  return body_from_file(arg);
}

Vec parse_direction(const std::string& arg, const StarBody& K) {
  const int n = K.dim();
  if (arg == "axis") {
    if (auto a = K.zonal_axis()) return *a;
    return unit_vector(n, n - 1);
  }
  Vec v{};
  std::stringstream ss(arg);
  int k = 0;
  for (std::string item; std::getline(ss, item, ',');) {
    if (k >= n) throw std::invalid_argument("direction has more than dim components");
    v[k++] = std::stod(item);
  }
  if (k != n || norm(v) == 0.0) throw std::invalid_argument("direction must have dim components, not all zero");
  return normalized(v);
}

void emit(const std::string& path, const std::string& text) { report::write_text(path, text); }

LabConfig load_config(const std::string& path) { return path.empty() ? LabConfig{} : config_from_file(path); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polar p-centroid bodies, L_p embedding certificates and counterexample reproduction"};
  app.require_subcommand(1);
  std::string config_path, out = "-";
  app.add_option("--config", config_path, "JSON configuration file");

  int rule_degree = 40, max_degree = 60, grid = 512, n_dim = 4, random_pairs = 0;
  double p = 0.5, N = 10.0;
  std::string body, K_arg, L_arg, xi = "axis", mode = "p", out_dir = ".", only_arg;

  auto* volume_cmd = app.add_subcommand("volume", "volume with an error estimate");
  volume_cmd->add_option("--body", body, "body JSON file, inline JSON or shorthand")->required();
  volume_cmd->add_option("--rule-degree", rule_degree);
  volume_cmd->add_option("--out", out, "output path, - for stdout");

  auto* gauge_cmd = app.add_subcommand("gauge", "gauge of the polar p-centroid body on sphere-rule nodes (CSV)");
  gauge_cmd->add_option("--body", body)->required();
  gauge_cmd->add_option("--p", p)->required();
  gauge_cmd->add_option("--rule-degree", rule_degree);
  gauge_cmd->add_option("--out", out);

  auto* compare_cmd = app.add_subcommand("compare", "comparison pipeline for a pair (K, L)");
  compare_cmd->add_option("--K", K_arg)->required();
  compare_cmd->add_option("--L", L_arg)->required();
  compare_cmd->add_option("--p", p)->required();
  compare_cmd->add_option("--rule-degree", rule_degree);
  compare_cmd->add_option("--out", out);

  auto* sections_cmd = app.add_subcommand("sections", "parallel section function samples (CSV)");
  sections_cmd->add_option("--body", body)->required();
  sections_cmd->add_option("--xi", xi, "'axis' or comma-separated components");
  sections_cmd->add_option("--grid", grid)->check(CLI::Range(2, 1000000));
  sections_cmd->add_option("--out", out);

  auto* embed_cmd = app.add_subcommand("embed-check", "L_p / L_0 embedding certificate");
  embed_cmd->add_option("--body", body)->required();
  embed_cmd->add_option("--p", p)->required();
  embed_cmd->add_option("--max-degree", max_degree);
  embed_cmd->add_option("--rule-degree", rule_degree);
  embed_cmd->add_option("--out", out);

  auto* cx_cmd = app.add_subcommand("counterexample", "build and certify a counterexample pair; writes K.json");
  cx_cmd->add_option("--mode", mode)->check(CLI::IsMember({"p", "log"}));
  cx_cmd->add_option("--L", L_arg, "revolution body L (default: the f_N body)");
  cx_cmd->add_option("--p", p);
  cx_cmd->add_option("--N", N);
  cx_cmd->add_option("--n", n_dim, "dimension for --mode log");
  cx_cmd->add_option("--rule-degree", rule_degree);
  cx_cmd->add_option("--out-dir", out_dir);

  auto* cxi_cmd = app.add_subcommand("counterexample-integral", "regularized integral for the f_N body");
  cxi_cmd->add_option("--N", N)->required();
  cxi_cmd->add_option("--p", p)->required();
  cxi_cmd->add_option("--out", out);

  auto* bp_cmd = app.add_subcommand("bp-sections", "normalized central sections of K and L");
  bp_cmd->add_option("--K", K_arg);
  bp_cmd->add_option("--L", L_arg);
  bp_cmd->add_option("--random", random_pairs, "run this many random ellipsoid pairs instead");
  bp_cmd->add_option("--n", n_dim, "dimension for --random");
  bp_cmd->add_option("--rule-degree", rule_degree);
  bp_cmd->add_option("--out", out);

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
  verify_cmd->add_option("--only", only_arg, "comma-separated criterion numbers");
  verify_cmd->add_option("--out", out, "JSON summary path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  LabConfig cfg;
  try {
    cfg = load_config(config_path);
    if (cfg.build_id.empty()) cfg.build_id = build_id();
    for (auto* sub : {volume_cmd, gauge_cmd, compare_cmd, embed_cmd, cx_cmd, bp_cmd})
      if (sub->parsed() && sub->count("--rule-degree")) cfg.rule_degree = rule_degree;
    if (embed_cmd->parsed() && embed_cmd->count("--max-degree")) cfg.max_harmonic_degree = max_degree;
    if (!(p > -1.0 && p < 1.0) && !cxi_cmd->parsed()) throw std::invalid_argument("p must lie in (-1, 1)");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (volume_cmd->parsed()) {
      const StarBody K = load_body(body);
      Json j = to_json(volume_estimate(K, cfg.rule_degree, cfg.max_harmonic_degree));
      j["body"] = K.id();
      j["dim"] = K.dim();
      emit(out, report::dump(j));
      return kOk;
    }
    if (gauge_cmd->parsed()) {
      const StarBody K = load_body(body);
      const SphereRule rule = sphere_rule(K.dim(), cfg.rule_degree);
      const GaugeSamples g = gauge_samples(K, p, rule);
      std::vector<std::string> header;
      for (int k = 0; k < K.dim(); ++k) header.push_back("x" + std::to_string(k + 1));
      header.push_back(p == 0.0 ? "mean_log" : "moment");
      header.push_back("gauge");
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        std::vector<double> r(rule.nodes[i].begin(), rule.nodes[i].begin() + K.dim());
        r.push_back(g.moment_values[i]);
        r.push_back(g.values[i]);
        rows.push_back(std::move(r));
      }
      emit(out, report::csv(header, rows));
      return kOk;
    }
    if (compare_cmd->parsed()) {
      const ComparisonReport r = run_comparison(load_body(K_arg), load_body(L_arg), p, cfg);
      emit(out, report::dump(to_json(r)));
      return r.verdict == "violated" ? kVerificationFailure : kOk;
    }
    if (sections_cmd->parsed()) {
      const auto K = std::make_shared<const StarBody>(load_body(body));
      const SectionProfile A(K, parse_direction(xi, *K));
      const double h = A.support_radius();
      std::vector<std::vector<double>> rows;
      for (int i = 0; i < grid; ++i) {
        const double z = -h + 2.0 * h * i / (grid - 1);
        rows.push_back({z, A(z)});
      }
      emit(out, report::csv({"z", "A"}, rows));
      return kOk;
    }
    if (embed_cmd->parsed()) {
      const StarBody K = load_body(body);
      const EmbeddingCertificate c = embed_certificate(K, p, cfg.max_harmonic_degree, sphere_rule(K.dim(), cfg.rule_degree));
      emit(out, report::dump(to_json(c, K.dim())));
      return kOk;
    }
    if (cxi_cmd->parsed()) {
      const CounterexampleIntegral c = counterexample_integral(N, p);
      Json j = {{"N", c.N},
                {"p", c.p},
                {"a_N", c.a_N},
                {"numeric", c.numeric},
                {"closed_form", c.closed_form},
                {"printed_closed_form", c.printed_closed_form},
                {"sign", c.numeric < 0.0 ? "negative" : (c.numeric > 0.0 ? "positive" : "zero")}};
      emit(out, report::dump(j));
      return kOk;
    }
    if (bp_cmd->parsed()) {
      if (random_pairs > 0) {
        const CounterRng rng(cfg.seed);
        const SphereRule rule = sphere_rule(n_dim, cfg.rule_degree);
        Json runs = Json::array();
        int eligible = 0, ordered = 0;
        for (int s = 0; s < random_pairs; ++s) {
          const StarBody K = random_bodies::ellipsoid(n_dim, rng, 2 * s);
          StarBody L = random_bodies::ellipsoid(n_dim, rng, 2 * s + 1);
          // scale L so that the normalized-section hypothesis holds with a small slack
          const BpReport probe = bp_normalized_sections(K, L, rule);
          double ratio = HUGE_VAL;
          for (const auto& th : rule.nodes)
            ratio = std::min(ratio, (section_function(L, th, 0.0) / probe.vol_L.value) /
                                        (section_function(K, th, 0.0) / probe.vol_K.value));
          L = L.dilate(ratio * (1.0 - 1e-6));
          const BpReport r = bp_normalized_sections(K, L, rule);
          eligible += r.hypothesis_holds;
          ordered += r.hypothesis_holds && r.volume_ordered;
          runs.push_back(to_json(r));
        }
        const Json j = {{"pairs", random_pairs}, {"hypothesis_pairs", eligible}, {"ordered_pairs", ordered}, {"runs", runs}};
        emit(out, report::dump(j));
        return kOk;
      }
      if (K_arg.empty() || L_arg.empty()) throw std::invalid_argument("bp-sections needs --K and --L, or --random");
      const StarBody K = load_body(K_arg), L = load_body(L_arg);
      emit(out, report::dump(to_json(bp_normalized_sections(K, L, sphere_rule(K.dim(), cfg.rule_degree)))));
      return kOk;
    }
    if (cx_cmd->parsed()) {
      std::optional<StarBody> candidate;
      if (!L_arg.empty()) candidate = load_body(L_arg);
      if (mode == "log" && candidate) throw std::invalid_argument("--L is not used with --mode log");
      CounterexampleBundle b =
          mode == "log" ? reproduce_log_counterexample(n_dim, N, cfg) : reproduce_p_counterexample(p, N, cfg, candidate);
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path dir(out_dir);
      emit((dir / "K.json").string(), body_to_json_text(b.K));
      emit((dir / "L.json").string(), body_to_json_text(b.L));
      emit((dir / "certificate.json").string(), report::dump(to_json(b)));
      std::cout << (b.success ? "success" : "failure") << ": wrote " << (dir / "K.json").string() << " and "
                << (dir / "certificate.json").string() << "\n";
      for (const auto& f : b.failures) std::cout << "  " << f << "\n";
      return b.success ? kOk : kVerificationFailure;
    }
    if (verify_cmd->parsed()) {
      std::vector<int> only;
      std::stringstream ss(only_arg);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) only.push_back(std::stoi(item));
      const auto results = verify_suite(cfg, only);
      bool ok = true;
      for (const auto& r : results) {
        std::printf("%s criterion %d: %s\n", r.passed ? "PASS" : "FAIL", r.index, r.title.c_str());
        for (const auto& c : r.checks)
          std::printf("    [%s] %s: %.6e (bound %.3e)\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.value, c.bound);
        std::fflush(stdout);
        ok = ok && r.passed;
      }
      if (out != "-") emit(out, report::dump(to_json(results)));
      return ok ? kOk : kVerificationFailure;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kInvalidInput;
}

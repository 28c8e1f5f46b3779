#include "centrobody/body_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace centrobody {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("body spec: " + msg); }

Vec vec_from(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) fail(std::string(what) + " must be an array of length dim");
  Vec v{};
  for (int i = 0; i < n; ++i) v[i] = j[i].get<double>();
  return v;
}

json vec_to(const Vec& v, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

StarBody parse(const json& j) {
  if (!j.is_object()) fail("top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) fail("missing integer \"dim\"");
  const int n = j["dim"].get<int>();
  if (n < 2 || n > kMaxDim) fail("dim must be in [2, 5]");
  if (!j.contains("shape") || !j["shape"].is_object()) fail("missing \"shape\" object");
  const json& s = j["shape"];
  const std::string type = s.value("type", "");
  std::optional<StarBody> body;
  if (type == "ball") {
    body = StarBody::ball(n, s.value("radius", 1.0));
  } else if (type == "ellipsoid") {
    if (!s.contains("semi_axes")) fail("ellipsoid needs \"semi_axes\"");
    body = StarBody::ellipsoid(n, vec_from(s["semi_axes"], n, "semi_axes"));
  } else if (type == "lq_ball") {
    if (!s.contains("q")) fail("lq_ball needs \"q\"");
    body = StarBody::lq_ball(n, s["q"].get<double>(), s.value("scale", 1.0));
  } else if (type == "revolution") {
    if (!s.contains("profile") || !s["profile"].is_array()) fail("revolution needs a \"profile\" coefficient list");
    body = StarBody::revolution(n, s["profile"].get<std::vector<double>>());
  } else if (type == "radial_grid") {
    if (!s.contains("samples")) fail("radial_grid needs \"samples\"");
    auto samples = s["samples"].get<std::vector<double>>();
    if (s.contains("t")) {
      const Vec axis = s.contains("axis") ? vec_from(s["axis"], n, "axis") : unit_vector(n, n - 1);
      body = StarBody::radial_grid_zonal(n, axis, s["t"].get<std::vector<double>>(), std::move(samples));
    } else {
      std::vector<Vec> nodes;
      int degree = s.value("rule_degree", 0);
      if (s.contains("nodes")) {
        for (const auto& v : s["nodes"]) nodes.push_back(vec_from(v, n, "node"));
      } else if (degree >= 2) {
        nodes = sphere_rule(n, degree).nodes;
      } else {
        fail("radial_grid needs \"t\", \"nodes\" or \"rule_degree\"");
      }
      body = StarBody::radial_grid_nodes(n, std::move(nodes), std::move(samples), degree);
    }
  } else if (type == "perturbed") {
    if (!s.contains("base")) fail("perturbed needs a \"base\" body");
    auto base = std::make_shared<const StarBody>(parse(s["base"]));
    ZonalSeries g(n, s.value("g_coeffs", std::vector<double>{}));
    body = StarBody::perturbed(base, s.value("exponent", 1.0), s.value("c_base", 1.0), s.value("c_g", 0.0),
                               std::move(g));
  } else {
    fail("unknown shape type \"" + type + "\"");
  }
  if (j.contains("scale")) body = body->dilate(j["scale"].get<double>());
  if (j.contains("id")) body = body->with_id(j["id"].get<std::string>());
  return *body;
}

json dump(const StarBody& b) {
  const int n = b.dim();
  json s;
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, shape::Ball>) {
          s["type"] = "ball";
          s["radius"] = sh.radius;
        } else if constexpr (std::is_same_v<T, shape::Ellipsoid>) {
          s["type"] = "ellipsoid";
          s["semi_axes"] = vec_to(sh.semi_axes, n);
        } else if constexpr (std::is_same_v<T, shape::LqBall>) {
          s["type"] = "lq_ball";
          s["q"] = sh.q;
          s["scale"] = sh.scale;
        } else if constexpr (std::is_same_v<T, shape::Revolution>) {
          s["type"] = "revolution";
          s["profile"] = sh.profile;
        } else if constexpr (std::is_same_v<T, shape::RadialGrid>) {
          s["type"] = "radial_grid";
          s["samples"] = sh.samples;
          if (sh.zonal) {
            s["axis"] = vec_to(sh.axis, n);
            s["t"] = sh.t;
          } else {
            const std::size_t half = sh.nodes.size() / 2;
            json nodes = json::array();
            for (std::size_t i = 0; i < half; ++i) nodes.push_back(vec_to(sh.nodes[i], n));
            s["nodes"] = nodes;
            s["samples"] = std::vector<double>(sh.samples.begin(), sh.samples.begin() + half);
          }
        } else {
          s["type"] = "perturbed";
          s["base"] = dump(*sh.base);
          s["exponent"] = sh.exponent;
          s["c_base"] = sh.c_base;
          s["c_g"] = sh.c_g;
          s["g_coeffs"] = sh.g.coeffs();
        }
      },
      b.shape());
  json j;
  j["dim"] = n;
  j["shape"] = s;
  if (b.scale() != 1.0) j["scale"] = b.scale();
  if (!b.id().empty()) j["id"] = b.id();
  return j;
}

}  // namespace

StarBody body_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse(j);
  } catch (const json::exception& e) {
    fail(std::string("bad field: ") + e.what());
  }
}

StarBody body_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open body file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return body_from_json_text(ss.str());
}

std::string body_to_json_text(const StarBody& body) { return dump(body).dump(2) + "\n"; }

}  // namespace centrobody

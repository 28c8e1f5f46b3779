#include "centrobody/counterexample.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "centrobody/centroid.hpp"
#include "centrobody/sections.hpp"
#include "centrobody/special.hpp"

namespace centrobody {
namespace {

constexpr double kPi = special::kPi;

Vec meridian_dir(const Vec& axis, const Vec& perp, double t) {
  return axpy(std::sqrt(std::max(0.0, 1.0 - t * t)), perp, scaled(axis, t));
}

struct Frame {
  int n;
  Vec axis;
  Vec perp;
};

Frame frame_of(const StarBody& L) {
  if (!L.is_zonal()) throw std::invalid_argument("counterexample: L must be revolution-symmetric");
  const Vec axis = *L.zonal_axis();
  return {L.dim(), axis, orthonormal_complement(axis, L.dim())[0]};
}

// Largest angular interval around phi0 on which f(cos phi) < 0, by a coarse
// scan refined with bisection. Returns {lo, hi} in [0, pi/2].
std::pair<double, double> negative_interval(const std::function<double(double)>& dens_of_t, double phi0) {
  const int scan = 90;
  const double step = 0.5 * kPi / scan;
  auto neg = [&](double phi) { return dens_of_t(std::cos(std::clamp(phi, 0.0, 0.5 * kPi))) < 0.0; };
  auto edge = [&](double inside, double dir) {
    double a = inside, b = inside;
    while (true) {
      b = a + dir * step;
      if (b < 0.0 || b > 0.5 * kPi) return std::clamp(b, 0.0, 0.5 * kPi);
      if (!neg(b)) break;
      a = b;
    }
    for (int i = 0; i < 40; ++i) {
      const double m = 0.5 * (a + b);
      (neg(m) ? a : b) = m;
    }
    return 0.5 * (a + b);
  };
  return {edge(phi0, -1.0), edge(phi0, 1.0)};
}

BumpSpec resolve_bump(BumpSpec b, const std::function<double(double)>& dens_of_t, CounterexampleCertificate& cert) {
  if (!(b.center > 0.0 && b.center <= 1.0)) throw std::invalid_argument("counterexample: bump center must lie in (0, 1]");
  const double phi0 = std::acos(b.center);
  cert.density_at_center = dens_of_t(b.center);
  if (!(cert.density_at_center < 0.0))
    throw std::invalid_argument("counterexample: the density of L is not negative at the bump center");
  const auto [lo, hi] = negative_interval(dens_of_t, phi0);
  cert.omega_t = std::cos(hi);
  const double room = (phi0 == 0.0) ? hi : std::min(phi0 - lo, hi - phi0);
  if (b.width <= 0.0) b.width = b.fill * room;
  if (b.width > room) cert.diagnostics.push_back("bump support extends past the negative set");
  if (b.profile != "plateau" && b.profile != "power")
    throw std::invalid_argument("counterexample: unknown bump profile '" + b.profile + "'");
  if (b.profile == "power" && b.power < 0) throw std::invalid_argument("counterexample: negative bump power");
  return b;
}

double max_abs(const HarmonicSpectrum& s);

HarmonicSpectrum bump_spectrum(const BumpSpec& b, int n, const Vec& axis, int plateau_degree) {
  const int M = b.profile == "power" ? 2 * b.power : plateau_degree;
  return gegenbauer_expand([&](double t) { return bump_value(b, t); }, n, axis, M);
}

// int_S dens v with dens given by its series, plus the part over {dens < 0}.
std::pair<double, double> pairing(const ZonalSeries& dens, const BumpSpec& b, int n, int count) {
  const double all = integrate_zonal(n, count, [&](double t) { return dens(t) * bump_value(b, t); });
  const double neg = integrate_zonal(n, count, [&](double t) {
    const double d = dens(t);
    return d < 0.0 ? d * bump_value(b, t) : 0.0;
  });
  return {all, neg};
}

// Power profile: among k0 2^j, k0 = ceil(1 / sin^2 width), keep the exponent
// whose positive pairing with the density is largest relative to max |g|,
// requiring the part over the negative set to dominate.
void choose_power(BumpSpec& b, const ZonalSeries& dens, int n, const Vec& axis, double g_degree,
                  CounterexampleCertificate& cert) {
  if (b.profile != "power") return;
  if (b.power > 0) {
    cert.pairing = pairing(dens, b, n, 2 * b.power + 200).first;
    return;
  }
  const double s = std::sin(b.width);
  const int k0 = std::max(1, static_cast<int>(std::ceil(1.0 / (s * s))));
  double best = -HUGE_VAL;
  int best_k = 0;
  for (int k = k0; k <= 16 * k0 && k <= 4000; k *= 2) {
    BumpSpec c = b;
    c.power = k;
    const auto [all, neg] = pairing(dens, c, n, 2 * k + 200);
    if (!(all > 0.5 * neg)) continue;
    const double gmax = max_abs(ft_homogeneous(bump_spectrum(c, n, axis, 0), g_degree));
    if (all / gmax > best) {
      best = all / gmax;
      best_k = k;
      cert.pairing = all;
    }
  }
  if (best_k == 0) throw std::invalid_argument("counterexample: no power profile pairs positively with the density of L");
  b.power = best_k;
}

double max_abs(const HarmonicSpectrum& s) {
  double m = 0.0;
  for (int i = 0; i <= 2000; ++i) m = std::max(m, std::fabs(s(std::cos(0.5 * kPi * i / 2000.0))));
  return m;
}

double min_on_grid(const std::function<double(double)>& f) {
  double m = HUGE_VAL;
  for (int i = 0; i <= 4000; ++i) m = std::min(m, f(std::cos(0.5 * kPi * i / 4000.0)));
  return m;
}

double zonal_integral(int n, const std::function<double(double)>& f) { return integrate_zonal(n, 1200, f); }

std::vector<double> turning(const std::vector<std::array<double, 2>>& P, double tol, double& worst, std::size_t& at) {
  const std::size_t m = P.size();
  std::vector<double> s(m);
  worst = HUGE_VAL;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = P[(i + m - 1) % m];
    const auto& b = P[i];
    const auto& c = P[(i + 1) % m];
    const double ux = b[0] - a[0], uy = b[1] - a[1], vx = c[0] - b[0], vy = c[1] - b[1];
    const double lu = std::hypot(ux, uy), lv = std::hypot(vx, vy);
    const double r = std::hypot(b[0], b[1]);
    // clockwise traversal: convex corners have negative cross product
    const double turn = -(ux * vy - uy * vx) / (lu * lv);
    const double slack = tol + 16.0 * DBL_EPSILON * r / std::min(lu, lv);
    s[i] = turn + slack;
    if (turn + slack < worst) {
      worst = turn + slack;
      at = i;
    }
  }
  return s;
}

}  // namespace

double bump_value(const BumpSpec& b, double t) {
  if (b.profile == "power") return -b.amplitude * std::pow(t * t, b.power);
  const double phi = std::acos(std::min(1.0, std::fabs(t)));
  const double d = std::fabs(phi - std::acos(std::min(1.0, b.center)));
  if (b.width <= 0.0) return 0.0;
  const double s = d / b.width;
  if (s >= 1.0) return 0.0;
  return -b.amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

ConvexityProbe convexity_probe(const StarBody& K, int resolution, double tol) {
  ConvexityProbe pr;
  pr.resolution = resolution;
  pr.min_turn = HUGE_VAL;
  const int n = K.dim();
  if (K.is_zonal()) {
    // meridian curve (rho sin phi, rho cos phi), phi in [0, 2 pi), refined at the poles
    std::vector<double> phis;
    const double h = kPi / resolution;
    for (int i = 0; i < 2 * resolution; ++i) phis.push_back(i * h);
    for (double pole : {0.0, kPi, 2.0 * kPi})
      for (int j = 1; j < 50; ++j)
        for (double sgn : {-1.0, 1.0}) {
          const double ph = pole + sgn * j * h / 50.0;
          if (ph > 0.0 && ph < 2.0 * kPi) phis.push_back(ph);
        }
    std::sort(phis.begin(), phis.end());
    std::vector<std::array<double, 2>> P;
    for (double ph : phis) {
      const double r = K.radial_zonal(std::cos(ph));
      P.push_back({r * std::sin(ph), r * std::cos(ph)});
    }
    double worst;
    std::size_t at = 0;
    turning(P, tol, worst, at);
    pr.min_turn = worst;
    pr.worst_t = std::cos(phis[at]);
  } else {
    std::vector<std::pair<Vec, Vec>> planes;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) planes.push_back({unit_vector(n, i), unit_vector(n, j)});
    const CounterRng rng(0xc0ffee);
    for (std::uint64_t k = 0; k < 6; ++k) {
      const Vec a = random_direction(rng, n, 2 * k);
      Vec b = random_direction(rng, n, 2 * k + 1);
      b = normalized(axpy(-dot(a, b), a, b));
      planes.push_back({a, b});
    }
    for (const auto& [a, b] : planes) {
      std::vector<std::array<double, 2>> P;
      for (int i = 0; i < 2 * resolution; ++i) {
        const double ph = kPi * i / resolution;
        const double r = K.radial(axpy(std::sin(ph), b, scaled(a, std::cos(ph))));
        P.push_back({r * std::sin(ph), r * std::cos(ph)});
      }
      double worst;
      std::size_t at = 0;
      turning(P, tol, worst, at);
      if (worst < pr.min_turn) {
        pr.min_turn = worst;
        pr.worst_t = kPi * at / resolution;
      }
    }
  }
  pr.passed = pr.min_turn >= 0.0;
  return pr;
}

CounterexampleResult build_counterexample_p(const StarBody& L, double p, const BumpSpec& bump_in,
                                            std::optional<double> eps, const BuildOptions& opt) {
  if (!(p > -1.0 && p < 1.0) || p == 0.0) throw std::invalid_argument("counterexample: p must lie in (-1, 1), p != 0");
  const Frame fr = frame_of(L);
  const int n = fr.n;
  const SphereRule rule = sphere_rule(n, opt.rule_degree);
  const EmbeddingCertificate lc = embed_certificate(L, p, opt.density_degree, rule);
  if (lc.verdict != Verdict::Fails)
    throw std::invalid_argument("counterexample: L is not certified as non-embedding (" + to_string(lc.verdict) + ")");

  CounterexampleCertificate cert;
  cert.mode = "p";
  cert.p = p;
  auto dens = [&](double t) { return embedding_density_sections(L, meridian_dir(fr.axis, fr.perp, t), p); };
  cert.bump = resolve_bump(bump_in, dens, cert);
  const ZonalSeries dens_series = gegenbauer_expand(dens, n, fr.axis, opt.pairing_degree).series();
  choose_power(cert.bump, dens_series, n, fr.axis, p, cert);
  const BumpSpec b = cert.bump;
  cert.v = bump_spectrum(b, n, fr.axis, opt.bump_degree);
  if (b.profile == "plateau") cert.pairing = pairing(dens_series, b, n, 2 * opt.bump_degree + 200).first;
  if (!(cert.pairing > 0.0)) cert.diagnostics.push_back("density of L pairs with v with the wrong sign");
  cert.g = ft_homogeneous(cert.v, p);

  const double volL = volume(L);
  cert.vol_L = volL;
  const double e = n + p;
  auto base = [&](double t) { return std::pow(L.radial_zonal(t), e); };
  const double gmax = max_abs(cert.g);
  if (gmax == 0.0) throw std::invalid_argument("counterexample: the perturbation vanishes");
  const double base_scale = p < 0.0 ? 1.0 / volL : 1.0;
  double epsilon = eps ? *eps : 0.1 * min_on_grid(base) * base_scale / gmax;
  const auto Lp = std::make_shared<const StarBody>(L);
  const ZonalSeries gs = cert.g.series();
  for (int k = 0; k <= (eps ? 0 : opt.max_halvings); ++k, epsilon *= 0.5) {
    cert.halvings = k;
    auto H = [&](double t) { return base_scale * base(t) + epsilon * gs(t); };
    if (!(min_on_grid(H) > 0.0)) continue;
    double c_base = 1.0, c_g = epsilon;
    if (p < 0.0) {
      const double F = zonal_integral(n, [&](double t) { return std::pow(H(t), n / e); }) / n;
      const double volK = std::pow(F, e / p);
      c_base = volK / volL;
      c_g = volK * epsilon;
    }
    StarBody K = StarBody::perturbed(Lp, e, c_base, c_g, gs);
    const ConvexityProbe probe = convexity_probe(K, opt.convexity_resolution);
    if (!probe.passed) {
      cert.convexity = probe;
      continue;
    }
    cert.epsilon = epsilon;
    cert.convexity = probe;
    cert.min_rho = min_on_grid([&](double t) { return K.radial_zonal(t); });
    cert.vol_K = volume(K);
    if (cert.vol_K < volL) {
      cert.margin_dilation = std::pow(volL / cert.vol_K, 0.5 / n);
      K = K.dilate(cert.margin_dilation);
      cert.vol_K = volume(K);
    } else {
      cert.diagnostics.push_back("vol(K) >= vol(L) before the margin dilation");
    }
    return {K.with_id("counterexample_p"), cert};
  }
  throw std::invalid_argument("counterexample: no epsilon passed the positivity and convexity probes (min turn " +
                              std::to_string(cert.convexity.min_turn) + ")");
}

CounterexampleResult build_counterexample_log(const StarBody& L, const BumpSpec& cap, std::optional<double> eps,
                                              const BuildOptions& opt) {
  const Frame fr = frame_of(L);
  const int n = fr.n;
  if (n < 4) throw std::invalid_argument("counterexample: the log construction needs n >= 4");
  const SphereRule rule = sphere_rule(n, opt.rule_degree);
  const EmbeddingCertificate lc = embed_certificate(L, 0.0, opt.density_degree, rule);
  if (lc.verdict != Verdict::Fails)
    throw std::invalid_argument("counterexample: L is not certified as non-embedding in L_0 (" + to_string(lc.verdict) +
                                ")");
  CounterexampleCertificate cert;
  cert.mode = "log";
  cert.p = 0.0;
  auto dens = [&](double t) { return embedding_density_sections(L, meridian_dir(fr.axis, fr.perp, t), 0.0); };
  cert.bump = resolve_bump(cap, dens, cert);
  const ZonalSeries dens_series = gegenbauer_expand(dens, n, fr.axis, opt.pairing_degree).series();
  choose_power(cert.bump, dens_series, n, fr.axis, 0.0, cert);
  const BumpSpec b = cert.bump;
  // v = ln||theta||_D on the sphere
  cert.v = bump_spectrum(b, n, fr.axis, opt.bump_degree);
  if (b.profile == "plateau") cert.pairing = pairing(dens_series, b, n, 2 * opt.bump_degree + 200).first;
  if (!(cert.pairing > 0.0)) cert.diagnostics.push_back("density of L pairs with v with the wrong sign");
  cert.g = ft_homogeneous(cert.v, 0.0);
  const ZonalSeries vs = cert.v.series();
  const ZonalSeries gs = cert.g.series();
  cert.g_integral = zonal_integral(n, gs);

  // cross-check g against the section route for a shallow copy of D near the
  // poles; ln||x||_D - ln|x| = v is linear in the depth
  {
    const double depth = std::min(b.amplitude, 0.01);
    BumpSpec shallow = b;
    shallow.amplitude = depth;
    // exp(-v) - 1 = sum_j (-v)^j / j!, truncated once depth^j / j! < 1e-13
    int d_degree = opt.bump_degree;
    if (b.profile == "power") {
      double term = 1.0;
      int j = 0;
      while (term >= 1e-13 && j < 60) term *= depth / ++j;
      d_degree = std::min(4000, 2 * b.power * j);
    }
    const ZonalSeries ev =
        gegenbauer_expand([&](double t) { return std::exp(-bump_value(shallow, t)) - 1.0; }, n, fr.axis, d_degree)
            .series();
    const auto ball = std::make_shared<const StarBody>(StarBody::ball(n, 1.0));
    const auto D = std::make_shared<const StarBody>(StarBody::perturbed(ball, 1.0, 1.0, 1.0, ev));
    const double ball_ft = -std::pow(2.0 * kPi, n) / special::sphere_area(n);
    double worst = 0.0;
    for (double t : {1.0, std::cos(0.5 * b.width), std::cos(b.width)}) {
      const Vec xi = meridian_dir(fr.axis, fr.perp, t);
      const double sec = (ft_log_from_sections(SectionProfile(D, xi)) - ball_ft) * (b.amplitude / depth);
      worst = std::max(worst, std::fabs(sec - gs(t)) / std::max(1e-300, std::fabs(gs(t))));
    }
    cert.g_cross_check = worst;
  }

  const double volL = volume(L);
  cert.vol_L = volL;
  const double kappa = n * std::pow(2.0 * kPi, -n);
  auto base = [&](double t) { return std::pow(L.radial_zonal(t), n) / volL; };
  const double gmax = kappa * max_abs(cert.g);
  if (gmax == 0.0) throw std::invalid_argument("counterexample: the perturbation vanishes");
  double epsilon = eps ? *eps : 0.1 * min_on_grid(base) / gmax;
  const auto Lp = std::make_shared<const StarBody>(L);
  const double mean_v = zonal_integral(n, vs) / special::sphere_area(n);
  const double alpha = -mean_v;
  const double sphere_L =
      zonal_integral(n, [&](double t) { const double r = L.radial_zonal(t); return -std::pow(r, n) * std::log(r); });
  for (int k = 0; k <= (eps ? 0 : opt.max_halvings); ++k, epsilon *= 0.5) {
    cert.halvings = k;
    auto H = [&](double t) { return base(t) + epsilon * kappa * gs(t); };
    if (!(min_on_grid(H) > 0.0)) continue;
    const StarBody K0 = StarBody::perturbed(Lp, static_cast<double>(n), 1.0 / volL, epsilon * kappa, gs);
    const ConvexityProbe probe = convexity_probe(K0, opt.convexity_resolution);
    if (!probe.passed) {
      cert.convexity = probe;
      continue;
    }
    cert.epsilon = epsilon;
    cert.convexity = probe;
    // C(lambda) = n ln lambda + C(1); the gauge of K is lambda ||x||_{K0}
    const double vol0 = volume(K0);
    const double sphere_0 = zonal_integral(n, [&](double t) {
      const double r = K0.radial_zonal(t);
      return -std::pow(r, n) * std::log(r);
    });
    const double C1 = sphere_0 / vol0 - sphere_L / volL + n * epsilon * alpha;
    cert.lambda = std::exp(-C1 / n);
    StarBody K = K0.dilate(1.0 / cert.lambda);
    // mean-log identity: ml_K - ml_L + eps v = 0 at every node
    const int gauge_degree = std::max(opt.density_degree, 4 * b.power + 40);
    const GaugeSamples sk = gauge_samples_zonal(K, 0.0, rule, gauge_degree);
    const GaugeSamples sl = gauge_samples_zonal(L, 0.0, rule, gauge_degree);
    double spread = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double r = sk.moment_values[i] - sl.moment_values[i] + epsilon * vs(dot(rule.nodes[i], fr.axis));
      spread = std::max(spread, std::fabs(r));
    }
    cert.c_solve_residual = spread;
    cert.min_rho = min_on_grid([&](double t) { return K.radial_zonal(t); });
    cert.vol_K = volume(K);
    if (cert.vol_K < volL) {
      cert.margin_dilation = std::pow(volL / cert.vol_K, 0.5 / n);
      K = K.dilate(cert.margin_dilation);
      cert.vol_K = volume(K);
    } else {
      cert.diagnostics.push_back("vol(K) >= vol(L) before the margin dilation");
    }
    return {K.with_id("counterexample_log"), cert};
  }
  throw std::invalid_argument("counterexample: no epsilon passed the positivity and convexity probes (min turn " +
                              std::to_string(cert.convexity.min_turn) + ")");
}

}  // namespace centrobody

#include "cbo/bench/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace cbo::bench {

using nlohmann::json;

namespace {

struct ErrorList {
  std::vector<std::string> items;

  void add(const std::string& msg) { items.push_back(msg); }

  void raise_if_any() const {
    if (items.empty()) return;
    std::ostringstream os;
    os << "invalid config (" << items.size() << " problem" << (items.size() > 1 ? "s" : "")
       << "):";
    for (const auto& m : items) os << "\n  - " << m;
    throw ConfigError(os.str());
  }
};

double get_num(const json& j, const char* key, double fallback, ErrorList& errs) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    errs.add(std::string(key) + ": expected a number");
    return fallback;
  }
  return j.at(key).get<double>();
}

long get_int(const json& j, const char* key, long fallback, ErrorList& errs) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    errs.add(std::string(key) + ": expected an integer");
    return fallback;
  }
  return j.at(key).get<long>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback,
                    ErrorList& errs) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) {
    errs.add(std::string(key) + ": expected a string");
    return fallback;
  }
  return j.at(key).get<std::string>();
}

std::vector<double> get_vec(const json& j, const char* key, ErrorList& errs) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) {
    errs.add(std::string(key) + ": expected an array of numbers");
    return out;
  }
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) {
      errs.add(std::string(key) + ": expected an array of numbers");
      return {};
    }
    out.push_back(v.get<double>());
  }
  return out;
}

BallSpec parse_ball(const json& j, const char* what, ErrorList& errs) {
  BallSpec b;
  if (!j.is_object()) {
    errs.add(std::string(what) + ": expected an object with center and radius");
    return b;
  }
  b.center = get_vec(j, "center", errs);
  b.radius = get_num(j, "radius", 1.0, errs);
  if (b.center.empty()) errs.add(std::string(what) + ": center must be nonempty");
  if (!(b.radius > 0.0)) errs.add(std::string(what) + ": radius must be positive");
  return b;
}

json ball_to_json(const BallSpec& b) {
  return json{{"center", b.center}, {"radius", b.radius}};
}

NoiseKind parse_noise_kind(const std::string& s, ErrorList& errs) {
  if (s == "anisotropic") return NoiseKind::anisotropic;
  if (s == "isotropic") return NoiseKind::isotropic;
  if (s == "hierarchical") return NoiseKind::hierarchical;
  errs.add("params.noise: unknown kind '" + s + "'");
  return NoiseKind::anisotropic;
}

const char* noise_kind_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::anisotropic: return "anisotropic";
    case NoiseKind::isotropic: return "isotropic";
    case NoiseKind::hierarchical: return "hierarchical";
  }
  return "anisotropic";
}

double polyline_at(const std::vector<std::array<double, 2>>& pts, double s) {
  if (pts.empty()) return 0.0;
  if (s <= pts.front()[0]) return pts.front()[1];
  if (s >= pts.back()[0]) return pts.back()[1];
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (s <= pts[i][0]) {
      const double x0 = pts[i - 1][0], y0 = pts[i - 1][1];
      const double x1 = pts[i][0], y1 = pts[i][1];
      if (x1 == x0) return y1;
      return y0 + (y1 - y0) * (s - x0) / (x1 - x0);
    }
  }
  return pts.back()[1];
}

std::vector<std::array<double, 2>> get_points(const json& j, const char* key, ErrorList& errs) {
  std::vector<std::array<double, 2>> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) {
    errs.add(std::string(key) + ": expected an array of [x, y] pairs");
    return out;
  }
  for (const auto& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      errs.add(std::string(key) + ": expected an array of [x, y] pairs");
      return {};
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return out;
}

}  // namespace

Domain DomainSpec::build(int expected_dim) const {
  if (type == "all_space") return Domain::all_space(expected_dim);
  if (type == "box") return Domain::box(lower, upper);
  if (type == "ball") return Domain::ball(outer.center, outer.radius);
  if (type == "ball_minus_balls") return Domain::ball_minus_balls(outer, removed);
  if (type == "omega1") return make_paper_domain(PaperDomain::omega1, expected_dim);
  if (type == "omega2") return make_paper_domain(PaperDomain::omega2, expected_dim);
  if (type == "omega3") return make_paper_domain(PaperDomain::omega3, expected_dim);
  if (type == "omega4") return make_paper_domain(PaperDomain::omega4, expected_dim);
  throw ConfigError("domain.type: unknown type '" + type + "'");
}

fem::Obstacle ObstacleSpec::sample(int m) const {
  const long n = (1L << m) - 1;
  const double h = std::ldexp(1.0, -m);
  fem::Obstacle obs;
  obs.lower.resize(static_cast<std::size_t>(n));
  obs.upper.resize(static_cast<std::size_t>(n));
  if (type == "constant") {
    std::fill(obs.lower.begin(), obs.lower.end(), lower_value);
    std::fill(obs.upper.begin(), obs.upper.end(), upper_value);
  } else if (type == "piecewise_linear") {
    for (long l = 1; l <= n; ++l) {
      obs.lower[static_cast<std::size_t>(l - 1)] = polyline_at(lower_points, l * h);
      obs.upper[static_cast<std::size_t>(l - 1)] = polyline_at(upper_points, l * h);
    }
  } else if (type == "sampled") {
    if (static_cast<long>(lower_samples.size()) != n ||
        static_cast<long>(upper_samples.size()) != n)
      throw ConfigError("obstacle: sampled bounds must have 2^m - 1 entries");
    obs.lower = lower_samples;
    obs.upper = upper_samples;
  } else {
    throw ConfigError("obstacle.type: unknown type '" + type + "'");
  }
  obs.validate();
  return obs;
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    out[static_cast<std::size_t>(i)] =
        log_spaced ? std::pow(10.0, std::log10(lo) + t * (std::log10(hi) - std::log10(lo)))
                   : lo + t * (hi - lo);
  }
  return out;
}

int ExperimentConfig::effective_dim() const {
  if (objective == "allen_cahn" && allen_cahn) return (1 << allen_cahn->m) - 1;
  return dim;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("invalid config: top level must be an object");

  ErrorList errs;
  ExperimentConfig c;

  c.name = get_str(j, "name", "", errs);
  c.objective = get_str(j, "objective", "rastrigin", errs);
  if (c.objective != "rastrigin" && c.objective != "sphere" && c.objective != "allen_cahn")
    errs.add("objective: must be rastrigin, sphere or allen_cahn");
  c.dim = static_cast<int>(get_int(j, "dim", 2, errs));

  if (j.contains("domain")) {
    const json& d = j.at("domain");
    if (!d.is_object()) {
      errs.add("domain: expected an object");
    } else {
      c.domain.type = get_str(d, "type", "all_space", errs);
      c.domain.lower = get_vec(d, "lower", errs);
      c.domain.upper = get_vec(d, "upper", errs);
      if (d.contains("outer")) c.domain.outer = parse_ball(d.at("outer"), "domain.outer", errs);
      if (d.contains("center")) {
        c.domain.outer.center = get_vec(d, "center", errs);
        c.domain.outer.radius = get_num(d, "radius", 1.0, errs);
      }
      if (d.contains("removed")) {
        if (!d.at("removed").is_array()) {
          errs.add("domain.removed: expected an array of balls");
        } else {
          for (const auto& b : d.at("removed"))
            c.domain.removed.push_back(parse_ball(b, "domain.removed[]", errs));
        }
      }
      static const char* known[] = {"all_space", "box",    "ball",   "ball_minus_balls",
                                    "omega1",    "omega2", "omega3", "omega4"};
      if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
            return c.domain.type == k;
          }) == std::end(known))
        errs.add("domain.type: unknown type '" + c.domain.type + "'");
      if (c.domain.type == "box" &&
          (c.domain.lower.empty() || c.domain.lower.size() != c.domain.upper.size()))
        errs.add("domain: box needs matching nonempty lower/upper");
    }
  }

  if (j.contains("params")) {
    const json& p = j.at("params");
    if (!p.is_object()) {
      errs.add("params: expected an object");
    } else {
      c.params.lambda = get_num(p, "lambda", 1.0, errs);
      c.params.sigma = get_num(p, "sigma", 1.0, errs);
      c.params.dt = get_num(p, "dt", 1e-2, errs);
      c.params.iterations = get_int(p, "iterations", 100, errs);
      c.params.noise_kind = parse_noise_kind(get_str(p, "noise", "anisotropic", errs), errs);
      c.params.noise_coarse_level = static_cast<int>(get_int(p, "noise_coarse_level", 0, errs));
      c.params.noise_fine_level = static_cast<int>(get_int(p, "noise_fine_level", 0, errs));
      c.params.hierarchical_rescale = p.value("hierarchical_rescale", false);
      if (!(c.params.lambda > 0.0)) errs.add("params.lambda: must be positive");
      if (!(c.params.sigma >= 0.0)) errs.add("params.sigma: must be >= 0");
      if (!(c.params.dt > 0.0)) errs.add("params.dt: must be positive");
      if (c.params.iterations < 0) errs.add("params.iterations: must be >= 0");
    }
  }

  if (j.contains("heuristics")) {
    const json& h = j.at("heuristics");
    if (!h.is_object()) {
      errs.add("heuristics: expected an object");
    } else {
      c.heuristics.alpha0 = get_num(h, "alpha0", 1e6, errs);
      c.heuristics.alphaK = get_num(h, "alphaK", std::max(c.heuristics.alpha0, 1e9), errs);
      if (h.contains("gamma")) c.heuristics.gamma = get_num(h, "gamma", 1.0, errs);
      if (h.contains("boost_S")) c.heuristics.boost_S = get_num(h, "boost_S", 1.0, errs);
      if (!(c.heuristics.alpha0 > 0.0) || !(c.heuristics.alphaK > 0.0))
        errs.add("heuristics: alpha endpoints must be positive");
      else if (c.heuristics.alpha0 > c.heuristics.alphaK)
        errs.add("heuristics: alpha0 must not exceed alphaK");
      if (c.heuristics.gamma && !(*c.heuristics.gamma > 0.0 && *c.heuristics.gamma <= 1.0))
        errs.add("heuristics.gamma: must lie in (0, 1]");
      if (c.heuristics.boost_S && !(*c.heuristics.boost_S >= 1.0))
        errs.add("heuristics.boost_S: must be >= 1");
    }
  }

  if (j.contains("init")) {
    const json& in = j.at("init");
    if (!in.is_object()) {
      errs.add("init: expected an object");
    } else {
      c.init.type = get_str(in, "type", "gaussian", errs);
      c.init.mean = get_vec(in, "mean", errs);
      c.init.variance = get_num(in, "variance", 10.0, errs);
      c.init.lower = get_vec(in, "lower", errs);
      c.init.upper = get_vec(in, "upper", errs);
      if (c.init.type != "gaussian" && c.init.type != "uniform" && c.init.type != "fem_coarse")
        errs.add("init.type: must be gaussian, uniform or fem_coarse");
      if (c.init.type == "gaussian" && !(c.init.variance > 0.0))
        errs.add("init.variance: must be positive");
    }
  }

  c.particles = get_int(j, "particles", 1000, errs);
  if (c.particles < 1) errs.add("particles: must be >= 1");

  if (j.contains("seeds")) {
    c.seeds.clear();
    if (!j.at("seeds").is_array()) {
      errs.add("seeds: expected an array of integers");
    } else {
      for (const auto& s : j.at("seeds")) {
        if (!s.is_number_integer() && !s.is_number_unsigned()) {
          errs.add("seeds: expected an array of integers");
          break;
        }
        c.seeds.push_back(s.get<std::uint64_t>());
      }
    }
    if (c.seeds.empty()) errs.add("seeds: at least one seed required");
  }

  c.threads = static_cast<int>(get_int(j, "threads", 0, errs));
  c.output = get_str(j, "output", "", errs);
  if (j.contains("success_threshold"))
    c.success_threshold = get_num(j, "success_threshold", 0.0, errs);
  if (j.contains("x_star")) c.x_star = get_vec(j, "x_star", errs);
  c.ball_before_domain = j.value("ball_before_domain", true);

  if (j.contains("allen_cahn")) {
    const json& a = j.at("allen_cahn");
    if (!a.is_object()) {
      errs.add("allen_cahn: expected an object");
    } else {
      AllenCahnSpec ac;
      ac.m = static_cast<int>(get_int(a, "m", 5, errs));
      ac.p = get_num(a, "p", 1.5, errs);
      ac.eps_inv_sq = get_num(a, "eps_inv_sq", 500.0, errs);
      ac.v0 = get_num(a, "v0", 0.5, errs);
      ac.v1 = get_num(a, "v1", 1.0, errs);
      ac.w1 = get_num(a, "w1", 0.25, errs);
      ac.w2 = get_num(a, "w2", 0.75, errs);
      ac.iters_per_level = get_int(a, "iters_per_level", 100, errs);
      ac.iters_finest = get_int(a, "iters_finest", 1000, errs);
      ac.first_level = static_cast<int>(get_int(a, "first_level", 2, errs));
      ac.noise_rescale = a.value("noise_rescale", true);
      if (a.contains("obstacle")) {
        const json& o = a.at("obstacle");
        if (!o.is_object()) {
          errs.add("allen_cahn.obstacle: expected an object");
        } else {
          ObstacleSpec obs;
          obs.type = get_str(o, "type", "constant", errs);
          obs.lower_value = get_num(o, "lower_value", 0.0, errs);
          obs.upper_value = get_num(o, "upper_value", 0.0, errs);
          obs.lower_points = get_points(o, "lower_points", errs);
          obs.upper_points = get_points(o, "upper_points", errs);
          obs.lower_samples = get_vec(o, "lower_samples", errs);
          obs.upper_samples = get_vec(o, "upper_samples", errs);
          if (obs.type != "constant" && obs.type != "piecewise_linear" && obs.type != "sampled")
            errs.add("allen_cahn.obstacle.type: unknown type '" + obs.type + "'");
          ac.obstacle = std::move(obs);
        }
      }
      if (ac.m < 2) errs.add("allen_cahn.m: must be >= 2");
      if (!(ac.p >= 1.0)) errs.add("allen_cahn.p: must be >= 1");
      if (!(ac.eps_inv_sq >= 0.0)) errs.add("allen_cahn.eps_inv_sq: must be >= 0");
      if (!(ac.w1 < ac.w2)) errs.add("allen_cahn: w1 < w2 required");
      if (ac.iters_per_level < 0 || ac.iters_finest < 0)
        errs.add("allen_cahn: iteration counts must be >= 0");
      if (ac.first_level < 1 || (ac.m >= 2 && ac.first_level > ac.m))
        errs.add("allen_cahn.first_level: must lie in [1, m]");
      c.allen_cahn = std::move(ac);
    }
  }
  if (c.objective == "allen_cahn" && !c.allen_cahn)
    errs.add("allen_cahn: required when objective is allen_cahn");

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    if (!s.is_object()) {
      errs.add("sweep: expected an object");
    } else {
      SweepGrid g;
      auto parse_axis = [&](const char* key, AxisSpec& axis) {
        if (!s.contains(key)) {
          errs.add(std::string("sweep.") + key + ": required");
          return;
        }
        const json& a = s.at(key);
        axis.lo = get_num(a, "lo", 0.1, errs);
        axis.hi = get_num(a, "hi", 10.0, errs);
        axis.count = static_cast<int>(get_int(a, "count", 10, errs));
        axis.log_spaced = a.value("log", true);
        if (axis.count < 1) errs.add(std::string("sweep.") + key + ".count: must be >= 1");
        if (axis.count > 1 && !(axis.lo < axis.hi))
          errs.add(std::string("sweep.") + key + ": lo < hi required");
        if (axis.log_spaced && !(axis.lo > 0.0))
          errs.add(std::string("sweep.") + key + ": log spacing needs lo > 0");
      };
      parse_axis("lambda", g.lambda_range);
      parse_axis("sigma", g.sigma_range);
      g.repetitions = static_cast<int>(get_int(s, "repetitions", 1, errs));
      if (g.repetitions < 1) errs.add("sweep.repetitions: must be >= 1");
      c.sweep = std::move(g);
    }
  }

  // cross-field consistency
  const int d = c.effective_dim();
  if (c.objective != "allen_cahn") {
    if (c.dim < 1) errs.add("dim: must be >= 1");
    if (c.init.type == "gaussian" && !c.init.mean.empty() &&
        static_cast<int>(c.init.mean.size()) != d)
      errs.add("init.mean: dimension mismatch with objective");
    if (c.init.type == "uniform" &&
        (static_cast<int>(c.init.lower.size()) != d ||
         static_cast<int>(c.init.upper.size()) != d))
      errs.add("init: uniform bounds must match the objective dimension");
    if (c.init.type == "fem_coarse") errs.add("init.type: fem_coarse is only for allen_cahn");
    if (c.domain.type == "box" && !c.domain.lower.empty() &&
        static_cast<int>(c.domain.lower.size()) != d)
      errs.add("domain: box dimension mismatch with objective");
    if (c.domain.type == "ball" && !c.domain.outer.center.empty() &&
        static_cast<int>(c.domain.outer.center.size()) != d)
      errs.add("domain: ball dimension mismatch with objective");
  }
  if (c.x_star && static_cast<int>(c.x_star->size()) != d)
    errs.add("x_star: dimension mismatch with objective");

  errs.raise_if_any();
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  if (!c.name.empty()) j["name"] = c.name;
  j["objective"] = c.objective;
  if (c.objective != "allen_cahn") j["dim"] = c.dim;

  json d;
  d["type"] = c.domain.type;
  if (c.domain.type == "box") {
    d["lower"] = c.domain.lower;
    d["upper"] = c.domain.upper;
  } else if (c.domain.type == "ball") {
    d["center"] = c.domain.outer.center;
    d["radius"] = c.domain.outer.radius;
  } else if (c.domain.type == "ball_minus_balls") {
    d["outer"] = ball_to_json(c.domain.outer);
    json removed = json::array();
    for (const auto& b : c.domain.removed) removed.push_back(ball_to_json(b));
    d["removed"] = removed;
  }
  j["domain"] = d;

  json p;
  p["lambda"] = c.params.lambda;
  p["sigma"] = c.params.sigma;
  p["dt"] = c.params.dt;
  p["iterations"] = c.params.iterations;
  p["noise"] = noise_kind_name(c.params.noise_kind);
  if (c.params.noise_kind == NoiseKind::hierarchical) {
    p["noise_coarse_level"] = c.params.noise_coarse_level;
    p["noise_fine_level"] = c.params.noise_fine_level;
    if (c.params.hierarchical_rescale) p["hierarchical_rescale"] = true;
  }
  j["params"] = p;

  json h;
  h["alpha0"] = c.heuristics.alpha0;
  h["alphaK"] = c.heuristics.alphaK;
  if (c.heuristics.gamma) h["gamma"] = *c.heuristics.gamma;
  if (c.heuristics.boost_S) h["boost_S"] = *c.heuristics.boost_S;
  j["heuristics"] = h;

  json in;
  in["type"] = c.init.type;
  if (c.init.type == "gaussian") {
    if (!c.init.mean.empty()) in["mean"] = c.init.mean;
    in["variance"] = c.init.variance;
  } else if (c.init.type == "uniform") {
    in["lower"] = c.init.lower;
    in["upper"] = c.init.upper;
  }
  j["init"] = in;

  j["particles"] = c.particles;
  j["seeds"] = c.seeds;
  if (c.threads != 0) j["threads"] = c.threads;
  if (!c.output.empty()) j["output"] = c.output;
  if (c.success_threshold) j["success_threshold"] = *c.success_threshold;
  if (c.x_star) j["x_star"] = *c.x_star;
  if (!c.ball_before_domain) j["ball_before_domain"] = false;

  if (c.allen_cahn) {
    const auto& ac = *c.allen_cahn;
    json a;
    a["m"] = ac.m;
    a["p"] = ac.p;
    a["eps_inv_sq"] = ac.eps_inv_sq;
    a["v0"] = ac.v0;
    a["v1"] = ac.v1;
    a["w1"] = ac.w1;
    a["w2"] = ac.w2;
    a["iters_per_level"] = ac.iters_per_level;
    a["iters_finest"] = ac.iters_finest;
    a["first_level"] = ac.first_level;
    a["noise_rescale"] = ac.noise_rescale;
    if (ac.obstacle) {
      const auto& o = *ac.obstacle;
      json oj;
      oj["type"] = o.type;
      if (o.type == "constant") {
        oj["lower_value"] = o.lower_value;
        oj["upper_value"] = o.upper_value;
      } else if (o.type == "piecewise_linear") {
        json lp = json::array(), up = json::array();
        for (const auto& pt : o.lower_points) lp.push_back(json::array({pt[0], pt[1]}));
        for (const auto& pt : o.upper_points) up.push_back(json::array({pt[0], pt[1]}));
        oj["lower_points"] = lp;
        oj["upper_points"] = up;
      } else {
        oj["lower_samples"] = o.lower_samples;
        oj["upper_samples"] = o.upper_samples;
      }
      a["obstacle"] = oj;
    }
    j["allen_cahn"] = a;
  }

  if (c.sweep) {
    json s;
    auto axis_json = [](const AxisSpec& a) {
      json out;
      out["lo"] = a.lo;
      out["hi"] = a.hi;
      out["count"] = a.count;
      out["log"] = a.log_spaced;
      return out;
    };
    s["lambda"] = axis_json(c.sweep->lambda_range);
    s["sigma"] = axis_json(c.sweep->sigma_range);
    s["repetitions"] = c.sweep->repetitions;
    j["sweep"] = s;
  }

  return j.dump(2) + "\n";
}

}  // namespace cbo::bench

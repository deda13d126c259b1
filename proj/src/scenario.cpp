#include "bisim/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bisim {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double toDouble(const std::string& s, const std::string& field) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + s + "' in field '" + field + "'");
  }
}

}  // namespace

Shape parse_shape(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = trim(spec.substr(0, colon));
  std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "circle") {
    if (args.empty()) throw ConfigError("circle shape needs a radius");
    return Shape::circle(toDouble(trim(args), "shape.radius"));
  }
  if (kind == "ellipse") {
    auto parts = split(args, ',');
    if (parts.size() != 2) throw ConfigError("ellipse shape needs 'a,b'");
    return Shape::ellipse(toDouble(parts[0], "shape.a"),
                          toDouble(parts[1], "shape.b"));
  }
  if (kind == "fourier-star") {
    auto groups = split(args, ';');
    if (groups.empty())
      throw ConfigError("fourier-star shape needs a mean radius");
    double r0 = toDouble(groups[0], "shape.meanRadius");
    std::vector<FourierMode> modes;
    for (std::size_t i = 1; i < groups.size(); ++i) {
      auto parts = split(groups[i], ',');
      if (parts.size() != 3)
        throw ConfigError("fourier-star mode needs 'k,cos,sin'");
      FourierMode m;
      m.k = static_cast<int>(toDouble(parts[0], "shape.mode.k"));
      m.cosAmp = toDouble(parts[1], "shape.mode.cos");
      m.sinAmp = toDouble(parts[2], "shape.mode.sin");
      modes.push_back(m);
    }
    return Shape::fourierStar(r0, std::move(modes));
  }
  throw ConfigError("unknown shape kind '" + kind + "'");
}

MassRegime Scenario::massRegime() const {
  MassRegime r;
  r.m = m;
  r.J = J;
  r.alpha = alpha;
  if (regime == "fixed")
    r.kind = MassRegime::Kind::Fixed;
  else if (regime == "case-i")
    r.kind = MassRegime::Kind::CaseI;
  else if (regime == "case-ii")
    r.kind = MassRegime::Kind::CaseII;
  else
    throw ConfigError("unknown mass regime '" + regime + "'");
  return r;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line, section;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("malformed config line '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    kv[section.empty() ? key : section + "." + key] = value;
  }
  return kv;
}

Scenario scenario_from_config(const std::map<std::string, std::string>& kv) {
  Scenario s;
  auto get = [&](const std::string& key, auto&& apply) {
    auto it = kv.find(key);
    if (it != kv.end()) apply(it->second);
  };
  auto num = [&](const std::string& key, double& target) {
    get(key, [&](const std::string& v) { target = toDouble(v, key); });
  };
  get("body.shape", [&](const std::string& v) { s.bodySpec = v; });
  get("outer.shape", [&](const std::string& v) { s.outerSpec = v; });
  num("body.eps", s.eps);
  num("dynamics.gamma", s.gamma);
  num("dynamics.dt", s.dt);
  num("dynamics.T", s.T);
  num("dynamics.delta_stop", s.deltaStop);
  num("dynamics.m", s.m);
  num("dynamics.J", s.J);
  num("dynamics.alpha", s.alpha);
  get("dynamics.regime", [&](const std::string& v) { s.regime = v; });
  get("dynamics.q0", [&](const std::string& v) {
    auto parts = split(v, ',');
    if (parts.size() != 3) throw ConfigError("q0 needs 'theta,h1,h2'");
    s.q0 = Vec3(toDouble(parts[0], "q0"), toDouble(parts[1], "q0"),
                toDouble(parts[2], "q0"));
  });
  get("dynamics.p0", [&](const std::string& v) {
    auto parts = split(v, ',');
    if (parts.size() != 3) throw ConfigError("p0 needs 'omega,l1,l2'");
    s.p0 = Vec3(toDouble(parts[0], "p0"), toDouble(parts[1], "p0"),
                toDouble(parts[2], "p0"));
  });
  get("dynamics.record_every", [&](const std::string& v) {
    s.recordEvery = static_cast<int>(toDouble(v, "record_every"));
  });
  get("discretization.n_body", [&](const std::string& v) {
    s.Nbody = static_cast<int>(toDouble(v, "n_body"));
  });
  get("discretization.n_outer", [&](const std::string& v) {
    s.Nouter = static_cast<int>(toDouble(v, "n_outer"));
  });
  get("sweep.eps_grid", [&](const std::string& v) {
    s.epsGrid.clear();
    for (const auto& part : split(v, ','))
      s.epsGrid.push_back(toDouble(part, "eps_grid"));
  });
  get("output.dir", [&](const std::string& v) { s.outputDir = v; });
  get("output.seed", [&](const std::string& v) {
    s.seed = static_cast<unsigned>(toDouble(v, "seed"));
  });
  return s;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "t,theta,h1,h2,omega,l1,l2,energy,C_eps,separation\n";
  for (const Sample& s : traj.samples) {
    out << format_double(s.t) << ',' << format_double(s.q(0)) << ','
        << format_double(s.q(1)) << ',' << format_double(s.q(2)) << ','
        << format_double(s.p(0)) << ',' << format_double(s.p(1)) << ','
        << format_double(s.p(2)) << ',' << format_double(s.energy) << ','
        << format_double(s.C) << ',' << format_double(s.separation) << '\n';
  }
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepResult>& results) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "label,eps,value,model_prediction,residual\n";
  for (const SweepResult& r : results)
    for (std::size_t i = 0; i < r.eps.size(); ++i)
      out << r.label << ',' << format_double(r.eps[i]) << ','
          << format_double(r.value[i]) << ',' << format_double(r.model[i])
          << ',' << format_double(r.residual[i]) << '\n';
}

}  // namespace bisim

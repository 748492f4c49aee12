#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "flexswim/app.hpp"

namespace flexswim::app {

using nlohmann::json;

namespace {

// A JSON object plus its dotted path; rejects keys it was never asked about.
class Section {
public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number()) throw ConfigError(key_path(key), "expected a number");
    return v.get<double>();
  }

  int integer(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) throw ConfigError(key_path(key), "expected an integer");
    return v.get<int>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError(key_path(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_array()) throw ConfigError(key_path(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(key_path(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Section child(const std::string& key) {
    seen_.insert(key);
    static const json empty = json::object();
    return Section(node_.contains(key) ? node_.at(key) : empty, key_path(key));
  }

  void finish() const {
    for (const auto& item : node_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(key_path(item.key()), "unknown key");
    }
  }

private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

SinusoidSpec read_sinusoid(Section s, const SinusoidSpec& d) {
  SinusoidSpec out{s.number("offset", d.offset), s.number("amplitude", d.amplitude),
                   s.number("frequency", d.frequency), s.number("phase", d.phase)};
  s.finish();
  return out;
}

GridAxis read_axis(Section s, const GridAxis& d) {
  GridAxis out{s.number("min", d.min), s.number("max", d.max), s.integer("count", d.count)};
  if (out.count < 1) throw ConfigError(s.key_path("count"), "must be at least 1");
  if (out.count > 1 && !(out.max > out.min)) throw ConfigError(s.key_path("max"), "must exceed min");
  s.finish();
  return out;
}

template <class Fn>
void checked(const std::string& where, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
}

json sinusoid_json(const SinusoidSpec& s) {
  return {{"offset", s.offset}, {"amplitude", s.amplitude}, {"frequency", s.frequency}, {"phase", s.phase}};
}

json axis_json(const GridAxis& a) { return {{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

const char* program_name(ProgramKind k) {
  switch (k) {
    case ProgramKind::bump: return "bump";
    case ProgramKind::purcell: return "purcell";
    case ProgramKind::tabulated: return "tabulated";
  }
  return "bump";
}

}  // namespace

std::vector<double> GridAxis::values() const {
  if (count == 1) return {0.5 * (min + max)};
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] = i + 1 == count ? max : min + (max - min) * i / (count - 1);
  }
  return v;
}

RunConfig parse_config(std::string_view text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    // locate the byte offset reported by the parser
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col),
                      "syntax error");
  }

  RunConfig cfg;
  Section top(root, "");
  if (!top.has("schema_version")) throw ConfigError("schema_version", "missing");
  if (top.integer("schema_version", 0) != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported, expected " + std::to_string(kSchemaVersion));
  }

  {
    Section m = top.child("model");
    cfg.model.h = m.number("h", cfg.model.h);
    cfg.model.delta = m.number("delta", cfg.model.delta);
    cfg.model.beta = m.number("beta", cfg.model.beta);
    cfg.model.order = m.integer("order", cfg.model.order);
    cfg.model.n_quad = m.integer("n_quad", cfg.model.n_quad);
    m.finish();
    checked("model", [&] { cfg.model.validate(); });
  }

  {
    Section s = top.child("shape");
    const std::string kind = s.text("program", "bump");
    if (kind == "bump") {
      cfg.program = ProgramKind::bump;
    } else if (kind == "purcell") {
      cfg.program = ProgramKind::purcell;
    } else if (kind == "tabulated") {
      cfg.program = ProgramKind::tabulated;
    } else {
      throw ConfigError("shape.program", "expected bump, purcell or tabulated");
    }
    {
      Section b = s.child("bump");
      cfg.bump.c1 = b.number("c1", cfg.bump.c1);
      cfg.bump.c2 = b.number("c2", cfg.bump.c2);
      cfg.bump.c3 = b.number("c3", cfg.bump.c3);
      cfg.grid = b.integer("grid", cfg.grid);
      b.finish();
      checked("shape.bump", [&] { cfg.bump.validate(); });
      if (cfg.grid < 3) throw ConfigError("shape.bump.grid", "must be at least 3");
    }
    {
      Section p = s.child("purcell");
      cfg.purcell.alpha1 = read_sinusoid(p.child("alpha1"), cfg.purcell.alpha1);
      cfg.purcell.alpha2 = read_sinusoid(p.child("alpha2"), cfg.purcell.alpha2);
      const auto fr = p.numbers("fractions", {cfg.purcell.fractions.begin(), cfg.purcell.fractions.end()});
      if (fr.size() != 3) throw ConfigError("shape.purcell.fractions", "expected three link fractions");
      std::copy(fr.begin(), fr.end(), cfg.purcell.fractions.begin());
      p.finish();
    }
    {
      Section t = s.child("tabulated");
      cfg.table_path = t.text("path", "");
      t.finish();
      if (cfg.program == ProgramKind::tabulated) {
        if (cfg.table_path.empty()) throw ConfigError("shape.tabulated.path", "required for tabulated shapes");
        std::filesystem::path p(cfg.table_path);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        cfg.table_path = p.lexically_normal().string();
        if (!std::filesystem::exists(p)) throw ConfigError("shape.tabulated.path", "file not found: " + cfg.table_path);
      }
    }
    s.finish();
  }

  {
    Section sim = top.child("simulation");
    cfg.t_end = sim.number("t_end", cfg.t_end);
    cfg.dt = sim.number("dt", cfg.dt);
    const std::string coupling = sim.text("coupling", "paper");
    if (coupling == "paper") {
      cfg.coupling = Coupling::paper;
    } else if (coupling == "full") {
      cfg.coupling = Coupling::full;
    } else {
      throw ConfigError("simulation.coupling", "expected paper or full");
    }
    const std::string sampling = sim.text("sampling", "left");
    if (sampling == "left") {
      cfg.sampling = Sampling::left;
    } else if (sampling == "midpoint") {
      cfg.sampling = Sampling::midpoint;
    } else {
      throw ConfigError("simulation.sampling", "expected left or midpoint");
    }
    cfg.snapshots = sim.numbers("snapshots", cfg.snapshots);
    sim.finish();
    checked("simulation", [&] { step_count(cfg.t_end, cfg.dt); });
    for (double t : cfg.snapshots) {
      if (t < 0.0 || t > cfg.t_end) throw ConfigError("simulation.snapshots", "snapshot outside [0, t_end]");
    }
  }

  {
    Section sc = top.child("scan");
    cfg.scan.alpha1 = read_axis(sc.child("alpha1"), cfg.scan.alpha1);
    cfg.scan.alpha2 = read_axis(sc.child("alpha2"), cfg.scan.alpha2);
    auto& n = cfg.scan.numerics;
    n.rank_tolerance = sc.number("rank_tolerance", n.rank_tolerance);
    n.curvature_step = sc.number("curvature_step", n.curvature_step);
    n.lie_step = sc.number("lie_step", n.lie_step);
    sc.finish();
    if (!(n.rank_tolerance > 0.0)) throw ConfigError("scan.rank_tolerance", "must be positive");
    if (!(n.curvature_step > 0.0)) throw ConfigError("scan.curvature_step", "must be positive");
    if (!(n.lie_step > 0.0)) throw ConfigError("scan.lie_step", "must be positive");
  }

  {
    Section sw = top.child("sweep");
    cfg.sweep_param = sw.text("param", "");
    cfg.sweep_values = sw.numbers("values", {});
    sw.finish();
  }

  {
    Section out = top.child("output");
    cfg.output_dir = out.text("dir", cfg.output_dir);
    out.finish();
  }
  top.finish();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  try {
    return parse_config(buf.str(), dir.empty() ? "." : dir.string());
  } catch (const ConfigError& e) {
    throw ConfigError(e.where().empty() ? path : path + ": " + e.where(), e.detail());
  }
}

std::string config_json(const RunConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["model"] = {{"h", cfg.model.h},
                {"delta", cfg.model.delta},
                {"beta", cfg.model.beta},
                {"order", cfg.model.order},
                {"n_quad", cfg.model.n_quad}};
  j["shape"] = {
      {"program", program_name(cfg.program)},
      {"bump", {{"c1", cfg.bump.c1}, {"c2", cfg.bump.c2}, {"c3", cfg.bump.c3}, {"grid", cfg.grid}}},
      {"purcell",
       {{"alpha1", sinusoid_json(cfg.purcell.alpha1)},
        {"alpha2", sinusoid_json(cfg.purcell.alpha2)},
        {"fractions", cfg.purcell.fractions}}},
      {"tabulated", {{"path", cfg.table_path}}}};
  j["simulation"] = {{"t_end", cfg.t_end},
                     {"dt", cfg.dt},
                     {"coupling", cfg.coupling == Coupling::paper ? "paper" : "full"},
                     {"sampling", cfg.sampling == Sampling::left ? "left" : "midpoint"},
                     {"snapshots", cfg.snapshots}};
  j["scan"] = {{"alpha1", axis_json(cfg.scan.alpha1)},
               {"alpha2", axis_json(cfg.scan.alpha2)},
               {"rank_tolerance", cfg.scan.numerics.rank_tolerance},
               {"curvature_step", cfg.scan.numerics.curvature_step},
               {"lie_step", cfg.scan.numerics.lie_step}};
  j["sweep"] = {{"param", cfg.sweep_param}, {"values", cfg.sweep_values}};
  j["output"] = {{"dir", cfg.output_dir}};
  return j.dump(2);
}

ShapeProgram make_program(const RunConfig& cfg) {
  switch (cfg.program) {
    case ProgramKind::bump:
      return bump_program(cfg.bump, static_cast<std::size_t>(cfg.grid));
    case ProgramKind::purcell: {
      const auto& g = cfg.purcell;
      auto path = [](const SinusoidSpec& s) {
        return AnglePath::sinusoid(s.offset, s.amplitude, s.frequency, s.phase);
      };
      return purcell_program(path(g.alpha1), path(g.alpha2), g.fractions);
    }
    case ProgramKind::tabulated:
      try {
        return tabulated_program(load_graph_table(cfg.table_path));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("shape.tabulated.path", e.what());
      }
  }
  throw ConfigError("shape.program", "unknown program");
}

}  // namespace flexswim::app

#include "minkflow/cli/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace minkflow::cli {

namespace {

constexpr std::size_t kCommands = 5;

std::size_t slot(Command c) noexcept { return static_cast<std::size_t>(c); }

// Per-command defaults, indexed by Command. kNo marks a key the command does
// not accept; kNone marks an accepted key without a default.
constexpr const char* kNo = nullptr;
constexpr const char* kNone = "";

struct Entry {
  KeyInfo info;
  std::array<const char*, kCommands> defaults;  // evolve, soliton, surface, reconstruct, frame-check
};

// clang-format off
constexpr Entry kEntries[] = {
  {{"out", "output directory (must not exist or be empty)"},
   {"evolve_out", "soliton_out", "surface_out", "reconstruct_out", "frame_check_out"}},
  {{"s_min", "start of the arc-length interval"}, {"0", "-20", "0", "0", "0"}},
  {{"s_max", "end of the arc-length interval"}, {"2*pi", "20", "1", "1", "10"}},
  {{"n", "number of s samples"}, {"256", "401", "1001", "1001", "10001"}},
  {{"boundary", "periodic or one-sided"}, {"periodic", kNo, kNo, kNo, kNo}},
  {{"kappa", "curvature profile kappa(s)"}, {"2 + 0.1*sin(s)", kNo, "1", "1", "1"}},
  {{"tau", "torsion profile tau(s)"}, {"3", kNo, "2", "2", "1"}},
  {{"preset", "velocity preset: type1, type2, static or custom"},
   {"type1", kNo, "type1", "type1", kNo}},
  {{"alpha", "custom tangential velocity alpha(s, t, kappa, tau, kappa_s, tau_s, kappa_ss)"},
   {"0", kNo, "0", "0", kNo}},
  {{"beta", "custom binormal velocity beta(s, t, kappa, tau, kappa_s, tau_s, kappa_ss)"},
   {"0", kNo, "0", "0", kNo}},
  {{"eps_kappa", "smallest |kappa| allowed in a division"}, {"1e-9", kNo, "1e-9", "1e-9", kNo}},
  {{"blowup", "abort when |kappa| or |tau| exceeds this"}, {"1e6", kNo, kNo, "1e6", kNo}},
  {{"dt", "time step"}, {"1e-4", kNo, kNo, "1e-4", kNo}},
  {{"steps", "number of time steps"}, {"100", kNo, kNo, "0", kNo}},
  {{"stride", "keep every stride-th time level (surface: every stride-th s)"},
   {"1", kNo, "1", "1", kNo}},
  {{"family", "soliton family: kink or bell"}, {kNo, "kink", kNo, kNo, kNo}},
  {{"A1", "kink curvature amplitude"}, {kNo, "0.5", kNo, kNo, kNo}},
  {{"A2", "kink torsion amplitude"}, {kNo, "1", kNo, kNo, kNo}},
  {{"eta_sign", "sign of the kink wave number, 1 or -1"}, {kNo, "1", kNo, kNo, kNo}},
  {{"B1", "bell curvature amplitude"}, {kNo, "0.1", kNo, kNo, kNo}},
  {{"B2", "bell torsion amplitude"}, {kNo, "-1", kNo, kNo, kNo}},
  {{"upsilon_override", "wave speed replacing the constraint value"}, {kNo, kNone, kNo, kNo, kNo}},
  {{"t_min", "first time level"}, {kNo, "0", kNo, kNo, kNo}},
  {{"t_max", "last time level"}, {kNo, "10", kNo, kNo, kNo}},
  {{"nt", "number of time levels"}, {kNo, "101", kNo, kNo, kNo}},
  {{"kind", "ruled surface: normal or binormal"}, {kNo, kNo, "normal", kNo, kNo}},
  {{"u", "comma-separated normal-ruling coordinates"}, {kNo, kNo, "0, 0.5", kNo, kNo}},
  {{"v", "comma-separated binormal-ruling coordinates"}, {kNo, kNo, "1", kNo, kNo}},
  {{"ruling_step", "finite-difference step along the ruling"}, {kNo, kNo, "1e-3", kNo, kNo}},
  {{"drift_limit", "frame defect that aborts reconstruction, or none"},
   {kNo, kNo, kNo, "1e-4", kNo}},
  {{"reorthonormalize", "re-orthonormalize the frame after each step: true or false"},
   {kNo, kNo, kNo, "false", "false"}},
};
// clang-format on

const Entry* find_entry(std::string_view key) {
  for (const auto& e : kEntries)
    if (e.info.name == key) return &e;
  return nullptr;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

KeyValues parse_json_echo(std::string_view text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({origin + ": " + e.what()});
  }
  const nlohmann::json* obj = &doc;
  if (doc.is_object() && doc.contains("config")) obj = &doc["config"];
  if (!obj->is_object()) throw ConfigError({origin + ": expected a JSON object of settings"});
  KeyValues out;
  std::vector<std::string> problems;
  for (const auto& [key, value] : obj->items()) {
    if (value.is_string()) out[key] = value.get<std::string>();
    else if (value.is_number() || value.is_boolean()) out[key] = value.dump();
    else problems.push_back(origin + ": value of '" + key + "' must be a string or number");
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return out;
}

// Settings parsers record problems instead of throwing so that all of them
// reach the user at once.
class Reader {
 public:
  explicit Reader(const RunConfig& c) : c_(c) {}

  double number(const std::string& key) {
    try {
      const double v = eval_constant(c_.at(key));
      if (!std::isfinite(v)) problem(key, "value is not finite");
      return v;
    } catch (const std::exception& e) {
      problem(key, e.what());
      return 0.0;
    }
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!c_.has(key) || c_.at(key).empty()) return std::nullopt;
    return number(key);
  }

  std::size_t count(const std::string& key, std::size_t min) {
    const std::string& text = c_.at(key);
    unsigned long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      problem(key, "expected a non-negative integer, got '" + text + "'");
      return min;
    }
    if (v < min) problem(key, "must be at least " + std::to_string(min));
    return static_cast<std::size_t>(v);
  }

  bool boolean(const std::string& key) {
    const std::string& text = c_.at(key);
    if (text == "true") return true;
    if (text == "false") return false;
    problem(key, "expected true or false, got '" + text + "'");
    return false;
  }

  std::string choice(const std::string& key, std::initializer_list<std::string_view> options) {
    const std::string& text = c_.at(key);
    for (auto o : options)
      if (o == text) return text;
    std::vector<std::string> names(options.begin(), options.end());
    problem(key, "expected one of " + join(names, ", ") + ", got '" + text + "'");
    return std::string(*options.begin());
  }

  Expr expr(const std::string& key, std::vector<std::string> variables) {
    try {
      return Expr::parse(c_.at(key), std::move(variables));
    } catch (const SyntaxError& e) {
      problem(key, e.what());
      return Expr::parse("0", {});
    }
  }

  std::vector<double> list(const std::string& key) {
    std::vector<double> out;
    std::string_view text = c_.at(key);
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const std::string item =
          trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
      try {
        const double v = eval_constant(item);
        if (!std::isfinite(v)) problem(key, "entry '" + item + "' is not finite");
        out.push_back(v);
      } catch (const std::exception& e) {
        problem(key, "entry '" + item + "': " + e.what());
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }

  GridSettings grid(Boundary fixed) {
    GridSettings g;
    g.s_min = number("s_min");
    g.s_max = number("s_max");
    g.n = count("n", SGrid::kMinPoints);
    g.boundary = fixed;
    if (c_.has("boundary"))
      g.boundary = choice("boundary", {"periodic", "one-sided"}) == "periodic"
                       ? Boundary::Periodic
                       : Boundary::OneSided;
    if (!(g.s_max > g.s_min)) problem("s_max", "must exceed s_min");
    return g;
  }

  FlowSettings flow() {
    FlowSettings f;
    f.preset = choice("preset", {"type1", "type2", "static", "custom"});
    if (f.preset == "custom") {
      f.alpha = expr("alpha", velocity_variables());
      f.beta = expr("beta", velocity_variables());
    }
    f.eps_kappa = number("eps_kappa");
    if (!(f.eps_kappa >= 0.0)) problem("eps_kappa", "must be non-negative");
    if (c_.has("blowup")) {
      f.blowup = number("blowup");
      if (!(f.blowup > 0.0)) problem("blowup", "must be positive");
    }
    return f;
  }

  void problem(const std::string& key, const std::string& what) {
    problems_.push_back(key + ": " + what);
  }

  void finish() const {
    if (!problems_.empty()) throw ConfigError(problems_);
  }

 private:
  const RunConfig& c_;
  std::vector<std::string> problems_;
};

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Evolve: return "evolve";
    case Command::Soliton: return "soliton";
    case Command::Surface: return "surface";
    case Command::Reconstruct: return "reconstruct";
    case Command::FrameCheck: return "frame-check";
  }
  return "unknown";
}

std::optional<Command> command_from(std::string_view name) noexcept {
  for (Command c : {Command::Evolve, Command::Soliton, Command::Surface, Command::Reconstruct,
                    Command::FrameCheck})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::span<const KeyInfo> known_keys() noexcept {
  static const auto infos = [] {
    std::vector<KeyInfo> v;
    for (const auto& e : kEntries) v.push_back(e.info);
    return v;
  }();
  return infos;
}

std::vector<std::string_view> keys_for(Command c) {
  std::vector<std::string_view> out;
  for (const auto& e : kEntries)
    if (e.defaults[slot(c)] != kNo) out.push_back(e.info.name);
  return out;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration:\n  " + join(problems, "\n  ")),
      problems_(std::move(problems)) {}

KeyValues parse_config_text(std::string_view text, const std::string& origin) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_echo(text, origin);

  KeyValues out;
  std::vector<std::string> problems;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(line_no);
    if (eq == std::string::npos) {
      problems.push_back(where + ": expected key = value");
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) {
      problems.push_back(where + ": empty key");
      continue;
    }
    if (out.count(key)) problems.push_back(where + ": duplicate key '" + key + "'");
    out[key] = trim(std::string_view(line).substr(eq + 1));
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return out;
}

KeyValues load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path.string());
}

const std::string& RunConfig::at(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ConfigError({key + ": missing"});
  return it->second;
}

RunConfig resolve_config(Command command, const KeyValues& file, const KeyValues& flags) {
  KeyValues explicit_values = file;
  for (const auto& [k, v] : flags) explicit_values[k] = v;

  std::vector<std::string> problems;
  for (const auto& [key, value] : explicit_values) {
    const Entry* e = find_entry(key);
    if (!e) problems.push_back("unknown key '" + key + "'");
    else if (e->defaults[slot(command)] == kNo)
      problems.push_back("key '" + key + "' does not apply to " + std::string(to_string(command)));
  }

  RunConfig rc;
  rc.command = command;
  for (const auto& e : kEntries) {
    const char* def = e.defaults[slot(command)];
    if (def == kNo) continue;
    const std::string name(e.info.name);
    if (const auto it = explicit_values.find(name); it != explicit_values.end())
      rc.values[name] = it->second;
    else if (def != kNone)
      rc.values[name] = def;
  }

  // Keys that only make sense for one preset, family or surface kind.
  struct Conditional {
    const char* key;
    const char* selector;
    const char* required;
  };
  constexpr Conditional kConditionals[] = {
      {"alpha", "preset", "custom"}, {"beta", "preset", "custom"}, {"A1", "family", "kink"},
      {"A2", "family", "kink"},      {"eta_sign", "family", "kink"}, {"B1", "family", "bell"},
      {"B2", "family", "bell"},      {"u", "kind", "normal"},      {"v", "kind", "binormal"},
  };
  for (const auto& c : kConditionals) {
    if (!rc.has(c.key) || !rc.has(c.selector) || rc.at(c.selector) == c.required) continue;
    if (explicit_values.count(c.key))
      problems.push_back("key '" + std::string(c.key) + "' only applies with " + c.selector +
                         "=" + c.required);
    rc.values.erase(c.key);
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return rc;
}

std::vector<std::string> velocity_variables() {
  return {"s", "t", "kappa", "tau", "kappa_s", "tau_s", "kappa_ss"};
}

EvolveSettings evolve_settings(const RunConfig& c) {
  Reader r(c);
  EvolveSettings s;
  s.grid = r.grid(Boundary::Periodic);
  s.kappa = r.expr("kappa", {"s"});
  s.tau = r.expr("tau", {"s"});
  s.flow = r.flow();
  s.dt = r.number("dt");
  if (!(s.dt > 0.0)) r.problem("dt", "must be positive");
  s.steps = r.count("steps", 0);
  s.stride = r.count("stride", 1);
  r.finish();
  return s;
}

SolitonSettings soliton_settings(const RunConfig& c) {
  Reader r(c);
  SolitonSettings s;
  s.family = r.choice("family", {"kink", "bell"});
  if (c.has("A1")) s.A1 = r.number("A1");
  if (c.has("A2")) s.A2 = r.number("A2");
  if (c.has("B1")) s.B1 = r.number("B1");
  if (c.has("B2")) s.B2 = r.number("B2");
  if (c.has("eta_sign")) {
    const std::string& sign = c.at("eta_sign");
    if (sign == "1" || sign == "+1") s.eta_sign = 1;
    else if (sign == "-1") s.eta_sign = -1;
    else r.problem("eta_sign", "expected 1 or -1, got '" + sign + "'");
  }
  s.upsilon_override = r.optional_number("upsilon_override");
  s.window.s_min = r.number("s_min");
  s.window.s_max = r.number("s_max");
  s.window.ns = r.count("n", 2);
  s.window.t_min = r.number("t_min");
  s.window.t_max = r.number("t_max");
  s.window.nt = r.count("nt", 1);
  if (!(s.window.s_max > s.window.s_min)) r.problem("s_max", "must exceed s_min");
  if (s.window.nt > 1 && !(s.window.t_max > s.window.t_min))
    r.problem("t_max", "must exceed t_min when nt > 1");
  r.finish();
  return s;
}

SurfaceSettings surface_settings(const RunConfig& c) {
  Reader r(c);
  SurfaceSettings s;
  s.kind = r.choice("kind", {"normal", "binormal"});
  s.rulings = r.list(s.kind == "normal" ? "u" : "v");
  s.dw = r.number("ruling_step");
  if (!(s.dw > 0.0)) r.problem("ruling_step", "must be positive");
  s.grid = r.grid(Boundary::OneSided);
  s.kappa = r.expr("kappa", {"s"});
  s.tau = r.expr("tau", {"s"});
  s.flow = r.flow();
  s.stride = r.count("stride", 1);
  r.finish();
  return s;
}

ReconstructSettings reconstruct_settings(const RunConfig& c) {
  Reader r(c);
  ReconstructSettings s;
  s.grid = r.grid(Boundary::OneSided);
  s.kappa = r.expr("kappa", {"s"});
  s.tau = r.expr("tau", {"s"});
  s.flow = r.flow();
  s.dt = r.number("dt");
  if (!(s.dt > 0.0)) r.problem("dt", "must be positive");
  s.steps = r.count("steps", 0);
  s.stride = r.count("stride", 1);
  if (c.at("drift_limit") != "none") {
    s.drift_limit = r.number("drift_limit");
    if (!(*s.drift_limit > 0.0)) r.problem("drift_limit", "must be positive or none");
  }
  s.reorthonormalize = r.boolean("reorthonormalize");
  r.finish();
  return s;
}

FrameCheckSettings frame_check_settings(const RunConfig& c) {
  Reader r(c);
  FrameCheckSettings s;
  s.grid = r.grid(Boundary::OneSided);
  s.kappa = r.expr("kappa", {"s"});
  s.tau = r.expr("tau", {"s"});
  s.reorthonormalize = r.boolean("reorthonormalize");
  r.finish();
  return s;
}

}  // namespace minkflow::cli

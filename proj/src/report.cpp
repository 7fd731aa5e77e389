#include "chev/report.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace chev {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InputError(ErrorCode::BadSpec, "config key '" + key + "' expects an integer, got '" + v + "'");
  }
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

Json ints_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else {
    out.push_back({prefix, cell(j)});
  }
}

// Column order: first appearance across rows.
std::pair<std::vector<std::string>, std::vector<std::map<std::string, std::string>>> table(const Json& rows) {
  std::vector<std::string> cols;
  std::set<std::string> seen;
  std::vector<std::map<std::string, std::string>> out;
  for (const auto& r : rows) {
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(r, "", flat);
    std::map<std::string, std::string> m;
    for (auto& [k, v] : flat) {
      if (seen.insert(k).second) cols.push_back(k);
      m[k] = v;
    }
    out.push_back(std::move(m));
  }
  return {cols, out};
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string md_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '|') o += '\\';
    o += c;
  }
  return o;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "factor_effort") factor_effort = static_cast<unsigned long>(parse_long(key, v));
  else if (key == "max_steps") max_steps = static_cast<std::size_t>(parse_long(key, v));
  else if (key == "dmin") dmin = parse_long(key, v);
  else if (key == "dmax") dmax = parse_long(key, v);
  else if (key == "s_policy") s_policy = v;
  else if (key == "s") s = v;
  else if (key == "threads") threads = static_cast<std::size_t>(parse_long(key, v));
  else if (key == "format") format = v;
  else if (key == "output") output = v;
  else throw InputError(ErrorCode::BadSpec, "unknown config key '" + key + "'");
  if ((key == "factor_effort" || key == "max_steps" || key == "threads") && parse_long(key, v) <= 0)
    throw InputError(ErrorCode::BadSpec, "config key '" + key + "' must be positive");
}

void RunConfig::validate() const {
  if (dmin < 0 || dmax < 0) throw InputError(ErrorCode::BadSpec, "discriminant bounds must be non-negative");
  parse_s_policy(s_policy);
  parse_format(format);
  parse_sset(s);
}

std::map<std::string, std::string> RunConfig::echo() const {
  return {{"factor_effort", std::to_string(factor_effort)},
          {"max_steps", std::to_string(max_steps)},
          {"dmin", std::to_string(dmin)},
          {"dmax", std::to_string(dmax)},
          {"s_policy", s_policy},
          {"s", s},
          {"threads", std::to_string(threads)},
          {"format", format}};
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(ErrorCode::BadSpec, "config line " + std::to_string(lineno) + " lacks '='");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(ErrorCode::BadSpec, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

void apply_default_config(RunConfig& cfg, const std::string& explicit_path) {
  const char* env = std::getenv("CHEV_CONFIG");
  if (env && *env) apply_config_file(cfg, env);
  else if (!explicit_path.empty()) apply_config_file(cfg, explicit_path);
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "markdown" || s == "md") return Format::Markdown;
  throw InputError(ErrorCode::BadSpec, "unknown format '" + s + "' (json, csv, markdown)");
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json envelope_json(const ReportEnvelope& e, bool canonical) {
  Json j;
  j["version"] = e.version;
  j["command"] = e.command;
  Json cfg = Json::object();
  for (const auto& [k, v] : e.config)
    if (!(canonical && k == "threads")) cfg[k] = v;
  j["config"] = cfg;
  if (!canonical) j["timestamp"] = e.timestamp;
  j["rows"] = e.rows;
  Json summary = e.summary;
  if (canonical && summary.is_object()) summary.erase("seconds");
  j["summary"] = summary;
  return j;
}

ReportEnvelope envelope_from_json(const Json& j) {
  ReportEnvelope e;
  try {
    e.version = j.at("version").get<std::string>();
    e.command = j.at("command").get<std::string>();
    for (auto it = j.at("config").begin(); it != j.at("config").end(); ++it) e.config[it.key()] = it.value().get<std::string>();
    if (j.contains("timestamp")) e.timestamp = j.at("timestamp").get<std::string>();
    e.rows = j.at("rows");
    e.summary = j.at("summary");
  } catch (const Json::exception& x) {
    throw InputError(ErrorCode::BadSpec, std::string("malformed report envelope: ") + x.what());
  }
  return e;
}

ReportEnvelope parse_envelope(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& x) {
    throw InputError(ErrorCode::BadSpec, std::string("invalid JSON: ") + x.what());
  }
  return envelope_from_json(j);
}

std::string serialize(const ReportEnvelope& e, Format f, bool canonical) {
  if (f == Format::Json) return canonical ? envelope_json(e, true).dump() : envelope_json(e).dump(2) + "\n";
  auto [cols, rows] = table(e.rows);
  std::ostringstream out;
  if (f == Format::Csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_quote(cols[i]);
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        auto it = r.find(cols[i]);
        out << (i ? "," : "") << csv_quote(it == r.end() ? "" : it->second);
      }
      out << "\n";
    }
    return out.str();
  }
  out << "# " << e.command << "\n\n";
  out << "version `" << e.version << "`";
  if (!canonical) out << ", generated " << e.timestamp;
  out << "\n\n";
  for (const auto& [k, v] : e.config)
    if (!(canonical && k == "threads")) out << "- " << k << ": `" << v << "`\n";
  out << "\n";
  if (!cols.empty()) {
    out << "|";
    for (const auto& c : cols) out << " " << md_escape(c) << " |";
    out << "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& r : rows) {
      out << "|";
      for (const auto& c : cols) {
        auto it = r.find(c);
        out << " " << md_escape(it == r.end() ? "" : it->second) << " |";
      }
      out << "\n";
    }
  } else {
    out << "(no rows)\n";
  }
  out << "\n## Summary\n\n";
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(e.summary, "", flat);
  for (const auto& [k, v] : flat)
    if (!(canonical && k == "seconds") && !k.empty()) out << "- " << k << ": " << v << "\n";
  return out.str();
}

Json to_json(const Integer& x) { return to_string(x); }
Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const FinAbGroup& g) {
  Json j;
  j["structure"] = g.to_string();
  j["free_rank"] = std::to_string(g.free_rank);
  j["invariant_factors"] = ints_json(g.invariant_factors);
  if (g.is_finite()) j["order"] = to_string(g.order());
  return j;
}

Json to_json(const SSet& S) { return S.to_string(); }

Json to_json(const ChevalleyReport& r) {
  Json j;
  j["d"] = to_string(r.field.d);
  j["D"] = to_string(r.field.D);
  j["S"] = to_json(r.S);
  j["class_group"] = to_json(r.class_group);
  j["s_class_group"] = to_json(r.s_class_group);
  j["ambiguous"] = to_json(r.ambiguous);
  j["c_base"] = to_string(r.c_base);
  j["c_base_source"] = "constant: Q has class number one";
  j["h1_k_mod_units"] = to_json(r.h1_k_mod_units);
  j["h1_units"] = to_json(r.h1_units);
  Json ram = Json::array();
  for (const auto& [p, e] : r.ramification) ram.push_back({{"p", to_string(p)}, {"e", std::to_string(e)}});
  j["ramification"] = ram;
  j["e_product"] = to_string(r.e_product);
  j["lhs"] = to_string(r.lhs);
  j["rhs"] = to_string(r.rhs);
  j["verdict"] = r.verdict;
  j["h0_units_order"] = to_string(r.h0_units_order);
  j["herbrand_quotient"] = to_string(r.herbrand_quotient);
  j["herbrand_expected"] = to_string(r.herbrand_expected);
  j["herbrand_ok"] = r.herbrand_ok;
  return j;
}

Json to_json(const GenusReport& r) {
  return {{"t", std::to_string(r.t)},
          {"ambiguous_order", to_string(r.ambiguous_order)},
          {"expected", to_string(r.expected)},
          {"ok", r.ok}};
}

Json to_json(const TruncatedH0& r) {
  return {{"T", ints_json(r.T)},
          {"degree", std::to_string(r.degree)},
          {"group", to_json(r.group)},
          {"injective_from_previous", r.injective_from_previous}};
}

Json to_json(const NormTorusReport& r) {
  Json j;
  j["d"] = to_string(r.field.d);
  j["D"] = to_string(r.field.D);
  j["S"] = to_json(r.S);
  j["mu"] = std::to_string(r.mu);
  j["nu"] = std::to_string(r.nu);
  j["h0_units"] = to_string(r.h0_units);
  j["w_index"] = to_string(r.w_index);
  j["w_mod_norms"] = to_string(r.w_mod_norms);
  Json loc = Json::array();
  for (const auto& f : r.local)
    loc.push_back({{"p", to_string(f.p)}, {"e", std::to_string(f.e)}, {"q", to_string(f.q)}, {"bound", to_string(f.bound)}});
  j["local_factors"] = loc;
  j["q_product"] = to_string(r.q_product);
  j["inertia_bound"] = to_string(r.inertia_bound);
  j["h_base"] = to_string(r.h_base);
  j["h_base_source"] = "constant: Q has class number one";
  j["residual"] = to_string(r.residual);
  j["residual_formula"] = "4^(mu+nu-1) * h_base / w_index";
  Json t = Json::array();
  for (const auto& row : r.truncated) t.push_back(to_json(row));
  j["truncated"] = t;
  return j;
}

Json to_json(const SweepRow& r) {
  Json j;
  j["d"] = to_string(r.d);
  j["D"] = to_string(r.D);
  j["S"] = to_json(r.S);
  j["status"] = row_status_name(r.status);
  if (r.report) {
    j["lhs"] = to_string(r.report->lhs);
    j["rhs"] = to_string(r.report->rhs);
    j["verdict"] = r.report->verdict;
    j["ambiguous"] = r.report->ambiguous.to_string();
    j["h1_k_mod_units"] = r.report->h1_k_mod_units.to_string();
    j["h1_units"] = r.report->h1_units.to_string();
    j["e_product"] = to_string(r.report->e_product);
  }
  if (r.herbrand_ok) j["herbrand_ok"] = *r.herbrand_ok;
  if (r.genus_ok) j["genus_ok"] = *r.genus_ok;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Json to_json(const SweepSummary& s) {
  Json failures = Json::array();
  for (const auto& f : s.failures) failures.push_back(f);
  return {{"dmin", std::to_string(s.dmin)},   {"dmax", std::to_string(s.dmax)},
          {"policy", s.policy},               {"total", std::to_string(s.total)},
          {"verified", std::to_string(s.verified)}, {"failed", std::to_string(s.failed)},
          {"skipped", std::to_string(s.skipped)},   {"failures", failures},
          {"seconds", s.seconds}};
}

Json to_json(const InertiaH1Report& r) {
  return {{"check", "inertia_h1"}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}, {"ok", r.isomorphic}};
}

Json to_json(const ResidueModReport& r) {
  return {{"check", "residue_mod_e"},
          {"fixed_order", to_string(r.fixed_order)},
          {"expected_order", to_string(r.expected_order)},
          {"h1", to_json(r.h1)},
          {"expected_h1", to_json(r.expected_h1)},
          {"ok", r.order_ok && r.iso_ok}};
}

Json to_json(const QDeltaReport& r) {
  return {{"check", "local_factor_q_delta"},
          {"q", to_string(r.q)},
          {"cross_check", to_string(r.cross_check)},
          {"h1_fixed", to_json(r.h1_fixed)},
          {"d_v", std::to_string(r.d_v)},
          {"e", std::to_string(r.e)},
          {"ok", r.q == r.cross_check}};
}

Json field_json(const QuadField& K) {
  Json j;
  j["d"] = to_string(K.d);
  j["D"] = to_string(K.D);
  j["name"] = K.name();
  j["signature"] = K.real() ? "real" : "imaginary";
  j["ramified"] = ints_json(ramified_primes(K));
  UnitGroup U = unit_group(K);
  j["torsion"] = std::to_string(U.torsion);
  j["zeta"] = U.zeta.to_string();
  if (U.eps) {
    j["fundamental_unit"] = U.eps->to_string();
    j["norm_eps"] = std::to_string(U.norm_eps);
  }
  Json split = Json::array();
  for (long p = 2; p < 50; ++p) {
    if (!is_prime(p)) continue;
    SplitData sd = splitting(K, Integer(p));
    split.push_back({{"p", std::to_string(p)}, {"kind", split_kind_name(sd.kind)}, {"e", std::to_string(sd.e)},
                     {"f", std::to_string(sd.f)}, {"g", std::to_string(sd.g)}});
  }
  j["splitting"] = split;
  return j;
}

Json class_group_json(const ClassGroup& C) {
  Json j;
  j["d"] = to_string(C.field().d);
  j["D"] = to_string(C.field().D);
  j["narrow"] = C.narrow();
  j["group"] = to_json(C.structure());
  Json classes = Json::array();
  for (const auto& f : C.classes()) {
    Json v = Json::array();
    for (const auto& x : C.dlog(f)) v.push_back(to_string(x));
    classes.push_back({{"form", f.to_string()}, {"coordinates", v}});
  }
  j["classes"] = classes;
  Json gens = Json::array();
  for (const auto& f : C.generator_forms()) gens.push_back(f.to_string());
  j["generators"] = gens;
  return j;
}

Json units_json(const SUnitModule& M) {
  Json j;
  j["d"] = to_string(M.K.d);
  j["D"] = to_string(M.K.D);
  j["S"] = to_json(M.S);
  Json places = Json::array();
  for (const auto& p : M.places)
    places.push_back({{"p", to_string(p.p)}, {"kind", split_kind_name(p.kind)}, {"ideal", p.ideal.to_string()}});
  j["places"] = places;
  Json gens = Json::array();
  for (std::size_t i = 0; i < M.generators.size(); ++i)
    gens.push_back({{"label", M.labels[i]}, {"value", M.generators[i].to_string()}, {"norm", to_string(M.norms[i])}});
  j["generators"] = gens;
  j["sigma"] = matrix_json(M.sigma);
  j["structure"] = to_json(M.module.structure());
  j["h0"] = to_json(tate_h0_units(M));
  j["h1"] = to_json(h1_units(M));
  HerbrandReport h = herbrand_check(M);
  j["herbrand_quotient"] = to_string(h.quotient);
  j["herbrand_expected"] = to_string(h.expected);
  return j;
}

int exit_code(const Error& e) {
  if (dynamic_cast<const InputError*>(&e)) return 2;
  if (dynamic_cast<const EffortError*>(&e)) return 3;
  return 1;
}

}  // namespace chev

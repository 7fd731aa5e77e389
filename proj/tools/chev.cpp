#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "chev/report.hpp"

using namespace chev;

namespace {

std::vector<Integer> parse_prime_list(const std::string& s) {
  std::vector<Integer> out;
  std::string tok;
  for (char c : s + ",") {
    if (c == ',' || c == ' ') {
      if (!tok.empty()) out.push_back(parse_integer(tok));
      tok.clear();
    } else {
      tok += c;
    }
  }
  return out;
}

struct Globals {
  std::string config_path;
  RunConfig cfg;
  bool canonical = false;
  // flag values, applied over the config file when given
  std::string format, output;
  std::size_t threads = 0, max_steps = 0;
  unsigned long factor_effort = 0;
};

void emit(const Globals& g, const ReportEnvelope& env) {
  Format f = parse_format(g.cfg.format);
  std::string text = serialize(env, f, g.canonical);
  if (g.canonical && f == Format::Json) text += "\n";
  if (g.cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.cfg.output);
    if (!out) throw InputError(ErrorCode::BadSpec, "cannot write " + g.cfg.output);
    out << text;
  }
}

ReportEnvelope envelope(const Globals& g, const std::string& command) {
  ReportEnvelope e;
  e.command = command;
  e.config = g.cfg.echo();
  e.timestamp = utc_timestamp();
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ambiguous class number formula and norm-torus invariants for quadratic fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "key = value configuration file (CHEV_CONFIG overrides)");
  app.add_option("--format", g.format, "json, csv or markdown");
  app.add_option("--output", g.output, "output file (default: standard output)");
  app.add_option("--threads", g.threads, "sweep parallelism");
  app.add_option("--max-steps", g.max_steps, "reduction and cycle-walk step bound");
  app.add_option("--factor-effort", g.factor_effort, "Pollard rho iterations per cofactor");
  app.add_flag("--canonical", g.canonical, "canonical output: no timestamp, timing or parallelism");

  std::string d_str;
  bool narrow = false;
  std::string s_list = "", s_policy = "", t_primes = "";
  long dmin = -1, dmax = -1;
  std::string group_spec, tower_spec, lemma;
  int degree = 0;
  bool no_genus = false;

  auto* field = app.add_subcommand("field", "discriminant, ramification, units and splitting of Q(sqrt d)");
  field->add_option("d", d_str)->required();
  auto* cg = app.add_subcommand("classgroup", "ideal class group (or narrow class group)");
  cg->add_option("d", d_str)->required();
  cg->add_flag("--narrow", narrow);
  auto* units = app.add_subcommand("units", "S-unit group as a Galois module");
  units->add_option("d", d_str)->required();
  units->add_option("--s", s_list, "places of S, e.g. inf,2,5");
  auto* verify = app.add_subcommand("verify-chevalley", "sweep of the ambiguous class number formula over fundamental discriminants");
  verify->add_option("--dmin", dmin, "least |D|");
  verify->add_option("--dmax", dmax, "largest |D|");
  verify->add_option("--s-policy", s_policy, "infty, infty2, split or explicit");
  verify->add_option("--s", s_list, "S for the explicit policy");
  verify->add_flag("--no-genus", no_genus, "skip the genus cross-check");
  auto* torus = app.add_subcommand("norm-torus", "norm-torus report with local factors and residual");
  torus->add_option("--d", d_str)->required();
  torus->add_option("--s", s_list);
  torus->add_option("--t-primes", t_primes, "primes for the truncated H^0 table");
  auto* coh = app.add_subcommand("cohomology", "local cohomology checks on a finite Galois tower");
  coh->add_option("--group", group_spec)->required();
  coh->add_option("--tower", tower_spec)->required();
  coh->add_option("--lemma", lemma)->required()->check(CLI::IsMember({"4.1", "4.2", "4.3"}));
  auto* explore = app.add_subcommand("explore-h0", "truncated H^0(G, K*/O_{K,S}*) along the prefixes of T");
  explore->add_option("--d", d_str)->required();
  explore->add_option("--s", s_list);
  explore->add_option("--t-primes", t_primes)->required();
  explore->add_option("--degree", degree)->check(CLI::IsMember({0, -1}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apply_default_config(g.cfg, g.config_path);
    if (!g.format.empty()) g.cfg.format = g.format;
    if (!g.output.empty()) g.cfg.output = g.output;
    if (g.threads) g.cfg.threads = g.threads;
    if (g.max_steps) g.cfg.max_steps = g.max_steps;
    if (g.factor_effort) g.cfg.factor_effort = g.factor_effort;
    if (dmin >= 0) g.cfg.dmin = dmin;
    if (dmax >= 0) g.cfg.dmax = dmax;
    if (!s_policy.empty()) g.cfg.s_policy = s_policy;
    if (!s_list.empty()) g.cfg.s = s_list;
    g.cfg.validate();
    const Effort effort = g.cfg.effort();

    if (*field) {
      QuadField K = make_field(parse_integer(d_str), effort.factor_effort);
      auto env = envelope(g, "field");
      env.rows.push_back(field_json(K));
      env.summary = {{"rows", "1"}};
      emit(g, env);
      return 0;
    }
    if (*cg) {
      QuadField K = make_field(parse_integer(d_str), effort.factor_effort);
      ClassGroup C = narrow ? narrow_class_group(K, effort.max_steps) : class_group(K, effort.max_steps);
      auto env = envelope(g, "classgroup");
      env.rows.push_back(class_group_json(C));
      env.summary = {{"order", to_string(C.order())}, {"structure", C.structure().to_string()}};
      emit(g, env);
      return 0;
    }
    if (*units) {
      QuadField K = make_field(parse_integer(d_str), effort.factor_effort);
      SUnitModule M = sunit_module(K, parse_sset(g.cfg.s), effort.max_steps);
      auto env = envelope(g, "units");
      env.rows.push_back(units_json(M));
      env.summary = {{"rank", std::to_string(M.free_rank())}};
      emit(g, env);
      return 0;
    }
    if (*verify) {
      SweepOptions o;
      o.dmin = g.cfg.dmin;
      o.dmax = g.cfg.dmax;
      o.policy = parse_s_policy(g.cfg.s_policy);
      o.explicit_s = parse_sset(g.cfg.s);
      o.check_genus = !no_genus;
      o.threads = g.cfg.threads;
      o.effort = effort;
      SweepResult res = sweep(o);
      auto env = envelope(g, "verify-chevalley");
      for (const auto& row : res.rows) env.rows.push_back(to_json(row));
      env.summary = to_json(res.summary);
      emit(g, env);
      int code = 0;
      bool effort_skip = false, input_skip = false;
      for (const auto& row : res.rows) {
        if (row.status == RowStatus::Failed || (row.status == RowStatus::Skipped && row.error_category == 1)) code = 1;
        if (row.status == RowStatus::Skipped && row.error_category == 3) effort_skip = true;
        if (row.status == RowStatus::Skipped && row.error_category == 2) input_skip = true;
      }
      if (code == 0 && effort_skip) code = 3;
      if (code == 0 && input_skip) code = 2;
      for (const auto& row : res.rows)
        if (row.status != RowStatus::Verified) std::cerr << "d = " << row.d << ": " << row.error << "\n";
      return code;
    }
    if (*torus) {
      QuadField K = make_field(parse_integer(d_str), effort.factor_effort);
      NormTorusReport r = norm_torus_report(K, parse_sset(g.cfg.s), parse_prime_list(t_primes), effort);
      auto env = envelope(g, "norm-torus");
      env.rows.push_back(to_json(r));
      env.summary = {{"residual", to_string(r.residual)}, {"q_product", to_string(r.q_product)}};
      emit(g, env);
      return 0;
    }
    if (*coh) {
      auto grp = std::make_shared<const FiniteGroup>(FiniteGroup::parse(group_spec));
      GTower tower = parse_tower(grp, tower_spec);
      auto env = envelope(g, "cohomology");
      Json row;
      bool ok = false;
      if (lemma == "4.1") {
        auto r = inertia_h1_check(tower);
        row = to_json(r);
        ok = r.isomorphic;
      } else if (lemma == "4.2") {
        auto r = residue_mod_e_check(tower);
        row = to_json(r);
        ok = r.order_ok && r.iso_ok;
      } else {
        auto r = local_factor_q_delta(tower);
        row = to_json(r);
        ok = r.q == r.cross_check;
      }
      row["group"] = group_spec;
      row["tower"] = tower.describe();
      env.rows.push_back(row);
      env.summary = {{"ok", ok}};
      emit(g, env);
      return ok ? 0 : 1;
    }
    if (*explore) {
      QuadField K = make_field(parse_integer(d_str), effort.factor_effort);
      auto chain = truncated_h0_chain(K, parse_sset(g.cfg.s), parse_prime_list(t_primes), degree, effort);
      auto env = envelope(g, "explore-h0");
      for (const auto& row : chain) env.rows.push_back(to_json(row));
      env.summary = {{"final", chain.back().group.to_string()}};
      emit(g, env);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

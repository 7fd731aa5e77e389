#pragma once

// Run configuration, report envelopes and their JSON / CSV / markdown forms.

#include <map>
#include <string>

#include "chev/verifier.hpp"
#include "json.hpp"

namespace chev {

using Json = nlohmann::json;

inline constexpr const char* kArtifactVersion = "chev-report/1";

struct RunConfig {
  unsigned long factor_effort = 2000000;
  std::size_t max_steps = 1000000;
  long dmin = 1, dmax = 100;
  std::string s_policy = "infty";
  std::string s = "inf";
  std::size_t threads = 1;
  std::string format = "json";
  std::string output;  // empty: standard output

  Effort effort() const { return {max_steps, factor_effort}; }
  void set(const std::string& key, const std::string& value);  // InputError(BadSpec) on bad keys or values
  void validate() const;
  std::map<std::string, std::string> echo() const;
};

// `key = value` lines; `#` starts a comment.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);
// Loads the file named by CHEV_CONFIG, or `explicit_path` when CHEV_CONFIG is unset.
void apply_default_config(RunConfig& cfg, const std::string& explicit_path = "");

struct ReportEnvelope {
  std::string version = kArtifactVersion;
  std::string command;
  std::map<std::string, std::string> config;
  std::string timestamp;
  Json rows = Json::array();
  Json summary = Json::object();

  bool operator==(const ReportEnvelope&) const = default;
};

enum class Format { Json, Csv, Markdown };
Format parse_format(const std::string& s);

std::string utc_timestamp();

// Canonical form: timestamp, 'threads' in the config echo and every
// 'seconds' entry of the summary removed; keys sorted; compact.
Json envelope_json(const ReportEnvelope& e, bool canonical = false);
ReportEnvelope envelope_from_json(const Json& j);
std::string serialize(const ReportEnvelope& e, Format f, bool canonical = false);
ReportEnvelope parse_envelope(const std::string& json_text);

// Row records. Every integer and rational is written as a decimal string.
Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const FinAbGroup& g);
Json to_json(const SSet& S);
Json to_json(const ChevalleyReport& r);
Json to_json(const GenusReport& r);
Json to_json(const NormTorusReport& r);
Json to_json(const TruncatedH0& r);
Json to_json(const SweepRow& r);
Json to_json(const SweepSummary& s);
Json to_json(const InertiaH1Report& r);
Json to_json(const ResidueModReport& r);
Json to_json(const QDeltaReport& r);

Json field_json(const QuadField& K);
Json class_group_json(const ClassGroup& C);
Json units_json(const SUnitModule& M);

// 1 math, 2 input, 3 effort.
int exit_code(const Error& e);

}  // namespace chev

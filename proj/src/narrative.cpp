#include "epiladder/narrative.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "epiladder/data.hpp"
#include "epiladder/errors.hpp"

namespace epiladder {
namespace {

bool is_slot_char(char c) { return std::islower(static_cast<unsigned char>(c)) || c == '_'; }

std::string lower_ascii(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

Setting parse_setting(const std::string& id, const nlohmann::json& j, std::string body) {
  Setting s;
  s.id = id;
  try {
    s.role = j.at("role").get<std::string>();
    s.role_plural = j.at("role_plural").get<std::string>();
    s.status_positive = j.at("status_positive").get<std::string>();
    s.status_negative = j.at("status_negative").get<std::string>();
    s.assert_positive = j.at("assert_positive").get<std::string>();
    s.assert_negative = j.at("assert_negative").get<std::string>();
    s.self_assertions = j.at("self_assertions").get<std::vector<std::string>>();
    s.announcer = j.at("announcer").get<std::string>();
    s.announce_lower = j.at("announce_lower").get<std::string>();
    s.announce_upper = j.at("announce_upper").get<std::string>();
    s.protocol_symmetric = j.at("protocol_symmetric").get<std::string>();
    s.protocol_matrix = j.at("protocol_matrix").get<std::string>();
    s.observes_sentence = j.at("observes_sentence").get<std::string>();
    s.observes_nobody = j.at("observes_nobody").get<std::string>();
    s.observations_header = j.at("observations_header").get<std::string>();
    s.observations_none = j.at("observations_none").get<std::string>();
    s.question = j.at("question").get<std::string>();
    s.format_example = j.at("format_example").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("setting '" + id + "': " + e.what());
  }
  if (s.status_positive == s.status_negative) throw ConfigError("setting '" + id + "': status phrases must differ");
  if (s.assert_positive.find("{name}") == std::string::npos || s.assert_negative.find("{name}") == std::string::npos) {
    throw ConfigError("setting '" + id + "': assertion patterns need a {name} slot");
  }
  s.body = std::move(body);
  return s;
}

template <typename ReadFile>
std::map<std::string, Setting> parse_settings(const std::string& settings_json, ReadFile&& read_file) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(settings_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("settings.json: ") + e.what());
  }
  if (!root.is_object() || root.empty()) throw ConfigError("settings.json must map setting ids to settings");
  std::map<std::string, Setting> out;
  for (const auto& [id, j] : root.items()) {
    if (!j.contains("template")) throw ConfigError("setting '" + id + "' names no template file");
    const std::string file = j["template"];
    out.emplace(id, parse_setting(id, j, read_file(file)));
  }
  return out;
}

std::string render_matrix(const ObservationMatrix& obs, const std::vector<std::string>& names) {
  std::string out = "Column order: " + join(names, ", ") + ".";
  for (int i = 0; i < obs.size(); ++i) {
    out += "\n" + names[i] + ":";
    for (int j = 0; j < obs.size(); ++j) out += obs.observes(i, j) ? " 1" : " 0";
  }
  return out;
}

std::string render_relation_sentences(const ObservationMatrix& obs, const std::vector<std::string>& names,
                                      const Setting& setting) {
  std::vector<std::string> lines;
  for (int i = 0; i < obs.size(); ++i) {
    bool any = false;
    for (int j = 0; j < obs.size(); ++j) {
      if (!obs.observes(i, j)) continue;
      any = true;
      lines.push_back(fill_placeholders(setting.observes_sentence, {{"observer", names[i]}, {"observed", names[j]}}));
    }
    if (!any) lines.push_back(fill_placeholders(setting.observes_nobody, {{"observer", names[i]}}));
  }
  return join(lines, "\n");
}

}  // namespace

std::string Setting::assertion(const std::string& name, bool status) const {
  return fill_placeholders(status ? assert_positive : assert_negative, {{"name", name}});
}

const TemplateSet& TemplateSet::builtin() {
  static const TemplateSet set = [] {
    TemplateSet t;
    t.settings_ = parse_settings(std::string(*builtin_data("templates/settings.json")), [](const std::string& file) {
      auto content = builtin_data("templates/" + file);
      if (!content) throw ConfigError("builtin template '" + file + "' missing");
      return std::string(*content);
    });
    return t;
  }();
  return set;
}

TemplateSet TemplateSet::load(const std::string& dir) {
  auto read = [&](const std::string& file) {
    const std::string path = dir + "/" + file;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open template file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  TemplateSet t;
  t.settings_ = parse_settings(read("settings.json"), read);
  return t;
}

const Setting& TemplateSet::setting(const std::string& id) const {
  auto it = settings_.find(id);
  if (it == settings_.end()) throw ConfigError("unknown setting '" + id + "'");
  return it->second;
}

std::vector<std::string> TemplateSet::setting_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, s] : settings_) ids.push_back(id);
  return ids;
}

std::string fill_placeholders(const std::string& text, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t end = i + 1;
      while (end < text.size() && is_slot_char(text[end])) ++end;
      if (end < text.size() && text[end] == '}' && end > i + 1) {
        const std::string key = text.substr(i + 1, end - i - 1);
        auto it = values.find(key);
        if (it == values.end()) throw ConfigError("unresolved placeholder {" + key + "}");
        out += it->second;
        i = end + 1;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

std::string render_history(const std::vector<std::vector<Answer>>& trace, int upto,
                           const std::vector<std::string>& names) {
  if (upto < 1) throw InconsistentInstance("history requested up to round " + std::to_string(upto));
  const std::size_t rounds = static_cast<std::size_t>(upto - 1);
  if (trace.size() < rounds) {
    throw InconsistentInstance("trace has " + std::to_string(trace.size()) + " rounds, need " +
                               std::to_string(rounds));
  }
  if (rounds == 0) return "Public answers so far: none. No rounds have taken place yet.";
  std::string out = "Public answers so far:";
  for (std::size_t r = 0; r < rounds; ++r) {
    if (trace[r].size() != names.size()) throw DimensionError("trace round width differs from the number of names");
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < names.size(); ++i) {
      parts.push_back(names[i] + ": \"" + std::string(surface_form(trace[r][i])) + "\"");
    }
    out += "\nRound " + std::to_string(r + 1) + ": " + join(parts, ", ");
  }
  return out;
}

PromptBundle render_prompt(const PuzzleInstance& inst, const std::vector<std::vector<Answer>>& trace,
                           const Setting& setting, const RenderOptions& options) {
  require_valid(inst);
  std::vector<std::string> names = inst.names;
  if (names.empty()) {
    for (int i = 0; i < inst.n; ++i) names.push_back(setting.role + " " + std::to_string(i));
  }
  const std::string& self = names[inst.queried];

  PromptBundle bundle;
  bundle.instance_id = inst.id;
  bundle.round_prefix = inst.round - 1;
  PromptSections& s = bundle.sections;

  if (inst.obs.is_full_minus_diagonal()) {
    s.protocol = setting.protocol_symmetric;
  } else {
    s.protocol = setting.protocol_matrix + "\n" +
                 (options.observation_style == ObservationStyle::Matrix
                      ? render_matrix(inst.obs, names)
                      : render_relation_sentences(inst.obs, names, setting));
  }
  s.format_example = setting.format_example;
  s.announcement = fill_placeholders(inst.bound.type == BoundType::Lower ? setting.announce_lower : setting.announce_upper,
                                     {{"announcer", setting.announcer},
                                      {"q", std::to_string(inst.bound.value)},
                                      {"n", std::to_string(inst.n)}});

  std::vector<std::string> seen;
  for (int j = 0; j < inst.n; ++j) {
    if (j == inst.queried || !inst.obs.observes(inst.queried, j)) continue;
    seen.push_back("- " + setting.assertion(names[j], inst.statuses[j]));
  }
  s.observations = setting.observations_header + "\n" + (seen.empty() ? setting.observations_none : join(seen, "\n"));
  s.history = render_history(trace, inst.round, names);
  s.question = setting.question;

  bundle.text = fill_placeholders(setting.body, {{"self_name", self},
                                                  {"n", std::to_string(inst.n)},
                                                  {"agent_list", join(names, ", ")},
                                                  {"observation_protocol", s.protocol},
                                                  {"question", s.question},
                                                  {"format_example", s.format_example},
                                                  {"announcement", s.announcement},
                                                  {"observations", s.observations},
                                                  {"history", s.history},
                                                  {"round", std::to_string(inst.round)},
                                                  {"role", setting.role},
                                                  {"role_plural", setting.role_plural}});

  auto leaks = find_status_leaks(bundle.text, setting, self);
  if (!leaks.empty()) throw ConfigError(inst.id + ": prompt states the queried agent's status: \"" + leaks.front() + "\"");
  return bundle;
}

std::vector<std::string> find_status_leaks(const std::string& prompt, const Setting& setting,
                                           const std::string& queried_name) {
  std::vector<std::string> patterns = setting.self_assertions;
  patterns.push_back(setting.assertion(queried_name, true));
  patterns.push_back(setting.assertion(queried_name, false));

  const std::string haystack = lower_ascii(prompt);
  std::vector<std::string> found;
  for (const auto& pattern : patterns) {
    const std::string needle = lower_ascii(pattern);
    if (needle.empty()) continue;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) {
      const std::size_t end = pos + needle.size();
      const bool left_ok = pos == 0 || !is_word_char(haystack[pos - 1]);
      const bool right_ok = end == haystack.size() || !is_word_char(haystack[end]);
      if (left_ok && right_ok) found.push_back(prompt.substr(pos, needle.size()));
    }
  }
  return found;
}

}  // namespace epiladder

#pragma once

// Prompt rendering. Wording lives in template files under data/templates;
// this module only fills their placeholders.

#include <map>
#include <string>
#include <vector>

#include "epiladder/instance.hpp"

namespace epiladder {

/// Phrases for one narrative setting, loaded from templates/settings.json.
struct Setting {
  std::string id;
  std::string role;
  std::string role_plural;
  std::string status_positive;
  std::string status_negative;
  /// Assertion patterns with a `{name}` slot.
  std::string assert_positive;
  std::string assert_negative;
  /// Second-person phrasings that would state the reader's own status.
  std::vector<std::string> self_assertions;
  std::string announcer;
  std::string announce_lower;
  std::string announce_upper;
  std::string protocol_symmetric;
  std::string protocol_matrix;
  std::string observes_sentence;
  std::string observes_nobody;
  std::string observations_header;
  std::string observations_none;
  std::string question;
  std::string format_example;
  /// Full prompt template text.
  std::string body;

  std::string assertion(const std::string& name, bool status) const;
};

enum class ObservationStyle { Matrix, Sentences };

class TemplateSet {
 public:
  /// Templates compiled into the library.
  static const TemplateSet& builtin();
  /// Reads settings.json and the template files it names from `dir`.
  static TemplateSet load(const std::string& dir);

  const Setting& setting(const std::string& id) const;
  std::vector<std::string> setting_ids() const;

 private:
  std::map<std::string, Setting> settings_;
};

struct RenderOptions {
  ObservationStyle observation_style = ObservationStyle::Matrix;
};

/// The sections in prompt order; `text` is their template-rendered join.
struct PromptSections {
  std::string protocol;
  std::string format_example;
  std::string announcement;
  std::string observations;
  std::string history;
  std::string question;
};

struct PromptBundle {
  std::string instance_id;
  std::string text;
  /// Number of public rounds shown (j - 1).
  int round_prefix = 0;
  PromptSections sections;
};

/// Rounds 1..upto-1 in agent order, or an explicit empty-history line.
std::string render_history(const std::vector<std::vector<Answer>>& trace, int upto,
                           const std::vector<std::string>& names);

PromptBundle render_prompt(const PuzzleInstance& inst, const std::vector<std::vector<Answer>>& trace,
                           const Setting& setting, const RenderOptions& options = {});

/// Every occurrence of an assertion about the queried agent's own status.
/// Empty means the prompt is leak-free.
std::vector<std::string> find_status_leaks(const std::string& prompt, const Setting& setting,
                                           const std::string& queried_name);

/// Fills `{key}` slots; throws ConfigError on any slot without a value.
std::string fill_placeholders(const std::string& text, const std::map<std::string, std::string>& values);

}  // namespace epiladder

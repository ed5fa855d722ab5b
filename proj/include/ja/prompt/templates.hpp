#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace ja {

// Template asset names.
inline constexpr const char* kStage1Template = "stage1_describe";
inline constexpr const char* kStage1EngagementTemplate = "stage1_engagement";
inline constexpr const char* kStage2PlainTemplate = "stage2_non_reasoning";
inline constexpr const char* kStage2ReasoningTemplate = "stage2_reasoning";

// Versioned prompt templates stored as UTF-8 text files, one per name, in a
// directory such as assets/prompts/v1. Placeholders are written {{name}}.
class TemplateStore {
 public:
  // Reads every *.txt file under `dir`. Throws a configuration error when
  // the directory does not exist.
  static TemplateStore load(const std::filesystem::path& dir);

  // Templates compiled into this build's asset directory.
  static TemplateStore load_default();

  static TemplateStore from_map(std::map<std::string, std::string> templates,
                                std::string version = "inline");

  // Throws a configuration error naming the missing asset.
  const std::string& get(const std::string& name) const;
  bool contains(const std::string& name) const {
    return templates_.count(name) != 0;
  }
  const std::string& version() const { return version_; }

 private:
  std::map<std::string, std::string> templates_;
  std::string version_;
};

// Substitutes {{name}} placeholders. A line holding nothing but a
// placeholder whose value is empty is dropped entirely. Unknown
// placeholders throw a configuration error.
std::string fill_template(const std::string& text,
                          const std::map<std::string, std::string>& values);

// Path of the template directory installed with this build.
std::filesystem::path default_template_dir();

}  // namespace ja

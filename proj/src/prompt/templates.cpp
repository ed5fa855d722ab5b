#include "ja/prompt/templates.hpp"

#include <fstream>
#include <sstream>

#include "ja/error.hpp"

#ifndef JA_ASSET_DIR
#define JA_ASSET_DIR "assets"
#endif

namespace ja {

std::filesystem::path default_template_dir() {
  return std::filesystem::path(JA_ASSET_DIR) / "prompts" / "v1";
}

TemplateStore TemplateStore::load(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw configuration_error("template directory not found: " + dir.string());
  }
  TemplateStore store;
  store.version_ = dir.filename().string();
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") {
      continue;
    }
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    store.templates_[entry.path().stem().string()] = buf.str();
  }
  return store;
}

TemplateStore TemplateStore::load_default() {
  return load(default_template_dir());
}

TemplateStore TemplateStore::from_map(
    std::map<std::string, std::string> templates, std::string version) {
  TemplateStore store;
  store.templates_ = std::move(templates);
  store.version_ = std::move(version);
  return store;
}

const std::string& TemplateStore::get(const std::string& name) const {
  const auto it = templates_.find(name);
  if (it == templates_.end()) {
    throw configuration_error("prompt template '" + name +
                              "' missing from template set '" + version_ +
                              "'");
  }
  return it->second;
}

std::string fill_template(const std::string& text,
                          const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    const bool has_newline = line_end != std::string::npos;
    if (!has_newline) line_end = text.size();
    const std::string line = text.substr(line_start, line_end - line_start);
    line_start = line_end + 1;

    // Whole-line placeholder with an empty value disappears.
    if (line.size() > 4 && line.starts_with("{{") && line.ends_with("}}") &&
        line.find("{{", 2) == std::string::npos) {
      const std::string name = line.substr(2, line.size() - 4);
      const auto it = values.find(name);
      if (it == values.end()) {
        throw configuration_error("no value for template placeholder {{" +
                                  name + "}}");
      }
      if (it->second.empty()) continue;
    }

    std::size_t pos = 0;
    while (true) {
      const std::size_t open = line.find("{{", pos);
      if (open == std::string::npos) {
        out.append(line, pos, std::string::npos);
        break;
      }
      const std::size_t close = line.find("}}", open + 2);
      if (close == std::string::npos) {
        out.append(line, pos, std::string::npos);
        break;
      }
      out.append(line, pos, open - pos);
      const std::string name = line.substr(open + 2, close - open - 2);
      const auto it = values.find(name);
      if (it == values.end()) {
        throw configuration_error("no value for template placeholder {{" +
                                  name + "}}");
      }
      out += it->second;
      pos = close + 2;
    }
    if (has_newline) out += '\n';
  }
  return out;
}

}  // namespace ja

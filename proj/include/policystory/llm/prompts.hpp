#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace policystory::llm {

struct PromptTemplate {
  std::string system;
  std::string user;
};

struct RenderedPrompt {
  std::string system;
  std::string user;
};

using PromptVars = std::map<std::string, std::string>;

// Versioned prompt templates with {NAME} placeholders. Names used by the
// pipeline: classify, summary, story_first, story_fold, story_brief, numeric,
// jargon. On disk each template is a pair of files {name}.system.txt and
// {name}.user.txt inside a version directory (prompts/v1/...); the same files
// are compiled into the binary as the built-in set.
class PromptLibrary {
 public:
  static PromptLibrary builtin();
  static PromptLibrary load(const std::filesystem::path& dir);

  const std::string& version() const { return version_; }
  const PromptTemplate& get(const std::string& name) const;
  // First 12 hex digits of a SHA-256 over every template, in name order.
  std::string hash() const;

  // Substitutes {NAME} placeholders. Substituted values are not rescanned.
  // Throws ValidationError for a placeholder without a value.
  RenderedPrompt render(const std::string& name, const PromptVars& vars) const;

  static std::string substitute(const std::string& tmpl, const PromptVars& vars);

 private:
  std::string version_;
  std::map<std::string, PromptTemplate> templates_;
};

}  // namespace policystory::llm

#include "policystory/llm/prompts.hpp"

#include <cctype>

#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/hash.hpp"

namespace policystory::llm {
namespace detail {
const char* builtin_prompt_version();
const std::map<std::string, std::string>& builtin_prompt_files();
}  // namespace detail

namespace {

constexpr const char* kTemplateNames[] = {"classify",    "summary", "story_first", "story_fold",
                                          "story_brief", "numeric", "jargon"};

std::string strip_final_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

PromptLibrary PromptLibrary::builtin() {
  PromptLibrary lib;
  lib.version_ = detail::builtin_prompt_version();
  const auto& files = detail::builtin_prompt_files();
  for (const char* name : kTemplateNames) {
    auto sys = files.find(std::string(name) + ".system.txt");
    auto user = files.find(std::string(name) + ".user.txt");
    if (sys == files.end() || user == files.end()) {
      throw Error(std::string("built-in prompt template '") + name + "' missing");
    }
    lib.templates_[name] = {strip_final_newline(sys->second), strip_final_newline(user->second)};
  }
  return lib;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& dir) {
  PromptLibrary lib;
  lib.version_ = dir.filename().string();
  if (lib.version_.empty()) lib.version_ = dir.parent_path().filename().string();
  for (const char* name : kTemplateNames) {
    lib.templates_[name] = {strip_final_newline(read_file(dir / (std::string(name) + ".system.txt"))),
                            strip_final_newline(read_file(dir / (std::string(name) + ".user.txt")))};
  }
  return lib;
}

const PromptTemplate& PromptLibrary::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw NotFoundError("no prompt template '" + name + "'");
  return it->second;
}

std::string PromptLibrary::hash() const {
  std::string all = version_ + "\n";
  for (const auto& [name, t] : templates_) {
    all += name + "\n" + t.system + "\n" + t.user + "\n";
  }
  return sha256_hex(all).substr(0, 12);
}

std::string PromptLibrary::substitute(const std::string& tmpl, const PromptVars& vars) {
  std::string out;
  out.reserve(tmpl.size());
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{') {
      std::size_t j = i + 1;
      while (j < tmpl.size() && (std::isupper(static_cast<unsigned char>(tmpl[j])) ||
                                 std::isdigit(static_cast<unsigned char>(tmpl[j])) || tmpl[j] == '_')) {
        ++j;
      }
      if (j < tmpl.size() && tmpl[j] == '}' && j > i + 1) {
        std::string name = tmpl.substr(i + 1, j - i - 1);
        auto it = vars.find(name);
        if (it == vars.end()) throw ValidationError("prompt placeholder {" + name + "} has no value");
        out += it->second;
        i = j;
        continue;
      }
    }
    out.push_back(tmpl[i]);
  }
  return out;
}

RenderedPrompt PromptLibrary::render(const std::string& name, const PromptVars& vars) const {
  const auto& t = get(name);
  return {substitute(t.system, vars), substitute(t.user, vars)};
}

}  // namespace policystory::llm

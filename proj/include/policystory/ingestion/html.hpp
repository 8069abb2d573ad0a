#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace policystory::ingestion::html {

// Forgiving HTML tree: unknown markup never throws, stray end tags are
// ignored and unclosed elements are closed at the end of input.
struct Node {
  std::string tag;   // lowercase; empty for text nodes
  std::string text;  // text nodes only, entities decoded
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<std::unique_ptr<Node>> children;
  Node* parent = nullptr;

  bool is_text() const { return tag.empty(); }
  std::string attr(std::string_view name) const;
  // Concatenated descendant text with whitespace collapsed.
  std::string inner_text() const;
};

std::unique_ptr<Node> parse(std::string_view html);

std::string decode_entities(std::string_view s);

}  // namespace policystory::ingestion::html

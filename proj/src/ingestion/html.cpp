#include "policystory/ingestion/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "policystory/util/text.hpp"

namespace policystory::ingestion::html {
namespace {

constexpr std::array<std::string_view, 15> kVoid = {"area", "base",  "br",    "col",   "embed",
                                                    "hr",   "img",   "input", "link",  "meta",
                                                    "param", "source", "track", "wbr", "keygen"};
constexpr std::array<std::string_view, 4> kRawText = {"script", "style", "textarea", "title"};
constexpr std::array<std::string_view, 24> kClosesParagraph = {
    "p",       "div",   "h1",     "h2",   "h3",     "h4",     "h5",      "h6",
    "ul",      "ol",    "table",  "section", "article", "header", "footer", "nav",
    "aside",   "blockquote", "pre", "form", "figure", "hr",  "main",    "dl"};

template <std::size_t N>
bool in(const std::array<std::string_view, N>& set, std::string_view v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

const std::map<std::string_view, unsigned long>& named_entities() {
  static const std::map<std::string_view, unsigned long> kNamed = {
      {"amp", '&'},       {"lt", '<'},        {"gt", '>'},        {"quot", '"'},
      {"apos", '\''},     {"nbsp", 0xA0},     {"ndash", 0x2013},  {"mdash", 0x2014},
      {"lsquo", 0x2018},  {"rsquo", 0x2019},  {"ldquo", 0x201C},  {"rdquo", 0x201D},
      {"hellip", 0x2026}, {"copy", 0xA9},     {"reg", 0xAE},      {"trade", 0x2122},
      {"bull", 0x2022},   {"middot", 0xB7},   {"laquo", 0xAB},    {"raquo", 0xBB},
      {"deg", 0xB0},      {"times", 0xD7},    {"euro", 0x20AC},   {"pound", 0xA3},
      {"rupee", 0x20B9},  {"frac12", 0xBD},   {"eacute", 0xE9},   {"zwj", 0x200D},
      {"zwnj", 0x200C},   {"thinsp", 0x2009}, {"ensp", 0x2002},   {"emsp", 0x2003}};
  return kNamed;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {
    root_ = std::make_unique<Node>();
    root_->tag = "#document";
    stack_.push_back(root_.get());
  }

  std::unique_ptr<Node> run() {
    while (pos_ < s_.size()) {
      if (s_[pos_] == '<') {
        if (starts("<!--")) {
          skip_past("-->");
        } else if (starts("</")) {
          end_tag();
        } else if (pos_ + 1 < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_ + 1]))) {
          start_tag();
        } else if (starts("<!") || starts("<?")) {
          skip_past(">");
        } else {
          text_until_tag();
        }
      } else {
        text_until_tag();
      }
    }
    return std::move(root_);
  }

 private:
  bool starts(std::string_view p) const { return s_.substr(pos_, p.size()) == p; }

  void skip_past(std::string_view marker) {
    auto at = s_.find(marker, pos_);
    pos_ = at == std::string_view::npos ? s_.size() : at + marker.size();
  }

  Node* current() { return stack_.back(); }

  void add_text(std::string_view raw) {
    if (raw.empty()) return;
    std::string decoded = decode_entities(raw);
    auto& kids = current()->children;
    if (!kids.empty() && kids.back()->is_text()) {
      kids.back()->text += decoded;
      return;
    }
    auto n = std::make_unique<Node>();
    n->text = std::move(decoded);
    n->parent = current();
    kids.push_back(std::move(n));
  }

  void text_until_tag() {
    std::size_t next = s_.find('<', pos_ + 1);
    if (next == std::string_view::npos) next = s_.size();
    add_text(s_.substr(pos_, next - pos_));
    pos_ = next;
  }

  std::string read_name() {
    std::string name;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '>' || c == '/' || c == '=') break;
      name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      ++pos_;
    }
    return name;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void end_tag() {
    pos_ += 2;
    std::string name = read_name();
    skip_past(">");
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == name) {
        stack_.resize(i);
        return;
      }
    }
  }

  void start_tag() {
    ++pos_;
    auto node = std::make_unique<Node>();
    node->tag = read_name();
    bool self_closing = false;
    while (pos_ < s_.size()) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (s_[pos_] == '/') {
        self_closing = true;
        ++pos_;
        continue;
      }
      std::string name = read_name();
      if (name.empty()) {
        ++pos_;
        continue;
      }
      std::string value;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '=') {
        ++pos_;
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '"' || s_[pos_] == '\'')) {
          char q = s_[pos_++];
          auto close = s_.find(q, pos_);
          if (close == std::string_view::npos) close = s_.size();
          value = decode_entities(s_.substr(pos_, close - pos_));
          pos_ = std::min(close + 1, s_.size());
        } else {
          std::size_t start = pos_;
          while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
                 s_[pos_] != '>') {
            ++pos_;
          }
          value = decode_entities(s_.substr(start, pos_ - start));
        }
      }
      node->attrs.emplace_back(std::move(name), std::move(value));
    }

    const std::string tag = node->tag;
    if (in(kClosesParagraph, tag)) close_open("p");
    if (tag == "li") close_open("li");
    if (tag == "p") close_open("p");

    node->parent = current();
    Node* raw = node.get();
    current()->children.push_back(std::move(node));
    if (in(kVoid, tag) || self_closing) return;
    if (in(kRawText, tag)) {
      std::string closer = "</" + tag;
      std::size_t end = pos_;
      for (;;) {
        end = s_.find('<', end);
        if (end == std::string_view::npos) {
          end = s_.size();
          break;
        }
        if (text::starts_with_ci(s_.substr(end), closer)) break;
        ++end;
      }
      std::string_view content = s_.substr(pos_, end - pos_);
      if (!content.empty()) {
        auto t = std::make_unique<Node>();
        t->text = tag == "title" || tag == "textarea" ? decode_entities(content) : std::string(content);
        t->parent = raw;
        raw->children.push_back(std::move(t));
      }
      pos_ = end;
      if (pos_ < s_.size()) skip_past(">");
      return;
    }
    stack_.push_back(raw);
  }

  // Implicitly closes an open <p>/<li> when the current scope holds one.
  void close_open(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const std::string& t = stack_[i]->tag;
      if (t == tag) {
        stack_.resize(i);
        return;
      }
      if (t == "div" || t == "section" || t == "article" || t == "td" || t == "ul" || t == "ol" ||
          t == "body" || t == "main" || t == "blockquote") {
        return;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::unique_ptr<Node> root_;
  std::vector<Node*> stack_;
};

void collect_text(const Node& n, std::string& out) {
  if (n.is_text()) {
    out += n.text;
    out.push_back(' ');
    return;
  }
  if (n.tag == "script" || n.tag == "style") return;
  if (n.tag == "br") out.push_back(' ');
  for (const auto& c : n.children) collect_text(*c, out);
}

}  // namespace

std::string Node::attr(std::string_view name) const {
  for (const auto& [k, v] : attrs) {
    if (k == name) return v;
  }
  return {};
}

std::string Node::inner_text() const {
  std::string raw;
  collect_text(*this, raw);
  // non-breaking spaces count as whitespace for layout purposes
  std::string cleaned;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (static_cast<unsigned char>(raw[i]) == 0xC2 && i + 1 < raw.size() &&
        static_cast<unsigned char>(raw[i + 1]) == 0xA0) {
      cleaned.push_back(' ');
      ++i;
    } else {
      cleaned.push_back(raw[i]);
    }
  }
  std::string out = text::collapse_whitespace(cleaned);
  // collapse_whitespace leaves no edge spaces; tidy spaces before punctuation
  // introduced by inline element boundaries
  std::string tidy;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == ' ' && i + 1 < out.size() &&
        (out[i + 1] == '.' || out[i + 1] == ',' || out[i + 1] == ';' || out[i + 1] == ':' ||
         out[i + 1] == '!' || out[i + 1] == '?' || out[i + 1] == ')')) {
      continue;
    }
    tidy.push_back(out[i]);
  }
  return tidy;
}

std::unique_ptr<Node> parse(std::string_view html) { return Parser(html).run(); }

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back('&');
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    if (!name.empty() && name[0] == '#') {
      unsigned long cp = 0;
      bool ok = name.size() > 1;
      bool hex = ok && (name[1] == 'x' || name[1] == 'X');
      for (std::size_t k = hex ? 2 : 1; k < name.size() && ok; ++k) {
        char c = name[k];
        if (hex && std::isxdigit(static_cast<unsigned char>(c))) {
          cp = cp * 16 + static_cast<unsigned long>(std::isdigit(static_cast<unsigned char>(c))
                                                        ? c - '0'
                                                        : std::tolower(c) - 'a' + 10);
        } else if (!hex && std::isdigit(static_cast<unsigned char>(c))) {
          cp = cp * 10 + static_cast<unsigned long>(c - '0');
        } else {
          ok = false;
        }
        if (cp > 0x10FFFF) ok = false;
      }
      if (ok && name.size() > (hex ? 2u : 1u)) {
        append_utf8(out, cp);
        i = semi;
        continue;
      }
    } else if (auto it = named_entities().find(name); it != named_entities().end()) {
      append_utf8(out, it->second);
      i = semi;
      continue;
    }
    out.push_back('&');
  }
  return out;
}

}  // namespace policystory::ingestion::html

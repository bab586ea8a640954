#include "treecount/conllu.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "treecount/vocabulary.hpp"

namespace treecount {

namespace {

constexpr std::string_view kNewdoc = "# newdoc";
constexpr std::string_view kSentId = "# sent_id";

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// "# key = value" -> value, or empty when the comment has no "=".
std::string comment_value(std::string_view line) {
  auto eq = line.find('=');
  if (eq == std::string_view::npos) return {};
  return std::string(trim(line.substr(eq + 1)));
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

struct PendingSentence {
  Sentence sentence;
  std::vector<std::size_t> token_lines;
  std::size_t first_line = 0;
  std::size_t error_line = 0;
  std::string error;
  bool has_content = false;

  void fail(std::size_t line, std::string message) {
    if (error.empty()) {
      error_line = line;
      error = std::move(message);
    }
  }
};

class Parser {
 public:
  Parser(std::string corpus_id, ParseMode mode) : mode_(mode) {
    result_.treebank.set_corpus_id(std::move(corpus_id));
  }

  void feed(std::string_view line) {
    ++line_no_;
    if (line_no_ == 1 && starts_with(line, "\xEF\xBB\xBF")) line.remove_prefix(3);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      finish_sentence();
      return;
    }
    if (!pending_.has_content) {
      pending_.has_content = true;
      pending_.first_line = line_no_;
    }
    if (line.front() == '#') {
      if (starts_with(line, kNewdoc)) open_document(comment_value(line));
      else if (starts_with(line, kSentId)) pending_.sentence.sent_id = comment_value(line);
      pending_.sentence.comments.emplace_back(line);
      return;
    }
    word_line(line);
  }

  ParseResult finish() {
    finish_sentence();
    return std::move(result_);
  }

 private:
  void open_document(std::string id) {
    auto& docs = result_.treebank.documents();
    if (id.empty()) id = result_.treebank.corpus_id() + "-doc" + std::to_string(docs.size() + 1);
    docs.push_back(Document{std::move(id), true, {}});
  }

  void word_line(std::string_view line) {
    auto& s = pending_.sentence;
    auto fields = split_tabs(line);
    if (fields.size() != 10) {
      pending_.fail(line_no_, "expected 10 tab-separated fields, found " +
                                  std::to_string(fields.size()));
      return;
    }
    std::string_view id = fields[0];
    auto dash = id.find('-');
    auto dot = id.find('.');
    if (dash != std::string_view::npos || dot != std::string_view::npos) {
      auto sep = dash != std::string_view::npos ? dash : dot;
      if (!is_digits(id.substr(0, sep)) || !is_digits(id.substr(sep + 1))) {
        pending_.fail(line_no_, "malformed id '" + std::string(id) + "'");
        return;
      }
      s.passthrough.push_back({s.tokens.size(), std::string(line)});
      return;
    }

    Token t;
    if (!parse_int(id, t.id) || t.id < 1) {
      pending_.fail(line_no_, "malformed id '" + std::string(id) + "'");
      return;
    }
    if (t.id != static_cast<int>(s.tokens.size()) + 1) {
      pending_.fail(line_no_, "token ids are not consecutive: expected " +
                                  std::to_string(s.tokens.size() + 1) + ", found " +
                                  std::string(id));
      return;
    }
    if (!parse_int(fields[6], t.head) || t.head < 0) {
      pending_.fail(line_no_, "non-numeric head '" + std::string(fields[6]) + "'");
      return;
    }
    t.form = fields[1];
    t.lemma = fields[2];
    t.upos = fields[3];
    t.xpos = fields[4];
    t.feats = fields[5];
    t.deprel = fields[7];
    t.deps = fields[8];
    t.misc = fields[9];

    if (!is_universal_pos(t.upos) && warned_upos_.insert(t.upos).second)
      warn("non-universal UPOS '" + t.upos + "'");
    auto core = std::string(core_label(t.deprel));
    if (!is_universal_relation(core) && warned_deprel_.insert(core).second)
      warn("non-universal dependency relation '" + core + "'");

    s.tokens.push_back(std::move(t));
    pending_.token_lines.push_back(line_no_);
  }

  void warn(std::string message) {
    result_.diagnostics.push_back({line_no_, Severity::warning, std::move(message)});
  }

  void finish_sentence() {
    if (!pending_.has_content) return;
    PendingSentence p = std::move(pending_);
    pending_ = PendingSentence{};

    if (p.error.empty() && !p.sentence.tokens.empty()) check_tree(p);
    if (p.error.empty() && p.sentence.tokens.empty()) {
      // Comment-only blocks (e.g. a trailing "# newdoc") carry no tree.
      if (p.sentence.passthrough.empty()) return;
      p.fail(p.first_line, "sentence has no word lines");
    }

    if (!p.error.empty()) {
      if (mode_ == ParseMode::strict) throw ParseError(p.error_line, p.error);
      result_.diagnostics.push_back({p.error_line, Severity::error, p.error});
      ++result_.skipped_sentences;
      return;
    }

    auto& docs = result_.treebank.documents();
    if (docs.empty()) docs.push_back(Document{result_.treebank.corpus_id(), false, {}});
    p.sentence.doc_id = docs.back().id;
    docs.back().sentences.push_back(std::move(p.sentence));
  }

  static void check_tree(PendingSentence& p) {
    const auto& tokens = p.sentence.tokens;
    const int n = static_cast<int>(tokens.size());
    int roots = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto& t = tokens[i];
      if (t.head > n) {
        p.fail(p.token_lines[i], "head " + std::to_string(t.head) + " out of range");
        return;
      }
      if (t.head == t.id) {
        p.fail(p.token_lines[i], "token is its own head");
        return;
      }
      if (t.head == 0) ++roots;
    }
    if (roots != 1) {
      p.fail(p.first_line, roots == 0 ? "sentence has no root" : "sentence has multiple roots");
      return;
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      int steps = 0;
      for (int cur = tokens[i].head; cur != 0; cur = tokens[cur - 1].head) {
        if (++steps > n) {
          p.fail(p.token_lines[i], "cycle in head references");
          return;
        }
      }
    }
  }

  ParseMode mode_;
  ParseResult result_;
  PendingSentence pending_;
  std::size_t line_no_ = 0;
  std::set<std::string> warned_upos_;
  std::set<std::string> warned_deprel_;
};

}  // namespace

int Sentence::root_id() const {
  for (const auto& t : tokens)
    if (t.head == 0) return t.id;
  return 0;
}

std::size_t Treebank::sentence_count() const {
  std::size_t n = 0;
  for (const auto& d : documents_) n += d.sentences.size();
  return n;
}

std::size_t Treebank::word_total() const {
  std::size_t n = 0;
  for_each_sentence([&](const Sentence& s) { n += s.tokens.size(); });
  return n;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string to_string(const Diagnostic& d) {
  return "line " + std::to_string(d.line) + ": " +
         (d.severity == Severity::warning ? "warning: " : "error: ") + d.message;
}

ParseResult parse_treebank(std::istream& in, std::string corpus_id, ParseMode mode) {
  Parser parser(std::move(corpus_id), mode);
  std::string line;
  while (std::getline(in, line)) parser.feed(line);
  return parser.finish();
}

ParseResult parse_treebank_string(std::string_view text, std::string corpus_id, ParseMode mode) {
  Parser parser(std::move(corpus_id), mode);
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    parser.feed(text.substr(start, nl - start));
    start = nl + 1;
  }
  return parser.finish();
}

ParseResult parse_treebank_path(const std::string& path, std::string corpus_id, ParseMode mode) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".conllu")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }

  Parser parser(std::move(corpus_id), mode);
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::string line;
    while (std::getline(in, line)) parser.feed(line);
    parser.feed("");  // files never share a sentence
  }
  return parser.finish();
}

std::string validate_sentence(const Sentence& s) {
  const int n = static_cast<int>(s.tokens.size());
  if (n == 0) return "sentence is empty";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const auto& t = s.tokens[i];
    if (t.id != i + 1) return "token ids are not consecutive";
    if (t.head < 0 || t.head > n) return "head out of range";
    if (t.head == t.id) return "token is its own head";
    if (t.head == 0) ++roots;
  }
  if (roots != 1) return roots == 0 ? "no root" : "multiple roots";
  for (int i = 0; i < n; ++i) {
    int steps = 0;
    for (int cur = s.tokens[i].head; cur != 0; cur = s.tokens[cur - 1].head)
      if (++steps > n) return "cycle in head references";
  }
  return {};
}

void write_sentence(const Sentence& s, std::ostream& out) {
  for (const auto& c : s.comments) out << c << '\n';
  auto pass = s.passthrough.begin();
  for (std::size_t i = 0; i <= s.tokens.size(); ++i) {
    for (; pass != s.passthrough.end() && pass->before_token == i; ++pass) out << pass->line << '\n';
    if (i == s.tokens.size()) break;
    const auto& t = s.tokens[i];
    out << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << '\t' << t.xpos << '\t'
        << t.feats << '\t' << t.head << '\t' << t.deprel << '\t' << t.deps << '\t' << t.misc
        << '\n';
  }
  out << '\n';
}

void write_treebank(const Treebank& tb, std::ostream& out) {
  for (const auto& doc : tb.documents()) {
    bool first = true;
    for (const auto& s : doc.sentences) {
      if (s.tokens.empty()) continue;
      if (first && doc.declared) {
        bool has_newdoc = std::any_of(s.comments.begin(), s.comments.end(),
                                      [](const std::string& c) { return starts_with(c, kNewdoc); });
        if (!has_newdoc) out << "# newdoc id = " << doc.id << '\n';
      }
      first = false;
      write_sentence(s, out);
    }
  }
  if (!out) throw std::runtime_error("write failure while serializing treebank");
}

std::string write_treebank_string(const Treebank& tb) {
  std::ostringstream out;
  write_treebank(tb, out);
  return out.str();
}

std::string_view core_label(std::string_view deprel) {
  return deprel.substr(0, deprel.find(':'));
}

}  // namespace treecount

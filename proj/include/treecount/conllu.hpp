#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treecount {

/// One syntactic word (an integer-id CoNLL-U line).
struct Token {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos = "_";
  std::string feats = "_";
  int head = 0;
  std::string deprel;
  std::string deps = "_";
  std::string misc = "_";
};

/// A raw line that is not part of the tree: a multiword-token range ("3-4")
/// or an empty node ("5.1"). `before_token` is the index into
/// Sentence::tokens of the first word line that follows it (== tokens.size()
/// when it trails the last word).
struct PassthroughLine {
  std::size_t before_token = 0;
  std::string line;
};

struct Sentence {
  std::string sent_id;
  std::string doc_id;
  std::vector<std::string> comments;
  std::vector<Token> tokens;
  std::vector<PassthroughLine> passthrough;

  std::size_t size() const { return tokens.size(); }
  const Token& at(int id) const { return tokens.at(static_cast<std::size_t>(id - 1)); }
  /// Id of the unique head = 0 token.
  int root_id() const;
};

struct Document {
  std::string id;
  /// True when the document was opened by a "# newdoc id = ..." comment.
  bool declared = false;
  std::vector<Sentence> sentences;
};

class Treebank {
 public:
  Treebank() = default;
  explicit Treebank(std::string corpus_id) : corpus_id_(std::move(corpus_id)) {}

  const std::string& corpus_id() const { return corpus_id_; }
  void set_corpus_id(std::string id) { corpus_id_ = std::move(id); }

  const std::vector<Document>& documents() const { return documents_; }
  std::vector<Document>& documents() { return documents_; }

  std::size_t sentence_count() const;
  std::size_t word_total() const;

  template <typename Fn>
  void for_each_sentence(Fn&& fn) const {
    for (const auto& doc : documents_)
      for (const auto& s : doc.sentences) fn(s);
  }

 private:
  std::string corpus_id_;
  std::vector<Document> documents_;
};

enum class ParseMode { strict, lenient };
enum class Severity { warning, error };

struct Diagnostic {
  std::size_t line = 0;
  Severity severity = Severity::error;
  std::string message;
};

std::string to_string(const Diagnostic& d);

/// Thrown by strict parsing; carries the 1-based input line of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseResult {
  Treebank treebank;
  std::vector<Diagnostic> diagnostics;
  std::size_t skipped_sentences = 0;
};

ParseResult parse_treebank(std::istream& in, std::string corpus_id,
                           ParseMode mode = ParseMode::strict);
ParseResult parse_treebank_string(std::string_view text, std::string corpus_id,
                                  ParseMode mode = ParseMode::strict);
/// Reads one file, or every *.conllu file of a directory in name order,
/// into a single treebank.
ParseResult parse_treebank_path(const std::string& path, std::string corpus_id,
                                ParseMode mode = ParseMode::strict);

/// Checks the tree invariants (consecutive ids, single root, acyclic,
/// heads in range). Returns an empty string when valid.
std::string validate_sentence(const Sentence& s);

void write_sentence(const Sentence& s, std::ostream& out);
void write_treebank(const Treebank& tb, std::ostream& out);
std::string write_treebank_string(const Treebank& tb);

/// "cc:preconj" -> "cc".
std::string_view core_label(std::string_view deprel);

}  // namespace treecount

#include "treecount/vocabulary.hpp"

#include <algorithm>
#include <array>

namespace treecount {

namespace {

constexpr std::array<std::string_view, 17> kUpos = {
    "ADJ", "ADP",  "ADV",   "AUX",   "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

constexpr std::array<std::string_view, 37> kRelations = {
    "acl",       "advcl",    "advmod",     "amod",     "appos",  "aux",
    "case",      "cc",       "ccomp",      "clf",      "compound", "conj",
    "cop",       "csubj",    "dep",        "det",      "discourse", "dislocated",
    "expl",      "fixed",    "flat",       "goeswith", "iobj",   "list",
    "mark",      "nmod",     "nsubj",      "nummod",   "obj",    "obl",
    "orphan",    "parataxis", "punct",     "reparandum", "root", "vocative",
    "xcomp"};

}  // namespace

bool is_universal_pos(std::string_view upos) {
  return std::find(kUpos.begin(), kUpos.end(), upos) != kUpos.end();
}

bool is_universal_relation(std::string_view core_deprel) {
  return std::find(kRelations.begin(), kRelations.end(), core_deprel) != kRelations.end();
}

}  // namespace treecount

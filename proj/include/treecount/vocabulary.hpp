#pragma once

#include <string_view>

namespace treecount {

// Universal POS tags and core dependency relations of the UD scheme. Only
// used to warn about treebank-specific extensions.
bool is_universal_pos(std::string_view upos);
bool is_universal_relation(std::string_view core_deprel);

}  // namespace treecount

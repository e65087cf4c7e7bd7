// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include <string>

#include "namegauge/raters.h"

namespace namegauge::raters {

namespace {

// Changing any text below requires bumping kTemplateVersion.
constexpr std::string_view kRole =
    "You are an expert software engineer specializing in Python programming. "
    "You review method names in scientific Python code written in Jupyter notebooks.\n";

constexpr std::string_view kTagging = R"(
## Part-of-speech tagging

Tag every term of the method name with exactly one tag from this table. Use only
these tags; do not use natural-language tagsets such as Penn Treebank.

| Tag | Meaning | Example name | Pattern |
|-----|---------|--------------|---------|
| N   | Noun | `variance` | N |
| NM  | Noun modifier: adjective or noun-adjunct in front of a noun | `get_max_value` | V,NM,N |
| NPL | Plural noun | `process_features` | V,NPL |
| V   | Verb | `load_image` | V,N |
| VM  | Verb modifier (adverb) | `quickly_sort` | VM,V |
| P   | Preposition | `data_from_file` | N,P,N |
| DT  | Determiner | `fit_all_models` | V,DT,NPL |
| CJ  | Conjunction | `train_and_evaluate` | V,CJ,V |
| PR  | Pronoun | `update_self` | V,PR |
| D   | Digit | `conv2d_layer` | N,D,NM,N |
| PRE | Preamble: a prefix with no grammatical meaning | `m_count` | PRE,N |

The grammar pattern is the tags of the terms in order, joined by commas with no
spaces, for example `V,NPL`. It must contain one tag per term.
)";

constexpr std::string_view kSplitting = R"(
## Splitting names into terms

Split the method name into terms before tagging:
- snake_case: every underscore separates terms (`load_image` -> load, image).
- camelCase and PascalCase: a capital letter after a lowercase letter starts a new
  term (`loadImage` -> load, Image; `LoadImage` -> Load, Image).
- Leading and trailing underscores are not terms (`_hash` -> hash).
)";

constexpr std::string_view kAcronyms = R"(
## Acronyms, abbreviations and numbers

- An acronym written in capitals is one term: `parseHTTPResponse` -> parse, HTTP,
  Response. Tag acronyms and abbreviations by the role of the word they stand
  for (`MSE`, mean squared error, is a noun).
- Digits form their own term and are tagged D: `conv2d` -> conv, 2, d.
- When you suggest a corrected name, expand an abbreviation only when the full
  form is clearer and still conventional in the domain.
)";

constexpr std::string_view kQuality = R"(
## Evaluating the name

Judge the current name against software engineering naming practice:
- A method name should normally start with a verb that states its action.
- It should not end with a verb, and a single noun rarely describes an action.
- It should be descriptive without being verbose, and consistent with the code.
If the current name is already good, repeat it unchanged as the corrected name
and repeat its pattern as the corrected pattern.
)";

constexpr std::string_view kFormat = R"(
## Response format

Reply with a single JSON object and nothing else, using exactly these keys:
- "current_method_name": the method name exactly as it appears in the code
- "current_grammar_pattern": the grammar pattern of the current name
- "corrected_method_name": your suggested name, or the current name if no change is needed
- "corrected_grammar_pattern": the grammar pattern of the corrected name

Example:
{"current_method_name": "variance", "current_grammar_pattern": "N", "corrected_method_name": "calculate_variance", "corrected_grammar_pattern": "V,N"}
)";

}  // namespace

PromptBundle build_prompt(const corpus::MethodRecord& method) {
  std::string text;
  text.reserve(4096 + method.source.size());
  text += "<!-- template: ";
  text += kTemplateVersion;
  text += " -->\n";
  text += kRole;
  text += kTagging;
  text += kSplitting;
  text += kAcronyms;
  text += kQuality;
  text += kFormat;
  text += "\n## Method\n\nMethod name: ";
  text += method.name;
  text += "\n\n```python\n";
  text += method.source;
  text += "\n```\n";
  return {method.id, std::move(text)};
}

}  // namespace namegauge::raters

#pragma once
// Extraction of structured data from free-form LLM replies: the latest graph
// section, triples in the formats models actually emit, Pass/Fail verdicts,
// and final answers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rwg/graph.hpp"

namespace rwg {

enum class Verdict { Pass, Fail, Unknown };

std::string_view verdict_name(Verdict v);

enum class AnswerType { integer, option_index, free_text, relation_label };

// A triple parsed from one reply line. deletion is set for struck-through
// lines (~~...~~, \st{...}, leading "DELETE:"), which the engine applies as
// removals instead of additions.
struct ParsedTripleLine {
    Triple triple;
    bool deletion = false;
};

// Non-blank lines after the LAST "[latest graph]" marker (case-insensitive),
// up to a terminal [YES]/[No] marker or end of text. nullopt if no marker.
std::optional<std::vector<std::string>> extract_latest_graph(std::string_view reply);

// Accepted grammars, tried in priority order:
//   (a) (head, relation, tail)           tail keeps any further commas
//   (b) (head) --[relation]--> (tail)    also bare --relation--> arrows
//   (c) head --[relation]--> tail        unparenthesized variant of (b)
//   (d) head -- tail                     relation becomes "related_to"
// A trailing "[note]" after the tail is kept as the triple's annotation.
// Leading list bullets/numbering are ignored. Returns nullopt for anything
// else (prose, blank lines, headers).
std::optional<ParsedTripleLine> parse_triple_line(std::string_view line);

// Last occurrence of "[YES]" / "[No]" (case-insensitive) wins; neither
// present means Unknown.
Verdict detect_verdict(std::string_view reply);

// Answer extraction per answer type; throws NoAnswerFound when nothing
// matches. option_index answers require the option count for range checks.
std::string extract_answer(std::string_view reply, AnswerType type,
                           size_t option_count = 0);

// Normalization applied to every extracted answer before comparison:
// case-fold, trim, collapse whitespace, strip terminal punctuation, and for
// free_text additionally drop a leading article (a/an/the).
std::string normalize_answer(std::string_view raw, AnswerType type);

enum class ReplyExpectation { graph, verdict_or_graph, answer };

struct ParsedReply {
    std::optional<LabeledGraph> graph; // triples added / full re-emission
    std::vector<Triple> removed;       // deletion-marked lines
    Verdict verdict = Verdict::Unknown;
    std::string raw;
    std::vector<std::string> warnings; // graph-section lines no grammar accepted
};

ParsedReply parse_reply(std::string_view reply, ReplyExpectation expectation,
                        AnswerType type = AnswerType::free_text);

} // namespace rwg

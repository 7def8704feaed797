#pragma once
// Prompt templates and per-dataset task profiles. Template bodies live in
// resources/prompts/*.txt and are embedded at build time; rendering is pure
// slot substitution over {Context}, {Question} and {Relations}.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rwg/errors.hpp"
#include "rwg/parsing.hpp"

namespace rwg {

struct PromptTemplate {
    std::string name;
    std::string body;
};

using Bindings = std::map<std::string, std::string>;

// Exact substitution of bound slots; throws UnboundSlot if the body references
// a slot missing from bindings. Unreferenced bindings are ignored.
std::string render(const PromptTemplate& tmpl, const Bindings& bindings);

// Embedded template by resource name (e.g. "system", "logical_verify").
const PromptTemplate& builtin_template(std::string_view name);

enum class TaskFamily { logical, multihop };
enum class ProfileVariant { plain, relation, complete };

std::string_view variant_name(ProfileVariant v);

struct TaskProfile {
    std::string id;
    TaskFamily family = TaskFamily::logical;
    ProfileVariant variant = ProfileVariant::plain;
    PromptTemplate system_prompt;
    PromptTemplate initial_prompt;
    PromptTemplate verify_prompt;
    PromptTemplate answer_prompt;
    AnswerType answer_type = AnswerType::free_text;
    std::string metric;
    std::vector<std::string> relation_vocabulary;
    bool bidirectional = false;     // emit both edge directions (clutrr)
    bool paragraph_prefix = false;  // join context as "Paragraph i: ..."
};

// Throws UnknownDataset for unrecognized ids and UnsupportedVariant when the
// dataset has no relation vocabulary (relation) or no completion hook
// (complete).
TaskProfile profile_for(std::string_view dataset, ProfileVariant variant = ProfileVariant::plain);

std::vector<std::string> known_datasets();

} // namespace rwg

#include "rwg/prompts.hpp"

#include <algorithm>
#include <array>

#include "prompt_resources.gen.h"

namespace rwg {

namespace {

constexpr std::array<std::string_view, 3> kSlots = {"Context", "Question", "Relations"};

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

PromptTemplate with_relation_clause(PromptTemplate tmpl,
                                    const std::vector<std::string>& vocabulary) {
    PromptTemplate clause = builtin_template("relation_clause");
    tmpl.body += "\n";
    tmpl.body += render(clause, {{"Relations", join(vocabulary, ", ")}});
    return tmpl;
}

} // namespace

std::string render(const PromptTemplate& tmpl, const Bindings& bindings) {
    std::string out = tmpl.body;
    for (std::string_view slot : kSlots) {
        std::string token = "{" + std::string(slot) + "}";
        size_t pos = out.find(token);
        if (pos == std::string::npos) continue;
        auto it = bindings.find(std::string(slot));
        if (it == bindings.end())
            throw UnboundSlot("template '" + tmpl.name + "' references unbound slot " + token);
        while (pos != std::string::npos) {
            out.replace(pos, token.size(), it->second);
            pos = out.find(token, pos + it->second.size());
        }
    }
    return out;
}

const PromptTemplate& builtin_template(std::string_view name) {
    static const std::vector<PromptTemplate> all = [] {
        std::vector<PromptTemplate> v;
        for (const auto& [n, body] : detail::kPromptResources)
            v.push_back(PromptTemplate{std::string(n), std::string(body)});
        return v;
    }();
    for (const PromptTemplate& t : all) {
        if (t.name == name) return t;
    }
    throw Error("no such prompt template: " + std::string(name));
}

std::string_view variant_name(ProfileVariant v) {
    switch (v) {
    case ProfileVariant::plain: return "plain";
    case ProfileVariant::relation: return "relation";
    default: return "complete";
    }
}

std::vector<std::string> known_datasets() {
    return {"aiw", "aiw_plus", "logiqa", "ar_lsat", "hotpot", "musique", "2wiki", "clutrr"};
}

TaskProfile profile_for(std::string_view dataset, ProfileVariant variant) {
    TaskProfile p;
    p.id = std::string(dataset);
    p.variant = variant;
    p.system_prompt = builtin_template("system");

    if (dataset == "aiw" || dataset == "aiw_plus") {
        p.family = TaskFamily::logical;
        p.initial_prompt = builtin_template("logical_initial");
        p.verify_prompt = builtin_template("logical_verify");
        p.answer_prompt = builtin_template("logical_answer");
        p.answer_type = AnswerType::integer;
        p.metric = "accuracy_exact";
        if (dataset == "aiw")
            p.relation_vocabulary = {"brother-brother", "brother-sister", "sister-sister"};
    } else if (dataset == "logiqa" || dataset == "ar_lsat") {
        p.family = TaskFamily::logical;
        p.initial_prompt = builtin_template("logical_initial");
        p.verify_prompt = builtin_template("logical_verify");
        p.answer_prompt = builtin_template("logical_answer");
        p.answer_type = AnswerType::option_index;
        p.metric = "accuracy_option";
    } else if (dataset == "hotpot" || dataset == "musique" || dataset == "2wiki") {
        p.family = TaskFamily::multihop;
        p.initial_prompt = builtin_template("multihop_initial");
        p.verify_prompt = builtin_template("multihop_verify");
        p.answer_prompt = builtin_template("multihop_answer");
        p.answer_type = AnswerType::free_text;
        p.metric = "accuracy_exact";
        p.paragraph_prefix = true;
    } else if (dataset == "clutrr") {
        p.family = TaskFamily::multihop;
        p.initial_prompt = builtin_template("clutrr_initial");
        p.verify_prompt = builtin_template("clutrr_verify");
        p.answer_prompt = builtin_template("multihop_answer");
        p.answer_type = AnswerType::relation_label;
        p.metric = "accuracy_exact";
        p.bidirectional = true;
    } else {
        throw UnknownDataset("unknown dataset id: " + std::string(dataset));
    }

    if (variant == ProfileVariant::relation) {
        if (p.relation_vocabulary.empty())
            throw UnsupportedVariant("dataset '" + p.id + "' has no relation vocabulary");
        p.initial_prompt = with_relation_clause(p.initial_prompt, p.relation_vocabulary);
        p.verify_prompt = with_relation_clause(p.verify_prompt, p.relation_vocabulary);
    } else if (variant == ProfileVariant::complete) {
        if (dataset != "aiw_plus")
            throw UnsupportedVariant("complete variant only exists for aiw_plus");
    }
    return p;
}

} // namespace rwg

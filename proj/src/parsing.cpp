#include "rwg/parsing.hpp"

#include <regex>

#include "rwg/text.hpp"

namespace rwg {

namespace {

using text::trim;

constexpr std::string_view kGraphMarker = "[latest graph]";
constexpr std::string_view kYesMarker = "[yes]";
constexpr std::string_view kNoMarker = "[no]";

bool line_has_terminal_marker(std::string_view line) {
    return text::contains_ci(line, kYesMarker) || text::contains_ci(line, kNoMarker);
}

// Strips "- ", "* ", "• " bullets and "12. " / "12) " numbering.
std::string_view strip_bullet(std::string_view s) {
    if (s.size() >= 2 && (s[0] == '-' || s[0] == '*') && s[1] == ' ') return s.substr(2);
    size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > 0 && i + 1 < s.size() && (s[i] == '.' || s[i] == ')') && s[i + 1] == ' ')
        return s.substr(i + 2);
    return s;
}

// True when the '(' at position 0 closes exactly at the final character.
bool outer_parens_balanced(std::string_view s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') {
            --depth;
            if (depth == 0) return i + 1 == s.size();
        }
    }
    return false;
}

std::string strip_wrapping(std::string_view s, char open, char close) {
    std::string t = trim(s);
    if (t.size() >= 2 && t.front() == open && t.back() == close) {
        if (open != '(' || outer_parens_balanced(t)) return trim(std::string_view(t).substr(1, t.size() - 2));
    }
    return t;
}

std::string strip_entity_decoration(std::string_view s) {
    std::string t = strip_wrapping(s, '(', ')');
    t = strip_wrapping(t, '[', ']');
    return t;
}

struct DelStrip {
    std::string body;
    bool deletion = false;
};

DelStrip strip_deletion_markup(std::string_view line) {
    std::string s = trim(line);
    std::string lower = text::to_lower(s);

    if (lower.rfind("delete:", 0) == 0) return {trim(std::string_view(s).substr(7)), true};
    for (std::string_view macro : {"\\st{", "\\sout{"}) {
        if (lower.rfind(std::string(macro), 0) == 0 && s.back() == '}')
            return {trim(std::string_view(s).substr(macro.size(), s.size() - macro.size() - 1)), true};
    }
    if (s.rfind("~~", 0) == 0) {
        std::string_view rest = std::string_view(s).substr(2);
        if (rest.size() >= 2 && rest.substr(rest.size() - 2) == "~~")
            rest = rest.substr(0, rest.size() - 2);
        return {trim(rest), true};
    }
    return {std::move(s), false};
}

// Splits a trailing "[note]" off the line if one is present.
std::pair<std::string, std::string> split_trailing_annotation(std::string_view line) {
    std::string s = trim(line);
    if (s.size() < 3 || s.back() != ']') return {s, ""};
    size_t open = s.rfind(" [");
    if (open == std::string::npos || open == 0) return {s, ""};
    std::string ann = trim(std::string_view(s).substr(open + 2, s.size() - open - 3));
    std::string body = trim(std::string_view(s).substr(0, open));
    if (body.empty()) return {s, ""};
    return {body, ann};
}

std::optional<Triple> try_paren_list(std::string_view body, const std::string& annotation) {
    std::string s = trim(body);
    if (!outer_parens_balanced(s)) return std::nullopt;
    std::string inner = trim(std::string_view(s).substr(1, s.size() - 2));
    size_t c1 = inner.find(',');
    if (c1 == std::string::npos) return std::nullopt;
    size_t c2 = inner.find(',', c1 + 1);
    if (c2 == std::string::npos) return std::nullopt;
    std::string head = strip_entity_decoration(std::string_view(inner).substr(0, c1));
    std::string rel = trim(std::string_view(inner).substr(c1 + 1, c2 - c1 - 1));
    std::string tail = strip_entity_decoration(std::string_view(inner).substr(c2 + 1));
    if (head.empty() || rel.empty() || tail.empty()) return std::nullopt;
    return Triple(Entity(head), rel, Entity(tail), annotation);
}

std::optional<Triple> try_arrow(std::string_view body, const std::string& annotation) {
    static const std::regex arrow(R"(^(.*?)--\s*\[?([^\[\]]+?)\]?\s*-->(.*)$)");
    std::smatch m;
    std::string s = trim(body);
    if (!std::regex_match(s, m, arrow)) return std::nullopt;
    std::string head = strip_entity_decoration(m[1].str());
    std::string rel = trim(m[2].str());
    std::string tail = strip_entity_decoration(m[3].str());
    if (head.empty() || rel.empty() || tail.empty()) return std::nullopt;
    return Triple(Entity(head), rel, Entity(tail), annotation);
}

std::optional<Triple> try_bare_pair(std::string_view body, const std::string& annotation) {
    std::string s = trim(body);
    size_t sep = s.find(" -- ");
    if (sep == std::string::npos) return std::nullopt;
    std::string head = strip_entity_decoration(std::string_view(s).substr(0, sep));
    std::string tail = strip_entity_decoration(std::string_view(s).substr(sep + 4));
    if (head.empty() || tail.empty()) return std::nullopt;
    return Triple(Entity(head), std::string(kUnlabeledRelation), Entity(tail), annotation);
}

// Standalone integers: maximal digit runs not embedded in words or decimals.
std::vector<std::string> standalone_integers(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    auto alnum = [&](size_t pos) {
        return pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) != 0);
    };
    while (i < s.size()) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        bool embedded = (start > 0 && alnum(start - 1)) || alnum(i);
        bool decimal = (i < s.size() && s[i] == '.' && alnum(i + 1) &&
                        std::isdigit(static_cast<unsigned char>(s[i + 1]))) ||
                       (start >= 2 && s[start - 1] == '.' &&
                        std::isdigit(static_cast<unsigned char>(s[start - 2])));
        if (decimal) {
            // Skip the fractional part so its digits do not count either.
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            }
            continue;
        }
        if (!embedded) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

std::vector<std::string> last_nonblank_lines(std::string_view s, size_t n) {
    std::vector<std::string> all = text::split_lines(s);
    std::vector<std::string> out;
    for (auto it = all.rbegin(); it != all.rend() && out.size() < n; ++it) {
        if (!trim(*it).empty()) out.push_back(*it);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string extract_integer_answer(std::string_view reply) {
    std::string window;
    for (const std::string& line : last_nonblank_lines(reply, 3)) {
        window += line;
        window += '\n';
    }
    std::vector<std::string> ints = standalone_integers(window);
    if (ints.empty()) ints = standalone_integers(reply);
    if (ints.empty()) throw NoAnswerFound("no integer found in reply");
    return ints.back();
}

std::string extract_option_answer(std::string_view reply, size_t option_count) {
    std::string s(reply);
    struct Hit {
        size_t pos;
        size_t index;
    };
    std::vector<Hit> hits;
    auto consider = [&](size_t pos, const std::string& digits) {
        if (digits.size() > 6) return; // cannot be an option index
        size_t k = std::stoul(digits);
        if (k < option_count) hits.push_back({pos, k});
    };

    static const std::regex option_word(R"(option\s+(\d+))", std::regex::icase);
    static const std::regex parenthesized(R"(\((\d+)\))");
    for (auto it = std::sregex_iterator(s.begin(), s.end(), option_word);
         it != std::sregex_iterator(); ++it)
        consider(static_cast<size_t>(it->position(0)), (*it)[1].str());
    for (auto it = std::sregex_iterator(s.begin(), s.end(), parenthesized);
         it != std::sregex_iterator(); ++it)
        consider(static_cast<size_t>(it->position(0)), (*it)[1].str());

    static const std::regex leading_number(R"(^\s*(\d+)\.)");
    size_t offset = 0;
    for (const std::string& line : text::split_lines(s)) {
        std::smatch m;
        if (std::regex_search(line, m, leading_number))
            consider(offset + static_cast<size_t>(m.position(1)), m[1].str());
        offset += line.size() + 1;
    }

    if (hits.empty()) throw NoAnswerFound("no option index found in reply");
    const Hit* best = &hits.front();
    for (const Hit& h : hits) {
        if (h.pos >= best->pos) best = &h;
    }
    return std::to_string(best->index);
}

std::string extract_text_answer(std::string_view reply) {
    size_t marker = text::rfind_ci(reply, "answer:");
    std::string raw;
    if (marker != std::string_view::npos) {
        raw = trim(reply.substr(marker + 7));
        // Keep only the first line after the marker.
        size_t nl = raw.find('\n');
        if (nl != std::string::npos) raw = trim(std::string_view(raw).substr(0, nl));
    }
    if (raw.empty()) {
        std::vector<std::string> last = last_nonblank_lines(reply, 1);
        if (!last.empty()) raw = trim(last.front());
    }
    if (raw.empty()) throw NoAnswerFound("no answer text found in reply");
    return raw;
}

} // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "unknown";
    }
}

std::optional<std::vector<std::string>> extract_latest_graph(std::string_view reply) {
    size_t marker = text::rfind_ci(reply, kGraphMarker);
    if (marker == std::string_view::npos) return std::nullopt;

    std::string_view rest = reply.substr(marker + kGraphMarker.size());
    std::vector<std::string> lines = text::split_lines(rest);
    if (!lines.empty()) {
        // The marker line may continue with ":" or a first triple.
        std::string first = trim(lines.front());
        if (!first.empty() && first.front() == ':') first = trim(std::string_view(first).substr(1));
        lines.front() = first;
    }

    std::vector<std::string> out;
    for (const std::string& line : lines) {
        if (line_has_terminal_marker(line)) break;
        std::string t = trim(line);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

std::optional<ParsedTripleLine> parse_triple_line(std::string_view line) {
    DelStrip del = strip_deletion_markup(line);
    std::string_view stripped = strip_bullet(del.body);
    auto [body, annotation] = split_trailing_annotation(stripped);
    if (body.empty()) return std::nullopt;

    std::optional<Triple> t = try_paren_list(body, annotation);
    if (!t) t = try_arrow(body, annotation);
    if (!t) t = try_bare_pair(body, annotation);
    if (!t) return std::nullopt;
    return ParsedTripleLine{std::move(*t), del.deletion};
}

Verdict detect_verdict(std::string_view reply) {
    size_t yes = text::rfind_ci(reply, kYesMarker);
    size_t no = text::rfind_ci(reply, kNoMarker);
    if (yes == std::string_view::npos && no == std::string_view::npos) return Verdict::Unknown;
    if (yes == std::string_view::npos) return Verdict::Fail;
    if (no == std::string_view::npos) return Verdict::Pass;
    return yes > no ? Verdict::Pass : Verdict::Fail;
}

std::string normalize_answer(std::string_view raw, AnswerType type) {
    std::string s = text::collapse_ws(text::to_lower(raw));
    while (!s.empty() && (s.back() == '.' || s.back() == ',' || s.back() == '!' ||
                          s.back() == '?' || s.back() == ';' || s.back() == ':'))
        s.pop_back();
    s = trim(s);
    if (type == AnswerType::free_text) {
        for (std::string_view article : {"a ", "an ", "the "}) {
            if (s.rfind(article, 0) == 0) {
                s = s.substr(article.size());
                break;
            }
        }
    }
    return s;
}

std::string extract_answer(std::string_view reply, AnswerType type, size_t option_count) {
    switch (type) {
    case AnswerType::integer: return extract_integer_answer(reply);
    case AnswerType::option_index:
        if (option_count == 0) throw NoAnswerFound("option answer requested with no options");
        return extract_option_answer(reply, option_count);
    case AnswerType::free_text:
    case AnswerType::relation_label: return extract_text_answer(reply);
    }
    throw NoAnswerFound("unhandled answer type");
}

ParsedReply parse_reply(std::string_view reply, ReplyExpectation expectation, AnswerType) {
    if (trim(reply).empty()) throw EmptyReply("reply is empty");

    ParsedReply out;
    out.raw = std::string(reply);
    out.verdict = detect_verdict(reply);

    if (expectation == ReplyExpectation::graph ||
        expectation == ReplyExpectation::verdict_or_graph) {
        std::optional<std::vector<std::string>> lines = extract_latest_graph(reply);
        if (lines) {
            LabeledGraph g;
            for (const std::string& line : *lines) {
                std::optional<ParsedTripleLine> parsed = parse_triple_line(line);
                if (!parsed) {
                    out.warnings.push_back("unparseable graph line: " + line);
                    continue;
                }
                if (parsed->deletion)
                    out.removed.push_back(parsed->triple);
                else
                    g = g.with(parsed->triple);
            }
            out.graph = std::move(g);
        }
    }
    return out;
}

} // namespace rwg

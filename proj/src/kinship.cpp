#include "rwg/kinship.hpp"

#include <algorithm>

#include "rwg/text.hpp"

namespace rwg::kinship {

namespace {

void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

} // namespace

std::string_view gender_name(Gender g) {
    switch (g) {
    case Gender::female: return "female";
    case Gender::male: return "male";
    default: return "unknown";
    }
}

Gender gender_from(std::string_view name) {
    std::string n = text::to_lower(text::trim(name));
    if (n == "female" || n == "f") return Gender::female;
    if (n == "male" || n == "m") return Gender::male;
    if (n == "unknown" || n.empty()) return Gender::unknown;
    throw Error("unknown gender: " + n);
}

int FamilyModel::add_person(std::string id, Gender gender) {
    if (id.empty()) throw Error("person id must be non-empty");
    if (has_person(id)) throw Error("duplicate person id: " + id);
    ids_.push_back(std::move(id));
    genders_.push_back(gender);
    parents_.emplace_back();
    children_.emplace_back();
    spouses_.emplace_back();
    return static_cast<int>(ids_.size()) - 1;
}

int FamilyModel::index_of(const std::string& id) const {
    for (size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i] == id) return static_cast<int>(i);
    }
    return -1;
}

int FamilyModel::require(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw UnknownPerson("no such person: " + id);
    return i;
}

bool FamilyModel::is_ancestor(int maybe_ancestor, int of) const {
    for (int p : parents(of)) {
        if (p == maybe_ancestor || is_ancestor(maybe_ancestor, p)) return true;
    }
    return false;
}

void FamilyModel::add_parent_edge(int parent, int child) {
    if (parent == child) throw Error("person cannot parent itself");
    auto& ps = parents_[static_cast<size_t>(child)];
    if (contains(ps, parent)) return;
    if (ps.size() >= 2) throw Error("child already has two parents: " + id_of(child));
    if (is_ancestor(child, parent)) throw Error("parent edge would create a cycle");
    ps.push_back(parent);
    children_[static_cast<size_t>(parent)].push_back(child);
}

void FamilyModel::add_parent_edge(const std::string& parent, const std::string& child) {
    add_parent_edge(require(parent), require(child));
}

void FamilyModel::add_spouse_edge(const std::string& a, const std::string& b) {
    int ia = require(a), ib = require(b);
    if (ia == ib) throw Error("person cannot marry itself");
    if (!contains(spouses_[static_cast<size_t>(ia)], ib)) {
        spouses_[static_cast<size_t>(ia)].push_back(ib);
        spouses_[static_cast<size_t>(ib)].push_back(ia);
    }
}

void FamilyModel::set_gender(int i, Gender g) {
    Gender& cur = genders_[static_cast<size_t>(i)];
    if (cur == g) return;
    if (cur != Gender::unknown)
        throw Error("gender conflict for " + id_of(i));
    cur = g;
}

std::vector<int> FamilyModel::siblings(int i) const {
    std::vector<int> out;
    for (int p : parents(i)) {
        for (int c : children(p)) {
            if (c != i) out.push_back(c);
        }
    }
    sort_unique(out);
    return out;
}

void FamilyModel::pop_person() {
    int idx = static_cast<int>(ids_.size()) - 1;
    if (idx < 0) throw Error("no person to pop");
    if (!children_[static_cast<size_t>(idx)].empty() ||
        !spouses_[static_cast<size_t>(idx)].empty())
        throw Error("can only pop childless, spouseless persons");
    for (int p : parents_[static_cast<size_t>(idx)]) {
        auto& cs = children_[static_cast<size_t>(p)];
        cs.erase(std::remove(cs.begin(), cs.end(), idx), cs.end());
    }
    ids_.pop_back();
    genders_.pop_back();
    parents_.pop_back();
    children_.pop_back();
    spouses_.pop_back();
}

namespace {

std::optional<std::string> gendered(const FamilyModel& m, int person, std::string_view female,
                                    std::string_view male) {
    switch (m.gender_of(person)) {
    case Gender::female: return std::string(female);
    case Gender::male: return std::string(male);
    default: return std::nullopt;
    }
}

std::vector<int> blood_sibling_children(const FamilyModel& m, int i) {
    std::vector<int> out;
    for (int s : m.siblings(i)) {
        for (int c : m.children(s)) out.push_back(c);
    }
    sort_unique(out);
    return out;
}

std::vector<int> parents_siblings(const FamilyModel& m, int i) {
    std::vector<int> out;
    for (int p : m.parents(i)) {
        for (int s : m.siblings(p)) out.push_back(s);
    }
    sort_unique(out);
    return out;
}

std::vector<int> cousin_set(const FamilyModel& m, int i) {
    std::vector<int> out;
    for (int s : parents_siblings(m, i)) {
        for (int c : m.children(s)) out.push_back(c);
    }
    sort_unique(out);
    return out;
}

} // namespace

std::optional<std::string> derived_relation(const FamilyModel& model, const std::string& a,
                                            const std::string& b) {
    int ia = model.require(a), ib = model.require(b);
    if (ia == ib) throw Error("derived_relation requires two distinct persons");

    if (contains(model.parents(ia), ib)) return gendered(model, ib, "mother", "father");
    if (contains(model.children(ia), ib)) return gendered(model, ib, "daughter", "son");
    if (contains(model.siblings(ia), ib)) return gendered(model, ib, "sister", "brother");

    for (int p : model.parents(ia)) {
        if (contains(model.parents(p), ib)) return gendered(model, ib, "grandmother", "grandfather");
    }
    for (int c : model.children(ia)) {
        if (contains(model.children(c), ib)) return gendered(model, ib, "granddaughter", "grandson");
    }
    if (contains(model.spouses(ia), ib)) return gendered(model, ib, "wife", "husband");

    std::vector<int> ps = parents_siblings(model, ia);
    if (contains(ps, ib)) return gendered(model, ib, "aunt", "uncle");
    for (int s : ps) {
        if (contains(model.spouses(s), ib)) return gendered(model, ib, "aunt", "uncle");
    }
    if (contains(blood_sibling_children(model, ia), ib))
        return gendered(model, ib, "niece", "nephew");
    if (contains(cousin_set(model, ia), ib)) return std::string("cousin");

    for (int sp : model.spouses(ia)) {
        if (contains(model.parents(sp), ib))
            return gendered(model, ib, "mother-in-law", "father-in-law");
    }
    for (int c : model.children(ia)) {
        if (contains(model.spouses(c), ib))
            return gendered(model, ib, "daughter-in-law", "son-in-law");
    }
    for (int sp : model.spouses(ia)) {
        if (contains(model.siblings(sp), ib))
            return gendered(model, ib, "sister-in-law", "brother-in-law");
    }
    for (int s : model.siblings(ia)) {
        if (contains(model.spouses(s), ib))
            return gendered(model, ib, "sister-in-law", "brother-in-law");
    }
    return std::nullopt;
}

std::string_view count_relation_name(CountRelation r) {
    switch (r) {
    case CountRelation::sisters: return "sisters";
    case CountRelation::brothers: return "brothers";
    case CountRelation::children: return "children";
    case CountRelation::nephews_nieces: return "nephews_nieces";
    case CountRelation::cousins: return "cousins";
    case CountRelation::sons: return "sons";
    default: return "daughters";
    }
}

CountRelation count_relation_from(std::string_view name) {
    std::string n = text::to_lower(text::trim(name));
    for (CountRelation r :
         {CountRelation::sisters, CountRelation::brothers, CountRelation::children,
          CountRelation::nephews_nieces, CountRelation::cousins, CountRelation::sons,
          CountRelation::daughters}) {
        if (n == count_relation_name(r)) return r;
    }
    throw UnknownRelation("unknown count relation: " + n);
}

int count_relation(const FamilyModel& model, int subject, CountRelation relation) {
    auto count_gender = [&](const std::vector<int>& v, Gender g) {
        int n = 0;
        for (int i : v) {
            if (model.gender_of(i) == g) ++n;
        }
        return n;
    };
    switch (relation) {
    case CountRelation::sisters: return count_gender(model.siblings(subject), Gender::female);
    case CountRelation::brothers: return count_gender(model.siblings(subject), Gender::male);
    case CountRelation::children: return static_cast<int>(model.children(subject).size());
    case CountRelation::sons: return count_gender(model.children(subject), Gender::male);
    case CountRelation::daughters: return count_gender(model.children(subject), Gender::female);
    case CountRelation::nephews_nieces:
        return static_cast<int>(blood_sibling_children(model, subject).size());
    case CountRelation::cousins: return static_cast<int>(cousin_set(model, subject).size());
    }
    throw UnknownRelation("unhandled count relation");
}

int count_relation(const FamilyModel& model, const std::string& subject, CountRelation relation) {
    return count_relation(model, model.require(subject), relation);
}

std::vector<Violation> check_constraints(const FamilyModel& model,
                                         const std::vector<CountConstraint>& constraints) {
    std::vector<Violation> out;
    for (const CountConstraint& c : constraints) {
        int idx = model.index_of(c.subject);
        if (idx < 0) {
            out.push_back({c, -1});
            continue;
        }
        int actual = count_relation(model, idx, c.relation);
        if (actual != c.count) out.push_back({c, actual});
    }
    return out;
}

std::set<int> query_answers(const FamilyModel& model, const OracleQuery& query) {
    std::set<int> out;
    if (query.role.empty()) {
        int idx = model.index_of(query.subject_id);
        if (idx >= 0) out.insert(count_relation(model, idx, query.relation));
        return out;
    }
    int anchor = model.require(query.role_of);
    Gender wanted = query.role == "brother" ? Gender::male : Gender::female;
    if (query.role != "brother" && query.role != "sister")
        throw UnknownRelation("unsupported role: " + query.role);
    for (int s : model.siblings(anchor)) {
        if (model.gender_of(s) == wanted) out.insert(count_relation(model, s, query.relation));
    }
    return out;
}

OracleAnswer answer_query(const EnumerationResult& result, const OracleQuery& query) {
    OracleAnswer out;
    out.completions = result.completions.size();
    out.added_persons = result.added_persons;
    for (const FamilyModel& m : result.completions) {
        std::set<int> a = query_answers(m, query);
        out.answers.insert(a.begin(), a.end());
    }
    out.unique = out.answers.size() == 1;
    return out;
}

// --- graph import ---

namespace {

struct LabelRule {
    enum class Kind { parent_of, child_of, spouse, sibling, ignore } kind;
    Gender head_gender = Gender::unknown;
};

std::optional<LabelRule> lookup_label(std::string_view relation) {
    std::string r = text::to_lower(text::collapse_ws(relation));
    for (std::string_view prefix : {"is the ", "is ", "the "}) {
        if (r.rfind(prefix, 0) == 0) r = r.substr(prefix.size());
    }
    if (r.size() > 3 && r.rfind(" of") == r.size() - 3) r = r.substr(0, r.size() - 3);
    r = text::trim(r);

    using K = LabelRule::Kind;
    if (r == "mother") return LabelRule{K::parent_of, Gender::female};
    if (r == "father") return LabelRule{K::parent_of, Gender::male};
    if (r == "parent") return LabelRule{K::parent_of, Gender::unknown};
    if (r == "son") return LabelRule{K::child_of, Gender::male};
    if (r == "daughter") return LabelRule{K::child_of, Gender::female};
    if (r == "child") return LabelRule{K::child_of, Gender::unknown};
    if (r == "wife") return LabelRule{K::spouse, Gender::female};
    if (r == "husband") return LabelRule{K::spouse, Gender::male};
    if (r == "spouse" || r == "married to" || r == "married") return LabelRule{K::spouse, Gender::unknown};
    if (r == "sister") return LabelRule{K::sibling, Gender::female};
    if (r == "brother") return LabelRule{K::sibling, Gender::male};
    if (r == "sibling") return LabelRule{K::sibling, Gender::unknown};
    if (r == kUnlabeledRelation) return LabelRule{K::ignore, Gender::unknown};
    return std::nullopt;
}

class Importer {
public:
    GraphImport run(const LabeledGraph& g) {
        for (const Triple& t : g.triples()) {
            std::optional<LabelRule> rule = lookup_label(t.relation);
            std::string shown = "(" + t.head.name + ", " + t.relation + ", " + t.tail.name + ")";
            if (!rule) {
                out_.unmapped.push_back(shown);
                continue;
            }
            apply(*rule, t, shown);
        }
        return std::move(out_);
    }

private:
    int person(const Entity& e, Gender g, const std::string& shown) {
        int idx = out_.model.index_of(e.key);
        if (idx < 0) return out_.model.add_person(e.key, g);
        if (g != Gender::unknown) {
            try {
                out_.model.set_gender(idx, g);
            } catch (const Error&) {
                out_.conflicts.push_back("gender conflict for " + e.name + " at " + shown);
            }
        }
        return idx;
    }

    void safe_parent_edge(int parent, int child, const std::string& shown) {
        try {
            out_.model.add_parent_edge(parent, child);
        } catch (const Error& e) {
            out_.conflicts.push_back(std::string(e.what()) + " at " + shown);
        }
    }

    void apply(const LabelRule& rule, const Triple& t, const std::string& shown) {
        using K = LabelRule::Kind;
        if (rule.kind == K::ignore) return;
        int head = person(t.head, rule.head_gender, shown);
        int tail = person(t.tail, Gender::unknown, shown);
        switch (rule.kind) {
        case K::parent_of: safe_parent_edge(head, tail, shown); break;
        case K::child_of: safe_parent_edge(tail, head, shown); break;
        case K::spouse:
            out_.model.add_spouse_edge(out_.model.id_of(head), out_.model.id_of(tail));
            break;
        case K::sibling: link_siblings(head, tail, shown); break;
        case K::ignore: break;
        }
    }

    void link_siblings(int head, int tail, const std::string& shown) {
        // Siblings share a parent; reuse one if either side has one, otherwise
        // create a latent parent for the pair.
        if (!out_.model.parents(tail).empty()) {
            safe_parent_edge(out_.model.parents(tail)[0], head, shown);
            return;
        }
        if (!out_.model.parents(head).empty()) {
            safe_parent_edge(out_.model.parents(head)[0], tail, shown);
            return;
        }
        int latent = out_.model.add_person(
            "_parent(" + out_.model.id_of(head) + "," + out_.model.id_of(tail) + ")",
            Gender::unknown);
        safe_parent_edge(latent, head, shown);
        safe_parent_edge(latent, tail, shown);
    }

    GraphImport out_;
};

} // namespace

GraphImport graph_to_family(const LabeledGraph& g) { return Importer().run(g); }

// --- canned puzzles ---

FamilyModel aiw_seed(int brothers, int sisters) {
    FamilyModel m;
    m.add_person("alice", Gender::female);
    m.add_person("mother", Gender::female);
    m.add_person("father", Gender::male);
    m.add_parent_edge("mother", "alice");
    m.add_parent_edge("father", "alice");
    for (int i = 1; i <= brothers; ++i) {
        std::string id = "brother" + std::to_string(i);
        m.add_person(id, Gender::male);
        m.add_parent_edge("mother", id);
        m.add_parent_edge("father", id);
    }
    for (int i = 1; i <= sisters; ++i) {
        std::string id = "sister" + std::to_string(i);
        m.add_person(id, Gender::female);
        m.add_parent_edge("mother", id);
        m.add_parent_edge("father", id);
    }
    return m;
}

Puzzle aiw_puzzle(int brothers, int sisters, CountRelation relation, std::string role) {
    Puzzle p;
    p.seed = aiw_seed(brothers, sisters);
    p.constraints = {{"alice", CountRelation::brothers, brothers},
                     {"alice", CountRelation::sisters, sisters},
                     {"mother", CountRelation::children, brothers + sisters + 1},
                     {"father", CountRelation::children, brothers + sisters + 1}};
    p.query = OracleQuery{relation, "", std::move(role), "alice"};
    return p;
}

Puzzle aiw_plus_puzzle() {
    Puzzle p;
    FamilyModel& m = p.seed;
    m.add_person("alice", Gender::female);
    m.add_person("sister1", Gender::female);
    m.add_person("sister2", Gender::female);
    m.add_person("sister3", Gender::female);
    m.add_person("mother", Gender::female);
    m.add_person("father", Gender::male);
    m.add_person("maternal_aunt", Gender::female);
    m.add_person("maternal_uncle1", Gender::male);
    m.add_person("maternal_uncle2", Gender::male);
    m.add_person("paternal_uncle", Gender::male);
    m.add_person("paternal_uncle_son", Gender::male);
    m.add_person("maternal_grandparent", Gender::unknown);
    m.add_person("paternal_grandparent", Gender::unknown);
    for (const char* child : {"alice", "sister1", "sister2", "sister3"}) {
        m.add_parent_edge("mother", child);
        m.add_parent_edge("father", child);
    }
    for (const char* child : {"mother", "maternal_aunt", "maternal_uncle1", "maternal_uncle2"})
        m.add_parent_edge("maternal_grandparent", child);
    for (const char* child : {"father", "paternal_uncle"})
        m.add_parent_edge("paternal_grandparent", child);
    m.add_parent_edge("paternal_uncle", "paternal_uncle_son");

    p.constraints = {
        {"alice", CountRelation::sisters, 3},
        {"mother", CountRelation::sisters, 1},
        {"maternal_aunt", CountRelation::children, 0},
        {"maternal_aunt", CountRelation::nephews_nieces, 7},
        {"maternal_aunt", CountRelation::brothers, 2},
        {"paternal_uncle", CountRelation::nephews_nieces, 5},
        {"paternal_uncle", CountRelation::sons, 1},
        // "Alice's parents do not have any other children."
        {"mother", CountRelation::children, 4},
        {"father", CountRelation::children, 4},
    };
    p.query = OracleQuery{CountRelation::cousins, "", "sister", "alice"};
    return p;
}

FamilyModel aiw_plus_complete_model() {
    FamilyModel m = aiw_plus_puzzle().seed;
    m.add_person("maternal_cousin1", Gender::male);
    m.add_parent_edge("maternal_uncle1", "maternal_cousin1");
    m.add_person("maternal_cousin2", Gender::male);
    m.add_person("maternal_cousin3", Gender::male);
    m.add_parent_edge("maternal_uncle2", "maternal_cousin2");
    m.add_parent_edge("maternal_uncle2", "maternal_cousin3");
    m.add_person("paternal_uncle2", Gender::male);
    m.add_parent_edge("paternal_grandparent", "paternal_uncle2");
    m.add_person("paternal_cousin2", Gender::male);
    m.add_parent_edge("paternal_uncle2", "paternal_cousin2");
    return m;
}

// --- JSON ---

nlohmann::json family_to_json(const FamilyModel& model) {
    nlohmann::json persons = nlohmann::json::array();
    nlohmann::json parent_edges = nlohmann::json::array();
    nlohmann::json spouse_edges = nlohmann::json::array();
    for (size_t i = 0; i < model.person_count(); ++i) {
        int idx = static_cast<int>(i);
        persons.push_back({{"id", model.id_of(idx)},
                           {"gender", std::string(gender_name(model.gender_of(idx)))}});
        for (int c : model.children(idx))
            parent_edges.push_back({model.id_of(idx), model.id_of(c)});
        for (int s : model.spouses(idx)) {
            if (idx < s) spouse_edges.push_back({model.id_of(idx), model.id_of(s)});
        }
    }
    return {{"persons", persons}, {"parent_edges", parent_edges}, {"spouse_edges", spouse_edges}};
}

FamilyModel family_from_json(const nlohmann::json& j) {
    FamilyModel m;
    if (!j.contains("persons") || !j["persons"].is_array())
        throw ParseError("family JSON needs a persons array");
    for (const auto& p : j["persons"]) {
        std::string gender = p.value("gender", std::string("unknown"));
        m.add_person(p.at("id").get<std::string>(), gender_from(gender));
    }
    for (const auto& e : j.value("parent_edges", nlohmann::json::array()))
        m.add_parent_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    for (const auto& e : j.value("spouse_edges", nlohmann::json::array()))
        m.add_spouse_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    return m;
}

Puzzle puzzle_from_json(const nlohmann::json& j) {
    Puzzle p;
    p.seed = family_from_json(j);
    for (const auto& c : j.value("constraints", nlohmann::json::array())) {
        p.constraints.push_back({c.at("subject").get<std::string>(),
                                 count_relation_from(c.at("relation").get<std::string>()),
                                 c.at("count").get<int>()});
    }
    if (j.contains("query")) {
        const auto& q = j["query"];
        p.query.relation = count_relation_from(q.at("relation").get<std::string>());
        if (q.contains("role")) {
            p.query.role = q["role"].get<std::string>();
            p.query.role_of = q.at("of").get<std::string>();
        } else {
            p.query.subject_id = q.at("subject").get<std::string>();
        }
    }
    if (j.contains("bounds")) {
        const auto& b = j["bounds"];
        p.bounds.max_added_persons = b.value("max_added_persons", p.bounds.max_added_persons);
        p.bounds.max_children_per_person =
            b.value("max_children_per_person", p.bounds.max_children_per_person);
        p.bounds.max_states = b.value("max_states", p.bounds.max_states);
    }
    return p;
}

} // namespace rwg::kinship

#include "rwg/graph.hpp"

#include <deque>

#include "rwg/text.hpp"

namespace rwg {

namespace {
constexpr char kSep = '\x1f';
} // namespace

Entity::Entity(std::string_view display) : name(text::trim(display)) {
    if (name.empty()) throw Error("entity name must be non-empty");
    key = text::to_lower(text::collapse_ws(name));
}

Triple::Triple(Entity h, std::string r, Entity t, std::string ann)
    : head(std::move(h)), relation(std::move(r)), tail(std::move(t)),
      annotation(std::move(ann)) {
    if (relation.empty()) relation = std::string(kUnlabeledRelation);
}

std::string Triple::identity() const {
    std::string id;
    id.reserve(head.key.size() + relation.size() + tail.key.size() + 2);
    id += head.key;
    id += kSep;
    id += relation;
    id += kSep;
    id += tail.key;
    return id;
}

LabeledGraph::LabeledGraph(const std::vector<Triple>& triples) {
    for (const Triple& t : triples) insert(t);
}

void LabeledGraph::insert(const Triple& t) {
    if (index_.emplace(t.identity(), triples_.size()).second) triples_.push_back(t);
}

LabeledGraph LabeledGraph::with(const Triple& t) const {
    LabeledGraph out = *this;
    out.insert(t);
    return out;
}

bool LabeledGraph::has_entity(const Entity& e) const {
    for (const Triple& t : triples_) {
        if (t.head == e || t.tail == e) return true;
    }
    return false;
}

std::vector<Entity> LabeledGraph::entities() const {
    std::vector<Entity> out;
    std::unordered_map<std::string, bool> seen;
    for (const Triple& t : triples_) {
        if (seen.emplace(t.head.key, true).second) out.push_back(t.head);
        if (seen.emplace(t.tail.key, true).second) out.push_back(t.tail);
    }
    return out;
}

bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.size() != b.size()) return false;
    for (const Triple& t : a.triples_) {
        if (!b.contains(t)) return false;
    }
    return true;
}

LabeledGraph add_triple(const LabeledGraph& g, const Triple& t) { return g.with(t); }

GraphDiff diff(const LabeledGraph& old_graph, const LabeledGraph& new_graph) {
    GraphDiff d;
    for (const Triple& t : new_graph.triples()) {
        if (!old_graph.contains(t)) d.added.push_back(t);
    }
    for (const Triple& t : old_graph.triples()) {
        if (!new_graph.contains(t)) d.removed.push_back(t);
    }
    return d;
}

LabeledGraph apply_diff(const LabeledGraph& g, const GraphDiff& d) {
    std::unordered_map<std::string, bool> removed;
    for (const Triple& t : d.removed) {
        if (!g.contains(t)) throw MissingRemoval("removed triple not in graph: " + t.identity());
        removed.emplace(t.identity(), true);
    }
    LabeledGraph out;
    for (const Triple& t : g.triples()) {
        if (!removed.count(t.identity())) out = out.with(t);
    }
    for (const Triple& t : d.added) out = out.with(t);
    return out;
}

std::string to_triple_text(const LabeledGraph& g) {
    std::string out;
    bool first = true;
    for (const Triple& t : g.triples()) {
        if (!first) out += '\n';
        first = false;
        out += '(';
        out += t.head.name;
        out += ", ";
        out += t.relation;
        out += ", ";
        out += t.tail.name;
        out += ')';
        if (!t.annotation.empty()) {
            out += " [";
            out += t.annotation;
            out += ']';
        }
    }
    return out;
}

std::optional<int> shortest_path_length(const LabeledGraph& g, const Entity& a,
                                        const Entity& b, Directedness dir) {
    if (!g.has_entity(a)) throw UnknownEntity("not in graph: " + a.name);
    if (!g.has_entity(b)) throw UnknownEntity("not in graph: " + b.name);
    if (a == b) return 0;

    std::unordered_map<std::string, std::vector<std::string>> adj;
    for (const Triple& t : g.triples()) {
        adj[t.head.key].push_back(t.tail.key);
        if (dir == Directedness::undirected) adj[t.tail.key].push_back(t.head.key);
    }

    std::unordered_map<std::string, int> dist;
    std::deque<std::string> queue;
    dist[a.key] = 0;
    queue.push_back(a.key);
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        int d = dist[cur];
        for (const std::string& next : adj[cur]) {
            if (dist.count(next)) continue;
            if (next == b.key) return d + 1;
            dist[next] = d + 1;
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

nlohmann::json graph_to_json(const LabeledGraph& g) {
    nlohmann::json triples = nlohmann::json::array();
    for (const Triple& t : g.triples()) {
        nlohmann::json jt{{"head", t.head.name}, {"relation", t.relation}, {"tail", t.tail.name}};
        if (!t.annotation.empty()) jt["annotation"] = t.annotation;
        triples.push_back(std::move(jt));
    }
    return nlohmann::json{{"triples", std::move(triples)}};
}

LabeledGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("triples") || !j["triples"].is_array())
        throw ParseError("graph JSON must be an object with a \"triples\" array");
    LabeledGraph g;
    for (const auto& jt : j["triples"]) {
        std::string ann;
        if (jt.contains("annotation") && jt["annotation"].is_string())
            ann = jt["annotation"].get<std::string>();
        g = g.with(Triple(Entity(jt.at("head").get<std::string>()),
                          jt.at("relation").get<std::string>(),
                          Entity(jt.at("tail").get<std::string>()), ann));
    }
    return g;
}

} // namespace rwg

#pragma once
// Labeled directed multigraph of (head, relation, tail) triples.
//
// Graphs are immutable values: operations return new graphs. Triples are
// insertion-ordered and duplicate-free under (head.key, relation, tail.key).
// Entity identity is case-folded and whitespace-collapsed, so "Alice's  Mother"
// and "alice's mother" name the same node. Annotations ride along on triples
// but never take part in identity.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rwg/errors.hpp"

#include "json.hpp"

namespace rwg {

struct Entity {
    std::string name; // trimmed display form
    std::string key;  // identity: case-folded, whitespace-collapsed

    Entity() = default;
    explicit Entity(std::string_view display);

    friend bool operator==(const Entity& a, const Entity& b) { return a.key == b.key; }
};

struct Triple {
    Entity head;
    std::string relation;
    Entity tail;
    std::string annotation; // empty = none

    Triple() = default;
    Triple(Entity h, std::string r, Entity t, std::string ann = "");

    // Identity string: head.key, relation and tail.key joined by a separator
    // that cannot occur in any of them.
    std::string identity() const;

    friend bool operator==(const Triple& a, const Triple& b) {
        return a.identity() == b.identity();
    }
};

// Relation assigned to edges that come without a label ("A -- B").
inline constexpr std::string_view kUnlabeledRelation = "related_to";

class LabeledGraph {
public:
    LabeledGraph() = default;
    explicit LabeledGraph(const std::vector<Triple>& triples);

    // Returns a copy of the graph with t appended (no-op if already present).
    [[nodiscard]] LabeledGraph with(const Triple& t) const;

    bool contains(const Triple& t) const { return index_.count(t.identity()) > 0; }
    bool has_entity(const Entity& e) const;

    size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }
    const std::vector<Triple>& triples() const { return triples_; }

    // Entities in first-appearance order (heads then tails per triple).
    std::vector<Entity> entities() const;

    // Set equality over triple identities; order and annotations are ignored.
    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b);

private:
    void insert(const Triple& t);

    std::vector<Triple> triples_;
    std::unordered_map<std::string, size_t> index_;
};

struct GraphDiff {
    std::vector<Triple> added;
    std::vector<Triple> removed;

    bool empty() const { return added.empty() && removed.empty(); }
};

LabeledGraph add_triple(const LabeledGraph& g, const Triple& t);

// added = new \ old, removed = old \ new, each in its graph's insertion order.
GraphDiff diff(const LabeledGraph& old_graph, const LabeledGraph& new_graph);

// (g \ removed) + added. Throws MissingRemoval if a removed triple is absent.
LabeledGraph apply_diff(const LabeledGraph& g, const GraphDiff& d);

// One "(head, relation, tail)" line per triple, insertion order. Annotations
// are appended as a trailing " [note]". Empty graph serializes to empty text.
std::string to_triple_text(const LabeledGraph& g);

enum class Directedness { directed, undirected };

// Minimum edge count between a and b, or nullopt if disconnected.
// Throws UnknownEntity when either endpoint is not in the graph.
std::optional<int> shortest_path_length(const LabeledGraph& g, const Entity& a,
                                        const Entity& b, Directedness dir);

nlohmann::json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const nlohmann::json& j);

} // namespace rwg

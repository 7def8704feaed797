#pragma once
// Deterministic family-relation reasoner: relation labeling over a closed
// vocabulary, count queries (cousins, nephews/nieces, ...), constraint
// checking, and bounded enumeration of family-tree completions. Serves as the
// offline ground truth for the Alice-style puzzles and for auditing
// LLM-built graphs.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rwg/errors.hpp"
#include "rwg/graph.hpp"

namespace rwg::kinship {

enum class Gender { female, male, unknown };

std::string_view gender_name(Gender g);
Gender gender_from(std::string_view name);

// Concrete family tree: persons with genders, parent edges, symmetric spouse
// edges. Parenthood is validated acyclic with at most two parents per child.
// Siblings are persons sharing at least one parent.
class FamilyModel {
public:
    int add_person(std::string id, Gender gender);
    void add_parent_edge(const std::string& parent, const std::string& child);
    void add_spouse_edge(const std::string& a, const std::string& b);

    bool has_person(const std::string& id) const { return index_of(id) >= 0; }
    int index_of(const std::string& id) const;
    int require(const std::string& id) const; // throws UnknownPerson

    // Only unknown -> concrete transitions are allowed; anything else throws.
    void set_gender(int i, Gender g);

    size_t person_count() const { return ids_.size(); }
    const std::string& id_of(int i) const { return ids_[static_cast<size_t>(i)]; }
    Gender gender_of(int i) const { return genders_[static_cast<size_t>(i)]; }

    const std::vector<int>& parents(int i) const { return parents_[static_cast<size_t>(i)]; }
    const std::vector<int>& children(int i) const { return children_[static_cast<size_t>(i)]; }
    const std::vector<int>& spouses(int i) const { return spouses_[static_cast<size_t>(i)]; }
    std::vector<int> siblings(int i) const; // sorted, excludes self

    // Search support: drop the most recently added person (must be childless
    // and spouseless). Used to backtrack during enumeration.
    void pop_person();

    void add_parent_edge(int parent, int child);

private:
    bool is_ancestor(int maybe_ancestor, int of) const;

    std::vector<std::string> ids_;
    std::vector<Gender> genders_;
    std::vector<std::vector<int>> parents_, children_, spouses_;
};

// Relation of b to a ("b is a's <label>") over the closed vocabulary:
// mother, father, son, daughter, sister, brother, grandmother, grandfather,
// grandson, granddaughter, aunt, uncle, niece, nephew, cousin, wife, husband,
// mother-in-law, father-in-law, daughter-in-law, son-in-law, sister-in-law,
// brother-in-law. Aunts/uncles include spouses of parents' siblings; nieces/
// nephews and cousins go through blood siblings only. Returns nullopt when no
// rule applies (including gendered labels for unknown-gender persons).
std::optional<std::string> derived_relation(const FamilyModel& model, const std::string& a,
                                            const std::string& b);

enum class CountRelation { sisters, brothers, children, nephews_nieces, cousins, sons, daughters };

std::string_view count_relation_name(CountRelation r);
CountRelation count_relation_from(std::string_view name); // throws UnknownRelation

int count_relation(const FamilyModel& model, const std::string& subject, CountRelation relation);
int count_relation(const FamilyModel& model, int subject, CountRelation relation);

struct CountConstraint {
    std::string subject;
    CountRelation relation = CountRelation::children;
    int count = 0; // comparator: exactly
};

struct Violation {
    CountConstraint constraint;
    int actual = 0; // -1 when the subject does not exist
};

std::vector<Violation> check_constraints(const FamilyModel& model,
                                         const std::vector<CountConstraint>& constraints);

struct SearchBounds {
    int max_added_persons = 8;
    int max_children_per_person = 10;
    long long max_states = 1'000'000;
};

// What to count once completions are found. The subject is either a concrete
// person id, or a role ("brother"/"sister" of some person) that completions
// must realize — questions presuppose the person they ask about.
struct OracleQuery {
    CountRelation relation = CountRelation::cousins;
    std::string subject_id;  // used when role is empty
    std::string role;        // "" | "brother" | "sister"
    std::string role_of;     // anchor person for role subjects
};

struct EnumerationResult {
    std::vector<FamilyModel> completions; // minimal-size, satisfying, deduplicated
    int added_persons = 0;                // adds in each returned completion
    long long states_expanded = 0;
};

// Exhaustive minimal-size completion search. Added persons are unnamed, get a
// single parent edge to an existing or previously added person, and carry a
// concrete gender (female or male). Completions are deduplicated up to
// isomorphism of the added persons (parent-chain signature plus gender).
// Throws BoundsExceeded when the expansion budget is exhausted.
EnumerationResult enumerate_completions(const FamilyModel& seed,
                                        const std::vector<CountConstraint>& constraints,
                                        const SearchBounds& bounds = {},
                                        const std::optional<OracleQuery>& query = std::nullopt);

// Serial reference implementation of the same search; the parallel kernel is
// checked against it in tests and in the benchmark tool.
EnumerationResult enumerate_completions_serial(const FamilyModel& seed,
                                               const std::vector<CountConstraint>& constraints,
                                               const SearchBounds& bounds = {},
                                               const std::optional<OracleQuery>& query = std::nullopt);

// Distinct count values the query takes over all matching subjects in one
// completion; empty when no subject matches.
std::set<int> query_answers(const FamilyModel& model, const OracleQuery& query);

struct OracleAnswer {
    std::set<int> answers; // union over completions
    bool unique = false;   // exactly one value across all completions
    size_t completions = 0;
    int added_persons = 0;
};

OracleAnswer answer_query(const EnumerationResult& result, const OracleQuery& query);

struct GraphImport {
    FamilyModel model;
    std::vector<std::string> unmapped; // triples whose label had no structural reading
    std::vector<std::string> conflicts; // gender clashes, >2 parents, cycles
};

// Maps relation labels (mother/father/son/daughter/wife/husband/spouse plus
// sister/brother via a shared latent parent) onto structure. "related_to"
// edges are ignored; anything else lands in the unmapped report.
GraphImport graph_to_family(const LabeledGraph& g);

// --- Canned puzzle builders used by the generators and tests ---

// Alice with n brothers and m sisters under one pair of parents.
FamilyModel aiw_seed(int brothers, int sisters);

struct Puzzle {
    FamilyModel seed;
    std::vector<CountConstraint> constraints;
    OracleQuery query;
    SearchBounds bounds;
};

Puzzle aiw_puzzle(int brothers, int sisters, CountRelation relation, std::string role);

// The deeper Alice puzzle: maternal aunt/uncles, a paternal uncle with a son,
// and the no-other-children constraint. The expected cousin count is 5.
Puzzle aiw_plus_puzzle();

// The manually completed version of the same family (both maternal uncles'
// sons and the second paternal uncle filled in).
FamilyModel aiw_plus_complete_model();

nlohmann::json family_to_json(const FamilyModel& model);
FamilyModel family_from_json(const nlohmann::json& j);
Puzzle puzzle_from_json(const nlohmann::json& j);

} // namespace rwg::kinship

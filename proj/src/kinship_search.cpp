#include <atomic>
#include <string>
#include <unordered_set>
#include <vector>

#include "rwg/kinship.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

// Completion search. Minimal-size completions are found by deepening the
// number of added persons one at a time; within a depth the search runs DFS
// over canonical add sequences: each added person is (parent index, gender)
// and sequences are non-decreasing in that pair, so permutations of the same
// forest are generated once. Counts are monotone under additions, which gives
// two cheap cuts: any exact constraint already exceeded kills the branch, and
// a deficit larger than the remaining adds can never be repaired.
//
// The OpenMP kernel splits the depth's first move across threads; each branch
// is an independent DFS with thread-local results that are merged in branch
// order, so output order and content match the serial reference exactly.

namespace rwg::kinship {

namespace {

struct Move {
    int parent = 0;
    int gender = 0; // 0 = female, 1 = male
};

Gender move_gender(int g) { return g == 0 ? Gender::female : Gender::male; }

bool subjects_exist(const FamilyModel& seed, const std::vector<CountConstraint>& constraints,
                    const std::optional<OracleQuery>& query) {
    for (const CountConstraint& c : constraints) {
        if (!seed.has_person(c.subject)) return false;
    }
    if (query && !query->role.empty() && !seed.has_person(query->role_of)) return false;
    if (query && query->role.empty() && !query->subject_id.empty() &&
        !seed.has_person(query->subject_id))
        return false;
    return true;
}

bool contradictory(const std::vector<CountConstraint>& constraints) {
    for (size_t i = 0; i < constraints.size(); ++i) {
        for (size_t j = i + 1; j < constraints.size(); ++j) {
            if (constraints[i].subject == constraints[j].subject &&
                constraints[i].relation == constraints[j].relation &&
                constraints[i].count != constraints[j].count)
                return true;
        }
    }
    return false;
}

class DepthSearch {
public:
    DepthSearch(const FamilyModel& seed, const std::vector<CountConstraint>& constraints,
                const SearchBounds& bounds, const std::optional<OracleQuery>& query, int depth,
                std::atomic<long long>& expanded, std::atomic<bool>& over_budget)
        : constraints_(constraints), bounds_(bounds), query_(query), depth_(depth),
          expanded_(expanded), over_budget_(over_budget), model_(seed),
          seed_count_(static_cast<int>(seed.person_count())) {
        subject_idx_.reserve(constraints.size());
        for (const CountConstraint& c : constraints_)
            subject_idx_.push_back(model_.index_of(c.subject));
    }

    // Runs the subtree rooted at first move `first`; level 0 with no
    // restriction when first is nullptr.
    std::vector<FamilyModel> run(const Move* first) {
        results_.clear();
        if (first) {
            if (apply(*first)) {
                descend(1, *first);
                undo();
            }
        } else {
            descend(0, Move{0, 0});
        }
        return std::move(results_);
    }

    std::vector<Move> level_moves() const {
        std::vector<Move> moves;
        for (int p = 0; p < static_cast<int>(model_.person_count()); ++p) {
            for (int g = 0; g < 2; ++g) moves.push_back({p, g});
        }
        return moves;
    }

private:
    bool feasible(int used) const {
        int remaining = depth_ - used;
        for (size_t i = 0; i < constraints_.size(); ++i) {
            int actual = count_relation(model_, subject_idx_[i], constraints_[i].relation);
            int deficit = constraints_[i].count - actual;
            if (deficit < 0 || deficit > remaining) return false;
        }
        return true;
    }

    // A new person becomes a child of the chosen parent and, when the parent
    // has a spouse, of that spouse as well — children of a couple belong to
    // both, which keeps e.g. an added sibling unique instead of splitting into
    // mother-only and father-only variants.
    bool apply(const Move& m) {
        int co_parent = model_.spouses(m.parent).empty() ? -1 : model_.spouses(m.parent)[0];
        if (static_cast<int>(model_.children(m.parent).size()) >= bounds_.max_children_per_person)
            return false;
        if (co_parent >= 0 && static_cast<int>(model_.children(co_parent).size()) >=
                                  bounds_.max_children_per_person)
            return false;
        long long seen = expanded_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (seen > bounds_.max_states) {
            over_budget_.store(true, std::memory_order_relaxed);
            return false;
        }
        int added = static_cast<int>(model_.person_count()) - seed_count_;
        int idx = model_.add_person("+" + std::to_string(added + 1), move_gender(m.gender));
        model_.add_parent_edge(m.parent, idx);
        if (co_parent >= 0) model_.add_parent_edge(co_parent, idx);
        return true;
    }

    void undo() { model_.pop_person(); }

    void descend(int used, Move last) {
        if (over_budget_.load(std::memory_order_relaxed)) return;
        if (!feasible(used)) return;
        if (used == depth_) {
            if (!query_ || !query_answers(model_, *query_).empty())
                results_.push_back(model_);
            return;
        }
        for (int p = (used == 0 ? 0 : last.parent); p < static_cast<int>(model_.person_count());
             ++p) {
            int g0 = (used > 0 && p == last.parent) ? last.gender : 0;
            for (int g = g0; g < 2; ++g) {
                Move m{p, g};
                if (!apply(m)) continue;
                descend(used + 1, m);
                undo();
            }
        }
    }

    const std::vector<CountConstraint>& constraints_;
    const SearchBounds& bounds_;
    const std::optional<OracleQuery>& query_;
    int depth_;
    std::atomic<long long>& expanded_;
    std::atomic<bool>& over_budget_;
    FamilyModel model_;
    int seed_count_;
    std::vector<int> subject_idx_;
    std::vector<FamilyModel> results_;
};

// Signature of one added person: its parent chain down to a named seed person
// plus its gender. Completions with equal signature multisets are isomorphic.
std::string completion_key(const FamilyModel& model, int seed_count) {
    std::vector<std::string> sigs;
    auto sig_of = [&](int idx, auto&& self) -> std::string {
        if (idx < seed_count) return "#" + model.id_of(idx);
        std::vector<std::string> bases;
        for (int parent : model.parents(idx)) bases.push_back(self(parent, self));
        std::sort(bases.begin(), bases.end());
        std::string base;
        for (const std::string& b : bases) {
            base += b;
            base += '+';
        }
        char g = model.gender_of(idx) == Gender::female ? 'f' : 'm';
        return "(" + base + ")" + g;
    };
    for (int i = seed_count; i < static_cast<int>(model.person_count()); ++i)
        sigs.push_back(sig_of(i, sig_of));
    std::sort(sigs.begin(), sigs.end());
    std::string key;
    for (const std::string& s : sigs) {
        key += s;
        key += '|';
    }
    return key;
}

std::vector<FamilyModel> dedupe(std::vector<FamilyModel> found, int seed_count) {
    std::vector<FamilyModel> out;
    std::unordered_set<std::string> seen;
    for (FamilyModel& m : found) {
        if (seen.insert(completion_key(m, seed_count)).second) out.push_back(std::move(m));
    }
    return out;
}

EnumerationResult search(const FamilyModel& seed, const std::vector<CountConstraint>& constraints,
                         const SearchBounds& bounds, const std::optional<OracleQuery>& query,
                         bool parallel) {
    EnumerationResult result;
    if (contradictory(constraints) || !subjects_exist(seed, constraints, query)) return result;

    std::atomic<long long> expanded{0};
    std::atomic<bool> over_budget{false};
    int seed_count = static_cast<int>(seed.person_count());

    for (int depth = 0; depth <= bounds.max_added_persons; ++depth) {
        std::vector<FamilyModel> found;
        if (depth == 0 || !parallel) {
            DepthSearch s(seed, constraints, bounds, query, depth, expanded, over_budget);
            found = s.run(nullptr);
        } else {
            DepthSearch probe(seed, constraints, bounds, query, depth, expanded, over_budget);
            std::vector<Move> moves = probe.level_moves();
            std::vector<std::vector<FamilyModel>> buckets(moves.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
            for (size_t i = 0; i < moves.size(); ++i) {
                DepthSearch s(seed, constraints, bounds, query, depth, expanded, over_budget);
                buckets[i] = s.run(&moves[i]);
            }
            for (std::vector<FamilyModel>& b : buckets) {
                for (FamilyModel& m : b) found.push_back(std::move(m));
            }
        }
        if (over_budget.load())
            throw BoundsExceeded("completion search exceeded " +
                                 std::to_string(bounds.max_states) + " expansions");
        if (!found.empty()) {
            result.completions = dedupe(std::move(found), seed_count);
            result.added_persons = depth;
            result.states_expanded = expanded.load();
            return result;
        }
    }
    result.states_expanded = expanded.load();
    return result;
}

} // namespace

EnumerationResult enumerate_completions(const FamilyModel& seed,
                                        const std::vector<CountConstraint>& constraints,
                                        const SearchBounds& bounds,
                                        const std::optional<OracleQuery>& query) {
    return search(seed, constraints, bounds, query, /*parallel=*/true);
}

EnumerationResult enumerate_completions_serial(const FamilyModel& seed,
                                               const std::vector<CountConstraint>& constraints,
                                               const SearchBounds& bounds,
                                               const std::optional<OracleQuery>& query) {
    return search(seed, constraints, bounds, query, /*parallel=*/false);
}

} // namespace rwg::kinship

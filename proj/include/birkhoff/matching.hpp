#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace birkhoff {

// Hopcroft-Karp maximum bipartite matching. Deterministic: augmenting paths
// follow adjacency insertion order, so repeated runs agree edge for edge.
class BipartiteMatcher {
public:
    BipartiteMatcher(int left_count, int right_count)
        : adj_(static_cast<std::size_t>(left_count)),
          match_left_(static_cast<std::size_t>(left_count), kFree),
          match_right_(static_cast<std::size_t>(right_count), kFree) {}

    void add_edge(int l, int r) { adj_[static_cast<std::size_t>(l)].push_back(r); }

    int solve() {
        int matched = 0;
        while (bfs_layers()) {
            for (int l = 0; l < static_cast<int>(adj_.size()); ++l)
                if (match_left_[static_cast<std::size_t>(l)] == kFree && dfs_augment(l)) ++matched;
        }
        return matched;
    }

    // -1 where unmatched.
    const std::vector<int>& left_match() const { return match_left_; }
    const std::vector<int>& right_match() const { return match_right_; }

private:
    static constexpr int kFree = -1;
    static constexpr int kInf = std::numeric_limits<int>::max();

    bool bfs_layers() {
        dist_.assign(adj_.size(), kInf);
        std::queue<int> frontier;
        for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
            if (match_left_[static_cast<std::size_t>(l)] == kFree) {
                dist_[static_cast<std::size_t>(l)] = 0;
                frontier.push(l);
            }
        }
        bool reachable_free_right = false;
        while (!frontier.empty()) {
            const int l = frontier.front();
            frontier.pop();
            for (int r : adj_[static_cast<std::size_t>(l)]) {
                const int next = match_right_[static_cast<std::size_t>(r)];
                if (next == kFree) {
                    reachable_free_right = true;
                } else if (dist_[static_cast<std::size_t>(next)] == kInf) {
                    dist_[static_cast<std::size_t>(next)] = dist_[static_cast<std::size_t>(l)] + 1;
                    frontier.push(next);
                }
            }
        }
        return reachable_free_right;
    }

    bool dfs_augment(int l) {
        for (int r : adj_[static_cast<std::size_t>(l)]) {
            const int next = match_right_[static_cast<std::size_t>(r)];
            if (next == kFree ||
                (dist_[static_cast<std::size_t>(next)] == dist_[static_cast<std::size_t>(l)] + 1 && dfs_augment(next))) {
                match_left_[static_cast<std::size_t>(l)] = r;
                match_right_[static_cast<std::size_t>(r)] = l;
                return true;
            }
        }
        dist_[static_cast<std::size_t>(l)] = kInf;
        return false;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_, match_right_;
    std::vector<int> dist_;
};

}  // namespace birkhoff

#include "rtmapf/bipartite.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace rtmapf {

namespace {

class HopcroftKarp {
public:
    HopcroftKarp(int right_count, const std::vector<std::vector<int>>& adj)
        : adj_(adj),
          left_count_(static_cast<int>(adj.size())),
          match_left_(adj.size(), -1),
          match_right_(right_count, -1),
          dist_(adj.size(), 0),
          it_(adj.size(), 0) {}

    std::vector<int> run() {
        // Greedy seed keeps the phase count low on the dense graphs we see.
        for (int l = 0; l < left_count_; ++l) {
            for (int r : adj_[l]) {
                if (match_right_[r] < 0) {
                    match_left_[l] = r;
                    match_right_[r] = l;
                    break;
                }
            }
        }
        while (bfs()) {
            std::fill(it_.begin(), it_.end(), 0);
            for (int l = 0; l < left_count_; ++l) {
                if (match_left_[l] < 0) {
                    dfs(l);
                }
            }
        }
        return match_left_;
    }

private:
    static constexpr int kInf = std::numeric_limits<int>::max();

    bool bfs() {
        std::queue<int> q;
        for (int l = 0; l < left_count_; ++l) {
            if (match_left_[l] < 0) {
                dist_[l] = 0;
                q.push(l);
            } else {
                dist_[l] = kInf;
            }
        }
        bool found = false;
        while (!q.empty()) {
            const int l = q.front();
            q.pop();
            for (int r : adj_[l]) {
                const int next = match_right_[r];
                if (next < 0) {
                    found = true;
                } else if (dist_[next] == kInf) {
                    dist_[next] = dist_[l] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    }

    // Iterative DFS along the layered graph.
    bool dfs(int root) {
        std::vector<int> stack{root};
        while (!stack.empty()) {
            const int l = stack.back();
            bool advanced = false;
            while (it_[l] < static_cast<int>(adj_[l].size())) {
                const int r = adj_[l][it_[l]];
                const int next = match_right_[r];
                if (next < 0) {
                    // Augment along the stack.
                    int right = r;
                    for (auto s = stack.rbegin(); s != stack.rend(); ++s) {
                        const int left = *s;
                        const int prev = match_left_[left];
                        match_left_[left] = right;
                        match_right_[right] = left;
                        right = prev;
                    }
                    return true;
                }
                if (dist_[next] == dist_[l] + 1) {
                    stack.push_back(next);
                    advanced = true;
                    break;
                }
                ++it_[l];
            }
            if (!advanced) {
                dist_[l] = kInf;
                stack.pop_back();
                if (!stack.empty()) {
                    ++it_[stack.back()];
                }
            }
        }
        return false;
    }

    const std::vector<std::vector<int>>& adj_;
    int left_count_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
    std::vector<int> dist_;
    std::vector<int> it_;
};

}  // namespace

std::vector<int> maximum_matching(int right_count, const std::vector<std::vector<int>>& adjacency) {
    return HopcroftKarp(right_count, adjacency).run();
}

int matching_size(const std::vector<int>& match_of_left) {
    return static_cast<int>(std::count_if(match_of_left.begin(), match_of_left.end(),
                                          [](int r) { return r >= 0; }));
}

}  // namespace rtmapf

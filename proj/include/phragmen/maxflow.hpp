#pragma once

#include <cstdint>
#include <queue>
#include <vector>

namespace phragmen {

/// Small integer max-flow (BFS augmenting paths). Instances here are tiny
/// bipartite saturation problems, so no scaling tricks are needed.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : head_(nodes, -1) {}

    int addNode() {
        head_.push_back(-1);
        return static_cast<int>(head_.size()) - 1;
    }

    void addEdge(int from, int to, std::int64_t capacity) {
        edges_.push_back({to, head_[from], capacity});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    std::int64_t run(int source, int sink) {
        std::int64_t total = 0;
        while (true) {
            std::vector<int> prevEdge(head_.size(), -1);
            std::vector<char> seen(head_.size(), 0);
            std::queue<int> q;
            q.push(source);
            seen[source] = 1;
            while (!q.empty() && !seen[sink]) {
                int u = q.front();
                q.pop();
                for (int e = head_[u]; e != -1; e = edges_[e].next) {
                    if (edges_[e].capacity <= 0 || seen[edges_[e].to]) continue;
                    seen[edges_[e].to] = 1;
                    prevEdge[edges_[e].to] = e;
                    q.push(edges_[e].to);
                }
            }
            if (!seen[sink]) break;
            std::int64_t push = INT64_MAX;
            for (int v = sink; v != source;) {
                int e = prevEdge[v];
                push = std::min(push, edges_[e].capacity);
                v = edges_[e ^ 1].to;
            }
            for (int v = sink; v != source;) {
                int e = prevEdge[v];
                edges_[e].capacity -= push;
                edges_[e ^ 1].capacity += push;
                v = edges_[e ^ 1].to;
            }
            total += push;
        }
        return total;
    }

    /// Flow pushed along the i-th added edge (in addEdge order).
    std::int64_t flowOn(int edgeIndex) const { return edges_[2 * edgeIndex + 1].capacity; }

private:
    struct Edge {
        int to;
        int next;
        std::int64_t capacity;
    };
    std::vector<int> head_;
    std::vector<Edge> edges_;
};

} // namespace phragmen

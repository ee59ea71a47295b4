#pragma once

#include <vector>

namespace stroketext {

// Two-terminal max-flow / min-cut. Terminal capacities are folded into one
// signed residual per node, so parallel source and sink links cancel and the
// common part is counted as flow up front.
//
// After solve(), source_side(i) reports the minimal source partition (nodes
// reachable from the source in the residual graph); nodes disconnected from
// both terminals land on the sink side.
class FlowNetwork {
  public:
    FlowNetwork() = default;
    explicit FlowNetwork(int nodes) { add_nodes(nodes); }

    int add_node();
    void add_nodes(int n);
    int node_count() const { return static_cast<int>(nodes_.size()); }

    // Accumulates; calling twice with (5,0) and (0,3) equals one call (5,3).
    void add_terminal(int node, double source_cap, double sink_cap);

    // Directed pair a->b with capacity cap and b->a with rev_cap.
    void add_edge(int a, int b, double cap, double rev_cap);

    // Single-shot; returns the max-flow value.
    double solve();

    bool source_side(int node) const;

    // Sum a node's current incident capacities (terminal plus edges); useful
    // for building hard constraints that no finite cut can sever.
    double incident_capacity(int node) const;

  private:
    struct Arc {
        int head;
        int next;
        double rcap;
    };
    struct Node {
        int first = -1;
        int parent = kFree;
        int ts = 0;
        int dist = 0;
        bool sink_tree = false;
        bool queued = false;
        double tr = 0.0;
    };

    static constexpr int kFree = -1;
    static constexpr int kTerminal = -2;
    static constexpr int kOrphan = -3;

    void set_active(int i);
    int pop_active();
    int grow(int i);
    void augment(int mid);
    void make_orphan(int i);
    void adopt();

    std::vector<Node> nodes_;
    std::vector<Arc> arcs_;
    std::vector<int> active_;
    size_t active_head_ = 0;
    std::vector<int> orphans_;
    double flow_ = 0.0;
    int time_ = 0;
    bool solved_ = false;
};

}  // namespace stroketext

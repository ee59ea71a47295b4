#include "stroketext/maxflow.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace stroketext {

int FlowNetwork::add_node() {
    nodes_.emplace_back();
    return node_count() - 1;
}

void FlowNetwork::add_nodes(int n) {
    nodes_.resize(nodes_.size() + n);
}

void FlowNetwork::add_terminal(int node, double source_cap, double sink_cap) {
    assert(source_cap >= 0.0 && sink_cap >= 0.0);
    double prev = nodes_[node].tr;
    if (prev > 0)
        source_cap += prev;
    else
        sink_cap -= prev;
    flow_ += std::min(source_cap, sink_cap);
    nodes_[node].tr = source_cap - sink_cap;
}

void FlowNetwork::add_edge(int a, int b, double cap, double rev_cap) {
    assert(a != b && cap >= 0.0 && rev_cap >= 0.0);
    int e = static_cast<int>(arcs_.size());
    arcs_.push_back({b, nodes_[a].first, cap});
    nodes_[a].first = e;
    arcs_.push_back({a, nodes_[b].first, rev_cap});
    nodes_[b].first = e + 1;
}

double FlowNetwork::incident_capacity(int node) const {
    double s = std::abs(nodes_[node].tr);
    for (int a = nodes_[node].first; a != -1; a = arcs_[a].next)
        s += arcs_[a].rcap + arcs_[a ^ 1].rcap;
    return s;
}

void FlowNetwork::set_active(int i) {
    if (nodes_[i].queued) return;
    nodes_[i].queued = true;
    active_.push_back(i);
}

int FlowNetwork::pop_active() {
    while (active_head_ < active_.size()) {
        int i = active_[active_head_++];
        nodes_[i].queued = false;
        if (active_head_ == active_.size()) {
            active_.clear();
            active_head_ = 0;
        }
        if (nodes_[i].parent != kFree) return i;
    }
    return -1;
}

// Scan one active node; grabs free neighbors into its tree and returns the
// middle arc (oriented source tree -> sink tree) when the trees touch.
int FlowNetwork::grow(int i) {
    bool src = !nodes_[i].sink_tree;
    for (int a = nodes_[i].first; a != -1; a = arcs_[a].next) {
        double r = src ? arcs_[a].rcap : arcs_[a ^ 1].rcap;
        if (!(r > 0.0)) continue;
        int j = arcs_[a].head;
        if (nodes_[j].parent == kFree) {
            nodes_[j].sink_tree = nodes_[i].sink_tree;
            nodes_[j].parent = a ^ 1;
            nodes_[j].ts = nodes_[i].ts;
            nodes_[j].dist = nodes_[i].dist + 1;
            set_active(j);
        } else if (nodes_[j].sink_tree != nodes_[i].sink_tree) {
            set_active(i);  // remaining arcs get rescanned later
            return src ? a : (a ^ 1);
        } else if (nodes_[j].ts <= nodes_[i].ts && nodes_[j].dist > nodes_[i].dist) {
            // shorter route to the terminal through i
            nodes_[j].parent = a ^ 1;
            nodes_[j].ts = nodes_[i].ts;
            nodes_[j].dist = nodes_[i].dist + 1;
        }
    }
    return -1;
}

void FlowNetwork::make_orphan(int i) {
    nodes_[i].parent = kOrphan;
    orphans_.push_back(i);
}

void FlowNetwork::augment(int mid) {
    int p = arcs_[mid ^ 1].head;
    int q = arcs_[mid].head;

    double bottleneck = arcs_[mid].rcap;
    for (int i = p;;) {
        int pa = nodes_[i].parent;
        if (pa == kTerminal) {
            bottleneck = std::min(bottleneck, nodes_[i].tr);
            break;
        }
        bottleneck = std::min(bottleneck, arcs_[pa ^ 1].rcap);
        i = arcs_[pa].head;
    }
    for (int i = q;;) {
        int pa = nodes_[i].parent;
        if (pa == kTerminal) {
            bottleneck = std::min(bottleneck, -nodes_[i].tr);
            break;
        }
        bottleneck = std::min(bottleneck, arcs_[pa].rcap);
        i = arcs_[pa].head;
    }

    arcs_[mid].rcap -= bottleneck;
    arcs_[mid ^ 1].rcap += bottleneck;
    for (int i = p;;) {
        int pa = nodes_[i].parent;
        if (pa == kTerminal) {
            nodes_[i].tr -= bottleneck;
            if (!(nodes_[i].tr > 0.0)) make_orphan(i);
            break;
        }
        arcs_[pa].rcap += bottleneck;
        arcs_[pa ^ 1].rcap -= bottleneck;
        int up = arcs_[pa].head;
        if (!(arcs_[pa ^ 1].rcap > 0.0)) make_orphan(i);
        i = up;
    }
    for (int i = q;;) {
        int pa = nodes_[i].parent;
        if (pa == kTerminal) {
            nodes_[i].tr += bottleneck;
            if (!(nodes_[i].tr < 0.0)) make_orphan(i);
            break;
        }
        arcs_[pa].rcap -= bottleneck;
        arcs_[pa ^ 1].rcap += bottleneck;
        int up = arcs_[pa].head;
        if (!(arcs_[pa].rcap > 0.0)) make_orphan(i);
        i = up;
    }
    flow_ += bottleneck;
}

void FlowNetwork::adopt() {
    while (!orphans_.empty()) {
        int i = orphans_.back();
        orphans_.pop_back();
        bool in_sink = nodes_[i].sink_tree;

        int best = -1;
        int min_d = std::numeric_limits<int>::max();
        for (int a = nodes_[i].first; a != -1; a = arcs_[a].next) {
            double r = in_sink ? arcs_[a].rcap : arcs_[a ^ 1].rcap;
            if (!(r > 0.0)) continue;
            int j = arcs_[a].head;
            if (nodes_[j].parent == kFree || nodes_[j].sink_tree != in_sink) continue;
            // the candidate parent must still root at a terminal
            int d = 0;
            int k = j;
            bool rooted = false;
            while (true) {
                if (nodes_[k].ts == time_) {
                    d += nodes_[k].dist;
                    rooted = true;
                    break;
                }
                int pa = nodes_[k].parent;
                if (pa == kTerminal) {
                    nodes_[k].ts = time_;
                    nodes_[k].dist = 1;
                    d += 1;
                    rooted = true;
                    break;
                }
                if (pa == kOrphan || pa == kFree) break;
                ++d;
                k = arcs_[pa].head;
            }
            if (!rooted) continue;
            if (d < min_d) {
                min_d = d;
                best = a;
            }
            for (int m = j; nodes_[m].ts != time_; m = arcs_[nodes_[m].parent].head) {
                nodes_[m].ts = time_;
                nodes_[m].dist = d--;
            }
        }

        if (best != -1) {
            nodes_[i].parent = best;
            nodes_[i].ts = time_;
            nodes_[i].dist = min_d + 1;
        } else {
            for (int a = nodes_[i].first; a != -1; a = arcs_[a].next) {
                int j = arcs_[a].head;
                if (nodes_[j].parent == kFree || nodes_[j].sink_tree != in_sink) continue;
                double r = in_sink ? arcs_[a].rcap : arcs_[a ^ 1].rcap;
                if (r > 0.0) set_active(j);
                int pj = nodes_[j].parent;
                if (pj >= 0 && arcs_[pj].head == i) make_orphan(j);
            }
            nodes_[i].parent = kFree;
        }
    }
}

double FlowNetwork::solve() {
    assert(!solved_);
    solved_ = true;

    for (int i = 0; i < node_count(); ++i) {
        Node& n = nodes_[i];
        if (n.tr == 0.0) continue;
        n.parent = kTerminal;
        n.sink_tree = n.tr < 0.0;
        n.ts = 0;
        n.dist = 1;
        set_active(i);
    }

    while (true) {
        int mid = -1;
        for (int i = pop_active(); i != -1; i = pop_active()) {
            mid = grow(i);
            if (mid != -1) break;
        }
        if (mid == -1) break;
        ++time_;
        augment(mid);
        adopt();
    }
    return flow_;
}

bool FlowNetwork::source_side(int node) const {
    const Node& n = nodes_[node];
    return n.parent != kFree && !n.sink_tree;
}

}  // namespace stroketext

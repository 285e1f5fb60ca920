#include "botscore/graph.hpp"

#include <algorithm>

namespace botscore {

const char* graph_kind_name(GraphKind kind) {
    switch (kind) {
        case GraphKind::retweet: return "retweet";
        case GraphKind::mention: return "mention";
        case GraphKind::hashtag_cooccurrence: return "hashtag";
    }
    return "unknown";
}

InteractionGraph::InteractionGraph(GraphKind kind, std::optional<std::string> ego)
    : kind_(kind), ego_(std::move(ego)) {
    if (ego_) nodes_.insert(*ego_);
}

void InteractionGraph::add_node(const std::string& id) { nodes_.insert(id); }

void InteractionGraph::add_edge(const std::string& from, const std::string& to, long weight) {
    if (weight <= 0) return;
    if (!directed() && from == to) return;
    nodes_.insert(from);
    nodes_.insert(to);
    Edge e = directed() || from < to ? Edge{from, to} : Edge{to, from};
    edges_[e] += weight;
}

long InteractionGraph::weight(const std::string& from, const std::string& to) const {
    Edge e = directed() || from < to ? Edge{from, to} : Edge{to, from};
    auto it = edges_.find(e);
    return it == edges_.end() ? 0 : it->second;
}

std::map<std::string, std::vector<std::string>> InteractionGraph::undirected_adjacency() const {
    std::map<std::string, std::set<std::string>> sets;
    for (const auto& n : nodes_) sets[n];
    for (const auto& [e, w] : edges_) {
        if (e.first == e.second) continue;
        sets[e.first].insert(e.second);
        sets[e.second].insert(e.first);
    }
    std::map<std::string, std::vector<std::string>> adj;
    for (auto& [n, s] : sets) adj[n] = std::vector<std::string>(s.begin(), s.end());
    return adj;
}

std::map<std::string, double> InteractionGraph::degrees() const {
    std::map<std::string, double> out;
    for (const auto& [n, nbrs] : undirected_adjacency()) out[n] = static_cast<double>(nbrs.size());
    return out;
}

std::map<std::string, double> InteractionGraph::strengths() const {
    std::map<std::string, double> out;
    for (const auto& n : nodes_) out[n] = 0.0;
    for (const auto& [e, w] : edges_) {
        out[e.first] += static_cast<double>(w);
        if (e.first != e.second) out[e.second] += static_cast<double>(w);
    }
    return out;
}

double InteractionGraph::out_strength(const std::string& node) const {
    double s = 0.0;
    for (const auto& [e, w] : edges_)
        if (e.first == node || (!directed() && e.second == node)) s += static_cast<double>(w);
    return s;
}

double InteractionGraph::in_strength(const std::string& node) const {
    double s = 0.0;
    for (const auto& [e, w] : edges_)
        if (e.second == node || (!directed() && e.first == node)) s += static_cast<double>(w);
    return s;
}

double InteractionGraph::density() const {
    double n = static_cast<double>(nodes_.size());
    if (n <= 1.0) return 0.0;
    double m = static_cast<double>(edges_.size());
    return directed() ? m / (n * (n - 1.0)) : 2.0 * m / (n * (n - 1.0));
}

InteractionGraphs build_graphs(const AccountSnapshot& snapshot) {
    const std::string& ego = snapshot.user.user_id;
    InteractionGraphs g{InteractionGraph(GraphKind::retweet, ego),
                        InteractionGraph(GraphKind::mention, ego),
                        InteractionGraph(GraphKind::hashtag_cooccurrence)};
    for (const auto& t : snapshot.tweets) {
        if (t.retweeted_author) g.retweet.add_edge(ego, t.retweeted_author->user_id);
        for (const auto& u : t.mentioned_users)
            if (u.user_id != ego) g.mention.add_edge(ego, u.user_id);
        for (const auto& tag : t.hashtags) g.hashtag.add_node(tag);
        for (std::size_t i = 0; i < t.hashtags.size(); ++i)
            for (std::size_t j = i + 1; j < t.hashtags.size(); ++j)
                g.hashtag.add_edge(t.hashtags[i], t.hashtags[j]);
    }
    for (const auto& t : snapshot.mentions) g.mention.add_edge(t.author_id, ego);
    return g;
}

double global_clustering(const InteractionGraph& graph) {
    auto adj = graph.undirected_adjacency();
    double triangles3 = 0.0;  // each triangle counted once per corner
    double triples = 0.0;
    for (const auto& [node, nbrs] : adj) {
        double k = static_cast<double>(nbrs.size());
        triples += k * (k - 1.0) / 2.0;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const auto& ni = adj.at(nbrs[i]);
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (std::binary_search(ni.begin(), ni.end(), nbrs[j])) triangles3 += 1.0;
        }
    }
    return triples == 0.0 ? 0.0 : triangles3 / triples;
}

double ego_degree_centrality(const InteractionGraph& graph) {
    std::size_t n = graph.nodes().size();
    if (!graph.ego() || n <= 1) return 0.0;
    auto deg = graph.degrees();
    return deg.at(*graph.ego()) / static_cast<double>(n - 1);
}

}  // namespace botscore

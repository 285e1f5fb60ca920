#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "botscore/account.hpp"

namespace botscore {

enum class GraphKind { retweet, mention, hashtag_cooccurrence };

const char* graph_kind_name(GraphKind kind);

// Weighted ego interaction graph. Directed for retweet/mention; for
// hashtag co-occurrence each undirected edge is stored once with
// first < second.
class InteractionGraph {
public:
    using Edge = std::pair<std::string, std::string>;

    explicit InteractionGraph(GraphKind kind, std::optional<std::string> ego = std::nullopt);

    GraphKind kind() const noexcept { return kind_; }
    bool directed() const noexcept { return kind_ != GraphKind::hashtag_cooccurrence; }
    const std::optional<std::string>& ego() const noexcept { return ego_; }
    const std::set<std::string>& nodes() const noexcept { return nodes_; }
    const std::map<Edge, long>& edges() const noexcept { return edges_; }

    void add_node(const std::string& id);
    // Adds `weight` to the edge, creating nodes as needed. Self-loops are
    // ignored for the undirected kind.
    void add_edge(const std::string& from, const std::string& to, long weight = 1);

    long weight(const std::string& from, const std::string& to) const;

    // Undirected, unweighted view: sorted neighbour lists excluding self.
    std::map<std::string, std::vector<std::string>> undirected_adjacency() const;

    // Undirected simple-graph degree per node (including isolated ones).
    std::map<std::string, double> degrees() const;
    // Sum of incident edge weights (in + out for directed graphs).
    std::map<std::string, double> strengths() const;

    double out_strength(const std::string& node) const;
    double in_strength(const std::string& node) const;

    // Edges over possible edges: m/(n(n-1)) directed, 2m/(n(n-1)) undirected;
    // 0 when n <= 1.
    double density() const;

private:
    GraphKind kind_;
    std::optional<std::string> ego_;
    std::set<std::string> nodes_;
    std::map<Edge, long> edges_;
};

struct InteractionGraphs {
    InteractionGraph retweet;
    InteractionGraph mention;
    InteractionGraph hashtag;
};

InteractionGraphs build_graphs(const AccountSnapshot& snapshot);

// Transitivity of the undirected, unweighted view: 3 * triangles / connected
// triples; 0 without connected triples.
double global_clustering(const InteractionGraph& graph);

// Undirected degree / (n - 1); 0 when n <= 1 or the ego is absent.
double ego_degree_centrality(const InteractionGraph& graph);

}  // namespace botscore

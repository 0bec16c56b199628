// Copyright 2026 The ChiralWalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chiralwalk/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace chiralwalk {

namespace {

void check_vertex(int v, int n, const char* what) {
    if (v < 1 || v > n) {
        throw IndexOutOfRangeError(std::string(what) + " vertex " + std::to_string(v) +
                                   " outside 1.." + std::to_string(n));
    }
}

}  // namespace

HermitianGraph::HermitianGraph(int vertex_count, const std::vector<WeightedEdge>& edges) {
    if (vertex_count < 1) {
        throw InvalidParamsError("vertex_count must be >= 1, got " +
                                 std::to_string(vertex_count));
    }
    weights_ = ComplexMatrix::Zero(vertex_count, vertex_count);
    std::set<std::pair<int, int>> seen;
    for (const WeightedEdge& e : edges) {
        check_vertex(e.i, vertex_count, "edge");
        check_vertex(e.j, vertex_count, "edge");
        if (e.i == e.j) {
            throw SelfLoopError("self-loop on vertex " + std::to_string(e.i));
        }
        auto key = std::minmax(e.i, e.j);
        if (!seen.insert(key).second) {
            throw DuplicateEdgeError("duplicate edge (" + std::to_string(e.i) + ", " +
                                     std::to_string(e.j) + ")");
        }
        weights_(e.i - 1, e.j - 1) = e.weight;
        weights_(e.j - 1, e.i - 1) = std::conj(e.weight);
    }
}

HermitianGraph HermitianGraph::from_weights(ComplexMatrix weights) {
    if (weights.rows() != weights.cols() || weights.rows() < 1) {
        throw InvalidParamsError("weight matrix must be square and nonempty");
    }
    const Eigen::Index n = weights.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (weights(i, i) != Complex{0.0, 0.0}) {
            throw SelfLoopError("nonzero diagonal entry at vertex " + std::to_string(i + 1));
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (weights(i, j) != std::conj(weights(j, i))) {
                throw InvalidParamsError("matrix is not Hermitian at (" + std::to_string(i + 1) +
                                         ", " + std::to_string(j + 1) + ")");
            }
        }
    }
    return HermitianGraph(std::move(weights));
}

Complex HermitianGraph::weight(int i, int j) const {
    const int n = vertex_count();
    check_vertex(i, n, "weight");
    check_vertex(j, n, "weight");
    return weights_(i - 1, j - 1);
}

int HermitianGraph::degree(int vertex) const {
    check_vertex(vertex, vertex_count(), "degree");
    int d = 0;
    for (Eigen::Index j = 0; j < weights_.cols(); ++j) {
        if (weights_(vertex - 1, j) != Complex{0.0, 0.0}) ++d;
    }
    return d;
}

double HermitianGraph::max_abs_weight() const {
    return weights_.cwiseAbs().maxCoeff();
}

double HermitianGraph::max_weighted_degree() const {
    return weights_.cwiseAbs().rowwise().sum().maxCoeff();
}

std::vector<WeightedEdge> HermitianGraph::edges() const {
    std::vector<WeightedEdge> out;
    const int n = vertex_count();
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const Complex w = weights_(i - 1, j - 1);
            if (w != Complex{0.0, 0.0}) out.push_back({i, j, w});
        }
    }
    return out;
}

bool is_valid_decomposition(const HermitianGraph& g, const BranchDecomposition& d) {
    if (d.branches.empty()) return false;
    if (d.source_vertices.size() != d.branches.size()) return false;
    const int n = g.vertex_count();
    if (d.merge_vertex < 1 || d.merge_vertex > n) return false;

    const std::size_t length = d.branches.front().size();
    std::set<std::pair<int, int>> used_edges;
    for (std::size_t p = 0; p < d.branches.size(); ++p) {
        const auto& branch = d.branches[p];
        if (branch.size() != length || branch.size() < 2) return false;
        if (branch.front() != d.source_vertices[p]) return false;
        if (branch.back() != d.merge_vertex) return false;
        std::set<int> distinct(branch.begin(), branch.end());
        if (distinct.size() != branch.size()) return false;
        for (std::size_t q = 0; q + 1 < branch.size(); ++q) {
            const int u = branch[q];
            const int v = branch[q + 1];
            if (u < 1 || u > n || v < 1 || v > n) return false;
            if (!g.has_edge(u, v)) return false;
            if (!used_edges.insert(std::minmax(u, v)).second) return false;  // shared edge
        }
    }
    return true;
}

void require_valid_decomposition(const HermitianGraph& g, const BranchDecomposition& d) {
    if (!is_valid_decomposition(g, d)) {
        throw InvalidParamsError("branch decomposition does not match the graph");
    }
}

HermitianGraph path_graph(int n) {
    if (n < 1) throw InvalidParamsError("path_graph needs n >= 1");
    std::vector<WeightedEdge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({v, v + 1, Complex{1.0, 0.0}});
    return HermitianGraph(n, edges);
}

std::pair<HermitianGraph, BranchDecomposition> merged_star_type1(const GraphFamilyParams& params) {
    const int b = params.branch_count;
    const int n = params.branch_vertices;
    if (b < 1 || n < 2) {
        throw InvalidParamsError("type-1 family needs branch_count >= 1 and branch_vertices >= 2");
    }
    const int total = (n - 1) * b + 1;
    const int merge = total;

    std::vector<WeightedEdge> edges;
    BranchDecomposition d;
    d.merge_vertex = merge;
    for (int p = 1; p <= b; ++p) {
        std::vector<int> branch;
        for (int q = 1; q <= n - 1; ++q) branch.push_back((n - 1) * (p - 1) + q);
        branch.push_back(merge);
        for (std::size_t q = 0; q + 1 < branch.size(); ++q) {
            edges.push_back({branch[q], branch[q + 1], Complex{1.0, 0.0}});
        }
        d.source_vertices.push_back(branch.front());
        d.branches.push_back(std::move(branch));
    }
    return {HermitianGraph(total, edges), std::move(d)};
}

std::pair<HermitianGraph, BranchDecomposition> merged_star_type2(const GraphFamilyParams& params) {
    const int b = params.branch_count;
    const int n = params.branch_vertices;
    if (b < 2 || n < 3) {
        throw InvalidParamsError("type-2 family needs branch_count >= 2 and branch_vertices >= 3");
    }
    const int total = (n - 2) * b + 2;
    const int merge = total;

    std::vector<WeightedEdge> edges;
    BranchDecomposition d;
    d.merge_vertex = merge;
    for (int p = 1; p <= b; ++p) {
        std::vector<int> branch;
        branch.push_back(1);
        for (int q = 1; q <= n - 2; ++q) branch.push_back((n - 2) * (p - 1) + 1 + q);
        branch.push_back(merge);
        for (std::size_t q = 0; q + 1 < branch.size(); ++q) {
            edges.push_back({branch[q], branch[q + 1], Complex{1.0, 0.0}});
        }
        d.source_vertices.push_back(1);
        d.branches.push_back(std::move(branch));
    }
    return {HermitianGraph(total, edges), std::move(d)};
}

std::pair<HermitianGraph, std::optional<BranchDecomposition>> cycle_graph(int n) {
    if (n < 3) throw InvalidParamsError("cycle_graph needs n >= 3");
    if (n % 2 == 0) {
        auto [g, d] = merged_star_type2({2, n / 2 + 1});
        return {std::move(g), std::move(d)};
    }
    std::vector<WeightedEdge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({v, v + 1, Complex{1.0, 0.0}});
    edges.push_back({n, 1, Complex{1.0, 0.0}});
    return {HermitianGraph(n, edges), std::nullopt};
}

HermitianGraph spanning_branch_subgraph(const HermitianGraph& g, const BranchDecomposition& d,
                                        int branch) {
    require_valid_decomposition(g, d);
    if (branch < 1 || branch > d.branch_count()) {
        throw InvalidBranchIndexError("branch index " + std::to_string(branch) + " outside 1.." +
                                      std::to_string(d.branch_count()));
    }
    ComplexMatrix w = ComplexMatrix::Zero(g.vertex_count(), g.vertex_count());
    const auto& path = d.branches[static_cast<std::size_t>(branch - 1)];
    for (std::size_t q = 0; q + 1 < path.size(); ++q) {
        const int u = path[q];
        const int v = path[q + 1];
        w(u - 1, v - 1) = g.weights()(u - 1, v - 1);
        w(v - 1, u - 1) = g.weights()(v - 1, u - 1);
    }
    return HermitianGraph::from_weights(std::move(w));
}

}  // namespace chiralwalk

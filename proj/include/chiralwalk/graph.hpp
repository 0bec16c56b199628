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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chiralwalk/errors.hpp"

namespace chiralwalk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// One undirected edge with a complex hopping amplitude. Vertices are 1-based
/// everywhere in the public interface; the weight is stored on (i, j) and its
/// conjugate on (j, i).
struct WeightedEdge {
    int i = 0;
    int j = 0;
    Complex weight{1.0, 0.0};
};

/// Dense complex-Hermitian weight matrix of an undirected graph with no
/// self-loops. The constructor guarantees weights(i,j) == conj(weights(j,i))
/// exactly and a zero diagonal; instances are immutable afterwards.
class HermitianGraph {
public:
    HermitianGraph(int vertex_count, const std::vector<WeightedEdge>& edges);

    /// Wraps an existing matrix, rejecting anything that is not exactly
    /// Hermitian with a zero diagonal.
    static HermitianGraph from_weights(ComplexMatrix weights);

    int vertex_count() const { return static_cast<int>(weights_.rows()); }
    const ComplexMatrix& weights() const { return weights_; }

    Complex weight(int i, int j) const;
    bool has_edge(int i, int j) const { return weight(i, j) != Complex{0.0, 0.0}; }
    int degree(int vertex) const;
    double max_abs_weight() const;
    /// Largest weighted degree, a Gershgorin bound on the spectral radius.
    double max_weighted_degree() const;

    /// Upper-triangle edge list (i < j, nonzero weight), in row-major order.
    std::vector<WeightedEdge> edges() const;
    int edge_count() const { return static_cast<int>(edges().size()); }

private:
    explicit HermitianGraph(ComplexMatrix weights) : weights_(std::move(weights)) {}

    ComplexMatrix weights_;
};

/// Parameters of the merged-path graph families: `branch_count` edge-disjoint
/// paths of `branch_vertices` vertices each, glued at one or both ends.
struct GraphFamilyParams {
    int branch_count = 0;     // b
    int branch_vertices = 0;  // n, vertices per branch including merge vertices
};

/// The b equal-length, edge-disjoint paths that meet at `merge_vertex`.
/// Each branch is listed in traversal order from its source vertex to the
/// merge vertex; branches never share an edge.
struct BranchDecomposition {
    std::vector<std::vector<int>> branches;
    int merge_vertex = 0;
    std::vector<int> source_vertices;

    int branch_count() const { return static_cast<int>(branches.size()); }
};

/// True when `d` describes edge-disjoint equal-length paths of `g` that all
/// terminate at the merge vertex and start at the listed sources.
bool is_valid_decomposition(const HermitianGraph& g, const BranchDecomposition& d);
void require_valid_decomposition(const HermitianGraph& g, const BranchDecomposition& d);

/// Unweighted path of n vertices: weight 1 exactly between consecutive labels.
HermitianGraph path_graph(int n);

/// Star-of-paths family: b paths of n vertices sharing their final vertex.
/// Branch p occupies vertices (n-1)(p-1)+1 ... (n-1)p and every branch ends at
/// vertex (n-1)b+1.
std::pair<HermitianGraph, BranchDecomposition> merged_star_type1(const GraphFamilyParams& params);

/// Doubly-merged family: b internally disjoint paths of n vertices from vertex
/// 1 to vertex (n-2)b+2. Branch p's interior is (n-2)(p-1)+2 ... (n-2)p+1.
std::pair<HermitianGraph, BranchDecomposition> merged_star_type2(const GraphFamilyParams& params);

/// Cycle graph C_n (n >= 3). Even cycles are built as two merged branches, so
/// vertex n sits antipodal to vertex 1 and a decomposition is available; odd
/// cycles use plain ring labeling and carry no decomposition.
std::pair<HermitianGraph, std::optional<BranchDecomposition>> cycle_graph(int n);

/// Spanning subgraph keeping only the edges of branch `branch` (1-based),
/// weights copied from g. All vertices are retained.
HermitianGraph spanning_branch_subgraph(const HermitianGraph& g, const BranchDecomposition& d,
                                        int branch);

}  // namespace chiralwalk

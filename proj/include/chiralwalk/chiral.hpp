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

#ifndef CHIRALWALK_CHIRAL_HPP_
#define CHIRALWALK_CHIRAL_HPP_

#include <vector>

#include "chiralwalk/graph.hpp"

namespace chiralwalk {

// A phase alpha attached to the directed edge (i, j).  Applying it multiplies
// the weight g(i, j) by e^{+i alpha}; the reverse entry (j, i) picks up the
// conjugate so the result stays Hermitian.
struct PhasedEdge {
    int i = 0;
    int j = 0;
    double phase = 0.0;
};

class ChiralPhaseAssignment {
   public:
    ChiralPhaseAssignment() = default;
    explicit ChiralPhaseAssignment(const std::vector<PhasedEdge>& entries);

    const std::vector<PhasedEdge>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    // Signed phase picked up when traversing from -> to: +alpha along the
    // stored direction, -alpha against it, 0 when the pair carries no entry.
    double traversal_phase(int from, int to) const;
    bool covers(int i, int j) const;

    ChiralPhaseAssignment negated() const;

   private:
    std::vector<PhasedEdge> entries_;
};

// Accumulated traversal phase along each branch, source to merge vertex.
struct BranchPhaseSums {
    std::vector<double> sums;
};

HermitianGraph apply_phases(const HermitianGraph& g, const ChiralPhaseAssignment& phases);

BranchPhaseSums branch_phase_sums(const BranchDecomposition& d,
                                  const ChiralPhaseAssignment& phases);

// | sum_p e^{-i S_p} | for branch sums S_p.  Zero exactly when the branch
// amplitudes interfere destructively at the merge vertex.
double zero_transfer_residual(const BranchPhaseSums& sums);

// Chooses one phased edge per branch so the branch phasors are the b-th roots
// of unity.  Requires at least two branches.
ChiralPhaseAssignment plan_zero_transfer(const BranchDecomposition& d);

// Amplitudes of the same walk under the phased Hamiltonian, computed from the
// unphased amplitudes of a path graph via the diagonal gauge map.  The path
// runs 1..n in label order and `start_vertex` is where the walker began.
ComplexVector gauge_amplitudes(const ComplexVector& plain_amplitudes,
                               const ChiralPhaseAssignment& phases, int start_vertex);

}  // namespace chiralwalk

#endif  // CHIRALWALK_CHIRAL_HPP_

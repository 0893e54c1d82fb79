// Copyright 2025 The rydtqd Authors
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

#include <map>
#include <string>

#include "rydtqd/core.hpp"

namespace rydtqd::reduction {

// R = pi2 Q P2 pi1 P1 and its factors, all real 25x25.
//  P1  moves {0,1,r}x{0,1,r} to the first nine slots, ordered
//      |00>,|01>,|0r>,|10>,|r0>,|11>,|1r>,|r1>,|rr>; pi1 keeps those nine.
//  P2  brings |11>,|1r>,|r1>,|rr> to the front of the nine-block.
//  Q   rotates (|1r>,|r1>) to (|+>,|->); pi2 keeps |11>,|+>.
struct ReductionOperator {
  core::Matrix P1, pi1, P2, Q, pi2, R;
};

ReductionOperator build_reduction();

// Label -> 25-dim basis index, plus the symmetric/antisymmetric combinations.
struct SubspaceMap {
  std::map<std::string, unsigned> index;
  core::StateVector plus() const;
  core::StateVector minus() const;
};
const SubspaceMap& subspace_map();

// C_M(h) = M h M^T.
core::Matrix conjugate(const core::Matrix& m, const core::Matrix& h);

// Top-left 2x2 block of C_R(h25): the effective operator on span{|11>, |+>}.
core::Matrix project_effective(const core::Matrix& h25);
// R^T (h2 (+) 0_23) R.
core::Matrix lift_effective(const core::Matrix& h2);

}  // namespace rydtqd::reduction

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

#include "rydtqd/reduction.hpp"

#include <cmath>
#include <vector>

#include "rydtqd/atom.hpp"

namespace rydtqd::reduction {

namespace {

using atom::kOne;
using atom::kPairDim;
using atom::kR;
using atom::kZero;
using atom::pair_index;

// Permutation matrix sending basis index order[k] to slot k; remaining indices keep their order.
core::Matrix permutation(const std::vector<unsigned>& order, std::size_t n) {
  std::vector<bool> used(n, false);
  std::vector<unsigned> full(order);
  for (unsigned k : order) used[k] = true;
  for (unsigned k = 0; k < n; ++k)
    if (!used[k]) full.push_back(k);
  core::Matrix p(n, n);
  for (std::size_t k = 0; k < n; ++k) p(k, full[k]) = 1.0;
  return p;
}

core::Matrix leading_projector(std::size_t keep, std::size_t n) {
  core::Matrix p(n, n);
  for (std::size_t k = 0; k < keep; ++k) p(k, k) = 1.0;
  return p;
}

ReductionOperator make() {
  ReductionOperator r;
  const std::vector<unsigned> nine{pair_index(kZero, kZero), pair_index(kZero, kOne), pair_index(kZero, kR),
                                   pair_index(kOne, kZero),  pair_index(kR, kZero),   pair_index(kOne, kOne),
                                   pair_index(kOne, kR),     pair_index(kR, kOne),    pair_index(kR, kR)};
  r.P1 = permutation(nine, kPairDim);
  r.pi1 = leading_projector(9, kPairDim);
  // Slots 5..8 of the nine-block hold |11>,|1r>,|r1>,|rr>.
  r.P2 = permutation({5, 6, 7, 8}, kPairDim);
  r.Q = core::Matrix::identity(kPairDim);
  const double s = 1.0 / std::sqrt(2.0);
  r.Q(1, 1) = s;
  r.Q(1, 2) = s;
  r.Q(2, 1) = s;
  r.Q(2, 2) = -s;
  r.pi2 = leading_projector(2, kPairDim);
  r.R = r.pi2 * r.Q * r.P2 * r.pi1 * r.P1;
  return r;
}

}  // namespace

ReductionOperator build_reduction() { return make(); }

const SubspaceMap& subspace_map() {
  static const SubspaceMap m = [] {
    SubspaceMap s;
    const char labels[5] = {'0', '1', 'g', 'p', 'r'};
    for (unsigned a = 0; a < atom::kLevels; ++a)
      for (unsigned b = 0; b < atom::kLevels; ++b)
        s.index[std::string{labels[a], labels[b]}] = pair_index(a, b);
    return s;
  }();
  return m;
}

core::StateVector SubspaceMap::plus() const {
  core::StateVector v{std::vector<cplx>(kPairDim)};
  v[pair_index(kOne, kR)] = 1.0 / std::sqrt(2.0);
  v[pair_index(kR, kOne)] = 1.0 / std::sqrt(2.0);
  return v;
}

core::StateVector SubspaceMap::minus() const {
  core::StateVector v{std::vector<cplx>(kPairDim)};
  v[pair_index(kOne, kR)] = 1.0 / std::sqrt(2.0);
  v[pair_index(kR, kOne)] = -1.0 / std::sqrt(2.0);
  return v;
}

core::Matrix conjugate(const core::Matrix& m, const core::Matrix& h) { return m * h * m.transpose(); }

core::Matrix project_effective(const core::Matrix& h25) {
  if (h25.rows() != kPairDim || h25.cols() != kPairDim) throw InvalidArgument("project_effective needs a 25x25 matrix");
  static const ReductionOperator r = make();
  const core::Matrix c = conjugate(r.R, h25);
  core::Matrix out(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = c(i, j);
  return out;
}

core::Matrix lift_effective(const core::Matrix& h2) {
  if (h2.rows() != 2 || h2.cols() != 2) throw InvalidArgument("lift_effective needs a 2x2 matrix");
  static const ReductionOperator r = make();
  core::Matrix padded(kPairDim, kPairDim);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) padded(i, j) = h2(i, j);
  return r.R.transpose() * padded * r.R;
}

}  // namespace rydtqd::reduction

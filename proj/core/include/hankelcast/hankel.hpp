/*
 Copyright 2026 The hankelcast Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef HANKELCAST_HANKEL_HPP
#define HANKELCAST_HANKEL_HPP

#include <span>

#include "hankelcast/linalg.hpp"

namespace hankelcast {

/**
 * @brief Depth-k Hankel matrix of a q-wide signal, or a horizontal mosaic of
 * several such matrices.
 *
 * Block (i, j) holds w(i + j). Void blocks keep their logical shape: a
 * signal shorter than the depth produces a (q k) x 0 matrix, never an
 * untyped "empty" one.
 */
class HankelBlock {
 public:
  /// Throws DimensionError unless data has depth * signal_width rows.
  HankelBlock(Matrix data, Index depth, Index signal_width);

  const Matrix& data() const { return data_; }
  Index depth() const { return depth_; }
  Index signal_width() const { return width_; }
  Index columns() const { return data_.cols(); }
  bool is_void() const { return data_.rows() == 0 || data_.cols() == 0; }

  /// Rows of block rows [first, first + count).
  Matrix block_rows(Index first, Index count) const;

 private:
  Matrix data_;
  Index depth_;
  Index width_;
};

/// Depth-k Hankel matrix of w (q x T). Void (q k x 0) when T < k.
HankelBlock hankel(const Matrix& w, Index depth);

/// Horizontal concatenation of blocks sharing depth and signal width.
/// Void blocks contribute no columns. Throws DimensionError on a mismatch or
/// an empty list.
HankelBlock mosaic(std::span<const HankelBlock> blocks);

/// Past/future row split of a pair of (mosaic) Hankel matrices.
struct HankelPartition {
  Matrix past_inputs;     ///< m * past_depth rows
  Matrix future_inputs;   ///< m * future_depth rows
  Matrix past_outputs;    ///< p * past_depth rows
  Matrix future_outputs;  ///< p * future_depth rows

  Index columns() const { return past_inputs.cols(); }
};

/// Splits input/output Hankel blocks of depth past_depth + future_depth.
HankelPartition split_partition(const HankelBlock& inputs, const HankelBlock& outputs,
                                Index past_depth);

/// Builds H_{past+future}(u), H_{past+future}(y) and splits their rows into
/// (U_p, U_f, Y_p, Y_f).
HankelPartition stack_partition(const Matrix& u, const Matrix& y, Index past_depth,
                                Index future_depth);

/// rank H_order(u) == m * order.
bool is_persistently_exciting(const Matrix& u, Index order,
                              double rank_tol = kDefaultRankTol);

}  // namespace hankelcast

#endif  // HANKELCAST_HANKEL_HPP

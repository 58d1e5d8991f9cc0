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
#include "hankelcast/hankel.hpp"

#include <string>
#include <utility>

#include "hankelcast/errors.hpp"

namespace hankelcast {

HankelBlock::HankelBlock(Matrix data, Index depth, Index signal_width)
    : data_(std::move(data)), depth_(depth), width_(signal_width) {
  if (depth_ < 0 || width_ < 0 || data_.rows() != depth_ * width_) {
    throw DimensionError("Hankel block with " + std::to_string(data_.rows()) +
                         " rows cannot have depth " + std::to_string(depth_) +
                         " and signal width " + std::to_string(width_));
  }
}

Matrix HankelBlock::block_rows(Index first, Index count) const {
  return data_.middleRows(first * width_, count * width_);
}

HankelBlock hankel(const Matrix& w, Index depth) {
  const Index q = w.rows();
  const Index samples = w.cols();
  const Index cols = samples >= depth ? samples - depth + 1 : 0;
  Matrix h(q * depth, cols);
  for (Index j = 0; j < cols; ++j) {
    h.col(j) = w.middleCols(j, depth).reshaped();
  }
  return HankelBlock(std::move(h), depth, q);
}

HankelBlock mosaic(std::span<const HankelBlock> blocks) {
  if (blocks.empty()) throw DimensionError("mosaic of an empty block list");
  const Index depth = blocks.front().depth();
  const Index width = blocks.front().signal_width();
  Index cols = 0;
  for (const HankelBlock& b : blocks) {
    if (b.depth() != depth || b.signal_width() != width) {
      throw DimensionError("mosaic blocks disagree on depth or signal width");
    }
    cols += b.columns();
  }
  Matrix data(depth * width, cols);
  Index at = 0;
  for (const HankelBlock& b : blocks) {
    data.middleCols(at, b.columns()) = b.data();
    at += b.columns();
  }
  return HankelBlock(std::move(data), depth, width);
}

HankelPartition split_partition(const HankelBlock& inputs, const HankelBlock& outputs,
                                Index past_depth) {
  if (inputs.depth() != outputs.depth() || inputs.columns() != outputs.columns()) {
    throw DimensionError("input and output Hankel blocks have different shapes");
  }
  if (past_depth < 0 || past_depth > inputs.depth()) {
    throw PreconditionError("past depth " + std::to_string(past_depth) +
                            " exceeds Hankel depth " + std::to_string(inputs.depth()));
  }
  const Index future_depth = inputs.depth() - past_depth;
  HankelPartition part;
  part.past_inputs = inputs.block_rows(0, past_depth);
  part.future_inputs = inputs.block_rows(past_depth, future_depth);
  part.past_outputs = outputs.block_rows(0, past_depth);
  part.future_outputs = outputs.block_rows(past_depth, future_depth);
  return part;
}

HankelPartition stack_partition(const Matrix& u, const Matrix& y, Index past_depth,
                                Index future_depth) {
  if (u.cols() != y.cols()) {
    throw DimensionError("input and output signals have different lengths");
  }
  if (past_depth < 0 || future_depth < 0) {
    throw PreconditionError("partition depths must be nonnegative");
  }
  const Index depth = past_depth + future_depth;
  return split_partition(hankel(u, depth), hankel(y, depth), past_depth);
}

bool is_persistently_exciting(const Matrix& u, Index order, double rank_tol) {
  return numerical_rank(hankel(u, order).data(), rank_tol) == u.rows() * order;
}

}  // namespace hankelcast

// Copyright 2026 The qotm developers
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

#include <array>
#include <cstdint>

namespace qotm {

// One block of the Philox-4x32-10 counter-based generator.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr,
                                   std::array<uint32_t, 2> key);

// Splittable counter-based random stream. A stream is (key, stream-id); the
// block index is the low half of the 128-bit Philox counter, the stream id
// the high half. child(i) derives an independent stream by running Philox
// over (i, stream-id) and is invariant under how much the parent has drawn,
// so per-trial substreams are reproducible regardless of evaluation order.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed);

  RandomStream child(uint64_t index) const;

  uint32_t next_u32();
  uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on {0, 1}.
  int bit();
  // Uniform on [0, bound); rejection-sampled, bound >= 1.
  uint64_t below(uint64_t bound);

 private:
  RandomStream(std::array<uint32_t, 2> key, std::array<uint32_t, 2> stream);
  void refill();

  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 2> stream_;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buf_{};
  int buf_pos_ = 4;
};

}  // namespace qotm

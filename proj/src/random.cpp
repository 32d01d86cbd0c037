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

#include "qotm/random.hpp"

#include <stdexcept>

namespace qotm {

namespace {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<uint32_t, 4> round_once(const std::array<uint32_t, 4>& c,
                                          const std::array<uint32_t, 2>& k) {
  const uint64_t p0 = uint64_t{kMul0} * c[0];
  const uint64_t p1 = uint64_t{kMul1} * c[2];
  return {static_cast<uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
          static_cast<uint32_t>(p1),
          static_cast<uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
          static_cast<uint32_t>(p0)};
}

}  // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr,
                                   std::array<uint32_t, 2> key) {
  for (int r = 0; r < 9; ++r) {
    ctr = round_once(ctr, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return round_once(ctr, key);
}

RandomStream::RandomStream(uint64_t seed)
    : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
      stream_{0, 0} {}

RandomStream::RandomStream(std::array<uint32_t, 2> key,
                           std::array<uint32_t, 2> stream)
    : key_(key), stream_(stream) {}

RandomStream RandomStream::child(uint64_t index) const {
  const std::array<uint32_t, 4> ctr = {static_cast<uint32_t>(index),
                                       static_cast<uint32_t>(index >> 32),
                                       stream_[0], stream_[1]};
  // Two blocks with distinct key tweaks give 128 derived bits: 64 for the
  // child key, 64 for the child stream id.
  const auto a = philox4x32(ctr, {key_[0] ^ 0x243F6A88u, key_[1]});
  return RandomStream({a[0], a[1]}, {a[2], a[3]});
}

void RandomStream::refill() {
  ++block_;
  buf_ = philox4x32({static_cast<uint32_t>(block_),
                     static_cast<uint32_t>(block_ >> 32), stream_[0],
                     stream_[1]},
                    key_);
  buf_pos_ = 0;
}

uint32_t RandomStream::next_u32() {
  if (buf_pos_ == 4) refill();
  return buf_[buf_pos_++];
}

uint64_t RandomStream::next_u64() {
  const uint64_t lo = next_u32();
  const uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int RandomStream::bit() { return static_cast<int>(next_u32() & 1u); }

uint64_t RandomStream::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("below: bound must be >= 1");
  const uint64_t limit = bound * (~uint64_t{0} / bound);
  uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % bound;
}

}  // namespace qotm

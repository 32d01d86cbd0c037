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

#include <cstdint>
#include <string>
#include <string_view>

#include "qotm/random.hpp"

namespace qotm {

// Bit string of length n <= 63. Bit i is stored at shift (n-1-i) so that
// to_index() is the amplitude index under the global convention that qubit 0
// is the most significant bit.
class BitString {
 public:
  BitString() : n_(0), bits_(0) {}
  BitString(int n, uint64_t index_bits);

  static BitString zeros(int n) { return BitString(n, 0); }
  static BitString from_index(uint64_t amp_index, int n) {
    return BitString(n, amp_index);
  }
  static BitString from_string(std::string_view s);
  static BitString random(int n, RandomStream& rng);

  int size() const { return n_; }
  int bit(int i) const { return static_cast<int>((bits_ >> shift(i)) & 1u); }
  void set_bit(int i, int v);

  uint64_t to_index() const { return bits_; }
  std::string str() const;

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const BitString& a, const BitString& b) {
    return !(a == b);
  }

 private:
  int shift(int i) const { return n_ - 1 - i; }
  int n_;
  uint64_t bits_;
};

enum class Basis { rectilinear = 0, diagonal = 1 };

// Basis choice per qubit, rendered as '+' (rectilinear) and 'x' (diagonal).
// diagonal_mask() is aligned with BitString::to_index (qubit 0 most
// significant) so position checks reduce to mask arithmetic.
class BasisString {
 public:
  BasisString() : n_(0), diag_(0) {}
  BasisString(int n, uint64_t diag_mask);

  static BasisString from_string(std::string_view s);
  static BasisString random(int n, RandomStream& rng);

  int size() const { return n_; }
  Basis basis(int i) const {
    return ((diag_ >> (n_ - 1 - i)) & 1u) ? Basis::diagonal
                                          : Basis::rectilinear;
  }
  uint64_t diagonal_mask() const { return diag_; }
  int count_diagonal() const;
  std::string str() const;

  friend bool operator==(const BasisString& a, const BasisString& b) {
    return a.n_ == b.n_ && a.diag_ == b.diag_;
  }

 private:
  int n_;
  uint64_t diag_;
};

// The sender's secret: x in {0,1}^n and theta in {+,x}^n.
struct BB84Key {
  BitString x;
  BasisString theta;

  int n() const { return x.size(); }
};

BB84Key random_key(int n, RandomStream& rng);

}  // namespace qotm

#pragma once

#include <string>

#include "sds/bitvec_core.hpp"

namespace fixtures {

// 58-bit string with rank/select annotations.
inline const std::string kSample58 = "1001 0100 1110 0100 1101 0000 1111 0100 1001 1001 0100 0100 0101 0101 10";

// Sample tree, nodes numbered 1..10 in level order.
inline const std::string kSampleTree = "(1 (2 (5) (6)) (3) (4 (7) (8 (10)) (9)))";

// Encoding of the sample tree under a super-root (21 bits).
inline const sds::BitSeq kLoudsT = {1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0};

// Dynamic bit vector example: 5 leaves of 8 bits.
inline const std::string kSampleDump = R"(
(Black 16 3
  (Black 8 2
    [10000010]
    [00000100])
  (Black 16 5
    (Red 8 2
      [00001010]
      [00001011])
    [10000001]))
)";

inline const std::string kSampleDumpBits = "10000010 00000100 00001010 00001011 10000001";

// Deletion base cases (low = 3).
inline const std::string kBorrowBefore = "(Black [100] (Red [1011] [111]))";
inline const std::string kMergeBefore = "(Black [100] (Red [101] [1111]))";

} // namespace fixtures

#pragma once

#include "revised/eventlog/types.hpp"

namespace revised::eventlog {

// One-hot encodes a preprocessed trace (EoS present exactly once, length
// <= max_len). Rows past the EoS row stay all-zero.
EncodedTrace encode_trace(const Trace& trace, const Vocabulary& vocab, std::size_t max_len);

// One-hot encodes an arbitrary activity sequence, masking after the first
// EoS if one is present. Used for decoded counterfactual candidates and
// nearest-neighbour lookups, which need not satisfy the strict trace
// invariants.
EncodedTrace one_hot(const std::vector<ActivityId>& activities, const Vocabulary& vocab,
                     std::size_t max_len);

// Hard-decodes a probability matrix: per-row argmax (ties toward the lowest
// activity id), truncated at and including the first EoS. If no EoS row
// appears the full length is kept and has_eos is false.
DecodedTrace decode_matrix(const Mat& matrix, const Vocabulary& vocab);

}  // namespace revised::eventlog

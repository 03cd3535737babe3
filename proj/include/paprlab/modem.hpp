#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paprlab/signal.hpp"

namespace paprlab {

// Constellation with Gray labeling and unit average symbol energy.
// points[label] is the mapped symbol for the bit group read MSB-first.
struct ConstellationScheme {
    std::string name;
    int bits_per_symbol = 0;
    std::vector<cplx> points;
};

// name is "qpsk" or "qam16".
// qpsk:  (b0,b1) -> ((1-2 b0) + j(1-2 b1)) / sqrt(2), so 00 maps to (+1+j)/sqrt(2).
// qam16: per-axis Gray map of 2 bits onto {+3,+1,-1,-3}/sqrt(10); first bit pair
//        drives the real axis, second the imaginary axis; 00 is the most positive level.
ConstellationScheme make_scheme(const std::string& name);

struct BitStream {
    std::vector<uint8_t> bits;
    uint64_t master_seed = 0;
    uint64_t stream_index = 0;
};

// Deterministic function of (master_seed, stream_index).
BitStream generate_bits(size_t count, uint64_t master_seed, uint64_t stream_index);

std::vector<cplx> map_bits(const BitStream& stream, const ConstellationScheme& scheme);

// Minimum-distance decision per symbol. Boundary ties go to the smaller label.
BitStream demap_symbols(const std::vector<cplx>& symbols, const ConstellationScheme& scheme);

} // namespace paprlab

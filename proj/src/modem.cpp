#include "paprlab/modem.hpp"

#include <cmath>

#include "paprlab/errors.hpp"
#include "paprlab/rng.hpp"

namespace paprlab {

namespace {

// 2-bit Gray sequence 00, 01, 11, 10 walks the axis levels in descending order.
int gray2_index(int b0, int b1) {
    static const int table[4] = {0, 1, 3, 2}; // b0b1 as binary -> level index
    return table[(b0 << 1) | b1];
}

} // namespace

ConstellationScheme make_scheme(const std::string& name) {
    ConstellationScheme s;
    if (name == "qpsk") {
        s.name = name;
        s.bits_per_symbol = 2;
        s.points.resize(4);
        double a = 1.0 / std::sqrt(2.0);
        for (int label = 0; label < 4; ++label) {
            int b0 = (label >> 1) & 1, b1 = label & 1;
            s.points[label] = cplx((1 - 2 * b0) * a, (1 - 2 * b1) * a);
        }
        return s;
    }
    if (name == "qam16") {
        s.name = name;
        s.bits_per_symbol = 4;
        s.points.resize(16);
        const double lv[4] = {3.0, 1.0, -1.0, -3.0};
        double a = 1.0 / std::sqrt(10.0);
        for (int label = 0; label < 16; ++label) {
            int b0 = (label >> 3) & 1, b1 = (label >> 2) & 1;
            int b2 = (label >> 1) & 1, b3 = label & 1;
            s.points[label] = cplx(lv[gray2_index(b0, b1)] * a, lv[gray2_index(b2, b3)] * a);
        }
        return s;
    }
    throw config_error("unknown constellation scheme: " + name);
}

BitStream generate_bits(size_t count, uint64_t master_seed, uint64_t stream_index) {
    if (count == 0) throw config_error("generate_bits: count must be positive");
    BitStream out;
    out.master_seed = master_seed;
    out.stream_index = stream_index;
    out.bits.resize(count);
    StreamRng rng(master_seed, stream_index);
    for (size_t i = 0; i < count; ++i) out.bits[i] = static_cast<uint8_t>(rng.next_bit());
    return out;
}

std::vector<cplx> map_bits(const BitStream& stream, const ConstellationScheme& scheme) {
    size_t bps = static_cast<size_t>(scheme.bits_per_symbol);
    if (stream.bits.size() % bps != 0)
        throw config_error("map_bits: bit count not divisible by bits_per_symbol");
    std::vector<cplx> out(stream.bits.size() / bps);
    for (size_t i = 0; i < out.size(); ++i) {
        int label = 0;
        for (size_t b = 0; b < bps; ++b) label = (label << 1) | stream.bits[i * bps + b];
        out[i] = scheme.points[label];
    }
    return out;
}

BitStream demap_symbols(const std::vector<cplx>& symbols, const ConstellationScheme& scheme) {
    if (symbols.empty()) throw config_error("demap_symbols: empty input");
    size_t bps = static_cast<size_t>(scheme.bits_per_symbol);
    BitStream out;
    out.bits.resize(symbols.size() * bps);
    for (size_t i = 0; i < symbols.size(); ++i) {
        int best = 0;
        double best_d = std::norm(symbols[i] - scheme.points[0]);
        for (int label = 1; label < static_cast<int>(scheme.points.size()); ++label) {
            double d = std::norm(symbols[i] - scheme.points[label]);
            if (d < best_d) { // strict: ties keep the smaller label
                best_d = d;
                best = label;
            }
        }
        for (size_t b = 0; b < bps; ++b)
            out.bits[i * bps + b] = static_cast<uint8_t>((best >> (bps - 1 - b)) & 1);
    }
    return out;
}

} // namespace paprlab

#pragma once
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tracelab/intervals.hpp"
#include "tracelab/measure.hpp"

namespace tracelab {

// FNV-1a 64-bit hash, rendered as 16 lowercase hex digits.  Used to stamp
// every output file with the run manifest it came from.
std::string fnv1a_hex(const std::string& bytes);

// shortest round-trippable decimal with 12 significant digits (%.12g)
std::string format_g12(double v);

// "# manifest <hash>" then a column-name header line, then the rows verbatim.
// All cells are preformatted strings so byte-identical output is trivial to
// guarantee for any worker count.
void write_csv(std::ostream& os, const std::string& manifest_hash,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

// atom,weight rows
void write_measure_csv(std::ostream& os, const std::string& manifest_hash,
                       const SpectralMeasure& m);
// lo,hi rows
void write_intervals_csv(std::ostream& os, const std::string& manifest_hash,
                         const IntervalSet& s);

// binary 16-bit P5 grayscale, big-endian samples, row-major top to bottom,
// manifest hash carried in a comment line of the header
void write_pgm16(std::ostream& os, const std::string& manifest_hash,
                 std::size_t width, std::size_t height,
                 const std::vector<std::uint16_t>& pixels);

}  // namespace tracelab

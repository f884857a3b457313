#pragma once

#include <string>

#include "ltci/cube.hpp"

namespace ltci {

// Binary cube container. Little-endian header:
//   magic "LTCI", version u32, domain u8 (0 = freq-pulse, 1 = range-pulse),
//   K u32, M u32, K_valid u32, fc f64, fs f64, Br f64, PRF f64, sigma2 f64.
// Payload: K*M complex samples, pulse-major (each pulse's K samples
// contiguous), each sample two IEEE-754 doubles (re, im).
struct CubeFile {
    static constexpr std::uint32_t kVersion = 1;

    std::uint8_t domain = 0;  // 0 freq-pulse, 1 range-pulse
    RadarParams params;
    double sigma2 = 0.0;  // noise variance present in the payload
    std::vector<cplx> data;

    FreqPulseCube to_freq_cube() const;
    RangePulseCube to_range_cube() const;
    static CubeFile from(const FreqPulseCube& cube, double sigma2);
    static CubeFile from(const RangePulseCube& cube, double sigma2);
};

// Writes to a temporary file in the same directory, then renames, so a
// failed run leaves no partial output.
void write_cube_file(const std::string& path, const CubeFile& cube);

CubeFile read_cube_file(const std::string& path);

}  // namespace ltci

#include "ltci/cube_io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <vector>

namespace ltci {

namespace {

// The container is explicitly little-endian; assembled bytewise so the
// writer is correct on any host.
void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::vector<unsigned char>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

constexpr std::size_t kHeaderSize = 4 + 4 + 1 + 3 * 4 + 5 * 8;

}  // namespace

FreqPulseCube CubeFile::to_freq_cube() const {
    if (domain != 0) throw ConditionViolated("cube file holds range-pulse data, not freq-pulse");
    FreqPulseCube c(params);
    c.data = data;
    return c;
}

RangePulseCube CubeFile::to_range_cube() const {
    if (domain != 1) throw ConditionViolated("cube file holds freq-pulse data, not range-pulse");
    RangePulseCube c(params);
    c.data = data;
    return c;
}

CubeFile CubeFile::from(const FreqPulseCube& cube, double sigma2) {
    CubeFile f;
    f.domain = 0;
    f.params = cube.params;
    f.sigma2 = sigma2;
    f.data = cube.data;
    return f;
}

CubeFile CubeFile::from(const RangePulseCube& cube, double sigma2) {
    CubeFile f;
    f.domain = 1;
    f.params = cube.params;
    f.sigma2 = sigma2;
    f.data = cube.data;
    return f;
}

void write_cube_file(const std::string& path, const CubeFile& cube) {
    const RadarParams& p = cube.params;
    if (cube.data.size() != static_cast<std::size_t>(p.K) * p.M)
        throw std::invalid_argument("write_cube_file: payload size does not match K*M");

    std::vector<unsigned char> header;
    header.reserve(kHeaderSize);
    header.insert(header.end(), {'L', 'T', 'C', 'I'});
    put_u32(header, CubeFile::kVersion);
    header.push_back(cube.domain);
    put_u32(header, static_cast<std::uint32_t>(p.K));
    put_u32(header, static_cast<std::uint32_t>(p.M));
    put_u32(header, static_cast<std::uint32_t>(p.K_valid));
    put_f64(header, p.fc);
    put_f64(header, p.fs);
    put_f64(header, p.Br);
    put_f64(header, p.PRF);
    put_f64(header, cube.sigma2);

    std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw IoError("cannot open " + tmp + " for writing");
    bool ok = std::fwrite(header.data(), 1, header.size(), f) == header.size();

    std::vector<unsigned char> payload;
    payload.reserve(16 * 4096);
    for (std::size_t i = 0; i < cube.data.size() && ok; ++i) {
        put_f64(payload, cube.data[i].real());
        put_f64(payload, cube.data[i].imag());
        if (payload.size() >= 16 * 4096 || i + 1 == cube.data.size()) {
            ok = std::fwrite(payload.data(), 1, payload.size(), f) == payload.size();
            payload.clear();
        }
    }
    ok = std::fclose(f) == 0 && ok;
    if (!ok) {
        std::remove(tmp.c_str());
        throw IoError("failed writing " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

CubeFile read_cube_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open " + path);
    unsigned char header[kHeaderSize];
    if (std::fread(header, 1, kHeaderSize, f) != kHeaderSize) {
        std::fclose(f);
        throw IoError(path + ": truncated header");
    }
    if (std::memcmp(header, "LTCI", 4) != 0) {
        std::fclose(f);
        throw IoError(path + ": bad magic, not a cube file");
    }
    std::uint32_t version = get_u32(header + 4);
    if (version != CubeFile::kVersion) {
        std::fclose(f);
        throw IoError(path + ": unsupported version " + std::to_string(version));
    }

    CubeFile cube;
    cube.domain = header[8];
    std::uint32_t K = get_u32(header + 9);
    std::uint32_t M = get_u32(header + 13);
    std::uint32_t K_valid = get_u32(header + 17);
    double fc = get_f64(header + 21);
    double fs = get_f64(header + 29);
    double br = get_f64(header + 37);
    double prf = get_f64(header + 45);
    cube.sigma2 = get_f64(header + 53);
    if (cube.domain > 1) {
        std::fclose(f);
        throw IoError(path + ": unknown domain flag");
    }
    try {
        cube.params = RadarParams::create(fc, fs, br, prf, static_cast<int>(M),
                                          static_cast<int>(K), static_cast<int>(K_valid));
    } catch (const std::invalid_argument& e) {
        std::fclose(f);
        throw IoError(path + ": invalid parameters: " + e.what());
    }

    std::size_t count = static_cast<std::size_t>(K) * M;
    std::vector<unsigned char> raw(count * 16);
    if (std::fread(raw.data(), 1, raw.size(), f) != raw.size()) {
        std::fclose(f);
        throw IoError(path + ": truncated payload");
    }
    // Must be exactly K*M samples.
    unsigned char extra;
    if (std::fread(&extra, 1, 1, f) == 1) {
        std::fclose(f);
        throw IoError(path + ": trailing bytes after payload");
    }
    std::fclose(f);

    cube.data.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        cube.data[i] = cplx(get_f64(raw.data() + 16 * i), get_f64(raw.data() + 16 * i + 8));
    return cube;
}

}  // namespace ltci

// state_io.hpp: Density-matrix persistence.
//
// Binary layout (little-endian):
//   offset 0   4 bytes   magic "BHDR"
//   offset 4   1 byte    format version (1)
//   offset 5   3 bytes   reserved, zero
//   offset 8   uint32    n_max
//   offset 12  uint32    dim = (n_max+1)(n_max+2)/2
//   offset 16  dim*dim pairs of float64 (re, im), row-major
//
// Text layout: a header line "bhdimer-state 1 <n_max> <dim>" followed by dim
// lines of 2*dim numbers (re im re im ...) printed with 17 significant digits.

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bhdimer/errors.hpp"
#include "bhdimer/fock.hpp"
#include "bhdimer/liouville.hpp"

namespace bhdimer {

inline constexpr std::array<char, 4> kStateMagic{'B', 'H', 'D', 'R'};
inline constexpr std::uint8_t kStateVersion = 1;

static_assert(std::endian::native == std::endian::little, "state files assume a little-endian host");

struct StoredState {
    int n_max{0};
    DensityMatrix state;
};

inline void write_state_binary(const std::string& path, int n_max, const DensityMatrix& R) {
    if (R.dim() != FockBasis::dim_for(n_max)) {
        throw std::invalid_argument("write_state_binary: dimension does not match n_max");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    const std::array<std::uint8_t, 4> version{kStateVersion, 0, 0, 0};
    const auto nm = static_cast<std::uint32_t>(n_max);
    const auto dim = static_cast<std::uint32_t>(R.dim());
    out.write(kStateMagic.data(), 4);
    out.write(reinterpret_cast<const char*>(version.data()), 4);
    out.write(reinterpret_cast<const char*>(&nm), 4);
    out.write(reinterpret_cast<const char*>(&dim), 4);
    for (int i = 0; i < R.dim(); ++i) {
        for (int j = 0; j < R.dim(); ++j) {
            const double pair[2] = {R(i, j).real(), R(i, j).imag()};
            out.write(reinterpret_cast<const char*>(pair), sizeof(pair));
        }
    }
    if (!out) throw FormatError("write failed for " + path);
}

inline StoredState read_state_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open state file " + path);
    std::array<char, 4> magic{};
    std::array<std::uint8_t, 4> version{};
    std::uint32_t nm = 0, dim = 0;
    in.read(magic.data(), 4);
    in.read(reinterpret_cast<char*>(version.data()), 4);
    in.read(reinterpret_cast<char*>(&nm), 4);
    in.read(reinterpret_cast<char*>(&dim), 4);
    if (!in || magic != kStateMagic) throw FormatError(path + ": not a bhdimer state file");
    if (version[0] != kStateVersion) {
        throw FormatError(path + ": unsupported state version " + std::to_string(version[0]));
    }
    if (nm > 1000 || static_cast<int>(dim) != FockBasis::dim_for(static_cast<int>(nm))) {
        throw FormatError(path + ": inconsistent header (n_max " + std::to_string(nm) + ", dim " +
                          std::to_string(dim) + ")");
    }
    Matrix m(dim, dim);
    for (std::uint32_t i = 0; i < dim; ++i) {
        for (std::uint32_t j = 0; j < dim; ++j) {
            double pair[2];
            in.read(reinterpret_cast<char*>(pair), sizeof(pair));
            m(i, j) = Complex(pair[0], pair[1]);
        }
    }
    if (!in) throw FormatError(path + ": truncated state data");
    in.peek();
    if (!in.eof()) throw FormatError(path + ": trailing bytes after state data");
    return {static_cast<int>(nm), DensityMatrix(std::move(m))};
}

inline void write_state_text(const std::string& path, int n_max, const DensityMatrix& R) {
    if (R.dim() != FockBasis::dim_for(n_max)) {
        throw std::invalid_argument("write_state_text: dimension does not match n_max");
    }
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out << "bhdimer-state " << int(kStateVersion) << ' ' << n_max << ' ' << R.dim() << '\n';
    char buf[64];
    for (int i = 0; i < R.dim(); ++i) {
        for (int j = 0; j < R.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g %.17g", R(i, j).real(), R(i, j).imag());
            out << (j ? " " : "") << buf;
        }
        out << '\n';
    }
    if (!out) throw FormatError("write failed for " + path);
}

inline StoredState read_state_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open state file " + path);
    std::string tag;
    int version = 0, nm = -1, dim = -1;
    in >> tag >> version >> nm >> dim;
    if (!in || tag != "bhdimer-state") throw FormatError(path + ": not a bhdimer text state");
    if (version != kStateVersion) throw FormatError(path + ": unsupported state version");
    if (nm < 0 || nm > 1000 || dim != FockBasis::dim_for(nm)) {
        throw FormatError(path + ": inconsistent header");
    }
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            double re = 0.0, im = 0.0;
            in >> re >> im;
            m(i, j) = Complex(re, im);
        }
    }
    if (!in) throw FormatError(path + ": truncated state data");
    return {nm, DensityMatrix(std::move(m))};
}

// Dispatches on the leading bytes.
inline StoredState read_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open state file " + path);
    char head[4] = {};
    in.read(head, 4);
    if (in.gcount() == 4 && std::memcmp(head, kStateMagic.data(), 4) == 0) return read_state_binary(path);
    return read_state_text(path);
}

} // namespace bhdimer

#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "sdcn/errors.hpp"
#include "sdcn/matrix.hpp"

namespace sdcn {

// Low-level pieces of the flat binary parameter format: an 8-byte magic,
// 64-bit little-endian sizes, then row-major doubles per tensor.

inline void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

inline std::uint64_t read_u64(std::istream& in, const std::string& what) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw FormatError("parameter file truncated reading " + what);
    return v;
}

inline void write_tensor(std::ostream& out, const DenseMatrix& m) {
    write_u64(out, m.rows());
    write_u64(out, m.cols());
    out.write(reinterpret_cast<const char*>(m.data()),
              static_cast<std::streamsize>(m.size() * sizeof(double)));
}

inline DenseMatrix read_tensor(std::istream& in) {
    const std::uint64_t rows = read_u64(in, "tensor rows");
    const std::uint64_t cols = read_u64(in, "tensor cols");
    DenseMatrix m(rows, cols);
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(double)));
    if (!in) throw FormatError("parameter file truncated reading tensor data");
    return m;
}

inline void write_magic(std::ostream& out, const char (&magic)[9]) { out.write(magic, 8); }

inline void expect_magic(std::istream& in, const char (&magic)[9], const std::string& path) {
    char buf[8];
    in.read(buf, 8);
    if (!in || std::string(buf, 8) != std::string(magic, 8))
        throw FormatError(path + ": bad magic, not a parameter file of the expected kind");
}

}  // namespace sdcn

/// @file checkpoint.cpp

#include "blab/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace blab {

namespace {

constexpr char kMagic[4] = {'C', 'B', 'L', 'B'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw std::runtime_error("checkpoint: truncated file");
    return v;
}

double read_f64(std::istream& is) {
    double v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw std::runtime_error("checkpoint: truncated file");
    return v;
}

void write_field(std::ostream& os, const SpectralField& f) {
    for (const cplx& c : f.coeffs) {
        write_f64(os, c.real());
        write_f64(os, c.imag());
    }
}

void read_field(std::istream& is, SpectralField& f) {
    for (cplx& c : f.coeffs) {
        double re = read_f64(is);
        double im = read_f64(is);
        c = cplx(re, im);
    }
}

} // namespace

void save_checkpoint(const std::string& path, const FlowState& state) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(state.u1.grid.K));
    write_u32(os, static_cast<std::uint32_t>(state.u1.grid.J));
    write_f64(os, state.u1.grid.L_Y);
    write_f64(os, state.t);
    write_field(os, state.u1);
    write_field(os, state.u2);
    write_field(os, state.theta);
    if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

FlowState load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[4] = {};
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    std::uint32_t version = read_u32(is);
    if (version != kVersion)
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
    int K = static_cast<int>(read_u32(is));
    int J = static_cast<int>(read_u32(is));
    double L_Y = read_f64(is);
    SpectralGrid grid = make_grid(K, J, L_Y);

    FlowState state;
    state.t = read_f64(is);
    state.u1 = zero_field(grid);
    state.u2 = zero_field(grid);
    state.theta = zero_field(grid);
    read_field(is, state.u1);
    read_field(is, state.u2);
    read_field(is, state.theta);
    if (!is) throw std::runtime_error("checkpoint: truncated file");
    return state;
}

} // namespace blab

#include "acnsf/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "acnsf/operators.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian; big-endian hosts unsupported");

namespace acnsf {

namespace {

constexpr char kMagic[6] = {'A', 'C', 'N', 'S', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw std::runtime_error("experiment_cli.read_checkpoint: truncated checkpoint");
    return v;
}

double get_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw std::runtime_error("experiment_cli.read_checkpoint: truncated checkpoint");
    return v;
}

void put_field(std::ostream& os, const SpectralField& f) {
    std::vector<double> phys = to_physical(f);
    os.write(reinterpret_cast<const char*>(phys.data()),
             static_cast<std::streamsize>(phys.size() * sizeof(double)));
}

SpectralField get_field(std::istream& is, const GridSpec& g) {
    std::vector<double> phys(g.total());
    is.read(reinterpret_cast<char*>(phys.data()),
            static_cast<std::streamsize>(phys.size() * sizeof(double)));
    if (!is) throw std::runtime_error("experiment_cli.read_checkpoint: truncated checkpoint");
    SpectralField f = to_spectral(g, phys);
    const double before = norm_l2(f);
    hermitian_symmetrize(f);
    const double drift = norm_l2(subtract(f, to_spectral(g, phys)));
    if (before > 0.0 && drift > 1e-10 * before)
        throw std::runtime_error(
            "experiment_cli.read_checkpoint: Hermitian symmetry drift beyond tolerance");
    return f;
}

}  // namespace

void write_checkpoint(const ACState& state, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("experiment_cli.write_checkpoint: cannot open " + path);
    const GridSpec& g = state.grid();
    os.write(kMagic, sizeof kMagic);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(g.dim));
    for (int a = 0; a < g.dim; ++a) put_u32(os, static_cast<std::uint32_t>(g.n));
    put_f64(os, g.length);
    put_f64(os, state.eps);
    put_f64(os, state.mu);
    put_f64(os, state.kappa);
    put_f64(os, state.t);
    for (int a = 0; a < g.dim; ++a) put_field(os, state.u[a]);
    put_field(os, state.theta);
    put_field(os, state.p);
    if (!os) throw std::runtime_error("experiment_cli.write_checkpoint: write failed on " + path);
}

ACState read_checkpoint(const std::string& path, const GridSpec* expected) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("experiment_cli.read_checkpoint: cannot open " + path);
    char magic[6];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("experiment_cli.read_checkpoint: not an ACNSF1 checkpoint");
    const std::uint32_t version = get_u32(is);
    if (version != kVersion)
        throw std::runtime_error("experiment_cli.read_checkpoint: unsupported checkpoint version " +
                                 std::to_string(version));
    const std::uint32_t dim = get_u32(is);
    if (dim != 2 && dim != 3)
        throw std::runtime_error("experiment_cli.read_checkpoint: corrupt header (dim)");
    std::uint32_t n = 0;
    for (std::uint32_t a = 0; a < dim; ++a) {
        std::uint32_t na = get_u32(is);
        if (a == 0) n = na;
        if (na != n)
            throw std::runtime_error(
                "experiment_cli.read_checkpoint: non-cubic checkpoints unsupported");
    }
    const double length = get_f64(is);

    GridSpec g;
    if (expected) {
        if (expected->dim != static_cast<int>(dim) || expected->n != static_cast<int>(n))
            throw std::runtime_error(
                "experiment_cli.read_checkpoint: dimension mismatch with requesting grid");
        g = *expected;
    } else {
        g = make_grid(static_cast<int>(dim), static_cast<int>(n), length);
    }

    ACState st;
    st.eps = get_f64(is);
    st.mu = get_f64(is);
    st.kappa = get_f64(is);
    st.t = get_f64(is);
    st.u = VectorField(g);
    for (std::uint32_t a = 0; a < dim; ++a) st.u[a] = get_field(is, g);
    st.theta = get_field(is, g);
    st.p = get_field(is, g);
    st.p.c[0] = cplx{0.0, 0.0};  // pressure is mean-zero by contract
    return st;
}

}  // namespace acnsf

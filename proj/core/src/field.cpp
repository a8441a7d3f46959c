#include "wignerkin/field.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace wignerkin {

SpectralField SpectralField::zeros(const PhaseGrid& g, Rep r) {
    SpectralField f;
    f.grid = g;
    f.rep = r;
    f.values.assign(g.volume(2 * g.d), cplx(0.0, 0.0));
    return f;
}

double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const cplx& z : f.values) s += std::norm(z);
    return std::sqrt(s);
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary field dump assumes a little-endian host");

}  // namespace

void dump_field(const SpectralField& f, std::ostream& os) {
    std::ostringstream hdr;
    hdr.precision(17);
    hdr << "wignerkin-field d=" << f.grid.d << " N=" << f.grid.N << " L=" << f.grid.L
        << " rep=" << (f.rep == Rep::physical ? "physical" : "fourier") << "\n";
    os << hdr.str();
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
}

SpectralField load_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("field dump: missing header");
    int d = 0, N = 0;
    double L = 0.0;
    char repbuf[16] = {0};
    if (std::sscanf(line.c_str(), "wignerkin-field d=%d N=%d L=%lf rep=%15s", &d, &N, &L,
                    repbuf) != 4)
        throw std::runtime_error("field dump: malformed header: " + line);
    SpectralField f;
    f.grid = make_grid(d, N, L);
    f.rep = std::string(repbuf) == "fourier" ? Rep::fourier : Rep::physical;
    f.values.resize(f.grid.volume(2 * d));
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
    if (!is) throw std::runtime_error("field dump: truncated payload");
    return f;
}

void dump_field_file(const SpectralField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    dump_field(f, os);
}

SpectralField load_field_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return load_field(is);
}

}  // namespace wignerkin

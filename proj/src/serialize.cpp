#include "xychain/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <vector>

#include "xychain/errors.hpp"

namespace xychain::mpo {

namespace {

constexpr char kMagic[] = "XYMPO1\n";

static_assert(std::numeric_limits<double>::is_iec559, "IEEE-754 doubles required");

void write_doubles(std::ostream& out, const double* p, size_t n) {
    out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
}

void read_doubles(std::istream& in, double* p, size_t n) {
    in.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw Error("load_mpo: truncated payload");
}

}  // namespace

void save_mpo(const Mpo& m, std::ostream& out) {
    nlohmann::json header;
    header["n_sites"] = m.n_sites();
    header["d"] = Mpo::kPhysDim;
    std::vector<int> dims;
    dims.push_back(1);
    for (int s = 1; s <= m.n_sites(); ++s) dims.push_back(m.site_tensor(s).chi_r);
    header["bond_dims"] = dims;
    header["log_prefactor"] = {m.log_prefactor().real(), m.log_prefactor().imag()};
    header["zero"] = m.is_zero();
    header["canonical"] = m.is_canonical();
    const std::string hs = header.dump();

    out.write(kMagic, sizeof(kMagic) - 1);
    const uint64_t len = hs.size();
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(hs.data(), static_cast<std::streamsize>(hs.size()));

    for (int s = 1; s <= m.n_sites(); ++s) {
        const Tensor3& t = m.site_tensor(s);
        write_doubles(out, reinterpret_cast<const double*>(t.data.data()), 2 * t.data.size());
    }
    for (int b = 1; b <= m.n_sites() - 1; ++b) {
        const auto& l = m.lambda(b);
        write_doubles(out, l.data(), static_cast<size_t>(l.size()));
    }
    if (!out) throw Error("save_mpo: write failed");
}

void save_mpo(const Mpo& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("save_mpo: cannot open " + path);
    save_mpo(m, f);
}

Mpo load_mpo(std::istream& in) {
    char magic[sizeof(kMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::string(magic, sizeof(magic)) != std::string(kMagic, sizeof(magic)))
        throw Error("load_mpo: bad magic");
    uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), sizeof(len));
    if (!in || len > (1u << 20)) throw Error("load_mpo: bad header length");
    std::string hs(len, '\0');
    in.read(hs.data(), static_cast<std::streamsize>(len));
    if (!in) throw Error("load_mpo: truncated header");

    const nlohmann::json header = nlohmann::json::parse(hs);
    const int n = header.at("n_sites").get<int>();
    const int d = header.at("d").get<int>();
    if (n < 1 || d != Mpo::kPhysDim) throw Error("load_mpo: unsupported header");
    const std::vector<int> dims = header.at("bond_dims").get<std::vector<int>>();
    if (static_cast<int>(dims.size()) != n + 1 || dims.front() != 1 || dims.back() != 1)
        throw Error("load_mpo: bad bond dimensions");
    const auto lp = header.at("log_prefactor");
    const Complex log_prefactor(lp.at(0).get<double>(), lp.at(1).get<double>());

    std::vector<Tensor3> tensors;
    tensors.reserve(n);
    for (int s = 0; s < n; ++s) {
        Tensor3 t(dims[s], Mpo::kCompositeDim, dims[s + 1]);
        read_doubles(in, reinterpret_cast<double*>(t.data.data()), 2 * t.data.size());
        tensors.push_back(std::move(t));
    }
    std::vector<linalg::RVector> lambdas;
    for (int b = 0; b < n - 1; ++b) {
        linalg::RVector l(dims[b + 1]);
        read_doubles(in, l.data(), static_cast<size_t>(l.size()));
        lambdas.push_back(std::move(l));
    }
    return MpoBuilder::assemble_canonical(std::move(tensors), std::move(lambdas), log_prefactor,
                                          header.at("zero").get<bool>(),
                                          header.at("canonical").get<bool>());
}

Mpo load_mpo(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("load_mpo: cannot open " + path);
    return load_mpo(f);
}

}  // namespace xychain::mpo

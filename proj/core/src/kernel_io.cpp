#include "sbrg/kernels.hpp"

#include <json.hpp>

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sbrg {

using nlohmann::json;

namespace {
constexpr const char* kMagic = "SBRG-KERNELS";

void append_doubles(std::string& buf, const std::vector<double>& v) {
    std::size_t off = buf.size();
    buf.resize(off + v.size() * sizeof(double));
    std::memcpy(buf.data() + off, v.data(), v.size() * sizeof(double));
}

json kernel_header(const Kernel& k, std::size_t& offset) {
    json h;
    h["m"] = k.m;
    h["n"] = k.n;
    h["masked"] = k.masked;
    h["rgrid"] = {{"r_max", k.rgrid.r_max}, {"n", k.rgrid.n}};
    h["nk"] = k.nk();
    h["val_offset"] = offset;
    offset += k.val.size();
    h["dr_offset"] = offset;
    offset += k.dr.size();
    h["count"] = k.val.size();
    return h;
}

json seq_header(const KernelSequence& seq, std::size_t& offset, std::string& blob) {
    json s;
    s["max_degree"] = seq.max_degree;
    s["xi"] = seq.xi;
    s["even_only"] = seq.even_only;
    json ks = json::array();
    for (const auto& [mn, k] : seq.entries) {
        json h = kernel_header(k, offset);
        h["knodes_offset"] = offset;
        offset += k.knodes.size();
        h["kweights_offset"] = offset;
        offset += k.kweights.size();
        ks.push_back(h);
        append_doubles(blob, k.val);
        append_doubles(blob, k.dr);
        append_doubles(blob, k.knodes);
        append_doubles(blob, k.kweights);
    }
    s["kernels"] = std::move(ks);
    return s;
}

std::vector<double> slice(const std::string& blob, std::size_t off, std::size_t count) {
    std::vector<double> v(count);
    std::memcpy(v.data(), blob.data() + off * sizeof(double), count * sizeof(double));
    return v;
}

Kernel kernel_from_header(const json& h, const std::string& blob) {
    Kernel k;
    k.m = h["m"];
    k.n = h["n"];
    k.masked = h["masked"];
    k.rgrid.r_max = h["rgrid"]["r_max"];
    k.rgrid.n = h["rgrid"]["n"];
    std::size_t count = h["count"];
    std::size_t nk = h["nk"];
    k.val = slice(blob, h["val_offset"], count);
    k.dr = slice(blob, h["dr_offset"], count);
    k.knodes = slice(blob, h["knodes_offset"], nk);
    k.kweights = slice(blob, h["kweights_offset"], nk);
    return k;
}

KernelSequence seq_from_header(const json& s, const std::string& blob) {
    KernelSequence seq;
    seq.max_degree = s["max_degree"];
    seq.xi = s["xi"];
    seq.even_only = s["even_only"];
    for (const auto& h : s["kernels"]) {
        Kernel k = kernel_from_header(h, blob);
        seq.entries[{k.m, k.n}] = std::move(k);
    }
    return seq;
}

void write_file(const std::string& path, const json& header, const std::string& blob) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    std::string h = header.dump();
    out.write(h.data(), static_cast<std::streamsize>(h.size()));
    out.put('\0');
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
}

std::pair<json, std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t z = all.find('\0');
    if (z == std::string::npos) throw std::runtime_error("corrupt kernel snapshot: " + path);
    json header = json::parse(all.substr(0, z));
    if (header.value("magic", "") != kMagic)
        throw std::runtime_error("not a kernel snapshot: " + path);
    return {header, all.substr(z + 1)};
}
} // namespace

void save_kernel_sequence(const KernelSequence& seq, const std::string& path) {
    std::string blob;
    std::size_t offset = 0;
    json header;
    header["magic"] = kMagic;
    header["version"] = 1;
    header["kind"] = "sequence";
    header["sequence"] = seq_header(seq, offset, blob);
    write_file(path, header, blob);
}

KernelSequence load_kernel_sequence(const std::string& path) {
    auto [header, blob] = read_file(path);
    if (header["kind"] != "sequence") throw std::runtime_error("snapshot kind mismatch");
    return seq_from_header(header["sequence"], blob);
}

void save_param_sequence(const ParamKernelSequence& seq, const std::string& path) {
    std::string blob;
    std::size_t offset = 0;
    json header;
    header["magic"] = kMagic;
    header["version"] = 1;
    header["kind"] = "param_sequence";
    header["symmetric"] = seq.symmetric;
    header["zgrid"] = seq.zgrid;
    json families = json::array();
    for (const auto& s : seq.per_z) families.push_back(seq_header(s, offset, blob));
    header["families"] = std::move(families);
    write_file(path, header, blob);
}

ParamKernelSequence load_param_sequence(const std::string& path) {
    auto [header, blob] = read_file(path);
    if (header["kind"] != "param_sequence") throw std::runtime_error("snapshot kind mismatch");
    ParamKernelSequence out;
    out.symmetric = header["symmetric"];
    out.zgrid = header["zgrid"].get<std::vector<double>>();
    for (const auto& s : header["families"]) out.per_z.push_back(seq_from_header(s, blob));
    return out;
}

} // namespace sbrg

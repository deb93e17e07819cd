#include "dopoq/checkpoint.hpp"

#include <cstring>

#include "dopoq/errors.hpp"

namespace dopoq {

namespace {
constexpr char kMagic[8] = {'D', 'O', 'P', 'Q', 'C', 'K', 'P', '1'};

void put(std::ofstream& out, const void* p, std::size_t bytes) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}

bool get(std::ifstream& in, void* p, std::size_t bytes) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
    return static_cast<std::size_t>(in.gcount()) == bytes;
}
} // namespace

CheckpointWriter::CheckpointWriter(const std::string& path, const Params& params)
    : out_(path, std::ios::binary), n_(static_cast<std::uint32_t>(params.n_points)) {
    if (!out_)
        throw NumericalFailure("cannot open checkpoint file: " + path);
    CheckpointHeader h;
    h.n = n_;
    h.delta0 = params.delta0;
    h.delta1 = params.delta1;
    h.pump_E = params.pump_E;
    h.noise_c = params.noise_c;
    h.length_L = params.length_L;
    put(out_, kMagic, sizeof kMagic);
    put(out_, &h.version, sizeof h.version);
    put(out_, &h.n, sizeof h.n);
    put(out_, &h.delta0, sizeof(double) * 5);
}

void CheckpointWriter::append(const FieldState& state) {
    if (state.alpha0.size() != n_ || state.alpha1.size() != n_)
        throw InvalidParameter("checkpoint record size mismatch");
    put(out_, &state.time, sizeof state.time);
    put(out_, state.alpha0.data(), sizeof(cplx) * n_);
    put(out_, state.alpha1.data(), sizeof(cplx) * n_);
    if (!out_)
        throw NumericalFailure("failed writing checkpoint record");
}

CheckpointReader::CheckpointReader(const std::string& path)
    : in_(path, std::ios::binary) {
    if (!in_)
        throw NumericalFailure("cannot open checkpoint file: " + path);
    char magic[8];
    if (!get(in_, magic, sizeof magic) || std::memcmp(magic, kMagic, 8) != 0)
        throw NumericalFailure("not a checkpoint file: " + path);
    if (!get(in_, &header_.version, sizeof header_.version) ||
        header_.version != 1)
        throw NumericalFailure("unsupported checkpoint version in " + path);
    if (!get(in_, &header_.n, sizeof header_.n) ||
        !get(in_, &header_.delta0, sizeof(double) * 5))
        throw NumericalFailure("truncated checkpoint header in " + path);
}

Params CheckpointReader::params_from_header(const Params& base) const {
    Params p = base;
    p.n_points = static_cast<int>(header_.n);
    p.delta0 = header_.delta0;
    p.delta1 = header_.delta1;
    p.pump_E = header_.pump_E;
    p.noise_c = header_.noise_c;
    p.length_L = header_.length_L;
    return p;
}

bool CheckpointReader::next(FieldState& state) {
    double t;
    if (!get(in_, &t, sizeof t)) {
        if (in_.gcount() == 0) return false;
        throw NumericalFailure("truncated checkpoint record");
    }
    state.time = t;
    state.alpha0.resize(header_.n);
    state.alpha1.resize(header_.n);
    if (!get(in_, state.alpha0.data(), sizeof(cplx) * header_.n) ||
        !get(in_, state.alpha1.data(), sizeof(cplx) * header_.n))
        throw NumericalFailure("truncated checkpoint record");
    return true;
}

} // namespace dopoq

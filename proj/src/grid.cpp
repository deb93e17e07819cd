#include "dopoq/grid.hpp"

#include <cmath>

namespace dopoq {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

void Params::validate() const {
    if (n_points < 8 || !is_pow2(n_points))
        throw InvalidParameter("n_points must be a power of two >= 8");
    if (!(length_L > 0.0)) throw InvalidParameter("length_L must be positive");
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    if (!(t_total > 0.0)) throw InvalidParameter("t_total must be positive");
    if (t_transient < 0.0 || t_transient >= t_total)
        throw InvalidParameter("t_transient must satisfy 0 <= t_transient < t_total");
    if (!(noise_c > 0.0)) throw InvalidParameter("noise_c must be positive");
    if (!(sample_stride > 0.0))
        throw InvalidParameter("sample_stride must be positive");
    if (!(block_time > 0.0)) throw InvalidParameter("block_time must be positive");
    if (!(rolls_amplitude > 0.0))
        throw InvalidParameter("rolls_amplitude must be positive");
    if (!std::isfinite(pump_E) || pump_E < 0.0)
        throw InvalidParameter("pump_E must be finite and nonnegative");
}

std::string to_string(InitKind kind) {
    switch (kind) {
        case InitKind::paper_modulated: return "paper-modulated";
        case InitKind::noise: return "noise";
        case InitKind::step: return "step";
        case InitKind::rolls: return "rolls";
    }
    return "?";
}

InitKind init_kind_from_string(const std::string& name) {
    if (name == "paper-modulated") return InitKind::paper_modulated;
    if (name == "noise") return InitKind::noise;
    if (name == "step") return InitKind::step;
    if (name == "rolls") return InitKind::rolls;
    throw InvalidParameter("unknown init_kind '" + name + "'");
}

Grid build_grid(const Params& params) {
    if (params.n_points < 8 || !is_pow2(params.n_points))
        throw InvalidParameter("n_points must be a power of two >= 8");
    if (!(params.length_L > 0.0))
        throw InvalidParameter("length_L must be positive");

    Grid g;
    g.n = params.n_points;
    g.length = params.length_L;
    g.dx = params.dx();
    g.dk = params.dk();
    g.x.resize(g.n);
    g.k.resize(g.n);
    for (int j = 0; j < g.n; ++j) g.x[j] = j * g.dx;
    for (int m = 0; m < g.n; ++m) {
        const int signed_m = m < g.n / 2 ? m : m - g.n;
        g.k[m] = signed_m * g.dk;
    }
    return g;
}

} // namespace dopoq

#include "polarforge/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace polarforge {

std::string to_string(ChannelKind k) {
    switch (k) {
        case ChannelKind::awgn: return "awgn";
        case ChannelKind::rayleigh: return "rayleigh";
        case ChannelKind::bec: return "bec";
    }
    return "?";
}

double awgn_sigma2(double ebn0_db, double rc) {
    return 1.0 / (2.0 * rc * std::pow(10.0, ebn0_db / 10.0));
}

void make_llr(const ChannelConfig& cfg, const BitWord& x, RngStream& rng, LlrFrame& out) {
    std::size_t N = x.size();
    out.llr.resize(N);
    out.kind = cfg.kind;
    switch (cfg.kind) {
        case ChannelKind::awgn: {
            double s2 = awgn_sigma2(cfg.ebn0_db, cfg.rate);
            double scale = 2.0 / s2;
            double sigma = std::sqrt(s2);
            out.sigma2 = s2;
            out.fading.clear();
            for (std::size_t i = 0; i < N; ++i) {
                double s = x.get(i) ? -1.0 : 1.0;
                out.llr[i] = scale * (s + sigma * rng.gauss());
            }
            break;
        }
        case ChannelKind::rayleigh: {
            double s2 = awgn_sigma2(cfg.ebn0_db, cfg.rate);
            double scale = 2.0 / s2;
            double sigma = std::sqrt(s2);
            out.sigma2 = s2;
            out.fading.resize(N);
            for (std::size_t i = 0; i < N; ++i) {
                double alpha = rng.rayleigh_unit();
                double s = x.get(i) ? -1.0 : 1.0;
                out.fading[i] = alpha;
                out.llr[i] = scale * alpha * (alpha * s + sigma * rng.gauss());
            }
            break;
        }
        case ChannelKind::bec: {
            if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0))
                throw std::invalid_argument("bec_llr: epsilon must be in [0, 1]");
            out.sigma2 = cfg.epsilon;
            out.fading.clear();
            for (std::size_t i = 0; i < N; ++i) {
                if (rng.uniform() < cfg.epsilon)
                    out.llr[i] = 0.0;
                else
                    out.llr[i] = x.get(i) ? -kLlrSaturation : kLlrSaturation;
            }
            break;
        }
    }
}

LlrFrame awgn_llr(const BitWord& x, double ebn0_db, double rc, RngStream& rng) {
    ChannelConfig cfg{ChannelKind::awgn, ebn0_db, rc, 0.0};
    LlrFrame out;
    make_llr(cfg, x, rng, out);
    return out;
}

LlrFrame rayleigh_llr(const BitWord& x, double ebn0_db, double rc, RngStream& rng,
                      const std::vector<double>* fading_override) {
    if (!fading_override) {
        ChannelConfig cfg{ChannelKind::rayleigh, ebn0_db, rc, 0.0};
        LlrFrame out;
        make_llr(cfg, x, rng, out);
        return out;
    }
    std::size_t N = x.size();
    double s2 = awgn_sigma2(ebn0_db, rc);
    double sigma = std::sqrt(s2);
    LlrFrame out;
    out.kind = ChannelKind::rayleigh;
    out.sigma2 = s2;
    out.llr.resize(N);
    out.fading = *fading_override;
    for (std::size_t i = 0; i < N; ++i) {
        double alpha = out.fading[i];
        double s = x.get(i) ? -1.0 : 1.0;
        out.llr[i] = (2.0 / s2) * alpha * (alpha * s + sigma * rng.gauss());
    }
    return out;
}

LlrFrame bec_llr(const BitWord& x, double epsilon, RngStream& rng) {
    ChannelConfig cfg{ChannelKind::bec, 0.0, 1.0, epsilon};
    LlrFrame out;
    make_llr(cfg, x, rng, out);
    return out;
}

}  // namespace polarforge

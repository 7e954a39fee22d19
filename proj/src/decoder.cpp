#include "polarforge/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polarforge/core.hpp"

namespace polarforge {

namespace {

// min-sum check node; shared by SC and SCL so the two stay bit-identical
inline double f_minsum(double a, double b) {
    double m = std::min(std::fabs(a), std::fabs(b));
    return ((a < 0) != (b < 0)) ? -m : m;
}

inline double g_fun(double a, double b, std::uint8_t c) { return c ? b - a : b + a; }

// exact boxplus, stable for saturated inputs
inline double boxplus(double a, double b) {
    double m = f_minsum(a, b);
    return m + std::log1p(std::exp(-std::fabs(a + b))) - std::log1p(std::exp(-std::fabs(a - b)));
}

inline double sat(double v) {
    return std::clamp(v, -kLlrSaturation, kLlrSaturation);
}

CodeSpec plain_spec(const AVector& a) {
    return CodeSpec::make(static_cast<std::uint32_t>(a.size()),
                          static_cast<std::uint32_t>(a.ones()));
}

void check_frame(const LlrFrame& frame, const AVector& a) {
    if (frame.llr.size() != a.size())
        throw std::invalid_argument("decode: frame length does not match A-vector length");
}

BitWord gather_nonfrozen(const BitWord& u, const AVector& a) {
    BitWord out(a.ones(), BitRole::message);
    std::size_t t = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.is_info(i)) {
            if (u.get(i)) out.set(t, true);
            ++t;
        }
    return out;
}

}  // namespace

std::string to_string(DecoderKind k) {
    switch (k) {
        case DecoderKind::sc: return "sc";
        case DecoderKind::scl: return "scl";
        case DecoderKind::scl_crc: return "scl-crc";
        case DecoderKind::bp: return "bp";
        case DecoderKind::ml: return "ml";
    }
    return "?";
}

std::string DecoderConfig::describe() const {
    switch (kind) {
        case DecoderKind::sc: return "sc";
        case DecoderKind::scl: return "scl(L=" + std::to_string(list_size) + ")";
        case DecoderKind::scl_crc: return "scl-crc(L=" + std::to_string(list_size) + ")";
        case DecoderKind::bp:
            return std::string(bp_min_sum ? "bp-ms(" : "bp(") + std::to_string(bp_max_iters) + ")";
        case DecoderKind::ml: return "ml";
    }
    return "?";
}

// ----------------------------------------------------------------- SC

ScDecoder::ScDecoder(const CodeSpec& spec, const AVector& a) : spec_(spec), a_(a) {
    if (a.size() != spec.block_length)
        throw std::invalid_argument("ScDecoder: A-vector length does not match N");
    std::size_t N = spec.block_length;
    lscratch_.resize(spec.n + 1);
    bscratch_.resize(spec.n + 1);
    for (int d = 0; d <= spec.n; ++d) {
        lscratch_[d].resize(N >> d);
        bscratch_[d].resize(2 * (N >> d));  // left-half bits then right-half bits
    }
    dec_llr_.resize(N);
}

void ScDecoder::recurse(int level, std::size_t len, double* llr, std::uint8_t* bits_out) {
    if (len == 1) {
        std::size_t i = next_bit_++;
        dec_llr_[i] = llr[0];
        std::uint8_t bit = (!a_.is_frozen(i) && llr[0] < 0) ? 1 : 0;
        bits_out[0] = bit;
        return;
    }
    std::size_t half = len / 2;
    double* sub = lscratch_[level + 1].data();
    std::uint8_t* lb = bscratch_[level + 1].data();
    std::uint8_t* rb = lb + half;
    for (std::size_t b = 0; b < half; ++b) sub[b] = f_minsum(llr[2 * b], llr[2 * b + 1]);
    recurse(level + 1, half, sub, lb);
    for (std::size_t b = 0; b < half; ++b) sub[b] = g_fun(llr[2 * b], llr[2 * b + 1], lb[b]);
    recurse(level + 1, half, sub, rb);
    for (std::size_t b = 0; b < half; ++b) {
        bits_out[2 * b] = lb[b] ^ rb[b];
        bits_out[2 * b + 1] = rb[b];
    }
}

DecodeResult ScDecoder::decode(const LlrFrame& frame) {
    check_frame(frame, a_);
    std::size_t N = spec_.block_length;
    std::copy(frame.llr.begin(), frame.llr.end(), lscratch_[0].begin());
    next_bit_ = 0;
    recurse(0, N, lscratch_[0].data(), bscratch_[0].data());

    DecodeResult r;
    r.u_hat = BitWord(N, BitRole::u_domain);
    for (std::size_t i = 0; i < N; ++i) {
        bool bit = !a_.is_frozen(i) && dec_llr_[i] < 0;
        if (bit) r.u_hat.set(i, true);
    }
    r.x_hat = polar_transform(r.u_hat, spec_.n);
    r.message_hat = extract_message(r.u_hat, a_, spec_);
    r.metric = 0.0;
    for (std::size_t i = 0; i < N; ++i) r.metric += std::fabs(dec_llr_[i]);
    return r;
}

// ---------------------------------------------------------------- SCL

SclDecoder::SclDecoder(const CodeSpec& spec, const AVector& a, int list_size)
    : spec_(spec), a_(a), list_size_(list_size), n_(spec.n), N_(spec.block_length) {
    if (list_size < 1) throw std::invalid_argument("SclDecoder: list size must be >= 1");
    if (a.size() != spec.block_length)
        throw std::invalid_argument("SclDecoder: A-vector length does not match N");
    level_off_.resize(n_ + 1);
    std::size_t off = 0;
    for (int l = 0; l <= n_; ++l) {
        level_off_[l] = off;
        off += N_ >> l;
    }
    auto make_state = [&] {
        PathState s;
        s.llr.resize(off);
        s.cbit.resize(2 * off);
        s.u.resize(N_);
        return s;
    };
    paths_.resize(list_size_);
    scratch_.resize(list_size_);
    for (auto& p : paths_) p = make_state();
    for (auto& p : scratch_) p = make_state();
}

void SclDecoder::calc_llr(PathState& p, int level, std::size_t phase) {
    if (level == 0) return;
    if ((phase & 1) == 0) calc_llr(p, level - 1, phase >> 1);
    std::size_t len = N_ >> level;
    const double* prev = p.llr.data() + level_off_[level - 1];
    double* cur = p.llr.data() + level_off_[level];
    if ((phase & 1) == 0) {
        for (std::size_t b = 0; b < len; ++b) cur[b] = f_minsum(prev[2 * b], prev[2 * b + 1]);
    } else {
        const std::uint8_t* c = p.cbit.data() + 2 * level_off_[level];
        for (std::size_t b = 0; b < len; ++b)
            cur[b] = g_fun(prev[2 * b], prev[2 * b + 1], c[2 * b]);
    }
}

void SclDecoder::update_c(PathState& p, int level, std::size_t phase) {
    std::size_t len = N_ >> level;
    std::size_t psi = phase >> 1;
    const std::uint8_t* cur = p.cbit.data() + 2 * level_off_[level];
    std::uint8_t* prev = p.cbit.data() + 2 * level_off_[level - 1];
    std::size_t plane = psi & 1;
    for (std::size_t b = 0; b < len; ++b) {
        prev[2 * (2 * b) + plane] = cur[2 * b] ^ cur[2 * b + 1];
        prev[2 * (2 * b + 1) + plane] = cur[2 * b + 1];
    }
    if ((psi & 1) == 1 && level > 1) update_c(p, level - 1, psi);
}

void SclDecoder::run(const LlrFrame& frame) {
    check_frame(frame, a_);
    alive_ = 1;
    paths_[0].metric = 0.0;
    std::copy(frame.llr.begin(), frame.llr.end(), paths_[0].llr.begin());
    std::fill(paths_[0].u.begin(), paths_[0].u.end(), 0);

    std::vector<double> cand_metric;
    std::vector<std::uint32_t> cand_order;

    for (std::size_t phi = 0; phi < N_; ++phi) {
        for (std::size_t p = 0; p < alive_; ++p) calc_llr(paths_[p], n_, phi);

        if (a_.is_frozen(phi)) {
            for (std::size_t p = 0; p < alive_; ++p) {
                double L = paths_[p].llr[level_off_[n_]];
                if (L < 0) paths_[p].metric += -L;  // forced 0 against the sign
                paths_[p].u[phi] = 0;
                paths_[p].cbit[2 * level_off_[n_] + (phi & 1)] = 0;
            }
        } else {
            // fork: candidate 2p is (path p, bit 0), 2p+1 is (path p, bit 1)
            std::size_t n_cand = 2 * alive_;
            cand_metric.resize(n_cand);
            for (std::size_t p = 0; p < alive_; ++p) {
                double L = paths_[p].llr[level_off_[n_]];
                double pen = std::fabs(L);
                cand_metric[2 * p] = paths_[p].metric + (L < 0 ? pen : 0.0);
                cand_metric[2 * p + 1] = paths_[p].metric + (L < 0 ? 0.0 : pen);
            }
            std::size_t keep = std::min<std::size_t>(n_cand, list_size_);
            cand_order.resize(n_cand);
            std::iota(cand_order.begin(), cand_order.end(), 0);
            if (keep < n_cand)
                std::stable_sort(cand_order.begin(), cand_order.end(),
                                 [&](std::uint32_t x, std::uint32_t y) {
                                     return cand_metric[x] < cand_metric[y];
                                 });
            // survivors in candidate order keeps the tie-break stable
            if (keep < n_cand) {
                std::sort(cand_order.begin(), cand_order.begin() + keep);
            }
            for (std::size_t t = 0; t < keep; ++t) {
                std::uint32_t c = cand_order[t];
                scratch_[t] = paths_[c >> 1];
                scratch_[t].metric = cand_metric[c];
                scratch_[t].u[phi] = c & 1;
                scratch_[t].cbit[2 * level_off_[n_] + (phi & 1)] = c & 1;
            }
            paths_.swap(scratch_);
            alive_ = keep;
        }

        if (phi & 1)
            for (std::size_t p = 0; p < alive_; ++p) update_c(paths_[p], n_, phi);
    }

    final_list_.clear();
    std::vector<std::uint32_t> order(alive_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        return paths_[x].metric < paths_[y].metric;
    });
    for (std::uint32_t idx : order) {
        ListEntry e;
        e.u_hat = BitWord(N_, BitRole::u_domain);
        for (std::size_t i = 0; i < N_; ++i)
            if (paths_[idx].u[i]) e.u_hat.set(i, true);
        e.metric = paths_[idx].metric;
        final_list_.push_back(std::move(e));
    }
}

DecodeResult SclDecoder::decode(const LlrFrame& frame) {
    run(frame);
    DecodeResult r;
    r.u_hat = final_list_.front().u_hat;
    r.metric = final_list_.front().metric;
    r.x_hat = polar_transform(r.u_hat, n_);
    r.message_hat = extract_message(r.u_hat, a_, spec_);
    return r;
}

DecodeResult SclDecoder::decode_crc(const LlrFrame& frame) {
    if (!spec_.crc) throw std::logic_error("decode_crc: no CRC configured");
    run(frame);
    const ListEntry* chosen = nullptr;
    for (const auto& e : final_list_) {
        BitWord word = gather_nonfrozen(e.u_hat, a_);
        if (crc_check(word, *spec_.crc)) {
            chosen = &e;
            break;
        }
    }
    DecodeResult r;
    r.crc_pass = (chosen != nullptr);
    const ListEntry& e = chosen ? *chosen : final_list_.front();
    r.u_hat = e.u_hat;
    r.metric = e.metric;
    r.x_hat = polar_transform(r.u_hat, n_);
    r.message_hat = extract_message(r.u_hat, a_, spec_);
    return r;
}

// ----------------------------------------------------------------- BP

BpDecoder::BpDecoder(const CodeSpec& spec, const AVector& a, int max_iters, bool scaled_min_sum)
    : spec_(spec), a_(a), max_iters_(max_iters), min_sum_(scaled_min_sum),
      n_(spec.n), N_(spec.block_length) {
    if (max_iters < 1) throw std::invalid_argument("BpDecoder: n_it_max must be >= 1");
    if (a.size() != spec.block_length)
        throw std::invalid_argument("BpDecoder: A-vector length does not match N");
    left_.resize((n_ + 1) * N_);
    right_.resize((n_ + 1) * N_);
    u_marg_.resize(N_);
    rev_.resize(N_);
    for (std::size_t j = 0; j < N_; ++j)
        rev_[j] = bit_reverse(static_cast<std::uint32_t>(j), n_);
}

DecodeResult BpDecoder::decode(const LlrFrame& frame) {
    check_frame(frame, a_);
    auto cn = [this](double x, double y) {
        return min_sum_ ? 0.9375 * f_minsum(x, y) : boxplus(x, y);
    };

    std::fill(left_.begin(), left_.end(), 0.0);
    std::fill(right_.begin(), right_.end(), 0.0);
    for (std::size_t j = 0; j < N_; ++j) {
        left_[n_ * N_ + j] = frame.llr[j];
        right_[j] = a_.is_info(rev_[j]) ? 0.0 : kLlrSaturation;
    }

    DecodeResult r;
    r.u_hat = BitWord(N_, BitRole::u_domain);
    x_marg_hard_ = BitWord(N_, BitRole::codeword);
    BitWord& x_marg = x_marg_hard_;

    int used = max_iters_;
    for (int it = 1; it <= max_iters_; ++it) {
        for (int s = n_ - 1; s >= 0; --s) {
            double* L = left_.data() + s * N_;
            const double* Lr = left_.data() + (s + 1) * N_;
            const double* R = right_.data() + s * N_;
            std::size_t h = std::size_t{1} << s;
            for (std::size_t base = 0; base < N_; base += 2 * h)
                for (std::size_t t = 0; t < h; ++t) {
                    std::size_t p = base + t, q = base + t + h;
                    L[p] = sat(cn(Lr[p], Lr[q] + R[q]));
                    L[q] = sat(cn(Lr[p], R[p]) + Lr[q]);
                }
        }
        for (int s = 0; s < n_; ++s) {
            const double* R = right_.data() + s * N_;
            double* Rr = right_.data() + (s + 1) * N_;
            const double* Lr = left_.data() + (s + 1) * N_;
            std::size_t h = std::size_t{1} << s;
            for (std::size_t base = 0; base < N_; base += 2 * h)
                for (std::size_t t = 0; t < h; ++t) {
                    std::size_t p = base + t, q = base + t + h;
                    Rr[p] = sat(cn(R[p], R[q] + Lr[q]));
                    Rr[q] = sat(cn(R[p], Lr[p]) + R[q]);
                }
        }

        for (std::size_t j = 0; j < N_; ++j) u_marg_[rev_[j]] = left_[j] + right_[j];
        r.u_hat.clear();
        for (std::size_t i = 0; i < N_; ++i)
            if (a_.is_info(i) && u_marg_[i] < 0) r.u_hat.set(i, true);
        x_marg.clear();
        for (std::size_t j = 0; j < N_; ++j)
            if (left_[n_ * N_ + j] + right_[n_ * N_ + j] < 0) x_marg.set(j, true);
        if (polar_transform(r.u_hat, n_) == x_marg) {
            used = it;
            break;
        }
    }

    r.iterations_used = used;
    r.x_hat = polar_transform(r.u_hat, n_);
    r.message_hat = extract_message(r.u_hat, a_, spec_);
    r.metric = 0.0;
    for (std::size_t i = 0; i < N_; ++i) r.metric += std::fabs(u_marg_[i]);
    return r;
}

// ------------------------------------------------------------ ML oracle

MlOracleDecoder::MlOracleDecoder(const CodeSpec& spec, const AVector& a) : spec_(spec), a_(a) {
    if (a.ones() > 28)
        throw std::invalid_argument("ml oracle: enumeration supports at most 28 information bits");
    if (a.size() != spec.block_length)
        throw std::invalid_argument("MlOracleDecoder: A-vector length does not match N");
    std::size_t N = spec.block_length;
    for (auto pos : a.info_positions()) {
        BitWord e(N, BitRole::u_domain);
        e.set(pos, true);
        BitWord row = polar_transform(e, spec.n);
        std::vector<std::uint32_t> set_bits;
        for (std::size_t j = 0; j < N; ++j)
            if (row.get(j)) set_bits.push_back(static_cast<std::uint32_t>(j));
        row_bits_.push_back(std::move(set_bits));
    }
}

DecodeResult MlOracleDecoder::decode(const LlrFrame& frame) {
    check_frame(frame, a_);
    std::size_t K = row_bits_.size();
    std::size_t N = spec_.block_length;
    const double* llr = frame.llr.data();

    BitWord x(N, BitRole::codeword);
    double corr = 0.0;
    for (std::size_t j = 0; j < N; ++j) corr += llr[j];

    // message bit 0 is the most significant digit of the counter, so
    // increasing m enumerates messages in lexicographic order
    std::uint64_t best_m = 0;
    double best_corr = corr;
    std::uint64_t total = std::uint64_t{1} << K;
    for (std::uint64_t m = 1; m < total; ++m) {
        std::uint64_t changed = m ^ (m - 1);  // trailing bits that flipped
        while (changed) {
            int b = std::countr_zero(changed);
            changed &= changed - 1;
            for (std::uint32_t j : row_bits_[K - 1 - b]) {
                corr -= 2.0 * (x.get(j) ? -llr[j] : llr[j]);
                x.set(j, !x.get(j));
            }
        }
        if ((m & 0xFFF) == 0) {  // periodic refresh bounds float drift
            corr = 0.0;
            for (std::size_t j = 0; j < N; ++j) corr += x.get(j) ? -llr[j] : llr[j];
        }
        if (corr > best_corr) {
            best_corr = corr;
            best_m = m;
        }
    }

    DecodeResult r;
    r.u_hat = BitWord(N, BitRole::u_domain);
    auto info = a_.info_positions();
    for (std::size_t t = 0; t < K; ++t)
        if ((best_m >> (K - 1 - t)) & 1) r.u_hat.set(info[t], true);
    r.x_hat = polar_transform(r.u_hat, spec_.n);
    r.message_hat = extract_message(r.u_hat, a_, spec_);
    r.metric = best_corr;
    return r;
}

// -------------------------------------------------------- free functions

DecodeResult decode_sc(const LlrFrame& frame, const AVector& a) {
    ScDecoder d(plain_spec(a), a);
    return d.decode(frame);
}

DecodeResult decode_scl(const LlrFrame& frame, const AVector& a, int list_size) {
    SclDecoder d(plain_spec(a), a, list_size);
    return d.decode(frame);
}

DecodeResult decode_scl_crc(const LlrFrame& frame, const AVector& a, int list_size,
                            const CrcConfig& crc) {
    auto spec = CodeSpec::make(static_cast<std::uint32_t>(a.size()),
                               static_cast<std::uint32_t>(a.ones()) - crc.width, crc);
    SclDecoder d(spec, a, list_size);
    return d.decode_crc(frame);
}

DecodeResult decode_bp(const LlrFrame& frame, const AVector& a, int n_it_max) {
    BpDecoder d(plain_spec(a), a, n_it_max);
    return d.decode(frame);
}

DecodeResult decode_ml_oracle(const LlrFrame& frame, const AVector& a) {
    MlOracleDecoder d(plain_spec(a), a);
    return d.decode(frame);
}

}  // namespace polarforge

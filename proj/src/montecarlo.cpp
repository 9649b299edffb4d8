#include "risthz/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "risthz/error.hpp"
#include "risthz/kern.hpp"

namespace risthz::mc {

namespace {

constexpr std::size_t kChunk = 65536;
constexpr double kInvLn2 = 1.4426950408889634074;

// fills one chunk of h_F draws; the chunk's stream is consumed sequentially
void hf_chunk(const perf::SystemModel& model, PhaseMode mode,
              const std::vector<double>& phases, rng::Stream& stream, double* hf,
              std::size_t n) {
    std::vector<double> r1(n), r2(n);
    if (mode == PhaseMode::ideal_aligned) {
        std::fill(hf, hf + n, 0.0);
        for (int l = 0; l < model.l_elements; ++l) {
            ftr::EnvelopeSampler s1(model.hop1[l]), s2(model.hop2[l]);
            s1.sample_block(stream, r1.data(), n);
            s2.sample_block(stream, r2.data(), n);
            for (std::size_t i = 0; i < n; ++i) hf[i] += r1[i] * r2[i];
        }
        return;
    }
    // explicit phases: h_F = |sum_l R1 R2 e^{i(phi_l - th1_l - th2_l)}|
    std::vector<double> u1(n), u2(n), sa(n), ca(n), sb(n), cb(n);
    std::vector<double> acc_re(n, 0.0), acc_im(n, 0.0);
    for (int l = 0; l < model.l_elements; ++l) {
        ftr::EnvelopeSampler s1(model.hop1[l]), s2(model.hop2[l]);
        s1.sample_block(stream, r1.data(), n);
        s2.sample_block(stream, r2.data(), n);
        for (std::size_t i = 0; i < n; ++i) u1[i] = stream.uniform();
        for (std::size_t i = 0; i < n; ++i) u2[i] = stream.uniform();
        kern::sincos_turns_v(u1.data(), sa.data(), ca.data(), n);
        kern::sincos_turns_v(u2.data(), sb.data(), cb.data(), n);
        const double phi = phases.empty() ? 0.0 : phases[l];
        const double cp = std::cos(phi), sp = std::sin(phi);
        for (std::size_t i = 0; i < n; ++i) {
            // e^{-i th1} e^{-i th2} e^{i phi}
            const double cr = ca[i] * cb[i] - sa[i] * sb[i];
            const double ci = -(sa[i] * cb[i] + ca[i] * sb[i]);
            const double amp = r1[i] * r2[i];
            acc_re[i] += amp * (cr * cp - ci * sp);
            acc_im[i] += amp * (ci * cp + cr * sp);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        hf[i] = std::sqrt(acc_re[i] * acc_re[i] + acc_im[i] * acc_im[i]);
}

void gain_chunk(const perf::SystemModel& model, PhaseMode mode,
                const std::vector<double>& phases, std::uint64_t seed, std::size_t chunk_idx,
                double* g, std::size_t n) {
    rng::Stream stream(seed, chunk_idx + 1);
    hf_chunk(model, mode, phases, stream, g, n);
    std::vector<double> hp(n);
    thz::misalign_sample_block(model.mis, stream, hp.data(), n);
    const double hl = model.h_l;
    for (std::size_t i = 0; i < n; ++i) {
        const double amp = g[i] * hp[i] * hl;
        g[i] = amp * amp;
    }
}

// deterministic chunked run: fn(chunk_idx, first_sample, count) in any order,
// results merged by chunk index by the callers
void run_chunks(std::size_t n_samples, int threads,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    const std::size_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    if (threads <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c, c * kChunk, std::min(kChunk, n_samples - c * kChunk));
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                fn(c, c * kChunk, std::min(kChunk, n_samples - c * kChunk));
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace

Estimate wilson_ci(std::size_t k, std::size_t n) {
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2n = z * z / nn;
    const double center = (p + 0.5 * z2n) / (1.0 + z2n);
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + 0.25 * z2n / nn) / (1.0 + z2n);
    return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<double> sample_hf(const perf::SystemModel& model, const McOptions& opts,
                              PhaseMode mode, const std::vector<double>& phases) {
    model.check();
    if (opts.n_samples < 1) throw domain_error("sample_hf: n_samples must be >= 1");
    std::vector<double> out(opts.n_samples);
    run_chunks(opts.n_samples, opts.threads, [&](std::size_t c, std::size_t first,
                                                 std::size_t count) {
        rng::Stream stream(opts.seed, c + 1);
        hf_chunk(model, mode, phases, stream, out.data() + first, count);
    });
    return out;
}

std::vector<double> sample_gain(const perf::SystemModel& model, const McOptions& opts,
                                PhaseMode mode, const std::vector<double>& phases) {
    model.check();
    std::vector<double> out(opts.n_samples);
    run_chunks(opts.n_samples, opts.threads, [&](std::size_t c, std::size_t first,
                                                 std::size_t count) {
        gain_chunk(model, mode, phases, opts.seed, c, out.data() + first, count);
    });
    return out;
}

std::vector<double> sample_sndr(const perf::SystemModel& model, const McOptions& opts) {
    auto g = sample_gain(model, opts);
    const double k2 = model.hw.kappa_sq();
    for (double& v : g) {
        const double gp = v * model.power_w;
        v = gp / (k2 * gp + model.noise_w);
    }
    return g;
}

namespace {

// gain-domain threshold: sndr < gamma_th  <=>  G < gth N0 / (P (1 - gth k2))
double gain_threshold(double gamma_th, double power_w, double noise_w, double kappa_sq) {
    if (gamma_th <= 0.0) return -1.0;  // nothing below
    const double denom = 1.0 - gamma_th * kappa_sq;
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();  // above the ceiling
    return gamma_th * noise_w / (power_w * denom);
}

}  // namespace

Estimate estimate_op(const perf::SystemModel& model, double gamma_th, const McOptions& opts) {
    return estimate_op_curve(model, {model.power_w}, gamma_th, opts)[0];
}

std::vector<Estimate> estimate_op_curve(const perf::SystemModel& model,
                                        const std::vector<double>& powers_w, double gamma_th,
                                        const McOptions& opts) {
    model.check();
    const auto g = sample_gain(model, opts);
    std::vector<Estimate> out;
    out.reserve(powers_w.size());
    const double k2 = model.hw.kappa_sq();
    for (double p : powers_w) {
        const double t = gain_threshold(gamma_th, p, model.noise_w, k2);
        // strict "below threshold": count_le on the open threshold is
        // indistinguishable for continuous gains
        const std::size_t k = std::isinf(t) ? g.size() : kern::count_le_v(g.data(), g.size(), t);
        out.push_back(wilson_ci(k, g.size()));
    }
    return out;
}

std::vector<Estimate> estimate_op_thresholds(const perf::SystemModel& model,
                                             const std::vector<double>& gamma_ths,
                                             const McOptions& opts) {
    model.check();
    const auto g = sample_gain(model, opts);
    std::vector<Estimate> out;
    out.reserve(gamma_ths.size());
    const double k2 = model.hw.kappa_sq();
    for (double gth : gamma_ths) {
        const double t = gain_threshold(gth, model.power_w, model.noise_w, k2);
        const std::size_t k = std::isinf(t) ? g.size()
                              : t < 0.0     ? 0
                                            : kern::count_le_v(g.data(), g.size(), t);
        out.push_back(wilson_ci(k, g.size()));
    }
    return out;
}

Estimate capacity_of_samples(const std::vector<double>& sndr_samples) {
    const std::size_t n = sndr_samples.size();
    if (n == 0) throw domain_error("capacity_of_samples: empty sample set");
    const double sum = kern::sum_log2_1p_v(sndr_samples.data(), n);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : sndr_samples) {
        const double d = std::log2(1.0 + x) - mean;
        ss += d * d;
    }
    const double half = 1.959963984540054 * std::sqrt(ss / n / std::max<std::size_t>(n - 1, 1));
    return {mean, mean - half, mean + half};
}

Estimate estimate_capacity(const perf::SystemModel& model, const McOptions& opts) {
    return capacity_of_samples(sample_sndr(model, opts));
}

std::vector<Estimate> estimate_capacity_curve(const perf::SystemModel& model,
                                              const std::vector<double>& powers_w,
                                              const McOptions& opts) {
    model.check();
    const auto g = sample_gain(model, opts);
    const std::size_t n = g.size();
    const double k2 = model.hw.kappa_sq();
    std::vector<Estimate> out;
    out.reserve(powers_w.size());
    std::vector<double> snr(n);
    for (double p : powers_w) {
        for (std::size_t i = 0; i < n; ++i) {
            const double gp = g[i] * p;
            snr[i] = gp / (k2 * gp + model.noise_w);
        }
        out.push_back(capacity_of_samples(snr));
    }
    return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw domain_error("EmpiricalCdf: empty sample set");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

}  // namespace risthz::mc

#include "capa/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace capa {

namespace {

constexpr std::int64_t kBlock = 4096;

struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

double pairwise(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise(v, lo, mid) + pairwise(v, mid, hi);
}

}  // namespace

McEstimate estimate(const IsacModel& model, McMetric metric, std::int64_t n,
                    std::uint64_t seed, int workers) {
    if (n < 100) throw std::invalid_argument("estimate requires n >= 100");
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;

    const double snr_c = model.cfg.snr_comm;
    const double gt = model.gain_tx;
    const double rate0 = model.cfg.target_rate;
    const double sscale = model.sensing_scale();
    const int frame = model.cfg.frame_len;
    bool binomial = false;

    const auto sample_value = [&](std::uint64_t idx) -> double {
        CounterRng rng(seed, idx);
        const FadingRealization f = sample_realization(rng, model.lambdas, model.projections);
        switch (metric) {
            case McMetric::ecr_sc:
                return std::log2(1.0 + snr_c * std::norm(f.rho) / gt);
            case McMetric::op_sc:
                return std::log2(1.0 + snr_c * std::norm(f.rho) / gt) < rate0 ? 1.0 : 0.0;
            case McMetric::ecr_cc:
                return std::log2(1.0 + snr_c * f.g_c);
            case McMetric::op_cc:
                return std::log2(1.0 + snr_c * f.g_c) < rate0 ? 1.0 : 0.0;
            case McMetric::avg_sr_cc:
                return std::log2(1.0 + sscale * std::norm(f.rho) / f.g_c) / frame;
            case McMetric::mean_gain:
                return f.g_c;
            case McMetric::mean_rho_sq:
                return std::norm(f.rho);
        }
        throw std::invalid_argument("unknown Monte Carlo metric");
    };
    binomial = (metric == McMetric::op_sc || metric == McMetric::op_cc);

    const std::int64_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));
    std::atomic<std::int64_t> next_block{0};

    const auto work = [&]() {
        for (;;) {
            const std::int64_t b = next_block.fetch_add(1);
            if (b >= n_blocks) return;
            const std::int64_t lo = b * kBlock;
            const std::int64_t hi = std::min(n, lo + kBlock);
            BlockSums s;
            for (std::int64_t i = lo; i < hi; ++i) {
                const double v = sample_value(static_cast<std::uint64_t>(i));
                s.sum += v;
                s.sum_sq += v * v;
            }
            blocks[static_cast<std::size_t>(b)] = s;
        }
    };

    if (workers == 1 || n_blocks == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<double> sums(blocks.size()), sums_sq(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        sums[i] = blocks[i].sum;
        sums_sq[i] = blocks[i].sum_sq;
    }
    const double total = pairwise(sums, 0, sums.size());
    const double total_sq = pairwise(sums_sq, 0, sums_sq.size());

    McEstimate est;
    est.n = n;
    est.seed = seed;
    est.mean = total / static_cast<double>(n);
    const double var = std::max(0.0, (total_sq - n * est.mean * est.mean) / (n - 1.0));
    est.stderr_val = std::sqrt(var / n);
    if (binomial) {
        const double z = 1.959963984540054;  // 97.5% normal quantile
        const double p = est.mean;
        const double denom = 1.0 + z * z / n;
        est.wilson_half =
            z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * static_cast<double>(n) * n)) / denom;
    }
    return est;
}

}  // namespace capa

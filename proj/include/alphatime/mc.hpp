#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "alphatime/rng.hpp"
#include "alphatime/stats.hpp"

namespace alphatime {
namespace mc {

/// Samples are partitioned into fixed-size chunks; chunk i is driven by
/// substream (seed, stream_base + i). The chunk layout and the pairwise
/// reduction order depend only on (n, chunk_size), so the serial
/// reference and the OpenMP kernel produce bit-identical results for
/// any worker count.
constexpr std::uint64_t kDefaultChunk = 1 << 14;

struct ChunkPartial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t n = 0;
};

template <class Kernel>
ChunkPartial run_chunk(std::uint64_t seed, std::uint64_t stream_id,
                       std::uint64_t count, Kernel&& kernel) {
    RngStream rng(seed, stream_id);
    ChunkPartial p;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double v = kernel(rng);
        p.sum += v;
        p.sum_sq += v * v;
    }
    p.n = count;
    return p;
}

inline Estimate reduce(std::span<const ChunkPartial> partials) {
    std::vector<double> sums, sqs;
    sums.reserve(partials.size());
    sqs.reserve(partials.size());
    std::uint64_t n = 0;
    for (const auto& p : partials) {
        sums.push_back(p.sum);
        sqs.push_back(p.sum_sq);
        n += p.n;
    }
    Estimate e;
    e.n = n;
    if (n == 0) return e;
    const double sum = pairwise_sum(sums);
    const double sum_sq = pairwise_sum(sqs);
    e.mean = sum / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (sum_sq - static_cast<double>(n) * e.mean * e.mean) /
                              (static_cast<double>(n) - 1.0));
        e.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return e;
}

/// Serial reference implementation. Kept deliberately plain; the
/// parallel kernel below must reproduce its output exactly.
template <class Kernel>
Estimate estimate_serial(std::uint64_t n, std::uint64_t seed,
                         std::uint64_t stream_base, Kernel&& kernel,
                         std::uint64_t chunk = kDefaultChunk) {
    const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<ChunkPartial> partials(n_chunks);
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        const std::uint64_t count = std::min(chunk, n - c * chunk);
        partials[c] = run_chunk(seed, stream_base + c, count, kernel);
    }
    return reduce(partials);
}

/// OpenMP kernel: chunks are scheduled across `workers` threads but the
/// partial layout and reduction order are identical to the serial path.
template <class Kernel>
Estimate estimate_parallel(std::uint64_t n, std::uint64_t seed,
                           std::uint64_t stream_base, Kernel&& kernel,
                           int workers,
                           std::uint64_t chunk = kDefaultChunk) {
    const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<ChunkPartial> partials(n_chunks);
#ifdef _OPENMP
    const std::int64_t nc = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers > 0 ? workers : omp_get_max_threads())
    for (std::int64_t c = 0; c < nc; ++c) {
        const std::uint64_t uc = static_cast<std::uint64_t>(c);
        const std::uint64_t count = std::min(chunk, n - uc * chunk);
        partials[uc] = run_chunk(seed, stream_base + uc, count, kernel);
    }
#else
    (void)workers;
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        const std::uint64_t count = std::min(chunk, n - c * chunk);
        partials[c] = run_chunk(seed, stream_base + c, count, kernel);
    }
#endif
    return reduce(partials);
}

/// Dispatcher used by the engines: workers == 1 runs the serial
/// reference, anything else the OpenMP kernel.
template <class Kernel>
Estimate estimate(std::uint64_t n, std::uint64_t seed,
                  std::uint64_t stream_base, Kernel&& kernel, int workers,
                  std::uint64_t chunk = kDefaultChunk) {
    if (n == 0) throw std::invalid_argument("mc::estimate: n must be > 0");
    if (workers == 1)
        return estimate_serial(n, seed, stream_base, kernel, chunk);
    return estimate_parallel(n, seed, stream_base, kernel, workers, chunk);
}

/// Fills `out` with n draws, chunked exactly like estimate(); used by
/// the distribution tests that need whole samples (KS statistics).
template <class Generator>
void fill(std::uint64_t n, std::uint64_t seed, std::uint64_t stream_base,
          Generator&& gen, int workers, std::vector<double>& out,
          std::uint64_t chunk = kDefaultChunk) {
    out.resize(n);
    const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
    const std::int64_t nc = static_cast<std::int64_t>(n_chunks);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers > 0 ? workers : omp_get_max_threads()) if (workers != 1)
#endif
    for (std::int64_t c = 0; c < nc; ++c) {
        const std::uint64_t uc = static_cast<std::uint64_t>(c);
        const std::uint64_t count = std::min(chunk, n - uc * chunk);
        RngStream rng(seed, stream_base + uc);
        for (std::uint64_t i = 0; i < count; ++i) out[uc * chunk + i] = gen(rng);
    }
}

}  // namespace mc
}  // namespace alphatime
